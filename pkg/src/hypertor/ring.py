"""Polynomial rings with weighted gradings and term orders, and hypersurface ring specs."""

from dataclasses import dataclass

from .field import field_from_spec

ORDER_KINDS = ("grevlex", "lex", "weighted-grevlex")


@dataclass(frozen=True)
class TermOrder:
    kind: str
    weights: tuple

    def __post_init__(self):
        if self.kind not in ORDER_KINDS:
            raise ValueError(f"unknown term order {self.kind!r}")
        if any(w <= 0 for w in self.weights):
            raise ValueError("weights must be positive")


class PolynomialRing:
    """k[x_1..x_n] with positive integer weights and a global term order.

    'grevlex' on a ring with nontrivial weights is the weighted grevlex order:
    weighted degree first, reverse lexicographic tie-break.
    """

    def __init__(self, field, variables, weights=None, order="grevlex"):
        self.field = field_from_spec(field)
        self.variables = tuple(variables)
        if len(set(self.variables)) != len(self.variables):
            raise ValueError("duplicate variable names")
        self.nvars = len(self.variables)
        self.weights = tuple(int(w) for w in (weights or (1,) * self.nvars))
        if len(self.weights) != self.nvars:
            raise ValueError("one weight per variable")
        if order == "grevlex" and any(w != 1 for w in self.weights):
            order = "weighted-grevlex"
        self.order = TermOrder(order, self.weights)
        self._keys = {}
        self._ident = (self.field, self.variables, self.weights, self.order.kind)

    def __eq__(self, other):
        return isinstance(other, PolynomialRing) and other._ident == self._ident

    def __hash__(self):
        return hash(self._ident)

    def __repr__(self):
        vs = ",".join(
            v if w == 1 else f"{v}:{w}" for v, w in zip(self.variables, self.weights)
        )
        return f"{self.field!r}[{vs}]"

    @property
    def is_lex(self):
        return self.order.kind == "lex"

    def wdeg(self, exp):
        return sum(w * e for w, e in zip(self.weights, exp))

    def monomial_key(self, exp):
        """Sort key: larger key means larger monomial."""
        k = self._keys.get(exp)
        if k is None:
            if self.is_lex:
                k = exp
            else:
                k = (self.wdeg(exp), tuple(-e for e in reversed(exp)))
            self._keys[exp] = k
        return k

    def zero_exp(self):
        return (0,) * self.nvars

    def var_exp(self, i, power=1):
        e = [0] * self.nvars
        e[i] = power
        return tuple(e)

    # constructors live here so callers never touch Polynomial internals
    def __call__(self, value):
        from .poly import Polynomial, parse_polynomial

        if isinstance(value, Polynomial):
            if value.ring != self:
                from .errors import RingMismatch

                raise RingMismatch("polynomial from another ring")
            return value
        if isinstance(value, str):
            return parse_polynomial(self, value)
        c = self.field(value)
        return Polynomial(self, {self.zero_exp(): c} if c else {})

    def zero(self):
        from .poly import Polynomial

        return Polynomial(self, {})

    def one(self):
        return self(1)

    def gen(self, i):
        from .poly import Polynomial

        if isinstance(i, str):
            i = self.variables.index(i)
        return Polynomial(self, {self.var_exp(i): self.field.one})

    def gens(self):
        return [self.gen(i) for i in range(self.nvars)]

    def monomial(self, exp, coeff=1):
        from .poly import Polynomial

        c = self.field(coeff)
        return Polynomial(self, {tuple(exp): c} if c else {})

    def parse(self, text):
        from .poly import parse_polynomial

        return parse_polynomial(self, text)


class RingSpec:
    """S = ambient polynomial ring together with an optional equation f (R = S/(f))."""

    def __init__(self, ambient, f=None):
        self.ambient = ambient
        if f is not None:
            f = ambient(f)
            if f.is_zero():
                f = None
        if f is not None and f.is_constant():
            raise ValueError("f must be a non-constant polynomial")
        self.f = f

    @property
    def field(self):
        return self.ambient.field

    @property
    def nvars(self):
        return self.ambient.nvars

    @property
    def dim(self):
        """Krull dimension of R (dim S - 1 for a hypersurface)."""
        return self.nvars - (1 if self.f is not None else 0)

    @property
    def is_hypersurface(self):
        return self.f is not None

    def ambient_spec(self):
        return RingSpec(self.ambient)

    def __eq__(self, other):
        return (
            isinstance(other, RingSpec)
            and other.ambient == self.ambient
            and other.f == self.f
        )

    def __hash__(self):
        return hash((self.ambient, self.f))

    def __repr__(self):
        if self.f is None:
            return repr(self.ambient)
        return f"{self.ambient!r}/({self.f})"

    def describe(self):
        return {
            "field": repr(self.field),
            "vars": list(self.ambient.variables),
            "weights": list(self.ambient.weights),
            "order": self.ambient.order.kind,
            "f": None if self.f is None else str(self.f),
        }
