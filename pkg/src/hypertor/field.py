"""Exact coefficient fields: prime fields F_p and the rationals."""

from fractions import Fraction

from .errors import DivisionByZero


def _is_prime(n):
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


class PrimeField:
    """The field Z/p. Elements are plain ints in [0, p)."""

    kind = "prime-field"

    def __init__(self, p):
        p = int(p)
        if not _is_prime(p):
            raise ValueError(f"{p} is not prime")
        self.p = p
        self.characteristic = p
        self.zero = 0
        self.one = 1

    def __call__(self, x):
        if isinstance(x, Fraction):
            return x.numerator * self.inv(x.denominator % self.p) % self.p
        return int(x) % self.p

    def reduce(self, x):
        return x % self.p

    def add(self, a, b):
        return (a + b) % self.p

    def neg(self, a):
        return -a % self.p

    def mul(self, a, b):
        return a * b % self.p

    def inv(self, a):
        a %= self.p
        if a == 0:
            raise DivisionByZero("inverse of 0")
        return pow(a, -1, self.p)

    def signed(self, a):
        """Symmetric representative, used for printing."""
        return a - self.p if a > self.p // 2 else a

    def __eq__(self, other):
        return isinstance(other, PrimeField) and other.p == self.p

    def __hash__(self):
        return hash(("F", self.p))

    def __repr__(self):
        return f"F({self.p})"


class Rationals:
    """The field Q with Fraction elements."""

    kind = "rationals"
    p = None
    characteristic = 0

    def __init__(self):
        self.zero = Fraction(0)
        self.one = Fraction(1)

    def __call__(self, x):
        return Fraction(x)

    def reduce(self, x):
        return x

    def add(self, a, b):
        return a + b

    def neg(self, a):
        return -a

    def mul(self, a, b):
        return a * b

    def inv(self, a):
        if a == 0:
            raise DivisionByZero("inverse of 0")
        return 1 / Fraction(a)

    def signed(self, a):
        return a

    def __eq__(self, other):
        return isinstance(other, Rationals)

    def __hash__(self):
        return hash("Q")

    def __repr__(self):
        return "Q"


QQ = Rationals()


def field_from_spec(spec):
    """Accept 'Q', 'F(p)', an int p, or a field object."""
    if isinstance(spec, (PrimeField, Rationals)):
        return spec
    if isinstance(spec, int):
        return PrimeField(spec)
    s = str(spec).strip()
    if s in ("Q", "QQ"):
        return QQ
    if s.startswith("F(") and s.endswith(")"):
        return PrimeField(int(s[2:-1]))
    if s.isdigit():
        return PrimeField(int(s))
    raise ValueError(f"unknown field {spec!r}")
