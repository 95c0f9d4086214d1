"""Exact multivariate polynomials and the polynomial expression parser."""

import re
from fractions import Fraction

from .errors import DivisionByZero, RingMismatch


class Polynomial:
    """An immutable polynomial: a dict exponent-tuple -> nonzero coefficient."""

    __slots__ = ("ring", "terms", "_sorted", "_hash")

    def __init__(self, ring, terms):
        self.ring = ring
        self.terms = terms
        self._sorted = None
        self._hash = None

    @classmethod
    def from_terms(cls, ring, pairs):
        """Build from (exp, coeff) pairs, merging duplicates and dropping zeros."""
        K = ring.field
        acc = {}
        for e, c in pairs:
            e = tuple(e)
            acc[e] = acc.get(e, 0) + c
        return cls(ring, {e: K.reduce(K(c)) for e, c in acc.items() if K(c)})

    # -- basic queries --------------------------------------------------
    def is_zero(self):
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def is_constant(self):
        return all(not any(e) for e in self.terms)

    def constant_value(self):
        return self.terms.get(self.ring.zero_exp(), self.ring.field.zero)

    def sorted_terms(self):
        """(exp, coeff) pairs, strictly decreasing in the term order."""
        if self._sorted is None:
            key = self.ring.monomial_key
            self._sorted = tuple(
                sorted(self.terms.items(), key=lambda t: key(t[0]), reverse=True)
            )
        return self._sorted

    def leading_term(self):
        return self.sorted_terms()[0]

    def leading_monomial(self):
        return self.leading_term()[0]

    def leading_coefficient(self):
        return self.leading_term()[1]

    def degree(self):
        """Maximal weighted degree; -1 for the zero polynomial."""
        if not self.terms:
            return -1
        return max(self.ring.wdeg(e) for e in self.terms)

    def is_homogeneous(self):
        degs = {self.ring.wdeg(e) for e in self.terms}
        return len(degs) <= 1

    def homogeneous_degree(self):
        degs = {self.ring.wdeg(e) for e in self.terms}
        if len(degs) != 1:
            return None
        return degs.pop()

    def support(self):
        return {i for e in self.terms for i, x in enumerate(e) if x}

    # -- arithmetic -----------------------------------------------------
    def _coerce(self, other):
        if isinstance(other, Polynomial):
            if other.ring != self.ring:
                raise RingMismatch(f"{self.ring} vs {other.ring}")
            return other
        if isinstance(other, (int, Fraction)):
            return self.ring(other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        red = self.ring.field.reduce
        t = dict(self.terms)
        for e, c in other.terms.items():
            v = red(t.get(e, 0) + c)
            if v:
                t[e] = v
            else:
                t.pop(e, None)
        return Polynomial(self.ring, t)

    __radd__ = __add__

    def __neg__(self):
        red = self.ring.field.reduce
        return Polynomial(self.ring, {e: red(-c) for e, c in self.terms.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        red = self.ring.field.reduce
        t = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                t[e] = t.get(e, 0) + c1 * c2
        return Polynomial(self.ring, {e: red(c) for e, c in t.items() if red(c)})

    __rmul__ = __mul__

    def scale(self, c):
        K = self.ring.field
        c = K(c)
        if not c:
            return self.ring.zero()
        return Polynomial(self.ring, {e: K.reduce(v * c) for e, v in self.terms.items()})

    def mul_monomial(self, exp, c=1):
        K = self.ring.field
        c = K(c)
        return Polynomial(
            self.ring,
            {tuple(a + b for a, b in zip(e, exp)): K.reduce(v * c) for e, v in self.terms.items()}
            if c
            else {},
        )

    def __pow__(self, n):
        if not isinstance(n, int) or n < 0:
            raise ValueError("exponent must be a natural number")
        result = self.ring.one()
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def divide_exact(self, divisor):
        """Return q with self == q * divisor, or None when the division is not exact."""
        if divisor.is_zero():
            raise DivisionByZero("division by the zero polynomial")
        K = self.ring.field
        key = self.ring.monomial_key
        lm, lc = divisor.leading_term()
        inv = K.inv(lc)
        rem = dict(self.terms)
        quot = {}
        while rem:
            e = max(rem, key=key)
            c = rem[e]
            m = tuple(a - b for a, b in zip(e, lm))
            if any(x < 0 for x in m):
                return None
            q = K.reduce(c * inv)
            quot[m] = q
            for de, dc in divisor.terms.items():
                ne = tuple(a + b for a, b in zip(de, m))
                v = K.reduce(rem.get(ne, 0) - q * dc)
                if v:
                    rem[ne] = v
                else:
                    rem.pop(ne, None)
        return Polynomial(self.ring, quot)

    def derivative(self, i):
        K = self.ring.field
        t = {}
        for e, c in self.terms.items():
            if e[i]:
                v = K.reduce(c * e[i])
                if v:
                    ne = list(e)
                    ne[i] -= 1
                    t[tuple(ne)] = v
        return Polynomial(self.ring, t)

    def frobenius(self, q):
        """Apply the ring map x_i -> x_i^q, c -> c^q (the Frobenius power when q = p^e)."""
        K = self.ring.field
        t = {}
        for e, c in self.terms.items():
            ne = tuple(q * a for a in e)
            t[ne] = K.reduce(c ** q) if K.p else c ** q
        return Polynomial(self.ring, {e: c for e, c in t.items() if c})

    # -- comparison / hashing --------------------------------------------
    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = self.ring(other)
        if not isinstance(other, Polynomial):
            return NotImplemented
        return self.ring == other.ring and self.terms == other.terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self.terms.items()))
        return self._hash

    # -- printing -------------------------------------------------------
    def __str__(self):
        if not self.terms:
            return "0"
        K = self.ring.field
        names = self.ring.variables
        out = []
        for e, c in self.sorted_terms():
            c = K.signed(c)
            neg = c < 0
            a = -c if neg else c
            mono = "*".join(
                n if x == 1 else f"{n}^{x}" for n, x in zip(names, e) if x
            )
            if not mono:
                body = str(a)
            elif a == 1:
                body = mono
            else:
                body = f"{a}*{mono}"
            if not out:
                out.append(("-" if neg else "") + body)
            else:
                out.append(("- " if neg else "+ ") + body)
        return " ".join(out)

    def __repr__(self):
        return f"Polynomial({self})"


# -- tokens and expression parsing ---------------------------------------------

_TOKEN_RE = re.compile(
    r"(?P<ws>[ \t\r]+)|(?P<nl>\n)|(?P<comment>#[^\n]*)"
    r"|(?P<int>\d+)|(?P<name>[A-Za-z_][A-Za-z_0-9]*)"
    r"|(?P<arrow>->)|(?P<op>[-+*^/()\[\],;=:])"
)


class ParseError(Exception):
    def __init__(self, message, line=None, col=None, token=None):
        loc = f" at line {line}, column {col}" if line is not None else ""
        tok = f" (near {token!r})" if token is not None else ""
        super().__init__(f"{message}{loc}{tok}")
        self.message = message
        self.line = line
        self.col = col
        self.token = token


def tokenize(text):
    """Yield (kind, value, line, col); kinds: int, name, op, eof."""
    tokens = []
    line, line_start, pos = 1, 0, 0
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        if not m:
            raise ParseError("unexpected character", line, pos - line_start + 1, text[pos])
        kind = m.lastgroup
        if kind == "nl":
            line += 1
            line_start = m.end()
        elif kind == "int":
            tokens.append(("int", m.group(), line, pos - line_start + 1))
        elif kind == "name":
            tokens.append(("name", m.group(), line, pos - line_start + 1))
        elif kind in ("op", "arrow"):
            tokens.append(("op", m.group(), line, pos - line_start + 1))
        pos = m.end()
    tokens.append(("eof", "", line, pos - line_start + 1))
    return tokens


class TokenStream:
    def __init__(self, tokens):
        self.tokens = tokens
        self.i = 0

    def peek(self, k=0):
        return self.tokens[min(self.i + k, len(self.tokens) - 1)]

    def next(self):
        t = self.tokens[self.i]
        if t[0] != "eof":
            self.i += 1
        return t

    def at(self, value, kind=None):
        t = self.peek()
        return t[1] == value and (kind is None or t[0] == kind) and t[0] != "eof"

    def expect(self, value):
        t = self.next()
        if t[1] != value or t[0] == "eof":
            raise ParseError(f"expected {value!r}", t[2], t[3], t[1] or "end of input")
        return t

    def error(self, message, tok=None):
        t = tok or self.peek()
        return ParseError(message, t[2], t[3], t[1] or "end of input")


def parse_expression(ts, ring):
    """expr := ['-'] term (('+'|'-') term)* over the ring's variables."""
    neg = False
    if ts.at("-", "op"):
        ts.next()
        neg = True
    acc = _parse_term(ts, ring)
    if neg:
        acc = -acc
    while ts.at("+", "op") or ts.at("-", "op"):
        op = ts.next()[1]
        t = _parse_term(ts, ring)
        acc = acc + t if op == "+" else acc - t
    return acc


def _parse_term(ts, ring):
    acc = _parse_power(ts, ring)
    while True:
        if ts.at("*", "op"):
            ts.next()
            acc = acc * _parse_power(ts, ring)
        elif ts.at("/", "op"):
            tok = ts.next()
            d = _parse_power(ts, ring)
            if not d.is_constant() or d.is_zero():
                raise ts.error("division only by nonzero constants", tok)
            acc = acc.scale(ring.field.inv(d.constant_value()))
        elif ts.peek()[0] in ("name", "int") or ts.at("(", "op"):
            # implicit multiplication, e.g. "2x" or "x y"
            if ts.peek()[0] == "name" and ts.peek()[1] not in ring.variables:
                break
            acc = acc * _parse_power(ts, ring)
        else:
            break
    return acc


def _parse_power(ts, ring):
    base = _parse_atom(ts, ring)
    if ts.at("^", "op"):
        ts.next()
        tok = ts.next()
        if tok[0] != "int":
            raise ts.error("expected integer exponent", tok)
        base = base ** int(tok[1])
    return base


def _parse_atom(ts, ring):
    tok = ts.next()
    if tok[0] == "int":
        return ring(int(tok[1]))
    if tok[0] == "name":
        if tok[1] not in ring.variables:
            raise ParseError(f"unknown variable {tok[1]!r}", tok[2], tok[3], tok[1])
        return ring.gen(tok[1])
    if tok[1] == "(" and tok[0] == "op":
        e = parse_expression(ts, ring)
        ts.expect(")")
        return e
    if tok[1] == "-" and tok[0] == "op":
        return -_parse_power(ts, ring)
    raise ParseError("expected a polynomial", tok[2], tok[3], tok[1] or "end of input")


def parse_polynomial(ring, text):
    ts = TokenStream(tokenize(text))
    p = parse_expression(ts, ring)
    if ts.peek()[0] != "eof":
        raise ts.error("trailing input after polynomial")
    return p
