"""The script language: parser, AST and canonical printer.

    ring R = F(32003)[x, y, u, v] / (x*u - y*v);
    M = ideal(x, y);          # the cyclic module R/(x, y)
    N = coker [[x, v]];
    theta(M, N);

Names are checked at parse time: modules must be bound before use and every
command's modules must live over one ring.
"""

from dataclasses import dataclass, field

from .errors import RingMismatch
from .field import QQ, PrimeField, field_from_spec
from .poly import ParseError, TokenStream, parse_expression, tokenize
from .ring import PolynomialRing, RingSpec


class ScriptSyntaxError(ParseError):
    pass


class UnboundName(ParseError):
    pass


class ScriptRingMismatch(ParseError, RingMismatch):
    pass


# -- AST ---------------------------------------------------------------------


@dataclass(frozen=True)
class RingDecl:
    name: str
    field: str
    variables: tuple
    weights: tuple
    f: object
    order: str = "grevlex"
    spec: object = field(default=None, compare=False, repr=False)
    line: int = field(default=0, compare=False)
    col: int = field(default=0, compare=False)


@dataclass(frozen=True)
class NameRef:
    name: str
    line: int = field(default=0, compare=False)
    col: int = field(default=0, compare=False)


@dataclass(frozen=True)
class IntLit:
    value: int
    line: int = field(default=0, compare=False)
    col: int = field(default=0, compare=False)


@dataclass(frozen=True)
class MatrixLit:
    rows: tuple  # tuple of tuples of Polynomial
    line: int = field(default=0, compare=False)
    col: int = field(default=0, compare=False)


@dataclass(frozen=True)
class ModuleExpr:
    """kind: ideal | coker | image | free | dirsum | tensor | alias."""

    kind: str
    args: tuple
    line: int = field(default=0, compare=False)
    col: int = field(default=0, compare=False)


@dataclass(frozen=True)
class Binding:
    name: str
    expr: ModuleExpr
    ring: str
    line: int = field(default=0, compare=False)
    col: int = field(default=0, compare=False)


@dataclass(frozen=True)
class Command:
    name: str
    args: tuple
    ring: str
    line: int = field(default=0, compare=False)
    col: int = field(default=0, compare=False)


@dataclass(frozen=True)
class SessionScript:
    statements: tuple

    def commands(self):
        return [s for s in self.statements if isinstance(s, Command)]


# argument kinds: m = module, i = integer, a = matrix; '?' marks an optional tail
COMMANDS = {
    "theta": ("mm",),
    "chi": ("mm", "mmi"),
    "tor_table": ("mmi",),
    "resolve": ("m", "mi"),
    "periodicity": ("m", "mi"),
    "mf": ("m", "mi"),
    "depth": ("m",),
    "depth_formula": ("mm", "mmi"),
    "decency": ("mm",),
    "rigidity_probe": ("mmi",),
    "sing": ("",),
    "ipd": ("m",),
    "frob_tor": ("mii",),
    "length": ("m",),
    "dim": ("m",),
    "verify_exact": None,
}

MODULE_FORMS = ("ideal", "coker", "image", "free", "dirsum", "tensor")


# -- parser -------------------------------------------------------------------


class _Parser:
    def __init__(self, text, default_field="F(32003)", default_order="grevlex"):
        try:
            self.ts = TokenStream(tokenize(text))
        except ParseError as e:
            raise ScriptSyntaxError(e.message, e.line, e.col, e.token) from None
        self.default_field = default_field
        self.default_order = default_order
        self.rings = {}
        self.modules = {}  # name -> ring name
        self.active = None

    def error(self, message, tok=None, cls=ScriptSyntaxError):
        t = tok or self.ts.peek()
        return cls(message, t[2], t[3], t[1] or "end of input")

    def expect(self, value):
        t = self.ts.next()
        if t[1] != value or t[0] == "eof":
            raise self.error(f"expected {value!r}", t)
        return t

    def name(self):
        t = self.ts.next()
        if t[0] != "name":
            raise self.error("expected a name", t)
        return t

    def integer(self):
        t = self.ts.next()
        if t[0] != "int":
            raise self.error("expected an integer", t)
        return int(t[1])

    def end_statement(self):
        if self.ts.at(";", "op"):
            self.ts.next()
        elif self.ts.peek()[0] != "eof":
            raise self.error("expected ';'")

    def parse(self):
        out = []
        while self.ts.peek()[0] != "eof":
            if self.ts.at(";", "op"):
                self.ts.next()
                continue
            out.append(self.statement())
        return SessionScript(tuple(out))

    def statement(self):
        t = self.ts.peek()
        if t[0] == "name" and t[1] == "ring" and self.ts.peek(1)[0] == "name":
            return self.ring_decl()
        if t[0] == "name" and self.ts.peek(1)[1] == "=":
            return self.binding()
        if t[0] == "name" and self.ts.peek(1)[1] == "(":
            return self.command()
        raise self.error("expected a ring declaration, binding or command", t)

    # ring R = F(p)[x, y:2] / (f) order lex;
    def ring_decl(self):
        start = self.ts.next()
        name = self.name()[1]
        self.expect("=")
        fld = self.default_field
        t = self.ts.peek()
        if t[0] == "name" and t[1] == "Q":
            self.ts.next()
            fld = "Q"
        elif t[0] == "name" and t[1] == "F":
            self.ts.next()
            self.expect("(")
            ptok = self.ts.peek()
            p = self.integer()
            try:
                PrimeField(p)
            except ValueError:
                raise self.error(f"{p} is not prime", ptok) from None
            self.expect(")")
            fld = f"F({p})"
        elif t[1] != "[":
            raise self.error("expected a field (Q or F(p)) or '['", t)
        self.expect("[")
        variables, weights = [], []
        while True:
            vt = self.name()
            if vt[1] in variables:
                raise self.error(f"duplicate variable {vt[1]!r}", vt)
            variables.append(vt[1])
            w = 1
            if self.ts.at(":", "op"):
                self.ts.next()
                w = self.integer()
                if w < 1:
                    raise self.error("weights must be positive")
            weights.append(w)
            if self.ts.at(",", "op"):
                self.ts.next()
                continue
            break
        self.expect("]")
        order = self.default_order
        S = None
        f = None
        if self.ts.at("/", "op"):
            self.ts.next()
            self.expect("(")
            S = self._ring(fld, variables, weights, order)
            ftok = self.ts.peek()
            f = self.poly(S)
            self.expect(")")
            if f.is_constant() and f:
                raise self.error("the equation must not be a nonzero constant", ftok)
        if self.ts.peek()[0] == "name" and self.ts.peek()[1] == "order":
            self.ts.next()
            ot = self.name()
            if ot[1] not in ("grevlex", "lex"):
                raise self.error("order must be grevlex or lex", ot)
            order = ot[1]
        S2 = self._ring(fld, variables, weights, order)
        if f is not None:
            f = S2(str(f)) if S2 != S else f
        spec = RingSpec(S2, f if f else None)
        self.end_statement()
        self.rings[name] = spec
        self.active = name
        return RingDecl(
            name,
            fld,
            tuple(variables),
            tuple(weights),
            spec.f,
            order,
            spec,
            start[2],
            start[3],
        )

    def _ring(self, fld, variables, weights, order):
        K = QQ if fld == "Q" else field_from_spec(fld)
        w = weights if any(x != 1 for x in weights) else None
        return PolynomialRing(K, variables, w, order)

    def ring_spec(self, tok=None):
        if self.active is None:
            raise self.error("no ring declared", tok, UnboundName)
        return self.rings[self.active]

    def poly(self, S):
        try:
            return parse_expression(self.ts, S)
        except ParseError as e:
            cls = UnboundName if e.message.startswith("unknown variable") else ScriptSyntaxError
            raise cls(e.message, e.line, e.col, e.token) from None

    def matrix(self):
        tok = self.expect("[")
        S = self.ring_spec(tok).ambient
        rows = []
        while True:
            self.expect("[")
            row = []
            if not self.ts.at("]", "op"):
                while True:
                    row.append(self.poly(S))
                    if self.ts.at(",", "op"):
                        self.ts.next()
                        continue
                    break
            self.expect("]")
            rows.append(tuple(row))
            if self.ts.at(",", "op"):
                self.ts.next()
                continue
            break
        self.expect("]")
        if len({len(r) for r in rows}) > 1:
            raise self.error("rows of a matrix must have equal length", tok)
        return MatrixLit(tuple(rows), tok[2], tok[3])

    def module_ref(self):
        t = self.name()
        if t[1] not in self.modules:
            raise self.error(f"unbound name {t[1]!r}", t, UnboundName)
        return NameRef(t[1], t[2], t[3])

    def check_rings(self, refs, tok):
        rings = {self.modules[r.name] for r in refs}
        if len(rings) > 1:
            raise self.error("modules over different rings", tok, ScriptRingMismatch)
        return rings.pop() if rings else self.active

    def binding(self):
        nt = self.name()
        self.expect("=")
        self.ring_spec(nt)
        t = self.ts.peek()
        if t[0] != "name":
            raise self.error("expected a module expression", t)
        kind = t[1]
        if kind in ("coker", "image"):
            self.ts.next()
            paren = self.ts.at("(", "op")
            if paren:
                self.ts.next()
            m = self.matrix()
            if paren:
                self.expect(")")
            expr = ModuleExpr(kind, (m,), t[2], t[3])
            ring = self.active
        elif kind in ("ideal", "free", "dirsum", "tensor") and self.ts.peek(1)[1] == "(":
            self.ts.next()
            self.expect("(")
            args = []
            if kind == "ideal":
                S = self.ring_spec(t).ambient
                if not self.ts.at(")", "op"):
                    while True:
                        args.append(self.poly(S))
                        if not self.ts.at(",", "op"):
                            break
                        self.ts.next()
                ring = self.active
            elif kind == "free":
                args.append(IntLit(self.integer(), t[2], t[3]))
                ring = self.active
            else:
                while True:
                    args.append(self.module_ref())
                    if not self.ts.at(",", "op"):
                        break
                    self.ts.next()
                if kind == "tensor" and len(args) != 2:
                    raise self.error("tensor takes two modules", t)
                ring = self.check_rings(args, t)
            self.expect(")")
            expr = ModuleExpr(kind, tuple(args), t[2], t[3])
        else:
            ref = self.module_ref()
            expr = ModuleExpr("alias", (ref,), t[2], t[3])
            ring = self.modules[ref.name]
        self.end_statement()
        self.modules[nt[1]] = ring
        return Binding(nt[1], expr, ring, nt[2], nt[3])

    def command(self):
        ct = self.name()
        if ct[1] not in COMMANDS:
            raise self.error(f"unknown command {ct[1]!r}", ct)
        self.expect("(")
        args = []
        if not self.ts.at(")", "op"):
            while True:
                t = self.ts.peek()
                if t[0] == "int":
                    args.append(IntLit(self.integer(), t[2], t[3]))
                elif t[1] == "[":
                    args.append(self.matrix())
                elif t[0] == "name":
                    args.append(self.module_ref())
                else:
                    raise self.error("expected an argument", t)
                if not self.ts.at(",", "op"):
                    break
                self.ts.next()
        self.expect(")")
        self._check_signature(ct, args)
        refs = [a for a in args if isinstance(a, NameRef)]
        if not refs:
            self.ring_spec(ct)
        ring = self.check_rings(refs, ct)
        self.end_statement()
        return Command(ct[1], tuple(args), ring, ct[2], ct[3])

    def _check_signature(self, ct, args):
        kinds = "".join(
            "m" if isinstance(a, NameRef) else "i" if isinstance(a, IntLit) else "a" for a in args
        )
        sigs = COMMANDS[ct[1]]
        if sigs is None:
            ok = len(kinds) >= 3 and len(kinds) % 2 == 1
            ok = ok and all(k == ("m" if n % 2 == 0 else "a") for n, k in enumerate(kinds))
            want = "module, matrix, module, ..."
        else:
            ok = kinds in sigs
            names = {"m": "module", "i": "integer", "a": "matrix"}
            want = " | ".join(", ".join(names[k] for k in s) or "no arguments" for s in sigs)
        if not ok:
            raise self.error(f"{ct[1]} expects ({want})", ct)


def parse_script(text, default_field="F(32003)", default_order="grevlex"):
    """Parse a script into a SessionScript, checking name binding and ring agreement."""
    return _Parser(text, default_field, default_order).parse()


# -- printer --------------------------------------------------------------------


def _matrix_text(m):
    return "[" + ", ".join("[" + ", ".join(str(p) for p in row) + "]" for row in m.rows) + "]"


def _arg_text(a):
    if isinstance(a, NameRef):
        return a.name
    if isinstance(a, IntLit):
        return str(a.value)
    if isinstance(a, MatrixLit):
        return _matrix_text(a)
    return str(a)


def statement_text(s):
    if isinstance(s, RingDecl):
        vs = ", ".join(v if w == 1 else f"{v}:{w}" for v, w in zip(s.variables, s.weights))
        out = f"ring {s.name} = {s.field}[{vs}]"
        if s.f is not None:
            out += f" / ({s.f})"
        if s.order != "grevlex":
            out += f" order {s.order}"
        return out + ";"
    if isinstance(s, Binding):
        e = s.expr
        if e.kind in ("coker", "image"):
            body = f"{e.kind} {_matrix_text(e.args[0])}"
        elif e.kind == "alias":
            body = e.args[0].name
        else:
            body = f"{e.kind}(" + ", ".join(_arg_text(a) for a in e.args) + ")"
        return f"{s.name} = {body};"
    if isinstance(s, Command):
        return f"{s.name}(" + ", ".join(_arg_text(a) for a in s.args) + ");"
    raise TypeError(f"not a statement: {s!r}")


def print_script(script):
    """Canonical text; parse(print(s)) reproduces s."""
    return "\n".join(statement_text(s) for s in script.statements) + (
        "\n" if script.statements else ""
    )
