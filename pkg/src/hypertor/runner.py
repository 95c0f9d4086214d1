"""Executes parsed scripts and wraps every command result in a ResultDocument."""

import json
import warnings
from dataclasses import dataclass

from . import __version__
from .dsl import Binding, Command, IntLit, MatrixLit, NameRef, RingDecl, parse_script, statement_text
from .errors import CharacteristicWarning, HypertorError
from .invariants import (
    chi,
    check_depth_formula,
    decency_check,
    depth,
    frobenius_tor_table,
    ipd_locus_dim,
    rigidity_probe,
    singular_locus,
    theta,
    tor_table,
    verify_exact,
)
from .matrix import PolyMatrix
from .modules import ModulePresentation, direct_sum, tensor
from .resolution import (
    detect_periodicity,
    extract_matrix_factorization,
    resolve_over_hypersurface,
)


class ScriptRuntimeError(HypertorError):
    """An engine error raised while running a command, tagged with its source location."""

    def __init__(self, cause, line, col, command):
        super().__init__(f"{type(cause).__name__}: {cause} (line {line}, column {col})")
        self.cause = cause
        self.line = line
        self.col = col
        self.command = command


@dataclass
class ResultDocument:
    command: str
    ring: dict
    payload: dict
    engine_version: str = __version__

    @property
    def failed(self):
        return "error" in self.payload

    def to_dict(self):
        return {
            "command": self.command,
            "ring": self.ring,
            "payload": self.payload,
            "engineVersion": self.engine_version,
        }

    def to_json(self, indent=None):
        return json.dumps(self.to_dict(), indent=indent, sort_keys=True)


def matrix_rows(A):
    return [[str(e) for e in row] for row in A.entries]


def default_steps(ring):
    """2 * ceil((dim R + 2) / 2) + 5."""
    return 2 * (-(-(ring.dim + 2) // 2)) + 5


class Session:
    """Holds ring and module bindings across scripts and runs commands in order."""

    def __init__(self, default_field="F(32003)", default_order="grevlex", max_steps=None):
        self.default_field = default_field
        self.default_order = default_order
        self.max_steps = max_steps
        self.rings = {}
        self.modules = {}
        self.active = None

    def parse(self, text):
        return parse_script(text, self.default_field, self.default_order)

    def run_text(self, text, record_errors=False):
        return self.run(self.parse(text), record_errors)

    def run(self, script, record_errors=False):
        docs = []
        for s in script.statements:
            if isinstance(s, RingDecl):
                self.rings[s.name] = s.spec
                self.active = s.name
            elif isinstance(s, Binding):
                self.modules[s.name] = self._build(s)
            elif isinstance(s, Command):
                docs.append(self._command(s, record_errors))
        return docs

    # -- modules ------------------------------------------------------------
    def _matrix(self, ring, m):
        S = ring.ambient
        ncols = len(m.rows[0]) if m.rows else 0
        return PolyMatrix(S, [list(r) for r in m.rows], len(m.rows), ncols)

    def _build(self, b):
        ring = self.rings[b.ring]
        e = b.expr
        if e.kind == "ideal":
            M = ModulePresentation.cyclic(ring, list(e.args))
        elif e.kind == "coker":
            M = ModulePresentation.cokernel(ring, self._matrix(ring, e.args[0]))
        elif e.kind == "image":
            M = ModulePresentation.image(ring, self._matrix(ring, e.args[0]))
        elif e.kind == "free":
            M = ModulePresentation.free(ring, e.args[0].value)
        elif e.kind == "dirsum":
            M = direct_sum(*[self.modules[a.name] for a in e.args])
        elif e.kind == "tensor":
            M = tensor(self.modules[e.args[0].name], self.modules[e.args[1].name])
        else:
            M = self.modules[e.args[0].name]
        return M.with_name(b.name)

    # -- commands -----------------------------------------------------------
    def _command(self, c, record_errors):
        ring = self.rings[c.ring]
        echo = statement_text(c)
        try:
            payload = self._dispatch(c, ring)
        except HypertorError as err:
            if not record_errors:
                raise ScriptRuntimeError(err, c.line, c.col, echo) from err
            payload = {
                "error": {
                    "type": type(err).__name__,
                    "message": str(err),
                    "line": c.line,
                    "col": c.col,
                }
            }
        return ResultDocument(echo, ring.describe(), payload)

    def _dispatch(self, c, ring):
        vals = []
        for a in c.args:
            if isinstance(a, NameRef):
                vals.append(self.modules[a.name])
            elif isinstance(a, IntLit):
                vals.append(a.value)
            elif isinstance(a, MatrixLit):
                vals.append(self._matrix(ring, a))
        handler = getattr(self, "_cmd_" + c.name)
        return handler(ring, *vals)

    def _steps(self, ring, steps=None):
        if steps is not None:
            return steps
        return self.max_steps if self.max_steps is not None else default_steps(ring)

    def _cmd_theta(self, ring, M, N):
        return theta(M, N).to_dict()

    def _cmd_chi(self, ring, M, N, i=0):
        return chi(M, N, i).to_dict()

    def _cmd_tor_table(self, ring, M, N, up_to):
        return tor_table(M, N, up_to).to_dict()

    def _cmd_resolve(self, ring, M, steps=None):
        n = self._steps(ring, steps)
        res = resolve_over_hypersurface(M, n)
        diffs = res.differentials[:n]
        complete = res.complete and len(diffs) == len(res.differentials)
        out = {
            "betti": res.betti()[: len(diffs) + 1],
            "twists": [list(t) for t in res.twists[: len(diffs) + 1]],
            "complete": complete,
            "differentials": [matrix_rows(d) for d in diffs],
        }
        if complete:
            out["projectiveDimension"] = res.projective_dimension()
        return out

    def _cmd_periodicity(self, ring, M, steps=None):
        n = self._steps(ring, steps)
        res = resolve_over_hypersurface(M, n)
        return detect_periodicity(res, n).to_dict()

    def _cmd_mf(self, ring, M, steps=None):
        n = self._steps(ring, steps)
        res = resolve_over_hypersurface(M, n)
        report = detect_periodicity(res, n)
        A, B = extract_matrix_factorization(res, report)
        return {
            "index": report.index,
            "period": report.period,
            "size": A.nrows,
            "A": matrix_rows(A),
            "B": matrix_rows(B),
            "verified": True,
        }

    def _cmd_depth(self, ring, M):
        return {"depth": depth(M)}

    def _cmd_depth_formula(self, ring, M, N, window=None):
        return check_depth_formula(M, N, window=window)

    def _cmd_decency(self, ring, M, N):
        return decency_check(M, N)

    def _cmd_rigidity_probe(self, ring, M, N, up_to):
        w = rigidity_probe(M, N, up_to)
        return {"witness": list(w) if w else None, "upTo": up_to}

    def _cmd_sing(self, ring):
        with warnings.catch_warnings(record=True) as caught:
            warnings.simplefilter("always")
            out = dict(singular_locus(ring))
        notes = [str(w.message) for w in caught if issubclass(w.category, CharacteristicWarning)]
        if notes:
            out["warnings"] = notes
        return out

    def _cmd_ipd(self, ring, M):
        return {"dim": ipd_locus_dim(M)}

    def _cmd_frob_tor(self, ring, M, e, up_to):
        return frobenius_tor_table(M, e, up_to).to_dict()

    def _cmd_length(self, ring, M):
        return {"length": M.length()}

    def _cmd_dim(self, ring, M):
        return {"dim": M.dim()}

    def _cmd_verify_exact(self, ring, *chain):
        mods, mats = list(chain[0::2]), list(chain[1::2])
        spots = verify_exact(mods, mats)
        return {"exact": spots, "allExact": all(spots)}


def run_script(text, **kwargs):
    """Parse and run a script in a fresh session; returns the ResultDocument list."""
    return Session(**kwargs).run_text(text)


def format_text(doc):
    """One human-readable line per result."""
    p = doc.payload
    if "error" in p:
        return f"{doc.command}  ERROR {p['error']['type']}: {p['error']['message']}"
    if "entries" in p:
        cells = [str(e.get("length", f"POSDIM({e.get('posdim')})")) for e in p["entries"]]
        return f"{doc.command}  Tor lengths: {' '.join(cells)}  fli={p['fliIndex']}"
    parts = []
    for k, v in p.items():
        if k in ("differentials", "A", "B", "evidence", "twists"):
            continue
        parts.append(f"{k}={json.dumps(v)}")
    text = f"{doc.command}  " + " ".join(parts)
    if "A" in p:
        text += f"\n  A = {p['A']}\n  B = {p['B']}"
    if "differentials" in p:
        text += "".join(f"\n  d_{i + 1} = {d}" for i, d in enumerate(p["differentials"]))
    return text
