"""Minimal graded free resolutions over S and over R = S/(f), with detection of the
eventually 2-periodic tail and extraction of the matrix factorization it carries."""

import threading
from dataclasses import dataclass

from .errors import FactorizationCheckFailed, NotHomogeneous, WindowTooShort
from .groebner import ModuleOrder, groebner_vectors, syzygy_vectors, vector_degree
from .matrix import PolyMatrix
from .modules import ModulePresentation


def _f_vectors(f, rank):
    if f is None:
        return []
    return [{(i, e): c for e, c in f.terms.items()} for i in range(rank)]


def linear_rref(vectors, order):
    """Reduced row echelon form over k of a list of sparse vectors.

    Pivots are leading terms; each pivot term appears in exactly one output vector.
    The result is sorted by decreasing leading term, so it depends only on the span.
    """
    K = order.field
    key = order.key
    pivots = {}
    for v in vectors:
        v = dict(v)
        for t, p in pivots.items():
            c = v.get(t)
            if c:
                for s, x in p.items():
                    y = K.reduce(v.get(s, 0) - c * x)
                    if y:
                        v[s] = y
                    else:
                        v.pop(s, None)
        if not v:
            continue
        lt = max(v, key=key)
        inv = K.inv(v[lt])
        v = {s: K.reduce(x * inv) for s, x in v.items()}
        for t in list(pivots):
            p = pivots[t]
            c = p.get(lt)
            if c:
                for s, x in v.items():
                    y = K.reduce(p.get(s, 0) - c * x)
                    if y:
                        p[s] = y
                    else:
                        p.pop(s, None)
        pivots[lt] = v
    return [pivots[t] for t in sorted(pivots, key=key, reverse=True)]


def canonical_minimal_generators(candidates, base, order):
    """Minimal homogeneous generators of span(candidates) + span(base), modulo span(base).

    Degree by degree: normal forms modulo the Groebner basis of everything kept so far,
    then linear row reduction. The output depends only on the submodule and the order.
    """
    bydeg = {}
    for c in candidates:
        if c:
            bydeg.setdefault(vector_degree(c, order), []).append(c)
    kept = []
    eng = groebner_vectors(list(base), order)
    for d in sorted(bydeg):
        nfs = [eng.reduce(c) for c in bydeg[d]]
        rows = linear_rref([v for v in nfs if v], order)
        if rows:
            kept.extend(rows)
            eng = groebner_vectors(list(base) + kept, order)
    return kept


def _unimodular_inverse(C):
    """Inverse of a square polynomial matrix by Gauss-Jordan with constant pivots.

    Returns None when some column has no constant pivot.
    """
    S = C.ring
    K = S.field
    n = C.nrows
    a = [list(r) + [S.one() if i == j else S.zero() for j in range(n)] for i, r in enumerate(C.entries)]
    for col in range(n):
        piv = None
        for r in range(col, n):
            e = a[r][col]
            if e and e.is_constant():
                piv = r
                break
        if piv is None:
            return None
        a[col], a[piv] = a[piv], a[col]
        inv = K.inv(a[col][col].constant_value())
        a[col] = [e.scale(inv) for e in a[col]]
        for r in range(n):
            if r != col and a[r][col]:
                q = a[r][col]
                a[r] = [x - q * y if y else x for x, y in zip(a[r], a[col])]
    inv_rows = [row[n:] for row in a]
    return PolyMatrix(S, inv_rows, n, n)


def _divide_matrix(P, f):
    rows = []
    for row in P.entries:
        out = []
        for e in row:
            q = e.divide_exact(f) if e else e
            if q is None:
                return None
            out.append(q)
        rows.append(out)
    return PolyMatrix(P.ring, rows, P.nrows, P.ncols)


def _require_graded_f(ring):
    if ring.f is not None and ring.f.homogeneous_degree() is None:
        raise NotHomogeneous("hypersurface equation is not homogeneous")


class FreeResolution:
    """A minimal graded free resolution F_0 <- F_1 <- ..., computed lazily.

    differentials[i - 1] is d_i : F_i -> F_{i-1}; twists[i] lists the degrees of the
    basis of F_i. Over R all computation happens on S-lifts modulo f.
    """

    def __init__(self, module, over=None):
        module.require_homogeneous()
        if over is None:
            over = module.over
        ring = module.ring
        if over == "R":
            _require_graded_f(ring)
        self.ring = ring
        self.over = over
        self.f = ring.f if over == "R" else None
        self.module = ModulePresentation(ring, module.relations, module.generators, over).prune()
        self.S = ring.ambient
        self.differentials = []
        self.twists = [tuple(self.module.degrees)]
        self.rescaled = []
        self.complete = False
        self._lock = threading.RLock()

    # -- queries ------------------------------------------------------------
    @property
    def length(self):
        return len(self.differentials)

    def rank(self, i):
        if i < len(self.twists):
            return len(self.twists[i])
        return 0 if self.complete else None

    def betti(self):
        return [len(t) for t in self.twists]

    def differential(self, i):
        self.ensure(i)
        if i <= len(self.differentials):
            return self.differentials[i - 1]
        b = self.rank(i - 1) or 0
        return PolyMatrix.zeros(self.S, b, 0, self.twists[i - 1] if b else [], [])

    def projective_dimension(self):
        """Projective dimension once the resolution has terminated, else None."""
        if not self.complete:
            return None
        return len(self.twists) - 1

    def __repr__(self):
        state = "complete" if self.complete else "partial"
        return f"<FreeResolution over {self.over} betti={self.betti()} {state}>"

    # -- construction -------------------------------------------------------
    def _order(self, twists):
        return ModuleOrder(self.S, twists, None, len(twists))

    def _matrix(self, gens, rows_tw, order):
        cd = [vector_degree(g, order) for g in gens]
        return PolyMatrix.from_columns(self.S, len(rows_tw), gens, rows_tw, cd)

    def _step(self):
        j = len(self.differentials)
        tw_prev = self.twists[-1]
        order_prev = self._order(tw_prev)
        base = _f_vectors(self.f, len(tw_prev))
        if j == 0:
            cands = self.module.relations.column_vectors()
        else:
            d = self.differentials[-1]
            order_tgt = self._order(self.twists[-2])
            extra = _f_vectors(self.f, d.nrows)
            cands = syzygy_vectors(d.column_vectors(), order_tgt, extra, d.col_degrees)
        gens = canonical_minimal_generators(cands, base, order_prev)
        if not gens:
            self.complete = True
            return False
        new = self._matrix(gens, tw_prev, order_prev)
        rescaled = False
        if self.f is not None and j >= 1 and not self.rescaled[-1]:
            new, rescaled = self._rescale(self.differentials[-1], new)
        self.differentials.append(new)
        self.twists.append(tuple(new.col_degrees))
        self.rescaled.append(rescaled)
        return True

    def _rescale(self, prev, new):
        """When prev * new = f * C with C invertible, replace new by new * C^-1."""
        if not (prev.nrows == prev.ncols == new.ncols):
            return new, False
        C = _divide_matrix(prev @ new, self.f)
        if C is None:
            return new, False
        Cinv = _unimodular_inverse(C)
        if Cinv is None:
            return new, False
        adj = new @ Cinv
        return adj.with_degrees(new.row_degrees, new.col_degrees), True

    def ensure(self, steps):
        """Compute differentials d_1 .. d_steps (fewer if the resolution terminates)."""
        with self._lock:
            while not self.complete and len(self.differentials) < steps:
                self._step()
        return self


# -- session cache ------------------------------------------------------------


class ResolutionCache:
    """Resolutions keyed by (presentation, base ring); extended in place on demand."""

    def __init__(self):
        self._lock = threading.Lock()
        self._store = {}

    def get(self, module, over):
        key = (module.key(), over)
        with self._lock:
            res = self._store.get(key)
            if res is None:
                res = self._store[key] = FreeResolution(module, over)
        return res

    def clear(self):
        with self._lock:
            self._store.clear()

    def __len__(self):
        return len(self._store)


default_cache = ResolutionCache()


def resolve_over_ambient(module, max_steps=None, cache=None):
    """Minimal free resolution of the S-lift of module (terminates by Hilbert's syzygy theorem)."""
    cache = default_cache if cache is None else cache
    lifted = module.lift()
    res = cache.get(lifted, "S")
    steps = max_steps if max_steps is not None else module.ambient.nvars + 1
    return res.ensure(steps)


def resolve_over_hypersurface(module, max_steps, cache=None):
    """First max_steps differentials of the minimal R-free resolution of module."""
    if module.ring.f is None:
        return resolve_over_ambient(module, max_steps, cache)
    cache = default_cache if cache is None else cache
    res = cache.get(module, "R")
    return res.ensure(max_steps)


# -- periodicity ------------------------------------------------------------


@dataclass(frozen=True)
class PeriodicityReport:
    """Tail behaviour: from index on, d_{j+period} matches d_j; period 0 means the
    resolution is zero from index on (finite projective dimension)."""

    index: int
    period: int
    shift: int = 0

    def to_dict(self):
        return {"index": self.index, "period": self.period, "shift": self.shift}


def _column_normalized(A):
    """Columns scaled so the first nonzero entry has leading coefficient 1, then sorted."""
    K = A.ring.field
    cols = []
    for j in range(A.ncols):
        col = A.column(j)
        lead = next((e for e in col if e), None)
        if lead is not None:
            inv = K.inv(lead.leading_coefficient())
            col = [e.scale(inv) for e in col]
        cols.append(tuple(str(e) for e in col))
    return sorted(cols)


def matrices_equivalent(A, B):
    """A and B agree up to a uniform twist shift, column order and column scaling."""
    if (A.nrows, A.ncols) != (B.nrows, B.ncols):
        return None
    shift = None
    if A.row_degrees is not None and B.row_degrees is not None:
        diffs = {b - a for a, b in zip(A.row_degrees, B.row_degrees)}
        diffs |= {b - a for a, b in zip(A.col_degrees, B.col_degrees)}
        if len(diffs) > 1:
            return None
        shift = diffs.pop() if diffs else 0
    if A.entries == B.entries or _column_normalized(A) == _column_normalized(B):
        return shift if shift is not None else 0
    return None


def detect_periodicity(res, window=None):
    """Smallest index i from which the differentials d_1 .. d_window repeat with
    period 2 (or 1). Raises WindowTooShort when no repetition is visible."""
    L = len(res.differentials) if window is None else min(window, len(res.differentials))
    if res.complete and L == len(res.differentials):
        return PeriodicityReport(L + 1, 0)
    d = [None] + res.differentials[:L]
    for i in range(1, L - 1):
        shift = None
        ok = True
        for j in range(i, L - 1):
            s = matrices_equivalent(d[j], d[j + 2])
            if s is None:
                ok = False
                break
            shift = s if shift is None else shift
        if not ok:
            continue
        period = 2
        if all(matrices_equivalent(d[j], d[j + 1]) is not None for j in range(i, L)):
            period = 1
            shift = matrices_equivalent(d[i], d[i + 1])
        return PeriodicityReport(i, period, shift or 0)
    raise WindowTooShort(f"no periodic tail visible in {L} differentials")


def extract_matrix_factorization(res, report=None, window=None):
    """The pair (A, B) = (d_i, d_{i+1}) at the periodic index, with A*B = B*A = f*I
    verified exactly."""
    if res.f is None:
        raise FactorizationCheckFailed("no hypersurface equation")
    if report is None:
        report = detect_periodicity(res, window)
    if report.period == 0:
        raise FactorizationCheckFailed("finite projective dimension: the tail is zero")
    res.ensure(report.index + 2)
    f = res.f
    for i in (report.index, report.index + 1):
        if i + 1 > len(res.differentials):
            break
        A, B = res.differential(i), res.differential(i + 1)
        if verify_factorization(A, B, f):
            return A, B
    raise FactorizationCheckFailed(f"d_{report.index} * d_{report.index + 1} is not f * identity")


def verify_factorization(A, B, f):
    if not (A.nrows == A.ncols == B.nrows == B.ncols):
        return False
    S = A.ring
    fI = PolyMatrix.identity(S, A.nrows).scale(f)
    plain = lambda M: M.entries
    return plain(A @ B) == plain(fI) and plain(B @ A) == plain(fI)

