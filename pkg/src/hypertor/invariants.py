"""Numerical homological invariants: Tor tables, theta, chi, depth and related reports.

Tor lengths are read off Hilbert series. For a complex of free modules F with
differentials d_j and a graded module N = coker(psi), let Q_j = coker(d_j (x) N).
Then HS(H_i) = HS(Q_{i+1}) + HS(Q_i) - HS(F_{i-1} (x) N), and each Q_j is a single
Groebner basis computation. The direct homology route (kernels and quotients) is
kept in modules.py and used as an independent check in the tests.
"""

import threading
import warnings
from dataclasses import dataclass, field

from .errors import (
    CharacteristicWarning,
    HypothesisNotMet,
    InfiniteLengthAt,
    NotFiniteIntersection,
    RingMismatch,
    StabilizationFailed,
    UndefinedTheta,
    WrongCharacteristic,
    ZeroModule,
)
from .groebner import INFINITE, ModuleOrder, groebner_vectors, monomial_krull_dim
from .modules import (
    ModuleComplex,
    ModuleMap,
    ModulePresentation,
    direct_sum,
    engine_numerator,
    series_add,
    series_dim_length,
    series_shift,
    tensor,
)
from .resolution import resolve_over_ambient, resolve_over_hypersurface


@dataclass(frozen=True)
class TorEntry:
    """length is an int for finite-length Tor; otherwise posdim holds the support dimension."""

    index: int
    length: int = None
    posdim: int = None

    @property
    def finite(self):
        return self.posdim is None

    @property
    def is_zero(self):
        return self.length == 0

    def to_dict(self):
        if self.finite:
            return {"i": self.index, "length": self.length}
        return {"i": self.index, "posdim": self.posdim}

    def __str__(self):
        return str(self.length) if self.finite else f"POSDIM({self.posdim})"


@dataclass
class TorTable:
    ring: object
    M: str
    N: str
    entries: list
    over: str = "R"

    @property
    def computed_up_to(self):
        return len(self.entries) - 1

    @property
    def fli_index(self):
        """Least i with Tor_j of finite length for all i <= j <= computed_up_to."""
        idx = None
        for e in reversed(self.entries):
            if not e.finite:
                break
            idx = e.index
        return idx

    def __getitem__(self, i):
        return self.entries[i]

    def lengths(self):
        return [e.length if e.finite else None for e in self.entries]

    def to_dict(self):
        return {"entries": [e.to_dict() for e in self.entries], "fliIndex": self.fli_index}


@dataclass(frozen=True)
class ThetaResult:
    value: int
    e_used: int
    evidence: dict = field(default_factory=dict)

    def to_dict(self):
        return {"value": self.value, "eUsed": self.e_used, "evidence": self.evidence}


@dataclass(frozen=True)
class ChiResult:
    value: int
    start_index: int
    lengths: tuple = ()

    def to_dict(self):
        return {"value": self.value, "startIndex": self.start_index, "lengths": list(self.lengths)}


# -- Tor via Hilbert series ---------------------------------------------------


def _cokernel_data(N):
    """(relation vectors incl. f, generator twists) of N as a cokernel."""
    C = N.to_cokernel()
    C.require_homogeneous()
    return C.relation_vectors(), C.degrees


def _tensored_cokernel_numerator(S, d, n, psi, ndeg, row_twists):
    """Hilbert numerator of coker([d (x) I_n | I_b (x) psi])."""
    b = len(row_twists)
    shifts = [row_twists[k] + ndeg[l] for k in range(b) for l in range(n)]
    order = ModuleOrder(S, shifts, None, b * n)
    vecs = []
    if d is not None:
        for j in range(d.ncols):
            col = d.column_vector(j)
            if not col:
                continue
            for l in range(n):
                vecs.append({(r * n + l, e): c for (r, e), c in col.items()})
    for k in range(b):
        for v in psi:
            vecs.append({(k * n + l, e): c for (l, e), c in v.items()})
    eng = groebner_vectors(vecs, order)
    return engine_numerator(eng, order)


class ComplexTor:
    """Homology lengths of (F (x) N) for a free complex given by differentials and twists."""

    def __init__(self, S, differentials, twists, N, complete):
        self.S = S
        self.d = differentials
        self.twists = twists
        self.complete = complete
        self.psi, self.ndeg = _cokernel_data(N)
        self.n = len(self.ndeg)
        order = ModuleOrder(S, self.ndeg, None, self.n)
        self.hn = engine_numerator(groebner_vectors(self.psi, order), order)
        self._q = {}

    def _tw(self, j):
        if j < 0:
            return ()
        if j < len(self.twists):
            return self.twists[j]
        if self.complete:
            return ()
        raise IndexError(f"free module F_{j} not computed")

    def q_numerator(self, j):
        """Hilbert numerator of coker(d_j (x) N) : F_{j-1} (x) N; Q_0 = 0."""
        if j in self._q:
            return self._q[j]
        rows = self._tw(j - 1)
        if j == 0 or not rows:
            out = {}
        else:
            d = None
            if j - 1 < len(self.d):
                d = self.d[j - 1]
            elif not self.complete:
                raise IndexError(f"differential d_{j} not computed")
            out = _tensored_cokernel_numerator(self.S, d, self.n, self.psi, self.ndeg, rows)
        self._q[j] = out
        return out

    def homology_numerator(self, i):
        num = series_add(self.q_numerator(i + 1), self.q_numerator(i))
        for a in self._tw(i - 1):
            num = series_add(num, series_shift(self.hn, a), -1)
        return num

    def entry(self, i):
        dim, length = series_dim_length(self.homology_numerator(i), self.S.weights)
        if length == INFINITE:
            return TorEntry(i, None, dim)
        return TorEntry(i, length)


def _check_pair(M, N):
    if M.ring != N.ring:
        raise RingMismatch("Tor of modules over different rings")
    M.require_homogeneous()
    N.require_homogeneous()


_tor_lock = threading.Lock()
_tor_cache = {}


def _tor_engine(M, N, over, steps):
    if over == "R":
        res = resolve_over_hypersurface(M, steps + 1)
    else:
        res = resolve_over_ambient(M)
    key = (M.key(), N.key(), over)
    with _tor_lock:
        ct = _tor_cache.get(key)
        if ct is None:
            # shares the resolution's lists, which grow in place
            ct = _tor_cache[key] = ComplexTor(M.ambient, res.differentials, res.twists, N, res.complete)
        ct.complete = res.complete
    return ct


def clear_caches():
    from .resolution import default_cache

    with _tor_lock:
        _tor_cache.clear()
    default_cache.clear()


def tor_table(M, N, up_to):
    """Tor_i^R(M, N) for 0 <= i <= up_to from the minimal R-resolution of M."""
    _check_pair(M, N)
    if M.over == "R":
        ct = _tor_engine(M, N, "R", up_to)
        over = "R"
    else:
        ct = _tor_engine(M, N, "S", up_to)
        over = "S"
    entries = [ct.entry(i) for i in range(up_to + 1)]
    return TorTable(M.ring, M.label(), N.label(), entries, over)


def tor_table_over_ambient(M, N):
    """Tor_i^S over the regular ambient ring of the S-lifts, for 0 <= i <= pd_S."""
    Ml, Nl = M.lift(), N.lift()
    _check_pair(Ml, Nl)
    res = resolve_over_ambient(Ml)
    ct = _tor_engine(Ml, Nl, "S", res.projective_dimension())
    pd = res.projective_dimension()
    entries = [ct.entry(i) for i in range(pd + 1)]
    return TorTable(M.ring, M.label(), N.label(), entries, "S")


def tensor_complex(res, N, up_to=None):
    """F (x) N as a ModuleComplex C_0 <- C_1 <- ... <- C_up_to."""
    top = len(res.differentials) if up_to is None else min(up_to, len(res.twists) - 1)
    C = N.to_cokernel()
    S = N.ambient
    n = C.rank
    mods = []
    for j in range(top + 1):
        b = len(res.twists[j])
        if b == 0:
            mods.append(ModulePresentation.free(N.ring, 0, over=N.over))
            continue
        mods.append(direct_sum(*([C] * b)))
    maps = []
    for j in range(1, top + 1):
        d = res.differentials[j - 1]
        m = d.kron_identity_right(n)
        maps.append(ModuleMap(mods[j], mods[j - 1], m))
    return ModuleComplex(mods, maps)


# -- theta and chi -------------------------------------------------------------


def _e_for(bound):
    e = 0
    while 2 * e + 1 <= bound:
        e += 1
    return e


def theta(M, N):
    """Hochster's theta: l(Tor_{2e+2}) - l(Tor_{2e+1}) once the Tor lengths stabilize."""
    _check_pair(M, N)
    ring = M.ring
    base = ring.nvars + 1
    e = _e_for(base)
    while True:
        table = tor_table(M, N, 2 * e + 4)
        fli = table.fli_index
        if fli is None or fli > 2 * e + 1:
            bad = max(t.index for t in table.entries if not t.finite)
            if bad >= 2 * e + 1:
                raise UndefinedTheta(bad, table[bad].posdim)
            e = _e_for(max(base, fli))
            continue
        L = table.lengths()
        o1, e1, o2, e2 = L[2 * e + 1], L[2 * e + 2], L[2 * e + 3], L[2 * e + 4]
        evidence = {"odd": [o1, o2], "even": [e1, e2], "indices": [2 * e + 1, 2 * e + 4]}
        if o1 != o2 or e1 != e2:
            raise StabilizationFailed(f"Tor lengths at e={e} and e={e + 1} disagree: {evidence}")
        return ThetaResult(e1 - o1, e, evidence)


def chi(M, N, i=0):
    """Alternating sum of Tor^S lengths from index i, over the regular ambient ring."""
    table = tor_table_over_ambient(M, N)
    lengths = []
    for t in table.entries[i:]:
        if not t.finite:
            raise InfiniteLengthAt(t.index)
        lengths.append(t.length)
    value = sum((-1) ** k * x for k, x in enumerate(lengths))
    return ChiResult(value, i, tuple(lengths))


# -- depth and reports --------------------------------------------------------


def depth(M):
    """nvars - pd_S of the S-lift (Auslander-Buchsbaum over the ambient ring)."""
    if M.is_zero():
        raise ZeroModule("depth of the zero module")
    res = resolve_over_ambient(M.lift())
    return M.ambient.nvars - res.projective_dimension()


def ring_depth(ring):
    return ring.nvars - (1 if ring.f is not None else 0)


def check_depth_formula(M, N, table=None, window=None):
    """depth M + depth N = depth R + depth(M (x) N), given vanishing higher Tor in the window."""
    if table is None:
        window = window if window is not None else M.ring.nvars + 2
        table = tor_table(M, N, window)
    nonzero = [t.index for t in table.entries[1:] if not t.is_zero]
    if nonzero:
        raise HypothesisNotMet(f"Tor_{nonzero[0]} is nonzero")
    T = tensor(M, N)
    dM, dN, dR, dT = depth(M), depth(N), ring_depth(M.ring), depth(T)
    return {
        "depthM": dM,
        "depthN": dN,
        "depthR": dR,
        "depthTensor": dT,
        "holds": dM + dN == dR + dT,
        "window": table.computed_up_to,
    }


def decency_check(M, N):
    """Dimensions, the decency inequality and theta, with their observed consistency."""
    T = tensor(M, N)
    if T.length() == INFINITE:
        raise NotFiniteIntersection("M (x) N does not have finite length")
    dM, dN, dR = M.dim(), N.dim(), M.ring.dim
    decent = dM is None or dN is None or dM + dN <= dR
    th = theta(M, N).value
    return {
        "dimM": dM,
        "dimN": dN,
        "dimR": dR,
        "decent": decent,
        "theta": th,
        "consistent": decent == (th == 0),
    }


def rigidity_probe(M, N, up_to):
    """Least (i, j), i < j <= up_to, with Tor_i = 0 and Tor_j != 0; None if there is none."""
    table = tor_table(M, N, up_to)
    for i in range(up_to + 1):
        if not table[i].is_zero:
            continue
        for j in range(i + 1, up_to + 1):
            if not table[j].is_zero:
                return (i, j)
    return None


def singular_locus(ring):
    """Dimension of V(f, df/dx_1, ..., df/dx_n); None when the locus is empty."""
    f = ring.f
    if f is None:
        raise HypothesisNotMet("singular locus needs a nonzero equation")
    S = ring.ambient
    p = S.field.characteristic
    deg = f.homogeneous_degree()
    if p and deg is not None and deg % p == 0:
        warnings.warn(
            f"characteristic {p} divides the degree of f; the Jacobian criterion may mislead",
            CharacteristicWarning,
            stacklevel=2,
        )
    gens = [f] + [f.derivative(i) for i in range(S.nvars)]
    order = ModuleOrder(S, (0,), None, 1)
    eng = groebner_vectors([{(0, e): c for e, c in g.terms.items()} for g in gens if g], order)
    d = monomial_krull_dim(eng.leading_monomials(0), S.nvars)
    dim = None if d < 0 else d
    return {"dim": dim, "isolated": dim is None or dim <= 0}


def ipd_locus_dim(M):
    """Support dimension of Tor_{2n+1}(M, M) + Tor_{2n+2}(M, M), n = nvars; None when empty."""
    n = M.ambient.nvars
    table = tor_table(M, M, 2 * n + 2)
    best = None
    for t in table.entries[2 * n + 1 :]:
        if t.finite:
            d = None if t.length == 0 else 0
        else:
            d = t.posdim
        if d is not None and (best is None or d > best):
            best = d
    return best


def frobenius_tor_table(M, e, up_to):
    """Tor_i^R(M, ^eR): homology of the resolution of M with every entry raised to p^e."""
    p = M.ring.field.characteristic
    if not p:
        raise WrongCharacteristic("Frobenius needs positive characteristic")
    M.require_homogeneous()
    q = p**e
    res = resolve_over_hypersurface(M, up_to + 1)
    diffs = [d.frobenius(q) for d in res.differentials]
    twists = [tuple(a * q for a in tw) for tw in res.twists]
    R = ModulePresentation.cyclic(M.ring, [], over=M.over)
    ct = ComplexTor(M.ambient, diffs, twists, R, res.complete)
    entries = [ct.entry(i) for i in range(up_to + 1)]
    return TorTable(M.ring, M.label(), f"^{e}R", entries, M.over)


def verify_exact(modules, matrices):
    """Exactness at each module of the chain modules[0] -> modules[1] -> ...,
    reported left to right (end spots test injectivity and surjectivity)."""
    C = ModuleComplex.from_sequence(modules, matrices)
    return list(reversed(C.exactness()))
