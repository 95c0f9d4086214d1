"""Finitely generated modules over S or R = S/(f), presented as subquotients.

A module is (G + Rel) / Rel inside a free S-module F of rank r, where the columns
of G are generators and the columns of Rel are relations. Over R the columns
f*e_i are implicitly part of Rel: every R-module computation runs on S-lifts.
"""

from .errors import IllDefinedMap, NotAComplex, NotHomogeneous, RingMismatch, ShapeMismatch
from .groebner import (
    INFINITE,
    ModuleOrder,
    count_standard_monomials,
    groebner_vectors,
    hilbert_numerator,
    monomial_krull_dim,
    syzygy_vectors,
    vector_degree,
)
from .matrix import PolyMatrix
from .poly import Polynomial
from .ring import RingSpec


# -- Laurent polynomials in t (Hilbert series numerators) --------------------


def series_add(a, b, sign=1):
    out = dict(a)
    for k, v in b.items():
        out[k] = out.get(k, 0) + sign * v
    return {k: v for k, v in out.items() if v}


def series_shift(a, s):
    return {k + s: v for k, v in a.items()}


def _div_one_minus_t(a):
    """a / (1 - t), assuming a(1) == 0."""
    lo, hi = min(a), max(a)
    out = {}
    acc = 0
    for k in range(lo, hi):
        acc += a.get(k, 0)
        if acc:
            out[k] = acc
    return out


def series_dim_length(num, weights):
    """(dim, length) of a module with Hilbert series num(t) / prod(1 - t^w).

    dim is None for the zero module; length is INFINITE when dim > 0.
    """
    if not num:
        return None, 0
    n = len(weights)
    q = dict(num)
    k = 0
    while k < n and sum(q.values()) == 0:
        q = _div_one_minus_t(q)
        k += 1
    dim = n - k
    if dim > 0:
        return dim, INFINITE
    prod = 1
    for w in weights:
        prod *= w
    total = sum(q.values())
    if total % prod:
        raise ArithmeticError("Hilbert series does not evaluate to an integer length")
    return 0, total // prod


def free_numerator(degrees):
    out = {}
    for d in degrees:
        out[d] = out.get(d, 0) + 1
    return out


def engine_numerator(eng, order):
    """Hilbert series numerator of F / U from a Groebner basis of U."""
    w = order.ring.weights
    memo = {}
    out = {}
    for c in range(order.rank):
        monos = eng.leading_monomials(c)
        out = series_add(out, series_shift(hilbert_numerator(monos, w, memo), order.shifts[c]))
    return out


# -- presentations -----------------------------------------------------------


def _vectors_to_matrix(S, nrows, vectors, row_degrees, order=None):
    cd = None
    if row_degrees is not None and order is not None:
        cd = [vector_degree(v, order) if v else min(row_degrees, default=0) for v in vectors]
    return PolyMatrix.from_columns(S, nrows, vectors, row_degrees, cd)


class ModulePresentation:
    """A subquotient module over S (over='S') or over R = S/(f) (over='R')."""

    def __init__(self, ring, relations, generators=None, over=None, name=None):
        if not isinstance(ring, RingSpec):
            raise TypeError("ring must be a RingSpec")
        if over is None:
            over = "R" if ring.f is not None else "S"
        if over not in ("R", "S"):
            raise ValueError("over must be 'R' or 'S'")
        if over == "R" and ring.f is None:
            over = "S"
        S = ring.ambient
        if relations.ring != S or (generators is not None and generators.ring != S):
            raise RingMismatch("presentation matrices must live in the ambient ring")
        if generators is not None and generators.nrows != relations.nrows:
            raise ShapeMismatch("generators and relations must share the ambient rank")
        self.ring = ring
        self.over = over
        self.name = name
        self.rank = relations.nrows
        self.relations, self.generators, self.degrees = self._grade(relations, generators)
        self._gb = None
        self._key = None

    @staticmethod
    def _grade(relations, generators):
        rd = relations.row_degrees
        if rd is None and generators is not None:
            rd = generators.row_degrees
        try:
            rel = relations.infer_degrees(rd)
            rd = rel.row_degrees
            gen = None
            if generators is not None:
                gen = generators.infer_degrees(rd)
                if gen.row_degrees != rd:
                    raise NotHomogeneous("incompatible twists")
            return rel, gen, tuple(rd)
        except NotHomogeneous:
            return relations.with_degrees(None, None), (
                None if generators is None else generators.with_degrees(None, None)
            ), None

    # -- constructors ---------------------------------------------------
    @classmethod
    def cokernel(cls, ring, matrix, over=None, name=None):
        if not isinstance(matrix, PolyMatrix):
            matrix = PolyMatrix(ring.ambient, matrix)
        return cls(ring, matrix, None, over, name)

    @classmethod
    def cyclic(cls, ring, polys, over=None, name=None):
        """R/(polys) (or S/(polys) when over='S')."""
        S = ring.ambient
        polys = [S(p) for p in polys]
        return cls(ring, PolyMatrix(S, [polys], 1, len(polys), row_degrees=[0]), None, over, name)

    @classmethod
    def free(cls, ring, n, degrees=None, over=None, name=None):
        degrees = list(degrees) if degrees is not None else [0] * n
        return cls(ring, PolyMatrix.zeros(ring.ambient, n, 0, degrees, []), None, over, name)

    @classmethod
    def image(cls, ring, matrix, over=None, name=None):
        """The submodule of a free module generated by the columns of matrix."""
        if not isinstance(matrix, PolyMatrix):
            matrix = PolyMatrix(ring.ambient, matrix)
        rel = PolyMatrix.zeros(ring.ambient, matrix.nrows, 0, matrix.row_degrees, [])
        return cls(ring, rel, matrix, over, name)

    # -- basic structure -----------------------------------------------
    @property
    def ambient(self):
        return self.ring.ambient

    @property
    def is_cokernel(self):
        return self.generators is None

    @property
    def ngens(self):
        return self.rank if self.generators is None else self.generators.ncols

    def is_homogeneous(self):
        return self.degrees is not None

    def require_homogeneous(self):
        if self.degrees is None:
            raise NotHomogeneous(f"module {self.label()} is not graded")

    def label(self):
        return self.name or "module"

    def generator_matrix(self):
        if self.generators is not None:
            return self.generators
        return PolyMatrix.identity(self.ambient, self.rank, self.degrees)

    def generator_degrees(self):
        if self.degrees is None:
            return None
        if self.generators is None:
            return self.degrees
        return self.generators.col_degrees

    def order(self, blocks=None):
        shifts = self.degrees if self.degrees is not None else (0,) * self.rank
        return ModuleOrder(self.ambient, shifts, blocks, self.rank)

    def f_vectors(self, rank=None):
        rank = self.rank if rank is None else rank
        if self.over != "R":
            return []
        fe = self.ring.f.terms
        return [{(i, e): c for e, c in fe.items()} for i in range(rank)]

    def relation_vectors(self):
        """Relations including f * e_i over R."""
        return [v for v in self.relations.column_vectors() if v] + self.f_vectors()

    def relation_gb(self):
        if self._gb is None:
            self._gb = groebner_vectors(self.relation_vectors(), self.order())
        return self._gb

    def key(self):
        if self._key is None:
            gens = None if self.generators is None else self.generators.entries
            self._key = (self.ring, self.over, self.relations.entries, gens, self.degrees)
        return self._key

    def __eq__(self, other):
        return isinstance(other, ModulePresentation) and self.key() == other.key()

    def __hash__(self):
        return hash(self.key())

    def __repr__(self):
        kind = "coker" if self.is_cokernel else "subquotient"
        return f"<{kind} {self.label()} rank {self.rank} over {self.over}>"

    def with_name(self, name):
        m = ModulePresentation(self.ring, self.relations, self.generators, self.over, name)
        return m

    def check_well_formed(self):
        """Shapes agree and twists (when present) make every entry homogeneous."""
        if self.generators is not None and self.generators.nrows != self.rank:
            return False
        if self.degrees is not None:
            if not self.relations.is_homogeneous():
                return False
            if self.generators is not None and not self.generators.is_homogeneous():
                return False
        return True

    # -- derived presentations -----------------------------------------
    def lift(self):
        """The same module viewed over S, with f * identity appended to the relations."""
        if self.over == "S":
            return self
        S = self.ambient
        fcols = PolyMatrix.identity(S, self.rank, self.degrees).scale(self.ring.f)
        if self.degrees is not None:
            df = self.ring.f.homogeneous_degree()
            if df is None:
                fcols = fcols.with_degrees(None, None)
            else:
                fcols = fcols.with_degrees(self.degrees, [d + df for d in self.degrees])
        rel = self.relations.hstack(fcols)
        return ModulePresentation(self.ring, rel, self.generators, "S", self.name)

    def to_cokernel(self):
        """An isomorphic cokernel presentation on the same generators."""
        if self.is_cokernel:
            return self
        G = self.generators
        order = self.order()
        cols = G.column_vectors()
        gdeg = G.col_degrees if self.degrees is not None else None
        syz = syzygy_vectors(cols, order, self.relation_vectors(), gdeg)
        if self.over == "R":
            syz = [z for z in syz if not _is_f_multiple(z, self.ring.f)]
        gorder = ModuleOrder(self.ambient, gdeg or (0,) * G.ncols, None, G.ncols)
        rel = _vectors_to_matrix(
            self.ambient, G.ncols, syz, gdeg, gorder if gdeg is not None else None
        )
        if gdeg is None:
            rel = rel.with_degrees(None, None)
        return ModulePresentation(self.ring, rel, None, self.over, self.name)

    def prune(self):
        """Minimal cokernel presentation: eliminate generators killed by unit relation entries."""
        M = self.to_cokernel()
        A = M.relations
        S = self.ambient
        K = S.field
        rows = [list(r) for r in A.entries]
        rdeg = list(M.degrees) if M.degrees is not None else None
        cdeg = list(A.col_degrees) if A.col_degrees is not None else None
        ncols = A.ncols
        while True:
            piv = None
            for j in range(ncols):
                for i in range(len(rows)):
                    e = rows[i][j]
                    if e and e.is_constant():
                        piv = (i, j)
                        break
                if piv:
                    break
            if piv is None:
                break
            i, j = piv
            inv = K.inv(rows[i][j].constant_value())
            colj = [rows[r][j] for r in range(len(rows))]
            for k in range(ncols):
                if k == j or not rows[i][k]:
                    continue
                factor = rows[i][k].scale(inv)
                for r in range(len(rows)):
                    if colj[r]:
                        rows[r][k] = rows[r][k] - colj[r] * factor
            del rows[i]
            for r in rows:
                del r[j]
            if rdeg is not None:
                del rdeg[i]
            if cdeg is not None:
                del cdeg[j]
            ncols -= 1
        keep = [j for j in range(ncols) if any(rows[r][j] for r in range(len(rows)))]
        rows = [[r[j] for j in keep] for r in rows]
        if cdeg is not None:
            cdeg = [cdeg[j] for j in keep]
        mat = PolyMatrix(S, rows, len(rows), len(keep), rdeg, cdeg)
        return ModulePresentation(self.ring, mat, None, self.over, self.name)

    # -- numerical invariants ----------------------------------------------
    def is_zero(self):
        gb = self.relation_gb()
        if self.is_cokernel:
            return gb.is_unit()
        return all(not gb.reduce(v) for v in self.generators.column_vectors())

    def _leading_data(self):
        M = self.to_cokernel()
        gb = M.relation_gb()
        return M, gb

    def dim(self):
        """Krull dimension of the support; None for the zero module."""
        M, gb = self._leading_data()
        n = self.ambient.nvars
        best = None
        for c in range(M.rank):
            d = monomial_krull_dim(gb.leading_monomials(c), n)
            if d >= 0 and (best is None or d > best):
                best = d
        return best

    def length(self, degree_bound=60):
        """Vector-space dimension over k (INFINITE when positive-dimensional).

        For graded data this is the length at the irrelevant ideal; otherwise it is
        the affine total over all maximal ideals.
        """
        M, gb = self._leading_data()
        S = self.ambient
        total = 0
        for c in range(M.rank):
            n = count_standard_monomials(gb.leading_monomials(c), S.nvars, S.weights, degree_bound)
            if n == INFINITE:
                return INFINITE
            total += n
        return total

    def hilbert_numerator(self):
        self.require_homogeneous()
        num = engine_numerator(self.relation_gb(), self.order())
        if self.is_cokernel:
            return num
        both = groebner_vectors(
            self.relation_vectors() + self.generators.column_vectors(), self.order()
        )
        return series_add(num, engine_numerator(both, self.order()), -1)

    def dim_length_from_series(self):
        return series_dim_length(self.hilbert_numerator(), self.ambient.weights)


# -- module operations ---------------------------------------------------------


def _same_ring(*mods):
    r, o = mods[0].ring, mods[0].over
    for m in mods[1:]:
        if m.ring != r or m.over != o:
            raise RingMismatch("modules over different rings")


def _is_f_multiple(v, f):
    comps = {}
    for (c, e), x in v.items():
        comps.setdefault(c, {})[e] = x
    S = f.ring
    return all(Polynomial(S, t).divide_exact(f) is not None for t in comps.values())


def direct_sum(*mods, name=None):
    _same_ring(*mods)
    rel = mods[0].relations
    for m in mods[1:]:
        rel = rel.block_diag(m.relations)
    if all(m.is_cokernel for m in mods):
        gens = None
    else:
        gens = mods[0].generator_matrix()
        for m in mods[1:]:
            gens = gens.block_diag(m.generator_matrix())
    if any(m.degrees is None for m in mods):
        rel = rel.with_degrees(None, None)
        gens = None if gens is None else gens.with_degrees(None, None)
    return ModulePresentation(mods[0].ring, rel, gens, mods[0].over, name)


def tensor(M, N, name=None):
    """M (x) N over the common ring, as a cokernel presentation."""
    _same_ring(M, N)
    A = M.to_cokernel().relations
    B = N.to_cokernel().relations
    S = M.ambient
    m, n = A.nrows, B.nrows
    z = S.zero()
    rows = []
    for i in range(m):
        for k in range(n):
            row = []
            for j in range(A.ncols):
                for l in range(n):
                    row.append(A[i, j] if l == k else z)
            for i2 in range(m):
                for j in range(B.ncols):
                    row.append(B[k, j] if i2 == i else z)
            rows.append(row)
    ncols = A.ncols * n + m * B.ncols
    rd = cd = None
    if M.degrees is not None and N.degrees is not None:
        ad, bd = M.to_cokernel().degrees, N.to_cokernel().degrees
        rd = [ad[i] + bd[k] for i in range(m) for k in range(n)]
        cd = [A.col_degrees[j] + bd[l] for j in range(A.ncols) for l in range(n)]
        cd += [ad[i2] + B.col_degrees[j] for i2 in range(m) for j in range(B.ncols)]
    mat = PolyMatrix(S, rows, m * n, ncols, rd, cd)
    return ModulePresentation(M.ring, mat, None, M.over, name)


def syzygies(A, ring, over=None):
    """Columns generating the kernel of the map given by A (over S, or over R mod f)."""
    if over is None:
        over = "R" if ring.f is not None else "S"
    S = ring.ambient
    try:
        A = A.infer_degrees(A.row_degrees)
        shifts, cdeg = A.row_degrees, A.col_degrees
    except NotHomogeneous:
        shifts, cdeg = (0,) * A.nrows, None
    order = ModuleOrder(S, shifts, None, A.nrows)
    extra = []
    if over == "R" and ring.f is not None:
        extra = [{(i, e): c for e, c in ring.f.terms.items()} for i in range(A.nrows)]
    syz = syzygy_vectors(A.column_vectors(), order, extra, cdeg)
    if cdeg is None:
        return PolyMatrix.from_columns(S, A.ncols, syz)
    sorder = ModuleOrder(S, cdeg, None, A.ncols)
    return _vectors_to_matrix(S, A.ncols, syz, cdeg, sorder)


class ModuleMap:
    """A homomorphism source -> target; column j is the image of source generator j
    written in the generators of target."""

    def __init__(self, source, target, matrix):
        _same_ring(source, target)
        if not isinstance(matrix, PolyMatrix):
            matrix = PolyMatrix(source.ambient, matrix)
        if matrix.nrows != target.ngens or matrix.ncols != source.ngens:
            raise ShapeMismatch(
                f"map matrix must be {target.ngens}x{source.ngens}, got {matrix.nrows}x{matrix.ncols}"
            )
        self.source = source
        self.target = target
        self.matrix = matrix

    def ambient_images(self):
        """Images of the source generators as vectors in the target's ambient module."""
        return self.target.generator_matrix() @ self.matrix

    def is_well_defined(self):
        Z = self.source.to_cokernel().relations
        if Z.ncols == 0:
            return True
        imgs = self.ambient_images() @ Z
        gb = self.target.relation_gb()
        return all(not gb.reduce(v) for v in imgs.column_vectors())

    def kernel(self, prune=False):
        if not self.is_well_defined():
            raise IllDefinedMap("map does not carry relations into relations")
        src, tgt = self.source, self.target
        imgs = self.ambient_images()
        gdeg = src.generator_degrees()
        syz = syzygy_vectors(imgs.column_vectors(), tgt.order(), tgt.relation_vectors(), gdeg)
        if gdeg is not None:
            korder = ModuleOrder(src.ambient, gdeg, None, src.ngens)
            K = _vectors_to_matrix(src.ambient, src.ngens, syz, gdeg, korder)
        else:
            K = PolyMatrix.from_columns(src.ambient, src.ngens, syz)
        gens = src.generator_matrix() @ K
        out = ModulePresentation(src.ring, src.relations, gens, src.over)
        return out.prune() if prune else out

    def image(self):
        tgt = self.target
        return ModulePresentation(tgt.ring, tgt.relations, self.ambient_images(), tgt.over)


class ModuleComplex:
    """C_top -> ... -> C_1 -> C_0 with maps[i-1] = d_i : C_i -> C_{i-1}."""

    def __init__(self, modules, maps):
        if len(maps) != max(len(modules) - 1, 0):
            raise ShapeMismatch("need one map between each consecutive pair of modules")
        for i, d in enumerate(maps):
            if d.source is not modules[i + 1] and d.source != modules[i + 1]:
                raise ShapeMismatch(f"d_{i + 1} has the wrong source")
            if d.target is not modules[i] and d.target != modules[i]:
                raise ShapeMismatch(f"d_{i + 1} has the wrong target")
        self.modules = list(modules)
        self.maps = list(maps)

    @classmethod
    def from_sequence(cls, modules, matrices):
        """Build from a left-to-right chain M_0 -> M_1 -> ... (matrices between them)."""
        modules = list(modules)
        maps = [ModuleMap(modules[i], modules[i + 1], matrices[i]) for i in range(len(matrices))]
        mods = list(reversed(modules))
        maps = list(reversed(maps))
        return cls(mods, maps)

    def check_complex(self):
        for i in range(1, len(self.maps)):
            d_low, d_high = self.maps[i - 1], self.maps[i]
            comp = d_low.target.generator_matrix() @ (d_low.matrix @ d_high.matrix)
            gb = d_low.target.relation_gb()
            if any(gb.reduce(v) for v in comp.column_vectors()):
                raise NotAComplex(f"d_{i} * d_{i + 1} is not zero")

    def homology_at(self, i, prune=False):
        """ker(d_i) / im(d_{i+1}) as a subquotient of C_i's ambient module."""
        self.check_complex()
        C = self.modules[i]
        if i >= 1:
            ker = self.maps[i - 1].kernel()
            gens = ker.generators
        else:
            gens = C.generator_matrix()
        rel = C.relations
        if i < len(self.maps):
            rel = rel.hstack(self.maps[i].ambient_images())
        H = ModulePresentation(C.ring, rel, gens, C.over)
        return H.prune() if prune else H

    def exactness(self):
        self.check_complex()
        return [self.homology_at(i).is_zero() for i in range(len(self.modules))]


def fitting_ideal(M):
    """Zeroth Fitting ideal (over S) of a cokernel presentation, f adjoined over R."""
    from itertools import combinations

    C = M.to_cokernel()
    rel = C.lift().relations
    r = rel.nrows
    cols = [j for j in range(rel.ncols) if any(rel[i, j] for i in range(r))]
    gens = []
    for subset in combinations(cols, r):
        sub = [[rel[i, j] for j in subset] for i in range(r)]
        d = _det(sub, M.ambient)
        if d:
            gens.append(d)
    return gens


def _det(rows, S):
    n = len(rows)
    if n == 0:
        return S.one()
    if n == 1:
        return rows[0][0]
    total = S.zero()
    for j in range(n):
        a = rows[0][j]
        if not a:
            continue
        minor = [r[:j] + r[j + 1 :] for r in rows[1:]]
        term = a * _det(minor, S)
        total = total + term if j % 2 == 0 else total - term
    return total
