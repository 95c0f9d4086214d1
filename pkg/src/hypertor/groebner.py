"""Buchberger's algorithm for submodules of free modules, with normal forms,
dimension via independent sets, standard-monomial counting and Hilbert series.

Vectors are sparse dicts {(component, exponent_tuple): coefficient}; an ideal is
the rank-1 case (component 0 throughout).
"""

from itertools import combinations

from .errors import LengthBoundExceeded, RingMismatch, UnitIdeal
from .poly import Polynomial
from .ring import TermOrder

INFINITE = "INFINITE"


class ModuleOrder:
    """A term order on free-module terms (comp, exp).

    Terms are compared by block (block 0 is largest, used for elimination), then
    shifted weighted degree, then the ring's monomial order, then component.
    """

    def __init__(self, ring, shifts=None, blocks=None, rank=None):
        if rank is None:
            rank = len(shifts) if shifts is not None else 1
        self.ring = ring
        self.field = ring.field
        self.rank = rank
        self.shifts = tuple(shifts) if shifts is not None else (0,) * rank
        self.blocks = tuple(blocks) if blocks is not None else (0,) * rank
        cache = {}
        mkey = ring.monomial_key
        w = ring.weights
        sh, bl = self.shifts, self.blocks
        if ring.is_lex:

            def key(term):
                k = cache.get(term)
                if k is None:
                    c, e = term
                    k = cache[term] = (-bl[c], mkey(e), -c)
                return k

        else:

            def key(term):
                k = cache.get(term)
                if k is None:
                    c, e = term
                    k = cache[term] = (
                        -bl[c],
                        sum(a * b for a, b in zip(w, e)) + sh[c],
                        tuple(-x for x in reversed(e)),
                        -c,
                    )
                return k

        self.key = key

    def degree(self, term):
        c, e = term
        return self.ring.wdeg(e) + self.shifts[c]


def leading_term(v, key):
    return max(v, key=key)


def vector_degree(v, order):
    """Shifted degree of a homogeneous vector (any term)."""
    t = next(iter(v))
    return order.degree(t)


def is_homogeneous_vector(v, order):
    return len({order.degree(t) for t in v}) <= 1


def _monic(v, lt, K):
    c = v[lt]
    if c == K.one:
        return v
    inv = K.inv(c)
    red = K.reduce
    return {t: red(x * inv) for t, x in v.items()}


def _divides(a, b):
    for x, y in zip(a, b):
        if x > y:
            return False
    return True


def _lcm(a, b):
    return tuple(x if x > y else y for x, y in zip(a, b))


class GroebnerEngine:
    """Reduced Groebner basis of a submodule, with reduction helpers."""

    def __init__(self, order):
        self.order = order
        self.K = order.field
        self.elements = []  # monic vectors
        self.lts = []
        self.tails = []
        self.by_comp = {}  # comp -> list of (lt_exp, index), active reducers only

    # -- reduction --------------------------------------------------------
    def _find_reducer(self, comp, e):
        for ge, gi in self.by_comp.get(comp, ()):
            if _divides(ge, e):
                return ge, gi
        return None

    def reduce(self, v, full=True):
        """Normal form of v; returns a new dict (possibly empty)."""
        if not v:
            return {}
        K = self.K
        p = K.p
        key = self.order.key
        v = dict(v)
        rem = {}
        find = self._find_reducer
        tails = self.tails
        while v:
            t = max(v, key=key)
            c = v.pop(t)
            comp, e = t
            r = find(comp, e)
            if r is None:
                rem[t] = c
                if not full:
                    rem.update(v)
                    return rem
                continue
            ge, gi = r
            m = tuple(b - a for a, b in zip(ge, e))
            if p:
                for gc, gexp, gco in tails[gi]:
                    nt = (gc, tuple(a + b for a, b in zip(gexp, m)))
                    nv = (v.get(nt, 0) - c * gco) % p
                    if nv:
                        v[nt] = nv
                    else:
                        v.pop(nt, None)
            else:
                for gc, gexp, gco in tails[gi]:
                    nt = (gc, tuple(a + b for a, b in zip(gexp, m)))
                    nv = v.get(nt, 0) - c * gco
                    if nv:
                        v[nt] = nv
                    else:
                        v.pop(nt, None)
        return rem

    def _append(self, v):
        lt = leading_term(v, self.order.key)
        v = _monic(v, lt, self.K)
        idx = len(self.elements)
        self.elements.append(v)
        self.lts.append(lt)
        self.tails.append([(c, e, x) for (c, e), x in v.items() if (c, e) != lt])
        return idx

    def _rebuild_index(self, active):
        self.by_comp = {}
        for i in active:
            c, e = self.lts[i]
            self.by_comp.setdefault(c, []).append((e, i))

    def _spoly(self, i, j, lcm_exp):
        K = self.K
        red = K.reduce
        ci, ei = self.lts[i]
        _, ej = self.lts[j]
        mi = tuple(a - b for a, b in zip(lcm_exp, ei))
        mj = tuple(a - b for a, b in zip(lcm_exp, ej))
        s = {}
        for (c, e), x in self.elements[i].items():
            s[(c, tuple(a + b for a, b in zip(e, mi)))] = x
        for (c, e), x in self.elements[j].items():
            t = (c, tuple(a + b for a, b in zip(e, mj)))
            nv = red(s.get(t, 0) - x)
            if nv:
                s[t] = nv
            else:
                s.pop(t, None)
        return s

    # -- Buchberger -------------------------------------------------------
    def run(self, vectors):
        order = self.order
        key = order.key
        product_ok = order.rank == 1
        inputs = [dict(v) for v in vectors if v]
        # deterministic processing: smallest leading term first
        inputs.sort(key=lambda v: (order.degree(leading_term(v, key)), key(leading_term(v, key))))
        active = []
        pairs = []  # [deg, seq, i, j, lcm_exp]
        seq = 0

        def update(h):
            nonlocal seq, active, pairs
            ch, eh = self.lts[h]
            cand = [g for g in active if self.lts[g][0] == ch]
            lcms = {g: _lcm(eh, self.lts[g][1]) for g in cand}
            kept = []
            for idx, g1 in enumerate(cand):
                l1 = lcms[g1]
                if product_ok and all(
                    a == 0 or b == 0 for a, b in zip(eh, self.lts[g1][1])
                ):
                    kept.append(g1)
                    continue
                dominated = False
                for g2 in cand[idx + 1 :]:
                    if _divides(lcms[g2], l1):
                        dominated = True
                        break
                if not dominated:
                    for g2 in kept:
                        if _divides(lcms[g2], l1):
                            dominated = True
                            break
                if not dominated:
                    kept.append(g1)
            new_pairs = []
            for g in kept:
                if product_ok and all(a == 0 or b == 0 for a, b in zip(eh, self.lts[g][1])):
                    continue
                new_pairs.append(g)
            survivors = []
            for pr in pairs:
                _, _, i, j, l = pr
                if (
                    self.lts[i][0] == ch
                    and _divides(eh, l)
                    and _lcm(self.lts[i][1], eh) != l
                    and _lcm(self.lts[j][1], eh) != l
                ):
                    continue
                survivors.append(pr)
            for g in new_pairs:
                l = lcms[g]
                deg = order.degree((ch, l))
                survivors.append([deg, seq, g, h, l])
                seq += 1
            pairs = survivors
            active = [g for g in active if not (self.lts[g][0] == ch and _divides(eh, self.lts[g][1]))]
            active.append(h)
            self._rebuild_index(active)

        for v in inputs:
            r = self.reduce(v)
            if r:
                update(self._append(r))
        while pairs:
            best = min(range(len(pairs)), key=lambda k: (pairs[k][0], pairs[k][1]))
            _, _, i, j, l = pairs.pop(best)
            s = self._spoly(i, j, l)
            r = self.reduce(s)
            if r:
                update(self._append(r))
        self._interreduce(active)
        return self

    def _interreduce(self, active):
        key = self.order.key
        active = sorted(active, key=lambda i: key(self.lts[i]))
        # tail-reduce each element by the others (leading terms are already minimal)
        self._rebuild_index(active)
        reduced = {}
        for i in active:
            lt = self.lts[i]
            v = self.elements[i]
            tail = {t: x for t, x in v.items() if t != lt}
            others = [g for g in active if g != i]
            saved = self.by_comp
            self._rebuild_index(others)
            tail = self.reduce(tail)
            self.by_comp = saved
            tail[lt] = v[lt]
            reduced[i] = tail
        elements, lts, tails = [], [], []
        for i in active:
            v = reduced[i]
            lt = self.lts[i]
            elements.append(v)
            lts.append(lt)
            tails.append([(c, e, x) for (c, e), x in v.items() if (c, e) != lt])
        self.elements, self.lts, self.tails = elements, lts, tails
        self._rebuild_index(range(len(elements)))

    # -- queries ----------------------------------------------------------
    def leading_monomials(self, comp=0):
        return [e for c, e in self.lts if c == comp]

    def contains(self, v):
        return not self.reduce(v)

    def is_unit(self):
        """True when the submodule is the whole free module."""
        zero = self.order.ring.zero_exp()
        comps = {c for c, e in self.lts if e == zero}
        return len(comps) == self.order.rank


def groebner_vectors(vectors, order):
    return GroebnerEngine(order).run(vectors)


def syzygy_vectors(columns, order, extra=(), column_degrees=None):
    """Generators of {z : sum z_j columns_j lies in span(extra)}.

    Uses the elimination order on F (+) F' with the tagged generators (c_j, e_j);
    the basis elements living entirely in F' are the syzygies.
    """
    r = order.rank
    m = len(columns)
    if column_degrees is None:
        column_degrees = []
        for v in columns:
            column_degrees.append(vector_degree(v, order) if v else 0)
    shifts = tuple(order.shifts) + tuple(column_degrees)
    blocks = (0,) * r + (1,) * m
    big = ModuleOrder(order.ring, shifts, blocks, r + m)
    K = order.field
    gens = []
    for j, v in enumerate(columns):
        t = dict(v)
        t[(r + j, order.ring.zero_exp())] = K.one
        gens.append(t)
    gens.extend(dict(v) for v in extra if v)
    gb = groebner_vectors(gens, big)
    syz = []
    for g, lt in zip(gb.elements, gb.lts):
        if lt[0] >= r:
            syz.append({(c - r, e): x for (c, e), x in g.items()})
    return syz


# -- monomial combinatorics -------------------------------------------------


def minimalize_monomials(monos):
    monos = sorted(set(monos), key=lambda e: (sum(e), e))
    out = []
    for m in monos:
        if not any(_divides(g, m) for g in out):
            out.append(m)
    return out


def monomial_krull_dim(monos, nvars):
    """Max size of a variable subset U with no generator supported inside U.

    Returns -1 for the unit ideal.
    """
    monos = minimalize_monomials(monos)
    if any(not any(m) for m in monos):
        return -1
    supports = [frozenset(i for i, x in enumerate(m) if x) for m in monos]
    for size in range(nvars, -1, -1):
        for U in combinations(range(nvars), size):
            Us = set(U)
            if not any(s <= Us for s in supports):
                return size
    return 0


def _poly_mul(a, b):
    out = {}
    for i, x in a.items():
        for j, y in b.items():
            out[i + j] = out.get(i + j, 0) + x * y
    return {k: v for k, v in out.items() if v}


def _poly_add(a, b, sign=1):
    out = dict(a)
    for k, v in b.items():
        out[k] = out.get(k, 0) + sign * v
    return {k: v for k, v in out.items() if v}


def _shift(a, s):
    return {k + s: v for k, v in a.items()}


def hilbert_numerator(monos, weights, _memo=None):
    """Numerator N(t) with HS(S/J) = N(t) / prod(1 - t^w_i); a dict degree -> coeff."""
    monos = minimalize_monomials(monos)
    if _memo is None:
        _memo = {}
    key = tuple(monos)
    hit = _memo.get(key)
    if hit is not None:
        return hit
    wdeg = lambda e: sum(a * b for a, b in zip(weights, e))
    if not monos:
        res = {0: 1}
    elif all(
        all(a == 0 or b == 0 for a, b in zip(m1, m2)) for m1, m2 in combinations(monos, 2)
    ):
        res = {0: 1}
        for m in monos:
            res = _poly_mul(res, _poly_add({0: 1}, {wdeg(m): 1}, -1))
    else:
        # pivot on a variable power shared by several generators
        counts = [0] * len(weights)
        for m in monos:
            for i, x in enumerate(m):
                if x:
                    counts[i] += 1
        i = max(range(len(weights)), key=lambda k: counts[k])
        # smallest exponent: x_i^a cannot lie in J since two minimal generators share x_i
        a = min(m[i] for m in monos if m[i])
        piv = tuple(a if k == i else 0 for k in range(len(weights)))
        # N(J) = N(J + (p)) + t^deg(p) N(J : p)
        plus = hilbert_numerator(monos + [piv], weights, _memo)
        colon = [tuple(max(x - y, 0) for x, y in zip(m, piv)) for m in monos]
        res = _poly_add(plus, _shift(hilbert_numerator(colon, weights, _memo), wdeg(piv)))
    _memo[key] = res
    return res


def count_standard_monomials(monos, nvars, weights, degree_bound=60):
    """Number of monomials outside the monomial ideal, enumerated degree by degree.

    Returns INFINITE when the ideal is not zero-dimensional; raises
    LengthBoundExceeded if standard monomials persist past the bound.
    """
    monos = minimalize_monomials(monos)
    if monomial_krull_dim(monos, nvars) > 0:
        return INFINITE
    if any(not any(m) for m in monos):
        return 0
    total = 0
    layer = [tuple([0] * nvars)]
    seen = set(layer)
    deg = 0
    while layer:
        if deg > degree_bound:
            raise LengthBoundExceeded(f"standard monomials beyond degree {degree_bound}")
        total += len(layer)
        nxt = []
        for e in layer:
            for i in range(nvars):
                ne = list(e)
                ne[i] += 1
                ne = tuple(ne)
                if ne in seen:
                    continue
                seen.add(ne)
                if not any(_divides(g, ne) for g in monos):
                    nxt.append(ne)
        layer = nxt
        deg += 1
    return total


# -- user-facing ideal interface -------------------------------------------


class GroebnerBasis:
    """Reduced Groebner basis of a polynomial ideal."""

    def __init__(self, ring, generators, order, reduced=True):
        self.ring = ring
        self.generators = tuple(generators)
        self.order = order
        self.reduced = reduced

    @property
    def leading_monomials(self):
        return [g.leading_monomial() for g in self.generators]

    def __iter__(self):
        return iter(self.generators)

    def __len__(self):
        return len(self.generators)

    def __repr__(self):
        return "GroebnerBasis([" + ", ".join(str(g) for g in self.generators) + "])"


def _ideal_order(ring):
    return ModuleOrder(ring, (0,), None, 1)


def _to_vec(p):
    return {(0, e): c for e, c in p.terms.items()}


def _from_vec(ring, v):
    return Polynomial(ring, {e: c for (_, e), c in v.items()})


def buchberger(gens, ring=None):
    """Reduced Groebner basis of the ideal generated by gens."""
    gens = list(gens)
    if ring is None:
        if not gens:
            raise ValueError("ring required for an empty generator list")
        ring = gens[0].ring
    for g in gens:
        if g.ring != ring:
            raise RingMismatch("generators from different rings")
    order = _ideal_order(ring)
    eng = groebner_vectors([_to_vec(g) for g in gens], order)
    polys = [_from_vec(ring, v) for v in eng.elements]
    polys.sort(key=lambda p: ring.monomial_key(p.leading_monomial()))
    return GroebnerBasis(ring, polys, TermOrder(ring.order.kind, ring.weights), True)


def _engine_for(G):
    order = _ideal_order(G.ring)
    eng = GroebnerEngine(order)
    for g in G.generators:
        eng._append(_to_vec(g))
    eng._rebuild_index(range(len(eng.elements)))
    return eng


def normal_form(f, G):
    if f.ring != G.ring:
        raise RingMismatch("polynomial and basis from different rings")
    return _from_vec(G.ring, _engine_for(G).reduce(_to_vec(f)))


def krull_dim(G):
    """Krull dimension of S/I; raises UnitIdeal when I = S."""
    d = monomial_krull_dim(G.leading_monomials, G.ring.nvars)
    if d < 0:
        raise UnitIdeal("the ideal is the unit ideal")
    return d


def vector_space_length(G, degree_bound=60):
    """dim_k S/I as an int, or INFINITE."""
    return count_standard_monomials(
        G.leading_monomials, G.ring.nvars, G.ring.weights, degree_bound
    )
