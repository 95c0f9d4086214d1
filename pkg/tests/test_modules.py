import pytest
from helpers import cyc, quadric, quadric_family, ring
from linalg import monomials, rank_mod_p

from hypertor import (
    INFINITE,
    IllDefinedMap,
    ModuleComplex,
    ModuleMap,
    ModulePresentation,
    NotAComplex,
    PolyMatrix,
    buchberger,
    direct_sum,
    krull_dim,
    resolve_over_hypersurface,
    syzygies,
    tensor,
    tensor_complex,
)
from hypertor.errors import UnitIdeal
from hypertor.modules import fitting_ideal


def test_koszul_syzygy_over_ambient():
    R = ring(["x", "y"])
    S = R.ambient
    x, y = S.gens()
    Z = syzygies(PolyMatrix(S, [[x, y]]), R)
    assert Z.ncols == 1
    col = Z.column(0)
    assert col[0] * x + col[1] * y == S.zero()
    assert {str(col[0]).lstrip("-"), str(col[1]).lstrip("-")} == {"x", "y"}


def _kernel_dim_linear_algebra(R, e):
    """dim of {(a, b) in S_e^2 : x a + y b in (f)} / ... computed as a plain kernel rank."""
    S = R.ambient
    x, y = S.gens()[:2]
    f = R.f
    p = S.field.p
    src = monomials(S.nvars, e)
    tgt = monomials(S.nvars, e + 1)
    idx = {m: i for i, m in enumerate(tgt)}
    # columns of the map S_e^2 -> S_{e+1} / (f)_{e+1}; quotient by adjoining f * S_{e-1}
    fmult = [(S.monomial(m) * f) for m in monomials(S.nvars, e - 1)] if e >= 1 else []
    rows = []
    for g in (x, y):
        for m in src:
            img = S.monomial(m) * g
            r = [0] * len(tgt)
            for ex, c in img.terms.items():
                r[idx[ex]] = c
            rows.append(r)
    frows = []
    for h in fmult:
        r = [0] * len(tgt)
        for ex, c in h.terms.items():
            r[idx[ex]] = c
        frows.append(r)
    rank_total = rank_mod_p(rows + frows, p)
    rank_f = rank_mod_p(frows, p) if frows else 0
    return 2 * len(src) - (rank_total - rank_f)


def _span_dim(R, Z, e):
    """dim of the degree-e part (entries of degree e) of the span of Z's columns plus f*S^2."""
    S = R.ambient
    p = S.field.p
    basis = [(c, m) for c in range(2) for m in monomials(S.nvars, e)]
    idx = {b: i for i, b in enumerate(basis)}
    vecs = []
    for j in range(Z.ncols):
        col = Z.column(j)
        d = next(c.homogeneous_degree() for c in col if c)
        if d > e:
            continue
        for m in monomials(S.nvars, e - d):
            r = [0] * len(basis)
            for c in range(2):
                for ex, coef in (col[c] * S.monomial(m)).terms.items():
                    r[idx[(c, ex)]] = coef
            vecs.append(r)
    if e >= 2:
        for c in range(2):
            for m in monomials(S.nvars, e - 2):
                r = [0] * len(basis)
                for ex, coef in (R.f * S.monomial(m)).terms.items():
                    r[idx[(c, ex)]] = coef
                vecs.append(r)
    return rank_mod_p(vecs, p) if vecs else 0


def test_syzygies_over_hypersurface_match_linear_algebra():
    R = quadric()
    S = R.ambient
    x, y, u, v = S.gens()
    Z = syzygies(PolyMatrix(S, [[x, y]]), R)
    for j in range(Z.ncols):
        a, b = Z.column(j)
        assert (a * x + b * y).divide_exact(R.f) is not None
    for e in range(1, 4):
        assert _span_dim(R, Z, e) == _kernel_dim_linear_algebra(R, e)


def test_syzygies_of_identity_are_zero():
    R = ring(["x", "y"])
    Z = syzygies(PolyMatrix.identity(R.ambient, 3), R)
    assert Z.ncols == 0


def test_kernel_examples():
    R1 = ring(["x"])
    x1 = R1.ambient.gen(0)
    M1 = ModulePresentation.cyclic(R1, [x1**2])
    assert ModuleMap(M1, M1, PolyMatrix(R1.ambient, [[x1]])).kernel().length() == 1
    # in two variables the same kernel is x S/(x^2) = k[y]
    R = ring(["x", "y"])
    S = R.ambient
    x = S.gen(0)
    M = ModulePresentation.cyclic(R, [x**2])
    K = ModuleMap(M, M, PolyMatrix(S, [[x]])).kernel()
    assert K.length() == INFINITE and K.dim() == 1
    ident = ModuleMap(M, M, PolyMatrix.identity(S, 1))
    assert ident.kernel().is_zero()
    N = cyc(R, "y")
    zero = ModuleMap(M, N, PolyMatrix.zeros(S, 1, 1))
    assert zero.kernel().hilbert_numerator() == M.hilbert_numerator()


def test_ill_defined_map_is_rejected():
    R = ring(["x", "y"])
    S = R.ambient
    M = cyc(R, "x")
    F = ModulePresentation.free(R, 1)
    with pytest.raises(IllDefinedMap):
        ModuleMap(M, F, PolyMatrix.identity(S, 1)).kernel()


def test_homology_of_multiplication_by_f():
    R = ring(["x", "y"])
    S = R.ambient
    f = S("x^2 + y^3")
    F = ModulePresentation.free(R, 1)
    G = ModulePresentation.free(R, 1)
    C = ModuleComplex([F, G], [ModuleMap(G, F, PolyMatrix(S, [[f]]))])
    assert C.homology_at(1).is_zero()
    H0 = C.homology_at(0)
    assert H0.dim() == 1
    assert H0.prune().relations.entries == ((f,),)


def test_koszul_homology_over_ambient():
    R = ring(["x", "y"])
    S = R.ambient
    x, y = S.gens()
    F0, F1, F2 = (ModulePresentation.free(R, n) for n in (1, 2, 1))
    C = ModuleComplex(
        [F0, F1, F2],
        [ModuleMap(F1, F0, PolyMatrix(S, [[x, y]])), ModuleMap(F2, F1, PolyMatrix(S, [[-y], [x]]))],
    )
    assert C.homology_at(0).length() == 1
    assert C.homology_at(1).is_zero()
    assert C.homology_at(2).is_zero()


def test_zero_complex_homology():
    R = ring(["x"])
    Z = ModulePresentation.free(R, 0)
    C = ModuleComplex([Z, Z], [ModuleMap(Z, Z, PolyMatrix.zeros(R.ambient, 0, 0))])
    assert all(C.exactness())


def test_not_a_complex():
    R = ring(["x"])
    S = R.ambient
    F = ModulePresentation.free(R, 1)
    C = ModuleComplex([F, F, F], [ModuleMap(F, F, PolyMatrix(S, [[S.gen(0)]]))] * 2)
    with pytest.raises(NotAComplex):
        C.homology_at(1)


def test_module_dim_examples():
    R = quadric()
    assert cyc(R, "x", "y").dim() == 2
    assert ModulePresentation.free(R, 0).dim() is None
    S2 = ring(["x", "y"])
    assert cyc(S2, "x^2").dim() == 1


def test_module_dim_agrees_with_fitting_ideal():
    for name, M in quadric_family().items():
        fit = fitting_ideal(M)
        try:
            expected = krull_dim(buchberger(fit, M.ambient))
        except UnitIdeal:
            expected = None
        assert M.dim() == expected, name


def test_module_length_examples():
    R = quadric()
    assert cyc(R, "x", "y", "u", "v").length() == 1
    assert tensor(cyc(R, "x", "y"), cyc(R, "u", "v")).length() == 1
    assert cyc(R, "x", "y").length() == INFINITE


def test_length_finite_iff_dimension_zero():
    for name, M in quadric_family().items():
        L, d = M.length(), M.dim()
        assert (L != INFINITE) == (d is None or d == 0), name
        assert M.dim_length_from_series() == (d, L) or (d is None and L == 0)


def test_direct_sum_additivity():
    R = quadric()
    A = cyc(R, "x", "y", "u^2", "v")
    B = cyc(R, "x^2", "y", "u", "v")
    assert direct_sum(A, B).length() == A.length() + B.length() == 4


def test_prune_removes_unit_entries():
    R = ring(["x", "y"])
    S = R.ambient
    x, y = S.gens()
    M = ModulePresentation.cokernel(R, PolyMatrix(S, [[S.one(), x], [S.zero(), y]]))
    P = M.prune()
    assert P.relations.entries == ((y,),)


def test_image_and_cokernel_presentations_agree():
    R = quadric()
    S = R.ambient
    x, v = S.gen(0), S.gen(3)
    Q = ModulePresentation.image(R, PolyMatrix(S, [[x, v]]))
    C = Q.to_cokernel()
    assert C.check_well_formed() and Q.check_well_formed()
    assert Q.hilbert_numerator() == C.hilbert_numerator()


def test_tensor_complex_examples():
    R = quadric()
    M, N = cyc(R, "x", "y"), cyc(R, "u", "v")
    res = resolve_over_hypersurface(M, 4)
    C = tensor_complex(res, N, 3)
    assert C.homology_at(1).is_zero()
    assert C.homology_at(2).length() == 1
    free = tensor_complex(res, ModulePresentation.free(R, 1), 3)
    assert [m.rank for m in free.modules] == res.betti()[:4]
    zero = tensor_complex(res, ModulePresentation.free(R, 0), 3)
    assert all(zero.exactness())
