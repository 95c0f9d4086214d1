import warnings

import pytest
from helpers import cubic, cubic_family, cyc, quadric, quadric_family, ring

from hypertor import (
    INFINITE,
    CharacteristicWarning,
    HypothesisNotMet,
    ModuleComplex,
    ModuleMap,
    ModulePresentation,
    NotFiniteIntersection,
    PolyMatrix,
    PolynomialRing,
    Rationals,
    RingMismatch,
    RingSpec,
    UndefinedTheta,
    WrongCharacteristic,
    ZeroModule,
    check_depth_formula,
    chi,
    decency_check,
    depth,
    direct_sum,
    frobenius_tor_table,
    ipd_locus_dim,
    resolve_over_hypersurface,
    rigidity_probe,
    singular_locus,
    tensor,
    tensor_complex,
    theta,
    tor_table,
    verify_exact,
)


def _homology_lengths(M, N, up_to):
    """Tor lengths by explicit kernels and images of F (x) N, a separate route from tor_table."""
    res = resolve_over_hypersurface(M, up_to + 1)
    C = tensor_complex(res, N, up_to + 1)
    return [C.homology_at(i).length() for i in range(up_to + 1)]


def test_tor_table_matches_explicit_homology():
    R = quadric()
    fam = quadric_family(R)
    pairs = [("R/(x,y)", "R/(u,v)"), ("k", "R/(x,y)"), ("R/(x,y)", "R/(x,v)"), ("coker[[x,-v],[-y,u]]", "k")]
    for a, b in pairs:
        table = tor_table(fam[a], fam[b], 4)
        expected = _homology_lengths(fam[a], fam[b], 4)
        got = [e.length if e.finite else INFINITE for e in table.entries]
        assert got == expected, (a, b)


def test_tor_symmetry_on_finite_pairs():
    for fam in (quadric_family(), cubic_family()):
        items = list(fam.values())
        for M in items:
            for N in items:
                if tensor(M, N).length() == INFINITE:
                    continue
                assert tor_table(M, N, 5).lengths() == tor_table(N, M, 5).lengths()


def test_tor_against_free_module():
    R = quadric()
    Rmod = ModulePresentation.cyclic(R, [])
    N = cyc(R, "x", "y", "u", "v")
    assert tor_table(Rmod, N, 4).lengths() == [1, 0, 0, 0, 0]
    table = tor_table(Rmod, cyc(R, "x", "y"), 3)
    assert str(table[0]) == "POSDIM(2)" and table.lengths()[1:] == [0, 0, 0]
    assert theta(Rmod, N).value == 0 and theta(N, Rmod).value == 0


def test_fli_index_example():
    R = quadric()
    table = tor_table(cyc(R, "x", "y"), cyc(R, "x", "v"), 6)
    assert str(table[0]) == "POSDIM(1)"
    assert table.fli_index == 1


def test_fli_index_is_stable_as_the_window_grows():
    R = quadric()
    M, N = cyc(R, "x", "y"), cyc(R, "x", "v")
    seen = [tor_table(M, N, n).fli_index for n in range(2, 9)]
    assert len(set(seen)) == 1


def test_theta_on_isolated_and_non_isolated_singularities():
    R = quadric()
    M = cyc(R, "x", "y")
    assert theta(M, M).value == 1
    # over k[x,y]/(x^2) every Tor_i(R/(x), R/(x)) is k[y]
    R2 = ring(["x", "y"], "x^2")
    with pytest.raises(UndefinedTheta):
        theta(cyc(R2, "x"), cyc(R2, "x"))


def test_theta_is_biadditive_on_direct_sums():
    R = quadric()
    A, B, N = cyc(R, "x", "y"), cyc(R, "y", "u"), cyc(R, "u", "v")
    assert theta(direct_sum(A, B), N).value == theta(A, N).value + theta(B, N).value


def test_ring_mismatch():
    with pytest.raises(RingMismatch):
        tor_table(cyc(quadric(), "x"), cyc(cubic(), "x"), 2)


def _koszul_homology_lengths(N, a, b):
    """H_i(a, b; N) for a two-element sequence, built directly on copies of N."""
    R = N.ring
    S = R.ambient
    C = N.to_cokernel()
    n = C.rank
    K0, K1, K2 = C, direct_sum(C, C), C
    I = PolyMatrix.identity(S, n)
    d1 = PolyMatrix.hstack(I.scale(a), I.scale(b))
    d2 = PolyMatrix(S, [[-b if i == j else S.zero() for j in range(n)] for i in range(n)]
                    + [[a if i == j else S.zero() for j in range(n)] for i in range(n)], 2 * n, n)
    cx = ModuleComplex([K0, K1, K2], [ModuleMap(K1, K0, d1), ModuleMap(K2, K1, d2)])
    return [cx.homology_at(i).length() for i in range(3)]


def test_chi_against_koszul_homology():
    R = ring(["x", "y", "u", "v"])
    S = R.ambient
    x, y = S("x"), S("y")
    M = cyc(R, "x", "y")
    for gens in (("x", "u", "v"), ("u^2", "v^3"), ("x + u", "y + v"), ("x^2", "y^2", "u", "v")):
        N = cyc(R, *gens)
        expected = _koszul_homology_lengths(N, x, y)
        res = chi(M, N)
        assert list(res.lengths) == expected, gens
        assert res.value == expected[0] - expected[1] + expected[2]


def test_chi_on_hypersurface_lifts():
    R = quadric()
    # the lifts are S/(x, y) and S/(u, v), two planes meeting transversally
    assert chi(cyc(R, "x", "y"), cyc(R, "u", "v")).value == 1
    assert chi(cyc(R, "x", "y"), cyc(R, "u", "v"), 1).value == 0


def test_depth_examples():
    R = quadric()
    assert depth(cyc(R, "x", "y", "u", "v")) == 0
    assert depth(cyc(R, "x", "y")) == 2
    assert depth(ModulePresentation.cyclic(R, [])) == 3
    S4 = ring(["x", "y", "u", "v"])
    assert depth(cyc(S4, "x*u - y*v")) == 3
    with pytest.raises(ZeroModule):
        depth(cyc(R, "1"))


def test_depth_formula_and_its_hypothesis():
    R = quadric()
    rep = check_depth_formula(cyc(R, "x", "y", "u", "v"), ModulePresentation.cyclic(R, []))
    assert rep["holds"] and rep["depthTensor"] == 0
    with pytest.raises(HypothesisNotMet):
        check_depth_formula(cyc(R, "x", "y"), cyc(R, "u", "v"))


def test_decency_examples():
    R = quadric()
    rep = decency_check(cyc(R, "x", "y"), cyc(R, "u", "v"))
    assert (rep["dimM"], rep["dimN"], rep["dimR"]) == (2, 2, 3)
    assert rep["decent"] is False and rep["theta"] != 0 and rep["consistent"]
    rep = decency_check(cyc(R, "x", "y", "u", "v"), cyc(R, "x", "y"))
    assert rep["decent"] and rep["theta"] == 0
    with pytest.raises(NotFiniteIntersection):
        decency_check(cyc(R, "x", "y"), cyc(R, "x", "v"))


def test_rigidity_probe():
    R = quadric()
    k = cyc(R, "x", "y", "u", "v")
    assert rigidity_probe(k, k, 5) is None
    assert rigidity_probe(ModulePresentation.cyclic(R, []), k, 5) is None
    assert rigidity_probe(cyc(R, "x", "y"), cyc(R, "u", "v"), 5) == (1, 2)


def test_singular_locus_examples():
    assert singular_locus(quadric()) == {"dim": 0, "isolated": True}
    assert singular_locus(cubic()) == {"dim": 0, "isolated": True}
    assert singular_locus(ring(["x", "y"], "x^2")) == {"dim": 1, "isolated": False}
    assert singular_locus(ring(["x", "y"], "x")) == {"dim": None, "isolated": True}
    with pytest.warns(CharacteristicWarning):
        singular_locus(ring(["x", "y", "z"], "x^3 + y^3 + z^3", p=3))
    with warnings.catch_warnings():
        warnings.simplefilter("error")
        singular_locus(cubic())


def test_ipd_locus():
    R = quadric()
    assert ipd_locus_dim(ModulePresentation.cyclic(R, [])) is None
    assert ipd_locus_dim(cyc(R, "x", "y")) == 0


def test_frobenius_needs_positive_characteristic():
    S = PolynomialRing(Rationals(), ["x", "y"])
    R = RingSpec(S, S("x*y"))
    with pytest.raises(WrongCharacteristic):
        frobenius_tor_table(ModulePresentation.cyclic(R, [S("x")]), 1, 2)


def test_frobenius_on_free_and_finite_projective_dimension():
    R = ring(["x", "y", "u", "v"], "x*u - y*v", p=3)
    assert frobenius_tor_table(cyc(R, "x"), 1, 3).lengths()[1:] == [0, 0, 0]


def test_verify_exact_short_sequence():
    R = ring(["x", "y"])
    S = R.ambient
    x = S("x")
    zero = ModulePresentation.free(R, 0)
    F = ModulePresentation.free(R, 1)
    Q = cyc(R, "x")
    mats = [PolyMatrix.zeros(S, 1, 0), PolyMatrix(S, [[x]]), PolyMatrix.identity(S, 1),
            PolyMatrix.zeros(S, 0, 1)]
    assert verify_exact([zero, F, F, Q, zero], mats) == [True, True, True, True, True]
    mats[1] = PolyMatrix(S, [[x * x]])
    assert verify_exact([zero, F, F, Q, zero], mats)[2] is False
