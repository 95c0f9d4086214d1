"""Rings and module families shared by the test suites."""

import random

from hypertor import ModulePresentation, PolynomialRing, PrimeField, RingSpec, direct_sum

P = 32003


def ring(vars_, f=None, p=P, weights=None):
    S = PolynomialRing(PrimeField(p), vars_, weights)
    return RingSpec(S, S(f) if f else None)


def quadric():
    return ring(["x", "y", "u", "v"], "x*u - y*v")


def quadric5():
    return ring(["x", "y", "u", "v", "t"], "x*u - y*v")


def cyc(R, *gens, name=None):
    S = R.ambient
    return ModulePresentation.cyclic(R, [S(g) for g in gens], name=name or f"R/({', '.join(gens)})")


def quadric_family(R=None):
    """Named modules over k[x,y,u,v]/(xu - yv)."""
    R = R or quadric()
    S = R.ambient
    x, y, u, v = S.gens()
    mats = {
        "coker[[x,-v],[-y,u]]": [[x, -v], [-y, u]],
    }
    fam = {
        "R/(x,y)": cyc(R, "x", "y"),
        "R/(x,v)": cyc(R, "x", "v"),
        "R/(u,v)": cyc(R, "u", "v"),
        "R/(y,u)": cyc(R, "y", "u"),
        "k": cyc(R, "x", "y", "u", "v", name="k"),
        "R/(x,y,u)": cyc(R, "x", "y", "u"),
        "R/(u)": cyc(R, "u"),
    }
    for name, m in mats.items():
        fam[name] = ModulePresentation.cokernel(R, m, name=name)
    return fam


def cubic():
    return ring(["x", "y", "z"], "x^3 + y^3 + z^3")


def cubic_family(R=None):
    R = R or cubic()
    return {
        "k": cyc(R, "x", "y", "z", name="k"),
        "R/(x+y,z)": cyc(R, "x + y", "z"),
        "R/(x,y)": cyc(R, "x", "y"),
        "R/(x+y,z^2)": cyc(R, "x + y", "z^2"),
    }


def dirsum(M, N):
    return direct_sum(M, N, name=f"{M.label()}+{N.label()}")


def random_form(S, rnd, degree, support=None):
    """A random homogeneous form of the given degree (dense over the support variables)."""
    support = list(range(S.nvars)) if support is None else support
    monos = [()]
    for _ in range(degree):
        monos = [m + (i,) for m in monos for i in support if not m or i >= m[-1]]
    f = S.zero()
    for m in monos:
        exp = [0] * S.nvars
        for i in m:
            exp[i] += 1
        c = rnd.randrange(-3, 4)
        if c:
            f = f + S.monomial(tuple(exp), c)
    return f if f else S.monomial(tuple(exp), 1)


def serre_pairs(count=16, seed=7):
    """Deterministic pairs (M, N) of cyclic modules over F_32003[x1..x4] with finite-length
    intersection, mixing complete intersections of both dimension regimes and monomial ideals."""
    R = ring(["x1", "x2", "x3", "x4"])
    S = R.ambient
    rnd = random.Random(seed)
    pairs = []
    shapes = [(2, 2), (1, 3), (3, 1), (3, 2), (2, 3), (3, 3), (1, 4), (2, 2)]
    attempts = 0
    while len(pairs) < count:
        attempts += 1
        a, b = shapes[attempts % len(shapes)]
        ga = [random_form(S, rnd, rnd.choice([1, 1, 2]), rnd.sample(range(4), rnd.choice([2, 3, 4])))
              for _ in range(a)]
        gb = [random_form(S, rnd, rnd.choice([1, 1, 2]), rnd.sample(range(4), rnd.choice([2, 3, 4])))
              for _ in range(b)]
        if attempts % 5 == 0:
            x = S.gens()
            ga = [x[0] ** 2, x[0] * x[1]] + ga[:1]
        M = ModulePresentation.cyclic(R, ga, name=f"S/({', '.join(map(str, ga))})")
        N = ModulePresentation.cyclic(R, gb, name=f"S/({', '.join(map(str, gb))})")
        T = ModulePresentation.cyclic(R, ga + gb)
        if T.length() == "INFINITE" or T.is_zero():
            continue
        pairs.append((M, N))
    return R, pairs
