"""Small exact linear algebra over F_p, used as an independent oracle."""


def rank_mod_p(rows, p):
    rows = [[x % p for x in r] for r in rows if any(x % p for x in r)]
    rank, col = 0, 0
    ncols = len(rows[0]) if rows else 0
    while rank < len(rows) and col < ncols:
        piv = next((i for i in range(rank, len(rows)) if rows[i][col]), None)
        if piv is None:
            col += 1
            continue
        rows[rank], rows[piv] = rows[piv], rows[rank]
        inv = pow(rows[rank][col], -1, p)
        rows[rank] = [x * inv % p for x in rows[rank]]
        for i in range(len(rows)):
            if i != rank and rows[i][col]:
                c = rows[i][col]
                rows[i] = [(a - c * b) % p for a, b in zip(rows[i], rows[rank])]
        rank += 1
        col += 1
    return rank


def monomials(nvars, degree):
    if nvars == 0:
        return [()] if degree == 0 else []
    out = []
    for a in range(degree, -1, -1):
        for rest in monomials(nvars - 1, degree - a):
            out.append((a,) + rest)
    return out


def coords(poly_terms, basis_index, size):
    row = [0] * size
    for e, c in poly_terms.items():
        row[basis_index[e]] = c
    return row
