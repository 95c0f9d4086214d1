"""Dense matrices of polynomials with optional graded twists."""

from .errors import NotHomogeneous, RingMismatch, ShapeMismatch
from .poly import Polynomial


class PolyMatrix:
    """An immutable nrows x ncols matrix over a polynomial ring.

    Graded convention: column j is a map S(-col_degrees[j]) -> sum_i S(-row_degrees[i]),
    so a nonzero entry (i, j) is homogeneous of degree col_degrees[j] - row_degrees[i].
    """

    __slots__ = ("ring", "nrows", "ncols", "entries", "row_degrees", "col_degrees")

    def __init__(self, ring, entries, nrows=None, ncols=None, row_degrees=None, col_degrees=None):
        self.ring = ring
        rows = tuple(
            tuple(e if type(e) is Polynomial and e.ring is ring else ring(e) for e in row)
            for row in entries
        )
        self.nrows = len(rows) if nrows is None else nrows
        if ncols is None:
            ncols = len(rows[0]) if rows else 0
        self.ncols = ncols
        if len(rows) != self.nrows or any(len(r) != self.ncols for r in rows):
            raise ShapeMismatch("ragged matrix")
        self.entries = rows
        self.row_degrees = tuple(row_degrees) if row_degrees is not None else None
        self.col_degrees = tuple(col_degrees) if col_degrees is not None else None
        if self.row_degrees is not None and len(self.row_degrees) != self.nrows:
            raise ShapeMismatch("row degree count")
        if self.col_degrees is not None and len(self.col_degrees) != self.ncols:
            raise ShapeMismatch("column degree count")

    # -- constructors ---------------------------------------------------
    @classmethod
    def zeros(cls, ring, nrows, ncols, row_degrees=None, col_degrees=None):
        z = ring.zero()
        return cls(ring, [[z] * ncols for _ in range(nrows)], nrows, ncols, row_degrees, col_degrees)

    @classmethod
    def identity(cls, ring, n, degrees=None):
        z, o = ring.zero(), ring.one()
        return cls(
            ring,
            [[o if i == j else z for j in range(n)] for i in range(n)],
            n,
            n,
            degrees,
            degrees,
        )

    @classmethod
    def from_columns(cls, ring, nrows, columns, row_degrees=None, col_degrees=None):
        """Columns given as sparse vectors {(row, exp): coeff}."""
        grid = [[{} for _ in columns] for _ in range(nrows)]
        for j, v in enumerate(columns):
            for (r, e), c in v.items():
                grid[r][j][e] = c
        rows = [[Polynomial(ring, d) for d in row] for row in grid]
        return cls(ring, rows, nrows, len(columns), row_degrees, col_degrees)

    # -- access -----------------------------------------------------------
    def __getitem__(self, ij):
        i, j = ij
        return self.entries[i][j]

    def column(self, j):
        return [self.entries[i][j] for i in range(self.nrows)]

    def row(self, i):
        return list(self.entries[i])

    def column_vector(self, j):
        v = {}
        for i in range(self.nrows):
            for e, c in self.entries[i][j].terms.items():
                v[(i, e)] = c
        return v

    def column_vectors(self):
        return [self.column_vector(j) for j in range(self.ncols)]

    def is_zero(self):
        return all(e.is_zero() for row in self.entries for e in row)

    def is_square(self):
        return self.nrows == self.ncols

    def __eq__(self, other):
        return (
            isinstance(other, PolyMatrix)
            and self.ring == other.ring
            and self.nrows == other.nrows
            and self.ncols == other.ncols
            and self.entries == other.entries
        )

    def __hash__(self):
        return hash((self.nrows, self.ncols, self.entries))

    def with_degrees(self, row_degrees, col_degrees):
        return PolyMatrix(self.ring, self.entries, self.nrows, self.ncols, row_degrees, col_degrees)

    # -- arithmetic -------------------------------------------------------
    def __matmul__(self, other):
        if self.ring != other.ring:
            raise RingMismatch("matrices over different rings")
        if self.ncols != other.nrows:
            raise ShapeMismatch(f"{self.nrows}x{self.ncols} @ {other.nrows}x{other.ncols}")
        z = self.ring.zero()
        out = []
        for i in range(self.nrows):
            row = []
            for j in range(other.ncols):
                acc = z
                for k in range(self.ncols):
                    a = self.entries[i][k]
                    if a:
                        b = other.entries[k][j]
                        if b:
                            acc = acc + a * b
                row.append(acc)
            out.append(row)
        return PolyMatrix(self.ring, out, self.nrows, other.ncols, self.row_degrees, other.col_degrees)

    def __add__(self, other):
        if (self.nrows, self.ncols) != (other.nrows, other.ncols):
            raise ShapeMismatch("shape mismatch in addition")
        return PolyMatrix(
            self.ring,
            [[a + b for a, b in zip(r1, r2)] for r1, r2 in zip(self.entries, other.entries)],
            self.nrows,
            self.ncols,
            self.row_degrees,
            self.col_degrees,
        )

    def __sub__(self, other):
        return self + other.scale(-1)

    def scale(self, c):
        if not hasattr(c, "terms"):
            c = self.ring(c)
        return PolyMatrix(
            self.ring,
            [[c * e for e in row] for row in self.entries],
            self.nrows,
            self.ncols,
            self.row_degrees,
            self.col_degrees,
        )

    def transpose(self):
        return PolyMatrix(
            self.ring,
            [list(col) for col in zip(*self.entries)] if self.nrows else [],
            self.ncols,
            self.nrows,
            None if self.col_degrees is None else tuple(-d for d in self.col_degrees),
            None if self.row_degrees is None else tuple(-d for d in self.row_degrees),
        )

    def map_entries(self, fn):
        return PolyMatrix(
            self.ring,
            [[fn(e) for e in row] for row in self.entries],
            self.nrows,
            self.ncols,
            self.row_degrees,
            self.col_degrees,
        )

    def hstack(self, other):
        if self.nrows != other.nrows:
            raise ShapeMismatch("hstack needs equal row counts")
        cd = None
        if self.col_degrees is not None and other.col_degrees is not None:
            cd = self.col_degrees + other.col_degrees
        return PolyMatrix(
            self.ring,
            [r1 + r2 for r1, r2 in zip(self.entries, other.entries)],
            self.nrows,
            self.ncols + other.ncols,
            self.row_degrees if self.row_degrees is not None else other.row_degrees,
            cd,
        )

    def select_columns(self, idx):
        idx = list(idx)
        return PolyMatrix(
            self.ring,
            [[row[j] for j in idx] for row in self.entries],
            self.nrows,
            len(idx),
            self.row_degrees,
            None if self.col_degrees is None else [self.col_degrees[j] for j in idx],
        )

    def block_diag(self, other):
        z = self.ring.zero()
        rows = [list(r) + [z] * other.ncols for r in self.entries]
        rows += [[z] * self.ncols + list(r) for r in other.entries]
        rd = cd = None
        if self.row_degrees is not None and other.row_degrees is not None:
            rd = self.row_degrees + other.row_degrees
        if self.col_degrees is not None and other.col_degrees is not None:
            cd = self.col_degrees + other.col_degrees
        return PolyMatrix(self.ring, rows, self.nrows + other.nrows, self.ncols + other.ncols, rd, cd)

    def kron_identity_right(self, n):
        """self (x) I_n with row/col index (i, l) -> i*n + l."""
        z = self.ring.zero()
        rows = []
        for i in range(self.nrows):
            for l in range(n):
                row = []
                for j in range(self.ncols):
                    e = self.entries[i][j]
                    row.extend(e if ll == l else z for ll in range(n))
                rows.append(row)
        return PolyMatrix(self.ring, rows, self.nrows * n, self.ncols * n)

    def frobenius(self, q):
        m = self.map_entries(lambda e: e.frobenius(q))
        rd = None if self.row_degrees is None else tuple(q * d for d in self.row_degrees)
        cd = None if self.col_degrees is None else tuple(q * d for d in self.col_degrees)
        return m.with_degrees(rd, cd)

    # -- grading ----------------------------------------------------------
    def is_homogeneous(self):
        if self.row_degrees is None or self.col_degrees is None:
            return False
        wdeg = self.ring.wdeg
        for i, row in enumerate(self.entries):
            for j, e in enumerate(row):
                want = self.col_degrees[j] - self.row_degrees[i]
                if any(wdeg(x) != want for x in e.terms):
                    return False
        return True

    def infer_degrees(self, row_degrees=None):
        """Find twists making every entry homogeneous; returns a new matrix or raises.

        Row degrees default to 0 on each connected block; zero columns get degree
        equal to the smallest row degree.
        """
        nr, nc = self.nrows, self.ncols
        for row in self.entries:
            for e in row:
                if e and not e.is_homogeneous():
                    raise NotHomogeneous(f"entry {e} is not homogeneous")
        rdeg = list(row_degrees) if row_degrees is not None else [None] * nr
        cdeg = [None] * nc
        changed = True
        while True:
            while changed:
                changed = False
                for i in range(nr):
                    for j in range(nc):
                        e = self.entries[i][j]
                        if not e:
                            continue
                        d = e.homogeneous_degree()
                        if rdeg[i] is not None and cdeg[j] is None:
                            cdeg[j] = rdeg[i] + d
                            changed = True
                        elif cdeg[j] is not None and rdeg[i] is None:
                            rdeg[i] = cdeg[j] - d
                            changed = True
                        elif rdeg[i] is not None and cdeg[j] is not None:
                            if cdeg[j] - rdeg[i] != d:
                                raise NotHomogeneous(f"no consistent twist for entry ({i},{j})")
            free = [i for i in range(nr) if rdeg[i] is None]
            if not free:
                break
            rdeg[free[0]] = 0
            changed = True
        base = min(rdeg) if rdeg else 0
        cdeg = [base if c is None else c for c in cdeg]
        return self.with_degrees(rdeg, cdeg)

    def __str__(self):
        return "[" + ", ".join("[" + ", ".join(str(e) for e in row) + "]" for row in self.entries) + "]"

    def __repr__(self):
        return f"PolyMatrix({self})"
