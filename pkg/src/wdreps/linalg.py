"""Exact linear algebra over the coefficient fields: echelon forms,
kernel/image bases, characteristic polynomials and the multiplicative
Jordan-Chevalley decomposition.

Echelon conventions are deterministic (first nonzero pivot, columns
ordered by pivot row, pivots normalized to 1, reduced) so every basis
this module emits is the unique canonical basis of its subspace.
"""

from __future__ import annotations

from fractions import Fraction

from .fields import Field, NumberField, Poly, QQ, squarefree_part


class SingularMatrixError(ArithmeticError):
    """Inversion or a decomposition that requires invertibility met a
    singular matrix."""


class Matrix:
    """Immutable dense matrix over a `Field`."""

    __slots__ = ("field", "rows")

    def __init__(self, field: Field, rows):
        self.field = field
        self.rows = tuple(tuple(field.coerce(x) for x in row) for row in rows)
        if self.rows:
            width = len(self.rows[0])
            if any(len(r) != width for r in self.rows):
                raise ValueError("ragged matrix rows")

    # -- constructors -------------------------------------------------

    @classmethod
    def identity(cls, field: Field, n: int) -> "Matrix":
        one, zero = field.one, field.zero
        return cls(field, [[one if i == j else zero for j in range(n)] for i in range(n)])

    @classmethod
    def zeros(cls, field: Field, nrows: int, ncols: int) -> "Matrix":
        zero = field.zero
        return cls(field, [[zero] * ncols for _ in range(nrows)])

    @classmethod
    def diagonal(cls, field: Field, entries) -> "Matrix":
        entries = [field.coerce(e) for e in entries]
        zero = field.zero
        n = len(entries)
        return cls(field, [[entries[i] if i == j else zero for j in range(n)] for i in range(n)])

    @classmethod
    def from_columns(cls, field: Field, cols, nrows: int) -> "Matrix":
        cols = list(cols)
        return cls(field, [[col[i] for col in cols] for i in range(nrows)])

    # -- shape and access ---------------------------------------------

    @property
    def nrows(self) -> int:
        return len(self.rows)

    @property
    def ncols(self) -> int:
        return len(self.rows[0]) if self.rows else 0

    def is_square(self) -> bool:
        return self.nrows == self.ncols

    def __getitem__(self, key):
        i, j = key
        return self.rows[i][j]

    def column(self, j: int):
        return [row[j] for row in self.rows]

    def columns(self):
        return [self.column(j) for j in range(self.ncols)]

    def is_zero(self) -> bool:
        return all(not x for row in self.rows for x in row)

    def __eq__(self, other):
        if not isinstance(other, Matrix):
            return NotImplemented
        return self.field == other.field and self.rows == other.rows

    def __hash__(self):
        return hash((self.field, self.rows))

    def __repr__(self):
        return f"Matrix({self.field!r}, {[list(r) for r in self.rows]!r})"

    # -- arithmetic ----------------------------------------------------

    def __add__(self, other: "Matrix") -> "Matrix":
        if self.nrows != other.nrows or self.ncols != other.ncols:
            raise ValueError("shape mismatch in matrix addition")
        return Matrix(self.field, [[a + b for a, b in zip(ra, rb)]
                                   for ra, rb in zip(self.rows, other.rows)])

    def __sub__(self, other: "Matrix") -> "Matrix":
        if self.nrows != other.nrows or self.ncols != other.ncols:
            raise ValueError("shape mismatch in matrix subtraction")
        return Matrix(self.field, [[a - b for a, b in zip(ra, rb)]
                                   for ra, rb in zip(self.rows, other.rows)])

    def __neg__(self) -> "Matrix":
        return Matrix(self.field, [[-a for a in row] for row in self.rows])

    def __mul__(self, other):
        if isinstance(other, Matrix):
            if self.ncols != other.nrows:
                raise ValueError("shape mismatch in matrix product")
            cols = [other.column(j) for j in range(other.ncols)]
            zero = self.field.zero
            out = []
            for row in self.rows:
                out_row = []
                for col in cols:
                    acc = zero
                    for a, b in zip(row, col):
                        if a and b:
                            acc = acc + a * b
                    out_row.append(acc)
                out.append(out_row)
            return Matrix(self.field, out)
        s = self.field.coerce(other)
        return Matrix(self.field, [[a * s for a in row] for row in self.rows])

    def __rmul__(self, other):
        s = self.field.coerce(other)
        return Matrix(self.field, [[s * a for a in row] for row in self.rows])

    def __pow__(self, n: int) -> "Matrix":
        if not self.is_square():
            raise ValueError("power of a non-square matrix")
        if n < 0:
            return self.inverse() ** (-n)
        result = Matrix.identity(self.field, self.nrows)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def transpose(self) -> "Matrix":
        return Matrix(self.field, [list(col) for col in zip(*self.rows)] if self.rows else [])

    def trace(self):
        if not self.is_square():
            raise ValueError("trace of a non-square matrix")
        acc = self.field.zero
        for i in range(self.nrows):
            acc = acc + self.rows[i][i]
        return acc

    def map_entries(self, fn, field: Field) -> "Matrix":
        return Matrix(field, [[fn(x) for x in row] for row in self.rows])

    def hstack(self, other: "Matrix") -> "Matrix":
        if self.nrows != other.nrows:
            raise ValueError("row count mismatch in hstack")
        return Matrix(self.field, [ra + rb for ra, rb in zip(self.rows, other.rows)])

    def kron(self, other: "Matrix") -> "Matrix":
        """Kronecker product, first factor most significant."""
        out = []
        for ra in self.rows:
            for rb in other.rows:
                out.append([a * b for a in ra for b in rb])
        return Matrix(self.field, out)

    # -- elimination ----------------------------------------------------

    def rref(self):
        """Reduced row echelon form; returns (Matrix, pivot_columns)."""
        rows = [list(r) for r in self.rows]
        nr, nc = self.nrows, self.ncols
        one = self.field.one
        pivots = []
        r = 0
        for c in range(nc):
            pr = None
            for i in range(r, nr):
                if rows[i][c]:
                    pr = i
                    break
            if pr is None:
                continue
            rows[r], rows[pr] = rows[pr], rows[r]
            pv = rows[r][c]
            if pv != one:
                inv = one / pv
                rows[r] = [x * inv for x in rows[r]]
            for i in range(nr):
                if i != r and rows[i][c]:
                    f = rows[i][c]
                    rows[i] = [x - f * y for x, y in zip(rows[i], rows[r])]
            pivots.append(c)
            r += 1
            if r == nr:
                break
        return Matrix(self.field, rows), tuple(pivots)

    def rank(self) -> int:
        return len(self.rref()[1])

    def det(self):
        if not self.is_square():
            raise ValueError("determinant of a non-square matrix")
        rows = [list(r) for r in self.rows]
        n = self.nrows
        acc = self.field.one
        for c in range(n):
            pr = None
            for i in range(c, n):
                if rows[i][c]:
                    pr = i
                    break
            if pr is None:
                return self.field.zero
            if pr != c:
                rows[c], rows[pr] = rows[pr], rows[c]
                acc = -acc
            pv = rows[c][c]
            acc = acc * pv
            inv = self.field.one / pv
            for i in range(c + 1, n):
                if rows[i][c]:
                    f = rows[i][c] * inv
                    rows[i] = [x - f * y for x, y in zip(rows[i], rows[c])]
        return acc

    def inverse(self) -> "Matrix":
        if not self.is_square():
            raise ValueError("inverse of a non-square matrix")
        n = self.nrows
        aug = self.hstack(Matrix.identity(self.field, n))
        red, pivots = aug.rref()
        if tuple(pivots[:n]) != tuple(range(n)) or len(pivots) != n:
            raise SingularMatrixError("matrix is singular")
        return Matrix(self.field, [row[n:] for row in red.rows])


def block_diagonal(field: Field, blocks) -> Matrix:
    blocks = list(blocks)
    size = sum(b.nrows for b in blocks)
    zero = field.zero
    rows = [[zero] * size for _ in range(size)]
    off = 0
    for b in blocks:
        for i in range(b.nrows):
            for j in range(b.ncols):
                rows[off + i][off + j] = b[i, j]
        off += b.nrows
    return Matrix(field, rows)


def column_echelon(M: Matrix) -> Matrix:
    """Canonical basis of the column space: reduced column echelon form,
    columns ordered by pivot row, pivot entries 1."""
    red, _ = M.transpose().rref()
    cols = [row for row in red.rows if any(row)]
    return Matrix.from_columns(M.field, cols, M.nrows)


def mat_subspaces(M: Matrix):
    """Rank, canonical kernel basis and canonical image basis of M.

    rank + kernel columns = ncols; M * kernel column = 0; image columns
    span the column space.  Both bases are in reduced column echelon form.
    """
    red, pivots = M.rref()
    rank = len(pivots)
    pivot_set = set(pivots)
    free = [c for c in range(M.ncols) if c not in pivot_set]
    kernel_cols = []
    for f in free:
        col = [M.field.zero] * M.ncols
        col[f] = M.field.one
        for r, p in enumerate(pivots):
            col[p] = -red[r, f]
        kernel_cols.append(col)
    kernel = Matrix.from_columns(M.field, kernel_cols, M.ncols)
    kernel = column_echelon(kernel) if kernel_cols else Matrix.zeros(M.field, M.ncols, 0)
    image = column_echelon(M) if rank else Matrix.zeros(M.field, M.nrows, 0)
    return rank, kernel, image


def solve_in_span(A: Matrix, Y: Matrix) -> Matrix:
    """Solve A * X = Y where the columns of A are independent and Y lies
    in their span; raises ValueError otherwise."""
    if A.ncols == 0:
        if not Y.is_zero():
            raise ValueError("right-hand side outside the span")
        return Matrix.zeros(A.field, 0, Y.ncols)
    red, pivots = A.hstack(Y).rref()
    if len(pivots) != A.ncols or any(p >= A.ncols for p in pivots):
        raise ValueError("columns dependent or right-hand side outside the span")
    return Matrix(A.field, [row[A.ncols:] for row in red.rows[:A.ncols]])


def intersect_columns(U: Matrix, V: Matrix) -> Matrix:
    """Canonical basis of (column space of U) intersected with (column
    space of V)."""
    if U.ncols == 0 or V.ncols == 0:
        return Matrix.zeros(U.field, U.nrows, 0)
    stacked = U.hstack(Matrix(U.field, [[-x for x in row] for row in V.rows]))
    _, kernel, _ = mat_subspaces(stacked)
    cols = []
    for j in range(kernel.ncols):
        coefy = [kernel[i, j] for i in range(U.ncols)]
        cols.append([sum_scalars(U.field, (U[i, k] * coefy[k] for k in range(U.ncols)))
                     for i in range(U.nrows)])
    if not cols:
        return Matrix.zeros(U.field, U.nrows, 0)
    return column_echelon(Matrix.from_columns(U.field, cols, U.nrows))


def sum_scalars(field: Field, items):
    acc = field.zero
    for x in items:
        acc = acc + x
    return acc


def charpoly(M: Matrix) -> Poly:
    """Characteristic polynomial det(xI - M), monic, by the
    Faddeev-LeVerrier recursion (exact in characteristic zero)."""
    if not M.is_square():
        raise ValueError("characteristic polynomial of a non-square matrix")
    n = M.nrows
    field = M.field
    coeffs = [field.zero] * (n + 1)
    coeffs[n] = field.one
    if n == 0:
        return Poly(field, coeffs)
    Mk = M
    c = -Mk.trace()
    coeffs[n - 1] = c
    for k in range(2, n + 1):
        Mk = M * (Mk + Matrix.identity(field, n) * c)
        c = -(Mk.trace() / k)
        coeffs[n - k] = c
    return Poly(field, coeffs)


def poly_eval_matrix(p: Poly, M: Matrix) -> Matrix:
    """Horner evaluation of a polynomial at a square matrix."""
    if not M.is_square():
        raise ValueError("polynomial evaluation needs a square matrix")
    n = M.nrows
    acc = Matrix.zeros(M.field, n, n)
    eye = Matrix.identity(M.field, n)
    for c in reversed(p.coeffs):
        acc = acc * M + eye * c
    return acc


def mult_jordan_chevalley(M: Matrix):
    """Multiplicative Jordan-Chevalley decomposition M = S*U = U*S with S
    semisimple and U unipotent, both polynomial expressions in M.

    Factorization-free: Newton iteration against the squarefree part f of
    the characteristic polynomial converges to the semisimple part S in at
    most ceil(log2 n) + 1 steps, then U = S^-1 * M.
    """
    if not M.is_square():
        raise ValueError("decomposition of a non-square matrix")
    n = M.nrows
    if n == 0:
        return M, M
    if not M.det():
        raise SingularMatrixError("multiplicative decomposition needs an invertible matrix")
    f = squarefree_part(charpoly(M))
    fp = f.derivative()
    X = M
    budget = max(1, n.bit_length() + 1)
    for _ in range(budget):
        FX = poly_eval_matrix(f, X)
        if FX.is_zero():
            break
        X = X - poly_eval_matrix(fp, X).inverse() * FX
    else:
        FX = poly_eval_matrix(f, X)
        if not FX.is_zero():
            raise ArithmeticError("Jordan-Chevalley iteration failed to converge")
    S = X
    U = S.inverse() * M
    return S, U


def is_nilpotent(M: Matrix) -> bool:
    if not M.is_square():
        return False
    return (M ** M.nrows).is_zero() if M.nrows else True


def scalar_restriction(M: Matrix) -> Matrix:
    """Restriction of scalars to Q.  Over a number field of degree m each
    entry becomes its m x m multiplication matrix; over Q this is the
    identity operation.  The characteristic polynomial of the result is
    the product of the entry-wise embeddings' characteristic polynomials.
    """
    if M.field == QQ:
        return M
    if not isinstance(M.field, NumberField):
        raise ValueError("scalar restriction is defined over Q and number fields only")
    m = M.field.degree
    out = [[Fraction(0)] * (M.ncols * m) for _ in range(M.nrows * m)]
    for i in range(M.nrows):
        for j in range(M.ncols):
            block = M[i, j].regular_matrix()
            for bi in range(m):
                for bj in range(m):
                    out[i * m + bi][j * m + bj] = block[bi][bj]
    return Matrix(QQ, out)
