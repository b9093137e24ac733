"""Shared generators and independent oracles for the test suite."""

from fractions import Fraction

from wdreps import (Matrix, QQ, QT, WDRep, block_diagonal, column_echelon,
                    mat_subspaces, sp_construct, wd_direct_sum)
from wdreps.linalg import intersect_columns


def random_fraction(rng, lo=-4, hi=4, max_den=3) -> Fraction:
    return Fraction(rng.randint(lo, hi), rng.randint(1, max_den))


def random_matrix(rng, n, lo=-3, hi=3, field=QQ) -> Matrix:
    return Matrix(field, [[Fraction(rng.randint(lo, hi)) for _ in range(n)]
                          for _ in range(n)])


def random_unimodular(rng, n, field=QQ) -> Matrix:
    """Product of a unit lower and a unit upper triangular matrix with
    small integer entries: always invertible, exact inverse."""
    lower = [[Fraction(1) if i == j else
              (Fraction(rng.randint(-2, 2)) if i > j else Fraction(0))
              for j in range(n)] for i in range(n)]
    upper = [[Fraction(1) if i == j else
              (Fraction(rng.randint(-2, 2)) if i < j else Fraction(0))
              for j in range(n)] for i in range(n)]
    return Matrix(field, lower) * Matrix(field, upper)


def random_nilpotent(rng, n) -> Matrix:
    """Random Jordan-type nilpotent conjugated by a random unimodular
    matrix: every Jordan profile of dimension n can occur."""
    sizes = []
    left = n
    while left:
        s = rng.randint(1, left)
        sizes.append(s)
        left -= s
    rows = [[Fraction(0)] * n for _ in range(n)]
    off = 0
    for s in sizes:
        for i in range(s - 1):
            rows[off + i + 1][off + i] = Fraction(1)
        off += s
    J = Matrix(QQ, rows)
    P = random_unimodular(rng, n)
    return P * J * P.inverse()


def random_pure_rep(rng, q, weight, max_dim=3) -> WDRep:
    """Random representation over Q that is pure of the given weight:
    a direct sum of special representations of unramified characters
    +-q^m with 2m - (t - 1) = weight."""
    pieces = []
    total = 0
    while not pieces or (total < max_dim and rng.random() < 0.5):
        t_max = max_dim - total
        choices = [t for t in range(1, t_max + 1) if (weight + t - 1) % 2 == 0]
        if not choices:
            break
        t = rng.choice(choices)
        m = (weight + t - 1) // 2
        sign = rng.choice([1, -1])
        char = WDRep(q, QQ, Matrix(QQ, [[Fraction(sign) * Fraction(q) ** m]]),
                     Matrix.zeros(QQ, 1, 1))
        pieces.append(sp_construct(t, char))
        total += t
    rep = pieces[0]
    for piece in pieces[1:]:
        rep = wd_direct_sum(rep, piece)
    return rep


def random_valid_wdrep(rng, q, max_dim=4, with_inertia=False) -> WDRep:
    """Random valid representation: a sum of special representations of
    unramified characters, conjugated by a random unimodular matrix;
    optional order-2 inertia acting by a sign on each block."""
    blocks = []
    signs = []
    total = 0
    while not blocks or (total < max_dim and rng.random() < 0.6):
        t = rng.randint(1, max_dim - total)
        c = Fraction(rng.choice([1, -1])) * Fraction(q) ** rng.randint(-1, 1)
        char = WDRep(q, QQ, Matrix(QQ, [[c]]), Matrix.zeros(QQ, 1, 1))
        blocks.append(sp_construct(t, char))
        signs.append(rng.choice([1, -1]))
        total += t
    phi = block_diagonal(QQ, [b.phi for b in blocks])
    nilp = block_diagonal(QQ, [b.nilp for b in blocks])
    inertia = ()
    if with_inertia:
        g = block_diagonal(QQ, [Matrix.identity(QQ, b.dim) * Fraction(s)
                                for b, s in zip(blocks, signs)])
        inertia = (("g", g),)
    P = random_unimodular(rng, total)
    Pinv = P.inverse()
    return WDRep(q, QQ, P * phi * Pinv, P * nilp * Pinv,
                 tuple((label, P * g * Pinv) for label, g in inertia))


def kernel_sum_filtration_step(N: Matrix, k: int) -> Matrix:
    """Independent filtration oracle: M_k = sum_j (ker N^(k+j+1) & im N^j),
    assembled directly from the formula."""
    n = N.nrows
    field = N.field
    pieces = []
    power_j = Matrix.identity(field, n)
    for j in range(0, n + 1):
        exp = k + j + 1
        if exp >= 0:
            _, ker, _ = mat_subspaces(N ** exp if exp <= n else N ** n)
            _, _, image = mat_subspaces(power_j)
            part = intersect_columns(ker, image)
            if part.ncols:
                pieces.append(part)
        power_j = power_j * N
    if not pieces:
        return Matrix.zeros(field, n, 0)
    stacked = pieces[0]
    for part in pieces[1:]:
        stacked = stacked.hstack(part)
    return column_echelon(stacked)


def subspaces_equal(A: Matrix, B: Matrix) -> bool:
    return column_echelon(A) == column_echelon(B) if A.ncols or B.ncols else True


def flagship_family() -> WDRep:
    return WDRep(5, QT,
                 Matrix(QT, [["1", "0"], ["0", "1/5"]]),
                 Matrix(QT, [["0", "0"], ["t", "0"]]))


def flagship_constant_partner() -> WDRep:
    return WDRep(5, QT,
                 Matrix(QT, [["1", "0"], ["0", "1/5"]]),
                 Matrix(QT, [["0", "0"], ["1", "0"]]))


def trivial_onedim(q=5) -> WDRep:
    return WDRep(q, QQ, Matrix.identity(QQ, 1), Matrix.zeros(QQ, 1, 1))
