"""Weil-Deligne representation data and its calculus: validation, the
special (Steinberg-type) construction, tensor/direct sum, the functor
induced by a partition, Frobenius-semisimplification, the monodromy
filtration, purity certification and decomposition signatures.

Twist convention, fixed here and used consistently: block i of the
special representation carries phi * q^(-i) (geometric Frobenius; the
twist lowers eigenvalues), so Sp_t of the trivial character is pure of
weight -(t-1).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .fields import Field, NumberField, Poly, QQ, QT
from .linalg import (Matrix, SingularMatrixError, block_diagonal, charpoly,
                     column_echelon, intersect_columns, is_nilpotent,
                     mat_subspaces, mult_jordan_chevalley, scalar_restriction,
                     solve_in_span)
from .roots import DEFAULT_EPS, CertificationFailed, ModulusInterval, root_moduli_certified
from .schur import Partition, schur_derivation, schur_of_matrix

INERTIA_ORDER_BOUND = 64
INERTIA_CLOSURE_CAP = 64


class NonIntegralWeight(ArithmeticError):
    """Weight inference produced a non-integral or inconsistent weight."""


class NonSplitSpectrum(RuntimeError):
    """An operation needed spectral data that is not available without
    polynomial factorization."""


@dataclass(frozen=True)
class WDRep:
    """A Weil-Deligne representation over an exact coefficient field:
    residue cardinality q, invertible Frobenius matrix phi, nilpotent
    monodromy nilp, and a finite list of labeled inertia generators."""

    q: int
    field: Field
    phi: Matrix
    nilp: Matrix
    inertia: tuple[tuple[str, Matrix], ...] = ()

    def __post_init__(self):
        if not isinstance(self.q, int) or self.q < 2:
            raise ValueError("q must be an integer >= 2")
        if not self.phi.is_square() or not self.nilp.is_square():
            raise ValueError("phi and nilp must be square")
        if self.phi.nrows != self.nilp.nrows:
            raise ValueError("phi and nilp must have equal size")
        if self.phi.field != self.field or self.nilp.field != self.field:
            raise ValueError("matrix fields must match the declared field")
        object.__setattr__(self, "inertia", tuple(self.inertia))
        for label, g in self.inertia:
            if not isinstance(label, str) or not label:
                raise ValueError("inertia labels must be nonempty strings")
            if not g.is_square() or g.nrows != self.phi.nrows or g.field != self.field:
                raise ValueError(f"inertia {label!r} has wrong shape or field")

    @property
    def dim(self) -> int:
        return self.phi.nrows


def _matrix_order(g: Matrix, bound: int):
    eye = Matrix.identity(g.field, g.nrows)
    acc = g
    for m in range(1, bound + 1):
        if acc == eye:
            return m
        acc = acc * g
    return None


def inertia_closure(generators, field: Field, dim: int, cap: int = INERTIA_CLOSURE_CAP):
    """BFS enumeration of the group generated by the labeled inertia
    matrices.  Returns a list of (word, matrix) in deterministic BFS
    order (identity first, generators in label order); None if the
    closure exceeds the cap."""
    eye = Matrix.identity(field, dim)
    elements = {eye: ""}
    order = [("", eye)]
    queue = [eye]
    gens = sorted(generators, key=lambda item: item[0])
    while queue:
        current = queue.pop(0)
        for label, g in gens:
            nxt = current * g
            if nxt in elements:
                continue
            word = (elements[current] + "*" + label).lstrip("*")
            if len(elements) + 1 > cap:
                return None
            elements[nxt] = word
            order.append((word, nxt))
            queue.append(nxt)
    return order


def wd_validate(rho: WDRep):
    """Check every invariant; returns None when valid, otherwise a
    description of the first violated invariant."""
    n = rho.dim
    try:
        phi_inv = rho.phi.inverse()
    except SingularMatrixError:
        return "phi is singular"
    if not is_nilpotent(rho.nilp):
        return f"nilp is not nilpotent (nilp^{n} != 0)"
    qinv = rho.field.coerce(Fraction(1, rho.q))
    if rho.phi * rho.nilp * phi_inv != rho.nilp * qinv:
        return f"conjugation relation phi*nilp*phi^-1 = (1/{rho.q})*nilp violated"
    for idx, (label, g) in enumerate(rho.inertia):
        if g * rho.nilp != rho.nilp * g:
            return f"inertia[{idx}] {label!r} does not commute with nilp"
    for idx, (label, g) in enumerate(rho.inertia):
        if _matrix_order(g, INERTIA_ORDER_BOUND) is None:
            return f"inertia[{idx}] {label!r}: order exceeds bound {INERTIA_ORDER_BOUND}"
    closure = inertia_closure(rho.inertia, rho.field, n)
    if closure is None:
        return f"inertia closure exceeds cap {INERTIA_CLOSURE_CAP}"
    closure_set = {g for _, g in closure}
    for idx, (label, g) in enumerate(rho.inertia):
        if rho.phi * g * phi_inv not in closure_set:
            return f"Frobenius does not normalize inertia (conjugate of [{idx}] {label!r} leaves the closure)"
    return None


def _require_valid(rho: WDRep, context: str) -> WDRep:
    message = wd_validate(rho)
    if message is not None:
        raise ValueError(f"{context} produced an invalid representation: {message}")
    return rho


# ---------------------------------------------------------------------------
# constructions
# ---------------------------------------------------------------------------

def sp_construct(t: int, r: WDRep) -> WDRep:
    """The special representation on r^(+t): block i carries
    phi_r * q^(-i), inertia acts diagonally untwisted, and the monodromy
    maps block i identically onto block i+1."""
    if t < 1:
        raise ValueError("t must be a positive integer")
    if not r.nilp.is_zero():
        raise ValueError("sp_construct needs a representation with zero monodromy")
    field = r.field
    n0 = r.dim
    q = r.q
    blocks = []
    for i in range(t):
        blocks.append(r.phi * field.coerce(Fraction(1, q) ** i))
    phi = block_diagonal(field, blocks)
    size = t * n0
    zero = field.zero
    nilp_rows = [[zero] * size for _ in range(size)]
    one = field.one
    for i in range(t - 1):
        for k in range(n0):
            nilp_rows[(i + 1) * n0 + k][i * n0 + k] = one
    nilp = Matrix(field, nilp_rows)
    inertia = tuple((label, block_diagonal(field, [g] * t)) for label, g in r.inertia)
    return _require_valid(WDRep(q, field, phi, nilp, inertia), "sp_construct")


def _merge_inertia(a: WDRep, b: WDRep, combine):
    labels = sorted({label for label, _ in a.inertia} | {label for label, _ in b.inertia})
    da = dict(a.inertia)
    db = dict(b.inertia)
    ia = Matrix.identity(a.field, a.dim)
    ib = Matrix.identity(b.field, b.dim)
    return tuple((label, combine(da.get(label, ia), db.get(label, ib))) for label in labels)


def wd_tensor(a: WDRep, b: WDRep) -> WDRep:
    """Tensor product: Frobenius acts by the Kronecker product and the
    monodromy by the derivation rule 1 x N + N x 1."""
    if a.q != b.q:
        raise ValueError("tensor factors must share q")
    if a.field != b.field:
        raise ValueError("tensor factors must share the coefficient field")
    eye_a = Matrix.identity(a.field, a.dim)
    eye_b = Matrix.identity(b.field, b.dim)
    phi = a.phi.kron(b.phi)
    nilp = a.nilp.kron(eye_b) + eye_a.kron(b.nilp)
    inertia = _merge_inertia(a, b, lambda ga, gb: ga.kron(gb))
    return _require_valid(WDRep(a.q, a.field, phi, nilp, inertia), "wd_tensor")


def wd_direct_sum(a: WDRep, b: WDRep) -> WDRep:
    if a.q != b.q:
        raise ValueError("direct summands must share q")
    if a.field != b.field:
        raise ValueError("direct summands must share the coefficient field")
    phi = block_diagonal(a.field, [a.phi, b.phi])
    nilp = block_diagonal(a.field, [a.nilp, b.nilp])
    inertia = _merge_inertia(a, b, lambda ga, gb: block_diagonal(a.field, [ga, gb]))
    return _require_valid(WDRep(a.q, a.field, phi, nilp, inertia), "wd_direct_sum")


def wd_schur(rho: WDRep, mu: Partition) -> WDRep:
    """Apply the partition functor: Frobenius and inertia through the
    matrix functor, monodromy through the derivation.  A zero-dimensional
    result (too many rows for the dimension) is legal."""
    phi = schur_of_matrix(rho.phi, mu)
    nilp = schur_derivation(rho.nilp, mu)
    inertia = tuple((label, schur_of_matrix(g, mu)) for label, g in rho.inertia)
    return _require_valid(WDRep(rho.q, rho.field, phi, nilp, inertia), "wd_schur")


def frobenius_semisimplify(rho: WDRep) -> WDRep:
    """Replace phi by its semisimple Jordan-Chevalley factor; the
    monodromy and inertia are untouched.  Idempotent, trace-preserving,
    and the conjugation relation survives because the semisimple part
    acts on the relevant eigenspace by the same scalar."""
    S, _ = mult_jordan_chevalley(rho.phi)
    return _require_valid(WDRep(rho.q, rho.field, S, rho.nilp, rho.inertia),
                          "frobenius_semisimplify")


# ---------------------------------------------------------------------------
# monodromy filtration
# ---------------------------------------------------------------------------

@dataclass
class Filtration:
    """Increasing filtration M_k, stored as canonical bases per index;
    keys run from one below the lowest jump (the zero subspace) to the
    top weight (the full space)."""

    steps: dict[int, Matrix]

    def indices(self):
        return sorted(self.steps)

    def step(self, k: int) -> Matrix:
        keys = self.indices()
        if k < keys[0]:
            return self.steps[keys[0]]
        if k > keys[-1]:
            return self.steps[keys[-1]]
        return self.steps[k]

    def graded_dim(self, k: int) -> int:
        return self.step(k).ncols - self.step(k - 1).ncols


def _complement_columns(sub: Matrix, big: Matrix) -> Matrix:
    """Columns of `big` extending a basis of span(sub) to span(big)."""
    stacked = sub.hstack(big)
    _, pivots = stacked.rref()
    chosen = [p - sub.ncols for p in pivots if p >= sub.ncols]
    cols = [big.column(j) for j in chosen]
    return Matrix.from_columns(big.field, cols, big.nrows)


def monodromy_filtration(N: Matrix) -> Filtration:
    """The unique increasing filtration with N*M_k inside M_(k-2) and
    N^k inducing isomorphisms gr_k = gr_(-k); built from Jordan chains
    (a chain of length s contributes weights s-1, s-3, ..., -(s-1))."""
    if not N.is_square():
        raise ValueError("monodromy filtration needs a square matrix")
    if not is_nilpotent(N):
        raise ValueError("monodromy filtration needs a nilpotent matrix")
    field = N.field
    n = N.nrows
    if n == 0:
        empty = Matrix.zeros(field, 0, 0)
        return Filtration({-1: empty, 0: empty})
    powers = [Matrix.identity(field, n)]
    while not powers[-1].is_zero():
        powers.append(powers[-1] * N)
    e = len(powers) - 1  # nilpotency index: N^e = 0, N^(e-1) != 0
    kernels = []
    for j in range(e + 1):
        _, ker, _ = mat_subspaces(powers[j])
        kernels.append(ker)
    weighted: list[tuple[int, list]] = []  # (weight, vector)
    chains: list[tuple[int, list]] = []    # (length, head)
    for s in range(e, 0, -1):
        inherited = []
        for length, head in chains:
            v = head
            for _ in range(length - s):
                v = [_dot_row(N, v, i) for i in range(n)]
            inherited.append(v)
        base = kernels[s - 1]
        if inherited:
            base = base.hstack(Matrix.from_columns(field, inherited, n))
        heads = _complement_columns(base, kernels[s])
        for j in range(heads.ncols):
            h = heads.column(j)
            chains.append((s, h))
            v = h
            for i in range(s):
                weighted.append((s - 1 - 2 * i, v))
                if i < s - 1:
                    v = [_dot_row(N, v, r) for r in range(n)]
    steps = {}
    for k in range(-e, e):
        vecs = [v for w, v in weighted if w <= k]
        if vecs:
            steps[k] = column_echelon(Matrix.from_columns(field, vecs, n))
        else:
            steps[k] = Matrix.zeros(field, n, 0)
    return Filtration(steps)


def _dot_row(M: Matrix, vec, i: int):
    acc = M.field.zero
    row = M.rows[i]
    for a, b in zip(row, vec):
        if a and b:
            acc = acc + a * b
    return acc


def _quotient_action(sub: Matrix, reps: Matrix, operator: Matrix) -> Matrix:
    """Matrix of `operator` on span(sub + reps)/span(sub) in the basis
    given by the columns of reps."""
    if reps.ncols == 0:
        return Matrix.zeros(sub.field, 0, 0)
    base = sub.hstack(reps)
    solved = solve_in_span(base, operator * reps)
    rows = solved.rows[sub.ncols:]
    return Matrix(sub.field, rows)


# ---------------------------------------------------------------------------
# signatures
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class SignatureEntry:
    """One special-representation constituent: chain length t and the
    characteristic polynomial of Frobenius on the chain bottoms, plus
    inertia generator traces on the same space when inertia is present."""

    t: int
    charpoly: Poly
    inertia_traces: tuple[tuple[str, object], ...] = ()

    def sort_key(self):
        return (self.t, tuple(repr(c) for c in self.charpoly.coeffs),
                tuple((label, repr(v)) for label, v in self.inertia_traces))


def _merge_entries(a: SignatureEntry, b: SignatureEntry) -> SignatureEntry:
    """Combine two constituents of the same chain length: charpolys
    multiply; inertia traces add, a missing label counting as the
    identity (trace = dimension of the other summand's space)."""
    poly = a.charpoly * b.charpoly
    ta, tb = dict(a.inertia_traces), dict(b.inertia_traces)
    labels = sorted(set(ta) | set(tb))
    traces = ()
    if labels:
        field = poly.field
        traces = tuple((label,
                        ta.get(label, field.coerce(a.charpoly.degree)) +
                        tb.get(label, field.coerce(b.charpoly.degree)))
                       for label in labels)
    return SignatureEntry(a.t, poly, traces)


@dataclass(frozen=True)
class Signature:
    """Multiset of (t, charpoly) pairs encoding the Frobenius-semisimple
    decomposition into special representations, without eigenvalue
    splitting.

    Canonical form keeps one entry per chain length t (constituents of
    equal t merge by multiplying charpolys), which is exactly what the
    kernel/image quotients produce; a multiset union therefore reduces to
    this merge."""

    entries: tuple[SignatureEntry, ...]

    def __post_init__(self):
        merged: dict[int, SignatureEntry] = {}
        for entry in sorted(self.entries, key=SignatureEntry.sort_key):
            if entry.t in merged:
                merged[entry.t] = _merge_entries(merged[entry.t], entry)
            else:
                merged[entry.t] = entry
        object.__setattr__(self, "entries",
                           tuple(merged[t] for t in sorted(merged)))

    def total_dim(self) -> int:
        return sum(entry.t * entry.charpoly.degree for entry in self.entries)

    def union(self, other: "Signature") -> "Signature":
        return Signature(self.entries + other.entries)


def frss_signature(rho: WDRep) -> Signature:
    """Signature of the Frobenius-semisimplification: for each k >= 0 the
    space P_k = (ker N & im N^k)/(ker N & im N^(k+1)) with its induced
    Frobenius gives an entry (t = k+1, charpoly on P_k); inertia traces
    on P_k are appended when inertia is nontrivial."""
    message = wd_validate(rho)
    if message is not None:
        raise ValueError(f"invalid representation: {message}")
    field = rho.field
    n = rho.dim
    if n == 0:
        return Signature(())
    S, _ = mult_jordan_chevalley(rho.phi)
    _, ker, _ = mat_subspaces(rho.nilp)
    layers = [ker]  # layers[k] = ker N & im N^k
    power = Matrix.identity(field, n)
    while layers[-1].ncols > 0:
        power = power * rho.nilp
        _, _, image = mat_subspaces(power)
        layers.append(intersect_columns(ker, image))
    entries = []
    for k in range(len(layers) - 1):
        sub = layers[k + 1]
        reps = _complement_columns(sub, layers[k])
        if reps.ncols == 0:
            continue
        action = _quotient_action(sub, reps, S)
        traces = tuple((label, _quotient_action(sub, reps, g).trace())
                       for label, g in rho.inertia)
        entries.append(SignatureEntry(t=k + 1, charpoly=charpoly(action),
                                      inertia_traces=traces))
    sig = Signature(tuple(entries))
    if sig.total_dim() != n:
        raise AssertionError("signature dimensions do not add up")
    return sig


def _companion(p: Poly) -> Matrix:
    if not p.is_monic() or p.degree < 1:
        raise ValueError("companion matrix needs a monic polynomial of degree >= 1")
    g = p.degree
    field = p.field
    zero, one = field.zero, field.one
    rows = [[zero] * g for _ in range(g)]
    for i in range(1, g):
        rows[i][i - 1] = one
    for i in range(g):
        rows[i][g - 1] = -p[i]
    return Matrix(field, rows)


def signature_reconstruct(sig: Signature, q: int, field: Field = QQ) -> WDRep:
    """Rebuild a representation with the given signature: each entry
    (t, p) becomes the special representation of the unramified twist
    whose chain-bottom Frobenius is the companion matrix of p.  Inertia
    trace data cannot be rebuilt without splitting the spectrum."""
    if any(entry.inertia_traces for entry in sig.entries):
        raise NonSplitSpectrum("cannot reconstruct inertia actions from traces alone")
    total = None
    for entry in sig.entries:
        top = _companion(entry.charpoly) * field.coerce(Fraction(q) ** (entry.t - 1))
        size = entry.charpoly.degree
        piece = sp_construct(entry.t, WDRep(q, field, top, Matrix.zeros(field, size, size)))
        total = piece if total is None else wd_direct_sum(total, piece)
    if total is None:
        raise ValueError("cannot reconstruct from an empty signature")
    return total


# ---------------------------------------------------------------------------
# purity
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class GradedPurity:
    """Frobenius data on one graded piece of the monodromy filtration
    (after restriction of scalars to Q when over a number field)."""

    k: int
    dim: int
    charpoly: Poly
    intervals: tuple[ModulusInterval, ...]
    matches: tuple[bool, ...]


@dataclass(frozen=True)
class PurityReport:
    weight: int | None
    verdict: str  # pure | impure | uncertifiable
    per_graded: tuple[GradedPurity, ...]


def _q_power_exponent(value: Fraction, q: int):
    if value <= 0:
        return None
    num, den = value.numerator, value.denominator
    if den == 1:
        j = 0
        while num > 1:
            num, rem = divmod(num, q)
            if rem:
                return None
            j += 1
        return j
    if num == 1:
        j = 0
        while den > 1:
            den, rem = divmod(den, q)
            if rem:
                return None
            j += 1
        return -j
    return None


def purity_check(rho: WDRep, weight="infer", eps=DEFAULT_EPS) -> PurityReport:
    """Certify whether every Frobenius root on graded piece k of the
    monodromy filtration has absolute value q^((w+k)/2) under every
    complex embedding.

    With weight="infer" the candidate w is read off per piece from
    |det| = q^((w+k)*dim/2) and must be a consistent integer.  Interval
    ambiguity escalates by halving eps up to 4 times before raising
    CertificationFailed.
    """
    if rho.field == QT:
        raise ValueError("purity is a property of specializations, not of Q(t) families")
    if not (rho.field == QQ or isinstance(rho.field, NumberField)):
        raise ValueError("purity requires coefficients in Q or a number field")
    message = wd_validate(rho)
    if message is not None:
        raise ValueError(f"invalid representation: {message}")
    eps = Fraction(eps)
    filt = monodromy_filtration(rho.nilp)
    keys = filt.indices()
    pieces = []
    for k in keys:
        sub = filt.step(k - 1)
        reps = _complement_columns(sub, filt.step(k))
        if reps.ncols == 0:
            continue
        action = _quotient_action(sub, reps, rho.phi)
        pieces.append((k, scalar_restriction(action)))
    if not pieces:
        w = weight if isinstance(weight, int) else None
        return PurityReport(weight=w, verdict="pure", per_graded=())

    if weight == "infer":
        candidates = []
        for k, mat in pieces:
            det_sq = mat.det() ** 2
            j = _q_power_exponent(Fraction(det_sq), rho.q)
            if j is None:
                raise NonIntegralWeight(
                    f"|det|^2 on graded piece {k} is not a power of q = {rho.q}")
            num = Fraction(j, mat.nrows) - k
            if num.denominator != 1:
                raise NonIntegralWeight(
                    f"inferred weight {num} on graded piece {k} is not an integer")
            candidates.append(int(num))
        if len(set(candidates)) != 1:
            raise NonIntegralWeight(f"inconsistent inferred weights {sorted(set(candidates))}")
        w = candidates[0]
    elif isinstance(weight, int):
        w = weight
    else:
        raise ValueError("weight must be an integer or 'infer'")

    graded = []
    verdict = "pure"
    for k, mat in pieces:
        p = charpoly(mat)
        j = w + k
        current = eps
        for attempt in range(5):
            intervals = tuple(root_moduli_certified(p, current))
            matches = []
            ambiguous = False
            for iv in intervals:
                hit = iv.contains_half_power(rho.q, j)
                clean = iv.excludes_half_power(rho.q, j - 1) and \
                    iv.excludes_half_power(rho.q, j + 1)
                if hit and clean:
                    matches.append(True)
                elif iv.excludes_half_power(rho.q, j):
                    matches.append(False)
                else:
                    ambiguous = True
                    break
            if not ambiguous:
                break
            current = current / 2
        else:
            raise CertificationFailed(
                f"graded piece {k}: root enclosures remain ambiguous after escalation")
        if not all(matches):
            verdict = "impure"
        graded.append(GradedPurity(k=k, dim=mat.nrows, charpoly=p,
                                   intervals=intervals, matches=tuple(matches)))
    return PurityReport(weight=w, verdict=verdict, per_graded=tuple(graded))
