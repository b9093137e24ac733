"""Families of Weil-Deligne representations with Q(t) coefficients:
specialization at rational points, purity-and-signature scans over point
grids, rigidity verdicts, and trace linkage between families.

Specialization points are rational numbers; impure and undefined points
never fail a scan (they are recorded and exempted, since the rigidity
statement quantifies only over pure specializations).
"""

from __future__ import annotations

from dataclasses import dataclass, replace
from fractions import Fraction

from .fields import Poly, QQ, QT
from .linalg import Matrix
from .roots import DEFAULT_EPS, CertificationFailed
from .schur import Partition
from .wd import (NonIntegralWeight, PurityReport, Signature, SignatureEntry,
                 WDRep, frss_signature, purity_check, wd_schur, wd_validate)


class DenominatorVanishes(ArithmeticError):
    def __init__(self, point: Fraction):
        super().__init__(f"a denominator vanishes at t = {point}")
        self.point = point


class SingularFrobenius(ArithmeticError):
    def __init__(self, point: Fraction):
        super().__init__(f"Frobenius specializes to a singular matrix at t = {point}")
        self.point = point


def default_scan_points() -> list[Fraction]:
    """The default grid: the integers -25..25."""
    return [Fraction(a) for a in range(-25, 26)]


def _evaluate_matrix(M: Matrix, a: Fraction) -> Matrix:
    try:
        return M.map_entries(lambda x: x.eval(a), QQ)
    except ZeroDivisionError as exc:
        raise DenominatorVanishes(a) from exc


def specialize(fam: WDRep, point) -> WDRep:
    """Evaluate every coefficient at t = a.  The result is a valid
    representation over Q; evaluation commutes with every constructor."""
    if fam.field != QT:
        raise ValueError("specialize expects a family with Q(t) coefficients")
    a = Fraction(point)
    phi = _evaluate_matrix(fam.phi, a)
    if not phi.det():
        raise SingularFrobenius(a)
    nilp = _evaluate_matrix(fam.nilp, a)
    inertia = tuple((label, _evaluate_matrix(g, a)) for label, g in fam.inertia)
    rho = WDRep(fam.q, QQ, phi, nilp, inertia)
    message = wd_validate(rho)
    if message is not None:
        raise ValueError(f"specialization at t = {a} is invalid: {message}")
    return rho


def specialize_signature(sig: Signature, point) -> Signature:
    """Entrywise evaluation of a Q(t) signature at t = a."""
    a = Fraction(point)
    entries = []
    for entry in sig.entries:
        coeffs = [c.eval(a) for c in entry.charpoly.coeffs]
        traces = tuple((label, v.eval(a)) for label, v in entry.inertia_traces)
        entries.append(SignatureEntry(t=entry.t, charpoly=Poly(QQ, coeffs),
                                      inertia_traces=traces))
    return Signature(tuple(entries))


@dataclass(frozen=True)
class PointResult:
    a: Fraction
    defined: bool
    error: str | None
    purity: PurityReport | None
    signature: Signature | None


@dataclass(frozen=True)
class RigidityReport:
    mu: Partition
    generic_signature: Signature
    points: tuple[PointResult, ...]
    verdict: str | None = None  # pass | fail | vacuous, None before rigidity_check
    failures: tuple[Fraction, ...] = ()


def purity_scan(fam: WDRep, mu: Partition, points, weight="infer",
                eps=DEFAULT_EPS) -> RigidityReport:
    """Generic signature over Q(t) plus, per point: specialize, apply the
    partition functor, certify purity, take the signature.  Per-point
    errors are recorded, never raised; the verdict is left unset."""
    generic = frss_signature(wd_schur(fam, mu))
    grid = sorted({Fraction(p) for p in points})
    results = []
    for a in grid:
        try:
            rho = specialize(fam, a)
        except (DenominatorVanishes, SingularFrobenius) as exc:
            results.append(PointResult(a, False, f"{type(exc).__name__}: {exc}",
                                       None, None))
            continue
        image = wd_schur(rho, mu)
        signature = frss_signature(image)
        try:
            report = purity_check(image, weight, eps)
            error = None
        except CertificationFailed as exc:
            report = PurityReport(weight=None, verdict="uncertifiable", per_graded=())
            error = f"CertificationFailed: {exc}"
        except NonIntegralWeight as exc:
            report = None
            error = f"NonIntegralWeight: {exc}"
        results.append(PointResult(a, True, error, report, signature))
    return RigidityReport(mu=mu, generic_signature=generic, points=tuple(results))


def _charpoly_multiset(sig: Signature):
    return sorted((entry.t, entry.charpoly.coeffs) for entry in sig.entries)


def rigidity_check(report: RigidityReport) -> RigidityReport:
    """Verdict: pass when at every pure point the specialized generic
    signature equals the point signature as a multiset of (t, charpoly)
    pairs; vacuous when there is no pure point; impure and undefined
    points are exempt."""
    failures = []
    pure_points = 0
    for pr in report.points:
        if not (pr.defined and pr.purity is not None and pr.purity.verdict == "pure"):
            continue
        pure_points += 1
        try:
            expected = specialize_signature(report.generic_signature, pr.a)
        except ZeroDivisionError:
            failures.append(pr.a)
            continue
        if _charpoly_multiset(expected) != _charpoly_multiset(pr.signature):
            failures.append(pr.a)
    if pure_points == 0:
        verdict = "vacuous"
    else:
        verdict = "pass" if not failures else "fail"
    return replace(report, verdict=verdict, failures=tuple(failures))


@dataclass(frozen=True)
class TraceLinkResult:
    equal: bool
    first_difference: str | None


_PAIR_CLOSURE_CAP = 4096


def trace_link_check(fam1: WDRep, fam2: WDRep, max_word_len: int) -> TraceLinkResult:
    """Compare tr(phi^k * g) for 1 <= k <= max_word_len and g running
    over the inertia closures, matched through words in the shared
    generator labels.  Equality of these traces is the desk surrogate for
    sharing a pseudorepresentation."""
    if fam1.q != fam2.q:
        raise ValueError("trace link requires matching q")
    labels1 = sorted(label for label, _ in fam1.inertia)
    labels2 = sorted(label for label, _ in fam2.inertia)
    if labels1 != labels2:
        raise ValueError("trace link requires matching inertia labels")
    gens1 = dict(fam1.inertia)
    gens2 = dict(fam2.inertia)

    powers1 = [fam1.phi]
    powers2 = [fam2.phi]
    for _ in range(1, max_word_len):
        powers1.append(powers1[-1] * fam1.phi)
        powers2.append(powers2[-1] * fam2.phi)

    start = (Matrix.identity(fam1.field, fam1.dim),
             Matrix.identity(fam2.field, fam2.dim))
    seen = {(start[0], start[1]): ""}
    queue = [start]
    while queue:
        m1, m2 = queue.pop(0)
        word = seen[(m1, m2)]
        for k in range(1, max_word_len + 1):
            t1 = (powers1[k - 1] * m1).trace()
            t2 = (powers2[k - 1] * m2).trace()
            if t1 != t2:
                suffix = f"*{word}" if word else ""
                return TraceLinkResult(False, f"phi^{k}{suffix}")
        for label in labels1:
            n1 = m1 * gens1[label]
            n2 = m2 * gens2[label]
            key = (n1, n2)
            if key in seen:
                continue
            if len(seen) + 1 > _PAIR_CLOSURE_CAP:
                raise ValueError("joint inertia closure exceeds the pair cap")
            seen[key] = f"{word}*{label}".lstrip("*")
            queue.append((n1, n2))
    return TraceLinkResult(True, None)
