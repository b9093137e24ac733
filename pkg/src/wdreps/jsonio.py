"""JSON schemas and canonical serialization.

Scalars travel as strings ("a/b", "(t^2-1)/(t+2)", "a^2-1"); rational
functions are also accepted as {num, den} coefficient arrays (low degree
first).  Output is canonical: reduced fractions, monic denominators,
sorted keys, one trailing newline -- identical inputs give byte-identical
documents.
"""

from __future__ import annotations

import json
import re
from fractions import Fraction

from .families import PointResult, RigidityReport
from .fields import (Field, NFElem, NumberField, ParseError, Poly, QQ, QT,
                     RatFunc, field_from_json)
from .linalg import Matrix
from .roots import ModulusInterval
from .wd import Filtration, PurityReport, Signature, WDRep, wd_validate


class ValidationError(ValueError):
    """The document parsed but violates a representation invariant."""


# ---------------------------------------------------------------------------
# scalars and matrices
# ---------------------------------------------------------------------------

def _poly_from_array(values, what: str) -> Poly:
    coeffs = []
    for v in values:
        if isinstance(v, int):
            coeffs.append(Fraction(v))
        elif isinstance(v, str):
            try:
                coeffs.append(Fraction(v))
            except ValueError as exc:
                raise ParseError(f"{what}: bad coefficient {v!r}") from exc
        else:
            raise ParseError(f"{what}: coefficients must be integers or 'a/b' strings")
    return Poly(QQ, coeffs)


def scalar_from_json(value, field: Field, what: str):
    if isinstance(value, bool):
        raise ParseError(f"{what}: booleans are not scalars")
    if isinstance(value, int):
        return field.coerce(value)
    if isinstance(value, str):
        try:
            return field.parse_scalar(value)
        except ParseError as exc:
            raise ParseError(f"{what}: {exc}") from exc
    if isinstance(value, dict) and field == QT:
        if set(value) != {"num", "den"}:
            raise ParseError(f"{what}: rational function objects need exactly num and den")
        num = _poly_from_array(value["num"], what)
        den = _poly_from_array(value["den"], what)
        if den.is_zero():
            raise ParseError(f"{what}: zero denominator")
        return RatFunc(num, den)
    if isinstance(value, list) and isinstance(field, NumberField):
        return _nf_from_array(value, field, what)
    raise ParseError(f"{what}: cannot interpret {value!r} as a scalar of {field!r}")


def _nf_from_array(values, field: NumberField, what: str):
    poly = _poly_from_array(values, what)
    return NFElem(field, poly.coeffs)


def scalar_to_str(x, field: Field) -> str:
    return field.format_scalar(x)


def matrix_from_json(rows, field: Field, what: str) -> Matrix:
    if not isinstance(rows, list) or any(not isinstance(r, list) for r in rows):
        raise ParseError(f"{what}: matrix must be an array of row arrays")
    if rows:
        width = len(rows[0])
        if any(len(r) != width for r in rows):
            raise ParseError(f"{what}: ragged matrix rows")
    entries = [[scalar_from_json(v, field, f"{what}[{i}][{j}]")
                for j, v in enumerate(row)] for i, row in enumerate(rows)]
    return Matrix(field, entries)


def matrix_to_json(M: Matrix):
    return [[scalar_to_str(x, M.field) for x in row] for row in M.rows]


# ---------------------------------------------------------------------------
# representations
# ---------------------------------------------------------------------------

_WDREP_KEYS = {"q", "field", "phi", "nilp", "inertia"}


def wdrep_from_json(obj) -> WDRep:
    if not isinstance(obj, dict):
        raise ParseError("representation document must be a JSON object")
    unknown = set(obj) - _WDREP_KEYS
    if unknown:
        raise ParseError(f"unknown keys {sorted(unknown)}")
    for key in ("q", "field", "phi", "nilp"):
        if key not in obj:
            raise ParseError(f"missing key {key!r}")
    q = obj["q"]
    if not isinstance(q, int) or q < 2:
        raise ParseError("q must be an integer >= 2")
    field = field_from_json(obj["field"])
    phi = matrix_from_json(obj["phi"], field, "phi")
    nilp = matrix_from_json(obj["nilp"], field, "nilp")
    inertia = []
    for i, item in enumerate(obj.get("inertia", [])):
        if not isinstance(item, dict) or set(item) != {"label", "matrix"}:
            raise ParseError(f"inertia[{i}] must be an object with label and matrix")
        label = item["label"]
        if not isinstance(label, str) or not label:
            raise ParseError(f"inertia[{i}]: label must be a nonempty string")
        inertia.append((label, matrix_from_json(item["matrix"], field, f"inertia[{i}]")))
    try:
        rho = WDRep(q, field, phi, nilp, tuple(inertia))
    except ValueError as exc:
        raise ParseError(str(exc)) from exc
    message = wd_validate(rho)
    if message is not None:
        raise ValidationError(message)
    return rho


def wdrep_to_json(rho: WDRep) -> dict:
    return {
        "q": rho.q,
        "field": rho.field.to_json(),
        "phi": matrix_to_json(rho.phi),
        "nilp": matrix_to_json(rho.nilp),
        "inertia": [{"label": label, "matrix": matrix_to_json(g)}
                    for label, g in rho.inertia],
    }


def load_wdrep(path: str) -> WDRep:
    with open(path, "rb") as handle:
        raw = handle.read()
    try:
        doc = json.loads(raw)
    except json.JSONDecodeError as exc:
        raise ParseError(f"{path}: line {exc.lineno}: {exc.msg}") from exc
    try:
        return wdrep_from_json(doc)
    except ParseError as exc:
        raise ParseError(f"{path}: {exc}") from exc


# ---------------------------------------------------------------------------
# reports
# ---------------------------------------------------------------------------

_SIMPLE_COEFF = re.compile(r"^-?\d+(/\d+)?$")


def format_poly(p: Poly, var: str = "x") -> str:
    """Human rendering, highest degree first; non-rational coefficients
    are parenthesized."""
    if p.is_zero():
        return "0"
    field = p.field
    pieces = []
    for i in range(p.degree, -1, -1):
        c = p[i]
        if not c:
            continue
        s = field.format_scalar(c)
        xpow = "" if i == 0 else (var if i == 1 else f"{var}^{i}")
        if _SIMPLE_COEFF.match(s):
            neg = s.startswith("-")
            mag = s[1:] if neg else s
            if xpow:
                body = xpow if mag == "1" else f"{mag}*{xpow}"
            else:
                body = mag
            sign = "-" if neg else "+"
        else:
            body = f"({s})*{xpow}" if xpow else f"({s})"
            sign = "+"
        if not pieces:
            pieces.append(body if sign == "+" else "-" + body)
        else:
            pieces.append(sign + body)
    return "".join(pieces)


def poly_to_json(p: Poly):
    return [scalar_to_str(c, p.field) for c in p.coeffs]


def signature_to_json(sig: Signature):
    out = []
    for entry in sig.entries:
        item = {"t": entry.t, "charpoly": poly_to_json(entry.charpoly)}
        if entry.inertia_traces:
            item["inertia_traces"] = {label: scalar_to_str(v, entry.charpoly.field)
                                      for label, v in entry.inertia_traces}
        out.append(item)
    return out


def _decimal_floor(x: Fraction, digits: int) -> str:
    scale = 10 ** digits
    n = (x.numerator * scale) // x.denominator
    sign = "-" if n < 0 else ""
    n = abs(n)
    return f"{sign}{n // scale}.{n % scale:0{digits}d}"


def _decimal_ceil(x: Fraction, digits: int) -> str:
    scale = 10 ** digits
    n = -((-x.numerator * scale) // x.denominator)
    sign = "-" if n < 0 else ""
    n = abs(n)
    return f"{sign}{n // scale}.{n % scale:0{digits}d}"


def interval_to_json(iv: ModulusInterval, digits: int = 15):
    return {"lo": _decimal_floor(iv.lo, digits), "hi": _decimal_ceil(iv.hi, digits)}


def purity_report_to_json(report: PurityReport):
    graded = []
    for piece in report.per_graded:
        graded.append({
            "k": piece.k,
            "dim": piece.dim,
            "charpoly": poly_to_json(piece.charpoly),
            "roots": [{"modulus": interval_to_json(iv), "match": match}
                      for iv, match in zip(piece.intervals, piece.matches)],
        })
    return {
        "weight": report.weight if report.weight is not None else "none",
        "verdict": report.verdict,
        "graded": graded,
    }


def filtration_to_json(filt: Filtration):
    return [{"k": k, "dim": filt.steps[k].ncols, "basis": matrix_to_json(filt.steps[k])}
            for k in filt.indices()]


def point_result_to_json(pr: PointResult):
    return {
        "a": str(pr.a),
        "defined": pr.defined,
        "error": pr.error,
        "purity": purity_report_to_json(pr.purity) if pr.purity is not None else None,
        "signature": signature_to_json(pr.signature) if pr.signature is not None else None,
    }


def rigidity_report_to_json(report: RigidityReport):
    return {
        "mu": str(report.mu),
        "generic_signature": signature_to_json(report.generic_signature),
        "points": [point_result_to_json(pr) for pr in report.points],
        "verdict": report.verdict,
        "failures": [str(a) for a in report.failures],
    }


def canonical_json_bytes(obj) -> bytes:
    return (json.dumps(obj, sort_keys=True, indent=2) + "\n").encode("utf-8")
