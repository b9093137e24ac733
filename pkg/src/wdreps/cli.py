"""Command-line interface.

One command per invocation; every run emits a deterministic report
envelope (tool version, command echo, input digest, result payload,
diagnostics).  Exit codes: 0 success or rigidity pass, 1 rigidity fail
verdict, 2 input or validation error, 3 certification failure.
"""

from __future__ import annotations

import argparse
import hashlib
import sys
from dataclasses import dataclass
from fractions import Fraction

from . import __version__
from .families import (default_scan_points, purity_scan, rigidity_check,
                       specialize)
from .fields import ParseError, Poly, QQ
from .jsonio import (ValidationError, canonical_json_bytes, filtration_to_json,
                     format_poly, load_wdrep, purity_report_to_json,
                     rigidity_report_to_json, signature_to_json, wdrep_to_json)
from .roots import DEFAULT_EPS, CertificationFailed
from .schur import Partition, ResourceCapExceeded
from .wd import (NonIntegralWeight, frobenius_semisimplify, frss_signature,
                 monodromy_filtration, purity_check, wd_schur)

EXIT_OK = 0
EXIT_RIGIDITY_FAIL = 1
EXIT_INPUT_ERROR = 2
EXIT_CERTIFICATION = 3


@dataclass
class CommandRequest:
    command: str
    input_path: str
    partition: str | None = None
    weight: str | None = "infer"
    point: str | None = None
    points: str | None = None
    eps: str | None = None
    output: str | None = None
    format: str = "json"


def parse_rational(text: str) -> Fraction:
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError) as exc:
        raise ParseError(f"bad rational number {text!r}") from exc


def parse_points(text: str | None) -> list[Fraction]:
    if text is None:
        return default_scan_points()
    text = text.strip()
    if ".." in text:
        lo_s, hi_s = text.split("..", 1)
        try:
            lo, hi = int(lo_s), int(hi_s)
        except ValueError as exc:
            raise ParseError(f"bad point range {text!r}") from exc
        if lo > hi:
            raise ParseError(f"empty point range {text!r}")
        return [Fraction(a) for a in range(lo, hi + 1)]
    points = [parse_rational(tok) for tok in text.split(",") if tok.strip()]
    if not points:
        raise ParseError("empty point list")
    return sorted(set(points))


def parse_weight(text: str):
    if text == "infer":
        return "infer"
    try:
        return int(text)
    except ValueError as exc:
        raise ParseError(f"weight must be an integer or 'infer', got {text!r}") from exc


def parse_eps(text: str | None) -> Fraction:
    if text is None:
        return DEFAULT_EPS
    eps = parse_rational(text)
    if eps <= 0:
        raise ParseError("eps must be positive")
    return eps


def _digest(path: str) -> str:
    with open(path, "rb") as handle:
        return "sha256:" + hashlib.sha256(handle.read()).hexdigest()


def run_command(req: CommandRequest):
    """Dispatch a request; returns (exit_code, envelope dict)."""
    diagnostics: list[str] = []
    options = {k: v for k, v in (("partition", req.partition),
                                 ("weight", req.weight),
                                 ("point", req.point),
                                 ("points", req.points),
                                 ("eps", req.eps),
                                 ("format", req.format)) if v is not None}
    envelope = {
        "tool": "wdreps",
        "version": __version__,
        "command": {"name": req.command, "options": options},
        "input_digest": None,
        "result": None,
        "diagnostics": diagnostics,
    }
    code = EXIT_OK
    try:
        envelope["input_digest"] = _digest(req.input_path)
        rho = load_wdrep(req.input_path) if req.command != "validate" else None
        if req.command == "validate":
            try:
                load_wdrep(req.input_path)
                envelope["result"] = {"ok": True, "violation": None}
            except ValidationError as exc:
                envelope["result"] = {"ok": False, "violation": str(exc)}
                diagnostics.append(f"validation: {exc}")
                code = EXIT_INPUT_ERROR
        elif req.command == "schur":
            mu = _required_partition(req)
            envelope["result"] = {"representation": wdrep_to_json(wd_schur(rho, mu))}
        elif req.command == "frss":
            out = frobenius_semisimplify(rho)
            envelope["result"] = {"representation": wdrep_to_json(out),
                                  "signature": signature_to_json(frss_signature(out))}
        elif req.command == "filtration":
            envelope["result"] = {"filtration": filtration_to_json(monodromy_filtration(rho.nilp))}
        elif req.command == "purity":
            report = purity_check(rho, parse_weight(req.weight), parse_eps(req.eps))
            envelope["result"] = {"purity": purity_report_to_json(report)}
        elif req.command == "specialize":
            if req.point is None:
                raise ParseError("specialize requires --point")
            out = specialize(rho, parse_rational(req.point))
            envelope["result"] = {"representation": wdrep_to_json(out)}
        elif req.command in ("scan", "rigidity"):
            mu = _required_partition(req)
            report = purity_scan(rho, mu, parse_points(req.points),
                                 parse_weight(req.weight), parse_eps(req.eps))
            if req.command == "rigidity":
                report = rigidity_check(report)
                if report.verdict == "fail":
                    code = EXIT_RIGIDITY_FAIL
                    diagnostics.append(
                        "rigidity fail at points: " + ", ".join(str(a) for a in report.failures))
            for pr in report.points:
                if pr.error is not None:
                    diagnostics.append(f"point {pr.a}: {pr.error}")
            envelope["result"] = {"report": rigidity_report_to_json(report)}
        else:
            raise ParseError(f"unknown command {req.command!r}")
    except (ParseError, ValidationError, ValueError, OSError) as exc:
        diagnostics.append(f"{type(exc).__name__}: {exc}")
        code = EXIT_INPUT_ERROR
    except CertificationFailed as exc:
        diagnostics.append(f"CertificationFailed: {exc}")
        code = EXIT_CERTIFICATION
    except (NonIntegralWeight, ResourceCapExceeded) as exc:
        diagnostics.append(f"{type(exc).__name__}: {exc}")
        code = EXIT_INPUT_ERROR
    return code, envelope


def _required_partition(req: CommandRequest) -> Partition:
    if req.partition is None:
        raise ParseError(f"{req.command} requires --partition")
    try:
        return Partition.from_string(req.partition)
    except ValueError as exc:
        raise ParseError(str(exc)) from exc


# ---------------------------------------------------------------------------
# table rendering
# ---------------------------------------------------------------------------

def _table_signature(entries) -> list[str]:
    lines = []
    for item in entries:
        poly = item["charpoly"]
        lines.append(f"  Sp_{item['t']} of " + _poly_string_from_coeffs(poly))
        if "inertia_traces" in item:
            traces = ", ".join(f"{k}: {v}" for k, v in sorted(item["inertia_traces"].items()))
            lines[-1] += f" [inertia traces {traces}]"
    return lines or ["  (empty)"]


def _poly_string_from_coeffs(coeff_strings) -> str:
    try:
        poly = Poly(QQ, [Fraction(c) for c in coeff_strings])
        return format_poly(poly)
    except (ValueError, ZeroDivisionError):
        # Q(t) or number-field coefficients: show the raw coefficient array
        return "[" + ", ".join(coeff_strings) + "]"


def render_table(envelope: dict) -> str:
    lines = [f"tool: wdreps {envelope['version']}",
             f"command: {envelope['command']['name']}",
             f"input: {envelope['input_digest']}"]
    result = envelope["result"]
    if result is None:
        pass
    elif "ok" in result:
        lines.append(f"ok: {str(result['ok']).lower()}")
        if result["violation"]:
            lines.append(f"violation: {result['violation']}")
    elif "purity" in result:
        lines.extend(_purity_lines(result["purity"], indent=""))
    elif "filtration" in result:
        for step in result["filtration"]:
            lines.append(f"M_{step['k']}: dim {step['dim']}")
    elif "report" in result:
        report = result["report"]
        lines.append(f"partition: {report['mu']}")
        if report["verdict"] is not None:
            lines.append(f"verdict: {report['verdict']}")
            if report["failures"]:
                lines.append("failures: " + ", ".join(report["failures"]))
        lines.append("generic signature:")
        lines.extend(_table_signature(report["generic_signature"]))
        for pr in report["points"]:
            lines.append(_point_line(pr))
    elif "representation" in result:
        rep = result["representation"]
        size = len(rep["phi"])
        lines.append(f"representation: dim {size}, q = {rep['q']}")
        if "signature" in result:
            lines.append("signature:")
            lines.extend(_table_signature(result["signature"]))
    for diag in envelope["diagnostics"]:
        lines.append(f"note: {diag}")
    return "\n".join(lines) + "\n"


def _purity_lines(purity: dict, indent: str) -> list[str]:
    lines = [f"{indent}purity: {purity['verdict']} (weight {purity['weight']})"]
    for piece in purity["graded"]:
        matches = sum(1 for r in piece["roots"] if r["match"])
        lines.append(f"{indent}  gr_{piece['k']}: dim {piece['dim']}, "
                     f"charpoly {_poly_string_from_coeffs(piece['charpoly'])}, "
                     f"{matches}/{len(piece['roots'])} roots match")
    return lines


def _point_line(pr: dict) -> str:
    if not pr["defined"]:
        return f"point {pr['a']}: undefined ({pr['error']})"
    if pr["purity"] is None:
        return f"point {pr['a']}: no purity verdict ({pr['error']})"
    verdict = pr["purity"]["verdict"]
    sig = "; ".join(line.strip() for line in _table_signature(pr["signature"]))
    return f"point {pr['a']}: {verdict} (weight {pr['purity']['weight']}); signature: {sig}"


# ---------------------------------------------------------------------------
# argparse wiring
# ---------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="wdreps",
        description="Exact computations with Weil-Deligne representations "
                    "and their Q(t)-families.")
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, help_text, *, partition=False, weight=False, point=False,
            points=False, eps=False):
        p = sub.add_parser(name, help=help_text)
        p.add_argument("input", help="path to a representation or family JSON file")
        if partition:
            p.add_argument("--partition", required=True,
                           help="comma-separated partition, e.g. '2,1'")
        if weight:
            p.add_argument("--weight", default="infer",
                           help="integer weight or 'infer' (default)")
        if point:
            p.add_argument("--point", required=True, help="rational point, e.g. '3' or '1/2'")
        if points:
            p.add_argument("--points", default=None,
                           help="inclusive integer range 'lo..hi' or comma list "
                                "of rationals (default -25..25)")
        if eps:
            p.add_argument("--eps", default=None,
                           help="certification width as a rational (default 1/10^30)")
        p.add_argument("--format", choices=("json", "table"), default="json")
        p.add_argument("--output", default=None, help="write the report here instead of stdout")
        return p

    add("validate", "check every representation invariant")
    add("schur", "apply the partition functor", partition=True)
    add("frss", "Frobenius-semisimplify and report the signature")
    add("filtration", "monodromy filtration of the nilpotent part")
    add("purity", "certify purity", weight=True, eps=True)
    add("specialize", "evaluate a Q(t) family at a rational point", point=True)
    add("scan", "per-point purity and signature scan of a family",
        partition=True, weight=True, points=True, eps=True)
    add("rigidity", "scan plus the rigidity verdict",
        partition=True, weight=True, points=True, eps=True)
    return parser


_VALUE_FLAGS = ("--points", "--point", "--weight", "--eps")


def _merge_negative_values(argv: list[str]) -> list[str]:
    """Join '--points -5..5' into '--points=-5..5' so argparse does not
    mistake the value for an option."""
    out = []
    i = 0
    while i < len(argv):
        tok = argv[i]
        if tok in _VALUE_FLAGS and i + 1 < len(argv) and argv[i + 1].startswith("-"):
            out.append(f"{tok}={argv[i + 1]}")
            i += 2
        else:
            out.append(tok)
            i += 1
    return out


def main(argv=None) -> int:
    argv = list(sys.argv[1:]) if argv is None else list(argv)
    args = build_parser().parse_args(_merge_negative_values(argv))
    req = CommandRequest(
        command=args.command,
        input_path=args.input,
        partition=getattr(args, "partition", None),
        weight=getattr(args, "weight", None),
        point=getattr(args, "point", None),
        points=getattr(args, "points", None),
        eps=getattr(args, "eps", None),
        output=args.output,
        format=args.format,
    )
    code, envelope = run_command(req)
    if req.format == "table":
        payload = render_table(envelope).encode("utf-8")
    else:
        payload = canonical_json_bytes(envelope)
    if req.output:
        with open(req.output, "wb") as handle:
            handle.write(payload)
    else:
        sys.stdout.buffer.write(payload)
        sys.stdout.buffer.flush()
    for diag in envelope["diagnostics"]:
        print(diag, file=sys.stderr)
    return code


if __name__ == "__main__":
    raise SystemExit(main())
