"""Command-line driver for batch computation and reproducible reports.

Every result is an exact rational rendered as `a/b`; decimal output is a
derived convenience (`--digits`, round-half-even) and never authoritative.
Exit codes: 0 success, 2 input error, 3 resource refusal.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import re
import sys
from decimal import ROUND_HALF_EVEN, Decimal, localcontext
from fractions import Fraction
from pathlib import Path
from typing import Sequence

from .density import (
    as_probability,
    branching_profile,
    density,
    evaluate_profile,
    greedy_matching,
    matching_bound,
    maximum_matching,
)
from .errors import CapError, DomainError, FormatError, HyperdensError
from .families import eval_to_tolerance, parse_family
from .finitize import finitize, triangle_gadget
from .hypergraph import parse_hypergraph

_RATIONAL = re.compile(r"^[+-]?\d+/\d+$")


def rational(text: str) -> Fraction:
    """Strict `a/b` rationals only; decimal input is rejected."""
    if not _RATIONAL.match(text):
        raise argparse.ArgumentTypeError(
            f"expected an exact rational a/b, got {text!r}"
        )
    return Fraction(text)


def decimal_string(value: Fraction, digits: int) -> str:
    with localcontext() as ctx:
        ctx.prec = digits + 30
        quantum = Decimal(1).scaleb(-digits)
        d = Decimal(value.numerator) / Decimal(value.denominator)
        return format(d.quantize(quantum, rounding=ROUND_HALF_EVEN), "f")


def _read(path: str) -> tuple[str, str]:
    data = Path(path).read_bytes()
    return data.decode("utf-8"), hashlib.sha256(data).hexdigest()


def _base_report(command: str, path: str, digest: str) -> dict:
    return {"command": command, "input": path, "input_sha256": digest, "flags": []}


def _render(report: dict, as_json: bool) -> str:
    if as_json:
        return json.dumps(report, indent=2, sort_keys=True) + "\n"
    lines: list[str] = []
    for key, value in report.items():
        if isinstance(value, str) and "\n" in value:
            lines.append(f"{key}:")
            lines.extend("  " + part for part in value.rstrip("\n").split("\n"))
        elif isinstance(value, list) and value and isinstance(value[0], dict):
            for item in value:
                lines.append(
                    f"{key}: " + " ".join(f"{k}={_scalar(v)}" for k, v in item.items())
                )
        elif isinstance(value, list):
            lines.append(f"{key}: " + " ".join(_scalar(v) for v in value))
        else:
            lines.append(f"{key}: {_scalar(value)}")
    return "\n".join(lines) + "\n"


def _scalar(value) -> str:
    if value is None:
        return "none"
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, list):
        return ",".join(_scalar(v) for v in value)
    return str(value)


# -- commands ------------------------------------------------------------


def cmd_density(args) -> tuple[dict, int]:
    text, digest = _read(args.file)
    h = parse_hypergraph(text, strict=args.strict)
    p = as_probability(args.p)
    profile = branching_profile(h)
    value = evaluate_profile(profile, p)
    report = _base_report("density", args.file, digest)
    report.update(
        p=str(p),
        vertices=h.n,
        edge_count=h.edge_count,
        rank=h.rank,
        independent_sets=str(profile.total),
        subsets=str(2**h.n),
        density=str(value),
        density_decimal=decimal_string(value, args.digits),
    )
    if args.profile:
        report["profile"] = [str(c) for c in profile.counts]
    return report, 0


def cmd_bounds(args) -> tuple[dict, int]:
    text, digest = _read(args.file)
    h = parse_hypergraph(text, strict=args.strict)
    p = as_probability(args.p)
    report = _base_report("bounds", args.file, digest)
    greedy = greedy_matching(h)
    try:
        exact = maximum_matching(h)
    except CapError:
        exact = None
        report["flags"].append("exact-matching-capped")
    witness = exact if exact is not None else greedy
    bound = matching_bound(h, p, witness)
    value = density(h, p)
    report.update(
        p=str(p),
        rank=h.rank,
        greedy_matching_size=greedy.size,
        exact_matching_size=None if exact is None else exact.size,
        matching_size_used=witness.size,
        matching_bound=str(bound),
        matching_bound_decimal=decimal_string(bound, args.digits),
        density=str(value),
        density_decimal=decimal_string(value, args.digits),
    )
    return report, 0


def cmd_family(args) -> tuple[dict, int]:
    text, digest = _read(args.file)
    family = parse_family(text)
    p = as_probability(args.p)
    enc = eval_to_tolerance(family, p, args.tol, core_size=args.core_size)
    report = _base_report("family", args.file, digest)
    report.update(
        kind=family.kind,
        params=[f"{k}={v}" for k, v in sorted(family.params().items())],
        p=str(p),
        tol=str(args.tol),
        lower=str(enc.lower),
        lower_decimal=decimal_string(enc.lower, args.digits),
        upper=str(enc.upper),
        upper_decimal=decimal_string(enc.upper, args.digits),
        width=str(enc.width),
        horizon=enc.horizon,
        converged=bool(enc.converged),
    )
    if not enc.converged:
        report["flags"].append("not-converged")
    if enc.upper_only:
        report["flags"].append("upper-only")
    code = 3 if (args.strict_budget and not enc.converged) else 0
    return report, code


def cmd_finitize(args) -> tuple[dict, int]:
    text, digest = _read(args.file)
    family = parse_family(text)
    p = as_probability(args.p)
    report_, result, verdict = finitize(
        family,
        p,
        args.tol,
        core_horizon=args.core_horizon,
        probe_horizons=(args.probes[0], args.probes[1]),
        threshold=args.threshold,
        iterations=args.iterations,
    )
    report = _base_report("finitize", args.file, digest)
    report.update(
        kind=family.kind,
        p=str(p),
        tol=str(args.tol),
        core_horizon=report_.core_horizon,
        probe_horizons=list(report_.probe_horizons),
        threshold=report_.threshold,
        core_vertices=list(report_.core_vertices),
        heavy_sets=[
            {
                "set": sorted(members, key=report_.core.index_of),
                "evidence": list(report_.evidence[members]),
            }
            for members in report_.heavy
        ],
        density_zero=result.density_zero,
        core=None if result.core is None else result.core.to_text(),
        core_density=str(verdict.core_density),
        core_density_decimal=decimal_string(verdict.core_density, args.digits),
        enclosure_lower=str(verdict.enclosure.lower),
        enclosure_upper=str(verdict.enclosure.upper),
        enclosure_horizon=verdict.enclosure.horizon,
        verified=verdict.ok,
    )
    if result.density_zero:
        report["flags"].append("density-zero")
    if verdict.indeterminate:
        report["flags"].append("indeterminate")
    return report, 0


def cmd_gadget(args) -> tuple[dict, int]:
    text, digest = _read(args.file)
    h = parse_hypergraph(text, strict=args.strict)
    if args.p != Fraction(1, 2):
        raise DomainError(
            "the triangle substitution preserves the density only at p = 1/2; "
            "at other p no finite graph need match an infinite one"
        )
    out = triangle_gadget(h)
    half = Fraction(1, 2)
    before = density(h, half)
    after = density(out, half)
    if args.out:
        Path(args.out).write_text(out.to_text())
    report = _base_report("gadget", args.file, digest)
    report.update(
        p="1/2",
        input_density=str(before),
        output_density=str(after),
        densities_equal=before == after,
        output_vertices=out.n,
        output_edge_count=out.edge_count,
        output=out.to_text(),
    )
    return report, 0


def cmd_reduce(args) -> tuple[dict, int]:
    text, digest = _read(args.file)
    h = parse_hypergraph(text, strict=args.strict)
    out = h.antichain_reduction()
    half = Fraction(1, 2)
    before = density(h, half)
    after = density(out, half)
    if args.out:
        Path(args.out).write_text(out.to_text())
    report = _base_report("reduce", args.file, digest)
    report.update(
        edges_before=h.edge_count,
        edges_after=out.edge_count,
        density_before=str(before),
        density_after=str(after),
        densities_equal=before == after,
        output=out.to_text(),
    )
    return report, 0


# -- argument plumbing -----------------------------------------------------


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="hyperdens",
        description="Exact independence densities of finite and countable hypergraphs.",
    )
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="machine-readable report")
    common.add_argument(
        "--digits", type=int, default=12, help="decimal rendering precision"
    )
    hyper = argparse.ArgumentParser(add_help=False)
    hyper.add_argument("file", help="hypergraph file")
    hyper.add_argument(
        "--strict", action="store_true", help="require all edge vertices declared"
    )
    sub = parser.add_subparsers(dest="command", required=True)

    d = sub.add_parser("density", parents=[common, hyper], help="exact p-density")
    d.add_argument("--p", type=rational, default=Fraction(1, 2))
    d.add_argument("--profile", action="store_true", help="print the full profile")
    d.set_defaults(handler=cmd_density)

    b = sub.add_parser("bounds", parents=[common, hyper], help="matching bounds")
    b.add_argument("--p", type=rational, default=Fraction(1, 2))
    b.set_defaults(handler=cmd_bounds)

    f = sub.add_parser("family", parents=[common], help="enclose a family's density")
    f.add_argument("file", help="family file")
    f.add_argument("--p", type=rational, default=Fraction(1, 2))
    f.add_argument("--tol", type=rational, default=Fraction(1, 10**9))
    f.add_argument("--core-size", type=int, default=None, dest="core_size")
    f.add_argument(
        "--strict",
        action="store_true",
        dest="strict_budget",
        help="exit 3 when the budget runs out before the tolerance is met",
    )
    f.set_defaults(handler=cmd_family)

    z = sub.add_parser("finitize", parents=[common], help="extract and verify a finite core")
    z.add_argument("file", help="family file")
    z.add_argument("--p", type=rational, default=Fraction(1, 2))
    z.add_argument("--tol", type=rational, default=Fraction(1, 10**9))
    z.add_argument("--core-horizon", type=int, default=1, dest="core_horizon")
    z.add_argument("--probes", type=int, nargs=2, default=(4, 8), metavar=("N1", "N2"))
    z.add_argument("--threshold", type=int, default=3)
    z.add_argument("--iterations", type=int, default=1)
    z.set_defaults(handler=cmd_finitize)

    g = sub.add_parser("gadget", parents=[common, hyper], help="triangle substitution")
    g.add_argument("--p", type=rational, default=Fraction(1, 2))
    g.add_argument("--out", help="write the output hypergraph here")
    g.set_defaults(handler=cmd_gadget)

    r = sub.add_parser("reduce", parents=[common, hyper], help="antichain reduction")
    r.add_argument("--out", help="write the output hypergraph here")
    r.set_defaults(handler=cmd_reduce)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        report, code = args.handler(args)
    except (FormatError, DomainError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except CapError as exc:
        print(f"refused: {exc}", file=sys.stderr)
        return 3
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except HyperdensError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    sys.stdout.write(_render(report, args.json))
    return code


if __name__ == "__main__":
    raise SystemExit(main())
