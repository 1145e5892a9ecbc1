"""Command-line frontend.

    eigenflats info --type E6
    eigenflats verify --type A4 --type B3 --b all --format md --output report.md
    eigenflats eigen list --type A3 --b 2
    eigenflats stab --type A3 --x 1,z4,-1,-z4 --coords model
    eigenflats laurent check --input term.json

Exit codes: 0 pass, 1 theorem assertion failed, 2 usage or configuration
error, 3 group order above the cap.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
from pathlib import Path
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

from eigenflats.config import get_settings, resolve_workers
from eigenflats.cyclo import common_conductor, parse_literal
from eigenflats.eigenstab import (
    FlatSearch,
    coxeter_eigenvectors_regular,
    eigenspace,
    min_N,
    min_N_over_eigenspace,
    orders_admitting,
    stabilizer,
)
from eigenflats.errors import (
    EXIT_OK,
    EXIT_THEOREM,
    EXIT_USAGE,
    ConsistencyError,
    EigenflatsError,
    GroupTooLarge,
    TheoremViolation,
    UnsupportedType,
)
from eigenflats.laurent import check_many, parse_leading_term
from eigenflats.linalg import Vector, lift_vector
from eigenflats.log import setup_logging
from eigenflats.parabolic import (
    first_step_bound,
    max_parabolic,
    quadratic_step_bound,
    settled_by_first_step,
)
from eigenflats.report import (
    FORMATS,
    SkippedType,
    TypeReport,
    canonical_json,
    emit_report,
    group_summary,
    write_text,
)
from eigenflats.rootsys import (
    RootSystem,
    TypeLabel,
    build_root_system,
    divisors_of_degrees,
    group_facts,
)
from eigenflats.springer import invariant_polynomials
from eigenflats.wgroup import (
    GroupElement,
    characteristic_polynomial,
    charpoly_vanishes_at,
    coxeter_exponents,
    enumerate_group,
    stream_group,
)

logger = logging.getLogger(__name__)

E7 = TypeLabel("E", 7)


# ============ ARGUMENTS ============


def _b_selector(text: str) -> Optional[Tuple[int, ...]]:
    """`all` (None) or a comma-separated list of positive integers."""
    if text.strip().lower() == "all":
        return None
    try:
        values = tuple(int(part) for part in text.split(",") if part.strip())
    except ValueError as e:
        raise argparse.ArgumentTypeError(f"--b expects 'all' or integers, got {text!r}") from e
    if not values or any(b < 1 for b in values):
        raise argparse.ArgumentTypeError(f"--b expects positive integers, got {text!r}")
    return values


def _vector(text: str) -> Vector:
    values = [parse_literal(part) for part in text.split(",")]
    return lift_vector(tuple(values), common_conductor(values))


def _common(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--type", dest="types", action="append", required=True,
                        help="type label such as A4, E6 or I2(7); repeatable")
    parser.add_argument("--cap", type=int, default=None, help="largest group order to enumerate")
    parser.add_argument("--log-level", default=None, help="DEBUG, INFO, WARNING or ERROR")


def _parse_args(argv: Optional[Sequence[str]] = None) -> argparse.Namespace:
    parser = argparse.ArgumentParser(
        prog="eigenflats",
        description="Exact checks of N(x) >= b*n for eigenvectors of finite reflection groups.",
    )
    commands = parser.add_subparsers(dest="command", required=True)

    info = commands.add_parser("info", help="group facts, conductor, exponents and bounds")
    _common(info)

    verify = commands.add_parser("verify", help="min N over V(b) against b*n")
    _common(verify)
    verify.add_argument("--b", type=_b_selector, default=None, dest="b_values",
                        help="'all' (divisors of the degrees) or a list such as 2,3,6")
    verify.add_argument("--format", choices=FORMATS, default="json")
    verify.add_argument("--output", type=Path, default=None)
    verify.add_argument("--workers", type=int, default=None)
    verify.add_argument("--include-e7", action="store_true",
                        help="stream E7 with the E7 cap instead of skipping it")
    verify.add_argument("--optional-properties", action="store_true",
                        help="also check Coxeter exponents and Coxeter eigenvector regularity")
    verify.add_argument("--no-timing", action="store_true",
                        help="drop wall-time fields so reruns are byte-identical")

    eigen = commands.add_parser("eigen", help="eigenspace listings")
    eigen_commands = eigen.add_subparsers(dest="eigen_command", required=True)
    listing = eigen_commands.add_parser("list", help="distinct zeta_b-eigenspaces")
    _common(listing)
    listing.add_argument("--b", type=int, required=True)

    stab = commands.add_parser("stab", help="stabilizer of a vector")
    _common(stab)
    stab.add_argument("--x", type=_vector, required=True,
                      help="comma-separated scalar literals, e.g. 1,z4,-1,-z4")
    stab.add_argument("--coords", choices=("root", "model"), default="root")

    laurent = commands.add_parser("laurent", help="Laurent leading-term checks")
    laurent_commands = laurent.add_subparsers(dest="laurent_command", required=True)
    check = laurent_commands.add_parser("check", help="necessary condition for rationality")
    check.add_argument("--input", default="-", help="JSON file (a document or a list); - for stdin")
    check.add_argument("--cap", type=int, default=None)
    check.add_argument("--workers", type=int, default=1)
    check.add_argument("--log-level", default=None)
    return parser.parse_args(argv)


# ============ COMMANDS ============


def _emit(text: str, output: Optional[Path] = None) -> None:
    if output is not None:
        write_text(output, text)
    else:
        sys.stdout.write(text if text.endswith("\n") else text + "\n")


def _cap(args: argparse.Namespace) -> int:
    return args.cap if args.cap is not None else get_settings().group_cap


def run_info(args: argparse.Namespace) -> int:
    out = []
    for text in args.types:
        rs = build_root_system(TypeLabel.parse(text))
        facts = group_facts(rs.label)
        exponents = coxeter_exponents(rs)
        largest = max_parabolic(rs)
        out.append({
            "group": group_summary(rs),
            "base_conductor": rs.conductor,
            "coxeter_exponents": list(exponents),
            "exponents_match_degrees": sorted(exponents) == [d - 1 for d in facts.degrees],
            "b_values": list(divisors_of_degrees(rs.label)),
            "max_parabolic": largest.to_dict(),
            "first_step_bound": first_step_bound(rs),
            "settled_by_first_step": list(settled_by_first_step(rs)),
            "quadratic_step_bound": quadratic_step_bound(rs) if rs.rank > 2 else None,
        })
    _emit(canonical_json(out))
    return EXIT_OK


def _optional_properties(rs: RootSystem, elements: Iterable[GroupElement]) -> None:
    exponents = sorted(coxeter_exponents(rs))
    if exponents != [d - 1 for d in rs.degrees]:
        raise TheoremViolation(
            f"{rs.label}: Coxeter exponents {exponents} disagree with degrees {list(rs.degrees)}",
            {"type": str(rs.label), "exponents": exponents},
        )
    if not coxeter_eigenvectors_regular(rs):
        raise TheoremViolation(
            f"{rs.label}: a Coxeter eigenvector is not regular", {"type": str(rs.label)}
        )
    h = rs.coxeter_number
    orders = orders_admitting(rs, elements, h)
    if orders != {h}:
        raise TheoremViolation(
            f"{rs.label}: elements with a primitive h-th eigenvalue have orders {sorted(orders)}",
            {"type": str(rs.label), "orders": sorted(orders)},
        )


def _verify_type(
    rs: RootSystem, report: TypeReport, args: argparse.Namespace, workers: int, progress: bool
) -> None:
    """Append one record per b to the report; a violation stops this type only."""
    settings = get_settings()
    streaming = rs.label == E7 and args.include_e7
    cap = max(_cap(args), settings.e7_cap) if streaming else _cap(args)
    try:
        enumeration = None if streaming else enumerate_group(rs, cap, progress)
        if args.optional_properties:
            elements = enumeration if enumeration is not None else stream_group(rs, cap)
            _optional_properties(rs, elements)
        search = FlatSearch(rs)
        values = args.b_values if args.b_values is not None else divisors_of_degrees(rs.label)
        for b in values:
            elements = enumeration if enumeration is not None else stream_group(rs, cap, progress)
            record = min_N(rs, elements, b, workers=workers, memo=search, progress=progress)
            report.records.append(record)
    except (TheoremViolation, ConsistencyError) as e:
        logger.error("%s: %s", rs.label, e)
        report.error = str(e)
        report.counterexample = getattr(e, "counterexample", {})


def run_verify(args: argparse.Namespace) -> int:
    """One report per type; failures dump their counterexample and exit 1."""
    workers = resolve_workers(args.workers)
    progress = get_settings().progress
    reports: List[TypeReport] = []
    skipped: List[SkippedType] = []
    skip_codes: List[int] = []
    for text in args.types:
        try:
            label = TypeLabel.parse(text)
            if label == E7 and not args.include_e7:
                raise GroupTooLarge(str(label), group_facts(label).order, _cap(args))
            rs = build_root_system(label)
            report = TypeReport(group_summary(rs))
            _verify_type(rs, report, args, workers, progress)
        except (UnsupportedType, GroupTooLarge) as e:
            logger.warning("skipping %s: %s", text, e)
            skipped.append(SkippedType(text, str(e)))
            skip_codes.append(e.exit_code)
            continue
        reports.append(report)

    _emit(emit_report(reports, args.format, skipped, timing=not args.no_timing), args.output)

    failed = False
    for report in reports:
        name = report.group["type"]
        if report.error is not None:
            failed = True
            sys.stderr.write(canonical_json({"counterexample": report.counterexample,
                                             "type": name, "reason": report.error}) + "\n")
        for record in report.records:
            if record.passes:
                continue
            failed = True
            logger.error("%s b=%d: %s", name, record.b, record.failure())
            sys.stderr.write(canonical_json({"counterexample": record.to_dict(timing=False),
                                             "type": name, "reason": record.failure()}) + "\n")
    if failed:
        return EXIT_THEOREM
    return max(skip_codes, default=EXIT_OK)


def run_eigen_list(args: argparse.Namespace) -> int:
    out = []
    for text in args.types:
        rs = build_root_system(TypeLabel.parse(text))
        enumeration = enumerate_group(rs, _cap(args), get_settings().progress)
        counts: Dict[tuple, int] = {}
        spaces = {}
        for g in enumeration:
            charpoly = characteristic_polynomial(g)
            if not charpoly_vanishes_at(charpoly, args.b):
                continue
            space = eigenspace(g, args.b, charpoly)
            key = space.key()
            counts[key] = counts.get(key, 0) + 1
            spaces.setdefault(key, space)
        search = FlatSearch(rs)
        listing = []
        for key, space in spaces.items():
            result = min_N_over_eigenspace(rs, space, search)
            listing.append({
                "dimension": space.dim,
                "basis": [[str(c) for c in row] for row in space.vectors()],
                "elements": counts[key],
                "min_N": result.min_N,
            })
        out.append({"type": str(rs.label), "b": args.b, "eigenspaces": listing})
    _emit(canonical_json(out))
    return EXIT_OK


def run_stab(args: argparse.Namespace) -> int:
    out = []
    for text in args.types:
        label = TypeLabel.parse(text)
        rs = build_root_system(label)
        x = args.x
        if args.coords == "model":
            x = invariant_polynomials(label).from_model(x)
        enumeration = enumerate_group(rs, _cap(args), get_settings().progress)
        out.append({"type": str(label), **stabilizer(rs, enumeration, x).to_dict()})
    _emit(canonical_json(out))
    return EXIT_OK


def run_laurent_check(args: argparse.Namespace) -> int:
    text = sys.stdin.read() if args.input == "-" else Path(args.input).read_text(encoding="utf-8")
    data = json.loads(text) if text.lstrip().startswith("[") else None
    documents = [json.dumps(item) for item in data] if data is not None else [text]
    requests = [parse_leading_term(doc) for doc in documents]
    verdicts = check_many(requests, workers=resolve_workers(args.workers), cap=args.cap)
    out = [
        {"type": str(ll.label), "a": ll.a, "b": ll.b, **v.to_dict()}
        for ll, v in zip(requests, verdicts)
    ]
    _emit(canonical_json(out if data is not None else out[0]))
    return EXIT_OK


def _dispatch(args: argparse.Namespace) -> int:
    if args.command == "info":
        return run_info(args)
    if args.command == "verify":
        return run_verify(args)
    if args.command == "eigen":
        return run_eigen_list(args)
    if args.command == "stab":
        return run_stab(args)
    return run_laurent_check(args)


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = _parse_args(argv)
    try:
        settings = get_settings()
        setup_logging(args.log_level or settings.log_level)
        return _dispatch(args)
    except TheoremViolation as e:
        logger.error("%s", e)
        payload = {"counterexample": e.counterexample, "reason": str(e)}
        sys.stderr.write(canonical_json(payload) + "\n")
        return e.exit_code
    except EigenflatsError as e:
        sys.stderr.write(f"eigenflats: {e}\n")
        return e.exit_code
    except (OSError, json.JSONDecodeError) as e:
        sys.stderr.write(f"eigenflats: {e}\n")
        return EXIT_USAGE


if __name__ == "__main__":
    raise SystemExit(main())
