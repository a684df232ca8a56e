"""Command-line front end.

Subcommands: build | lattice | modular | supersolvable | poincare | decompose
| verify-paper.  Arrangement specs are catalog names (D4, G31, G(3,1,3),
A(3), B3, ...), product(spec, spec) expressions, or paths to arrangement
files.  Exit codes: 0 success, 1 verification failure, 2 parse error,
3 computation refusal.
"""

from __future__ import annotations

import argparse
import os
import sys
import time

from . import __version__
from .analysis import (check_rank2_criterion, exponents_from_poincare,
                       is_supersolvable, modular_flats_of_rank, poincare)
from .arrangement import (DEFAULT_MAX_FLATS, Arrangement, build_lattice, essentialize,
                          irreducible_decomposition, product)
from .cache import CACHE_ENV, load_lattice, save_lattice
from .claims import LatticeStore, claim_scopes, run_claims
from .errors import ParseError, RefusalError
from .parse import parse_arrangement_file
from .reflection import build_named
from .report import (arrangement_payload, certificate_payload, lattice_payload,
                     poincare_payload, rank2_payload, render_human, report_json,
                     verdict_payload)

EXIT_OK = 0
EXIT_VERIFICATION_FAILED = 1
EXIT_PARSE_ERROR = 2
EXIT_REFUSED = 3


def resolve_spec(spec: str) -> tuple[str, Arrangement]:
    """Turn a spec string into an arrangement, rejecting unknown names early."""
    spec = spec.strip()
    if spec.startswith("product(") and spec.endswith(")"):
        body = spec[len("product("):-1]
        parts = []
        depth = 0
        start = 0
        for k, ch in enumerate(body):
            if ch == "(":
                depth += 1
            elif ch == ")":
                depth -= 1
            elif ch == "," and depth == 0:
                parts.append(body[start:k])
                start = k + 1
        parts.append(body[start:])
        if len(parts) != 2:
            raise ParseError(f"product(...) takes exactly two specs: {spec!r}")
        name1, a1 = resolve_spec(parts[0])
        name2, a2 = resolve_spec(parts[1])
        return f"product({name1}, {name2})", product(a1, a2)
    if spec.startswith("file:"):
        return spec, parse_arrangement_file(spec[len("file:"):])
    try:
        return spec, build_named(spec)
    except KeyError:
        pass
    if os.path.sep in spec or os.path.isfile(spec):
        return spec, parse_arrangement_file(spec)
    raise ParseError(f"unknown arrangement spec {spec!r}: not a catalog name, "
                     "not a product(...) expression, not a readable file")


def _make_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="hyparr",
        description="Exact intersection lattices, modular elements and "
                    "supersolvability certificates for complex hyperplane "
                    "arrangements.")
    parser.add_argument("--version", action="version", version=f"hyparr {__version__}")
    parser.add_argument("--json", action="store_true",
                        help="emit a machine-readable JSON report on stdout")
    parser.add_argument("--cache-dir", default=os.environ.get(CACHE_ENV),
                        help=f"lattice cache directory (default: ${CACHE_ENV})")
    parser.add_argument("--max-flats", type=int, default=DEFAULT_MAX_FLATS,
                        help="abort lattice builds beyond this many flats")
    parser.add_argument("--threads", type=int, default=1,
                        help="worker threads for per-level and per-flat scans")
    sub = parser.add_subparsers(dest="command", required=True)

    for name, extra in (
        ("build", "normalize and summarize an arrangement"),
        ("lattice", "build the intersection lattice and report level sizes"),
        ("supersolvable", "compute a supersolvability certificate"),
        ("poincare", "compute the Poincare polynomial (and exponents when defined)"),
        ("decompose", "essentialize and split into irreducible factors"),
    ):
        p = sub.add_parser(name, help=extra)
        p.add_argument("spec", help="arrangement spec (name, product(...), or file)")
    p = sub.add_parser("modular", help="modularity verdicts for flats of one rank")
    p.add_argument("spec")
    p.add_argument("--rank", type=int, required=True)
    p = sub.add_parser("verify-paper",
                       help="replay the bundled witness claims and classification "
                            "cross-checks")
    p.add_argument("scope", nargs="?", default="all",
                   help="all | witnesses | rank2 | equivalence | classification "
                        "| an arrangement name")
    return parser


def _lattice_for(arr: Arrangement, args) -> object:
    lattice = None
    if args.cache_dir:
        lattice = load_lattice(arr, args.cache_dir)
    if lattice is None:
        lattice = build_lattice(arr, max_flats=args.max_flats, threads=args.threads)
        if args.cache_dir:
            save_lattice(lattice, args.cache_dir)
    return lattice


def _emit(report: dict, args, timings: dict[str, float]) -> None:
    if args.json:
        sys.stdout.write(report_json(report))
        for key, dt in timings.items():
            print(f"time {key}: {dt:.3f}s", file=sys.stderr)
    else:
        sys.stdout.write(render_human(report))
        for key, dt in timings.items():
            sys.stdout.write(f"time {key}: {dt:.3f}s\n")


def _run(args) -> int:
    if args.command == "verify-paper":
        t0 = time.perf_counter()
        store = LatticeStore(threads=args.threads, max_flats=args.max_flats,
                             cache_dir=args.cache_dir)
        try:
            results = run_claims(args.scope, store)
        except KeyError as exc:
            raise ParseError(str(exc)) from None
        report = {
            "command": "verify-paper",
            "scope": args.scope,
            "claims": [{
                "claim_id": r.claim_id,
                "kind": r.kind,
                "arrangement": r.arrangement,
                "passed": r.passed,
                "detail": r.detail,
            } for r in results],
            "passed": all(r.passed for r in results),
            "scopes": claim_scopes(),
        }
        _emit(report, args, {"total": time.perf_counter() - t0})
        return EXIT_OK if report["passed"] else EXIT_VERIFICATION_FAILED

    name, arr = resolve_spec(args.spec)
    report: dict = {"command": args.command,
                    "arrangement": arrangement_payload(arr, name)}
    timings: dict[str, float] = {}

    if args.command == "build":
        _emit(report, args, timings)
        return EXIT_OK

    if args.command == "decompose":
        t0 = time.perf_counter()
        ess = essentialize(arr)
        factors = irreducible_decomposition(ess)
        timings["decompose"] = time.perf_counter() - t0
        report["essentialized"] = ess.ambient != arr.ambient
        report["factors"] = [arrangement_payload(f) for f in factors]
        _emit(report, args, timings)
        return EXIT_OK

    t0 = time.perf_counter()
    lattice = _lattice_for(arr, args)
    timings["lattice"] = time.perf_counter() - t0
    report["lattice"] = lattice_payload(lattice)

    if args.command == "lattice":
        _emit(report, args, timings)
        return EXIT_OK

    if args.command == "modular":
        if not 0 <= args.rank <= lattice.rank():
            raise ParseError(f"--rank must lie in 0..{lattice.rank()} "
                             f"for this arrangement")
        t0 = time.perf_counter()
        verdicts = modular_flats_of_rank(arr, lattice, args.rank,
                                         threads=args.threads)
        timings["modular"] = time.perf_counter() - t0
        report["modular"] = {
            "rank": args.rank,
            "flat_count": len(verdicts),
            "modular_count": sum(v.modular for v in verdicts),
            "verdicts": [verdict_payload(v) for v in verdicts],
        }
        _emit(report, args, timings)
        return EXIT_OK

    if args.command == "supersolvable":
        t0 = time.perf_counter()
        cert = is_supersolvable(arr, lattice, max_flats=args.max_flats,
                                threads=args.threads)
        timings["supersolvable"] = time.perf_counter() - t0
        report["supersolvable"] = certificate_payload(cert)
        _emit(report, args, timings)
        return EXIT_OK

    if args.command == "poincare":
        t0 = time.perf_counter()
        poly = poincare(arr, lattice)
        cert = is_supersolvable(arr, lattice, max_flats=args.max_flats,
                                threads=args.threads)
        exponents = exponents_from_poincare(poly) if cert.verdict else None
        timings["poincare"] = time.perf_counter() - t0
        report["supersolvable"] = certificate_payload(cert)
        report["poincare"] = poincare_payload(poly, exponents)
        _emit(report, args, timings)
        return EXIT_OK

    raise ParseError(f"unknown command {args.command!r}")


def main(argv: list[str] | None = None) -> int:
    parser = _make_parser()
    args = parser.parse_args(argv)
    try:
        return _run(args)
    except ParseError as exc:
        print(f"hyparr: parse error: {exc}", file=sys.stderr)
        return EXIT_PARSE_ERROR
    except RefusalError as exc:
        print(f"hyparr: refused: {exc}", file=sys.stderr)
        return EXIT_REFUSED


if __name__ == "__main__":
    sys.exit(main())
