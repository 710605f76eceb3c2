"""Command-line entry point: ``pcsample {extract,sample,coverage,faults,random}``.

Data goes to files (or stdout for reports); the run manifest goes to stderr as
one JSON object.  Exit codes: 0 ok, 1 input error, 2 partial extraction,
3 interaction cap exceeded.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import logging
import posixpath
import sys
import time
from pathlib import Path

from . import formula as fm
from .coverage import FaultSpec, coverage, fault_covered
from .extract import extract_tree
from .io import (
    InputFormatError,
    format_records,
    format_sample_csv,
    implicit_model,
    parse_faults,
    parse_records,
    parse_sample_csv,
    read_dimacs,
    sample_csv_header,
)
from .logic import FeatureModel, StructuralError
from .sampler import InteractionCapError, UnsatisfiableModelError, random_sample, sample_grouped
from .sat import SatTimeout
from .transform import BlowUpError, expr_to_pc, preprocess

EXIT_OK, EXIT_INPUT, EXIT_PARTIAL, EXIT_CAP = 0, 1, 2, 3


def _checksum(path) -> str:
    return hashlib.sha256(Path(path).read_bytes()).hexdigest()


def _manifest(command: str, **fields) -> None:
    print(json.dumps({"command": command, **fields}, sort_keys=True), file=sys.stderr)


def _fail(message: str, code: int = EXIT_INPUT) -> int:
    print(f"error: {message}", file=sys.stderr)
    return code


def _load_model(model_path, formulas=None, sample_text=None) -> FeatureModel:
    if model_path:
        return read_dimacs(model_path)
    if formulas is not None:
        return implicit_model(formulas)
    if sample_text is not None:
        return FeatureModel.unconstrained(sample_csv_header(sample_text))
    raise InputFormatError("no feature model given")


def _group_key(path: str, group: str) -> str:
    return path if group == "file" else posixpath.dirname(path)


def _build_universe(records, model, mode, group):
    raw, keys, seen = [], [], set()
    for r in records:
        key = None if group == "none" else _group_key(r.path, group)
        if (r.formula, key) in seen:
            continue
        seen.add((r.formula, key))
        raw.append(r.formula)
        keys.append(key)
    return preprocess(raw, model, mode, None if group == "none" else keys)


def cmd_extract(args) -> int:
    start = time.perf_counter()
    try:
        result = extract_tree(args.src, args.exclude)
    except FileNotFoundError as exc:
        return _fail(str(exc))
    elapsed = time.perf_counter() - start
    Path(args.out).write_text(format_records(result.records))
    for w in result.warnings:
        print(f"warning: {w}", file=sys.stderr)
    for e in result.errors:
        print(f"error: {e}", file=sys.stderr)
    _manifest("extract", seed=None, inputs={"src": str(args.src)}, records=len(result.records),
              warnings=len(result.warnings), errors=len(result.errors),
              timings={"extract": round(elapsed, 6)})
    return EXIT_PARTIAL if result.errors else EXIT_OK


def cmd_sample(args) -> int:
    t0 = time.perf_counter()
    try:
        records = parse_records(Path(args.pcs).read_text()) if args.pcs else []
        model = _load_model(args.model, [r.formula for r in records])
        t1 = time.perf_counter()
        universe = _build_universe(records, model, args.mode, args.group)
        t2 = time.perf_counter()
        result = sample_grouped(universe, model, args.t, args.seed,
                                interaction_cap=args.interaction_cap, timeout=args.timeout)
        t3 = time.perf_counter()
    except InteractionCapError as exc:
        return _fail(str(exc), EXIT_CAP)
    except (OSError, InputFormatError, fm.FormulaSyntaxError, StructuralError,
            UnsatisfiableModelError, SatTimeout, BlowUpError) as exc:
        return _fail(str(exc))
    Path(args.out).write_text(format_sample_csv(result.configurations, model))
    inputs = {"model": _checksum(args.model) if args.model else None,
              "pcs": _checksum(args.pcs) if args.pcs else None}
    _manifest("sample", seed=args.seed, t=args.t, mode=args.mode, group=args.group, inputs=inputs,
              model_hash=result.model_hash, universe=len(universe), size=len(result),
              stats=result.stats,
              timings={"load": round(t1 - t0, 6), "preprocess": round(t2 - t1, 6),
                       "sample": round(t3 - t2, 6)})
    return EXIT_OK


def cmd_coverage(args) -> int:
    try:
        records = parse_records(Path(args.pcs).read_text()) if args.pcs else []
        sample_text = Path(args.sample).read_text()
        model = _load_model(args.model, [r.formula for r in records] if args.pcs else None, sample_text)
        configs = parse_sample_csv(sample_text, model)
        start = time.perf_counter()
        universe = _build_universe(records, model, args.mode, "none")
        report = coverage(configs, universe, model, args.t, uncovered_cap=args.uncovered_cap,
                          timeout=args.timeout)
        elapsed = time.perf_counter() - start
    except (OSError, InputFormatError, fm.FormulaSyntaxError, StructuralError, SatTimeout,
            BlowUpError) as exc:
        return _fail(str(exc))
    sys.stdout.write(report.to_text(model))
    if args.json:
        sys.stdout.write(json.dumps(report.to_dict(model), sort_keys=True) + "\n")
    _manifest("coverage", t=args.t, mode=args.mode, seed=None,
              inputs={"sample": _checksum(args.sample)}, timings={"coverage": round(elapsed, 6)})
    return EXIT_OK


def cmd_faults(args) -> int:
    try:
        sample_text = Path(args.sample).read_text()
        model = _load_model(args.model, None, sample_text)
        configs = parse_sample_csv(sample_text, model)
        faults = parse_faults(Path(args.faults).read_text())
    except (OSError, InputFormatError, StructuralError) as exc:
        return _fail(str(exc))
    covered = uncovered = skipped = 0
    for ident, text in faults:
        try:
            expr = fm.parse(text)
            missing = [a for a in fm.atoms(expr) if a not in model]
            if missing:
                raise StructuralError(f"unknown features {', '.join(missing)}")
            spec = FaultSpec(ident, expr_to_pc(expr, model, ident))
        except (fm.FormulaSyntaxError, StructuralError, ValueError) as exc:
            print(f"warning: skipping fault {ident}: {exc}", file=sys.stderr)
            skipped += 1
            continue
        hit = fault_covered(configs, spec)
        covered += hit
        uncovered += not hit
        print(f"{ident}\t{'Yes' if hit else 'No'}\tdegree={spec.degree}")
    print(f"Yes: {covered}")
    print(f"No: {uncovered}")
    print(f"skipped: {skipped}")
    _manifest("faults", seed=None, inputs={"sample": _checksum(args.sample),
                                            "faults": _checksum(args.faults)},
              covered=covered, uncovered=uncovered, skipped=skipped)
    return EXIT_OK


def cmd_random(args) -> int:
    start = time.perf_counter()
    try:
        model = read_dimacs(args.model)
        result = random_sample(model, args.n, args.seed, timeout=args.timeout)
    except (OSError, InputFormatError, StructuralError, UnsatisfiableModelError, SatTimeout,
            ValueError) as exc:
        return _fail(str(exc))
    Path(args.out).write_text(format_sample_csv(result.configurations, model))
    _manifest("random", seed=args.seed, n=args.n, inputs={"model": _checksum(args.model)},
              model_hash=result.model_hash, size=len(result),
              timings={"sample": round(time.perf_counter() - start, 6)})
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="pcsample", description=__doc__.splitlines()[0])
    p.add_argument("-v", "--verbose", action="store_true")
    sub = p.add_subparsers(dest="command", required=True)

    e = sub.add_parser("extract", help="extract line presence conditions from a C source tree")
    e.add_argument("src")
    e.add_argument("--exclude", action="append", default=[], metavar="GLOB")
    e.add_argument("--out", "-o", required=True)
    e.set_defaults(func=cmd_extract)

    s = sub.add_parser("sample", help="build a t-wise presence-condition sample")
    s.add_argument("--model", help="DIMACS feature model (default: unconstrained over PC names)")
    s.add_argument("--pcs", help="presence-condition file written by 'extract'")
    s.add_argument("--t", type=int, default=2)
    s.add_argument("--mode", choices=("pc", "fm", "concrete"), default="pc")
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("--group", choices=("none", "file", "folder"), default="none")
    s.add_argument("--interaction-cap", type=int, default=2**31)
    s.add_argument("--timeout", type=float, default=30.0)
    s.add_argument("--out", "-o", required=True)
    s.set_defaults(func=cmd_sample)

    c = sub.add_parser("coverage", help="t-wise presence-condition coverage of a sample")
    c.add_argument("--model")
    c.add_argument("--pcs")
    c.add_argument("--sample", required=True)
    c.add_argument("--t", type=int, default=2)
    c.add_argument("--mode", choices=("pc", "fm", "concrete"), default="pc")
    c.add_argument("--uncovered-cap", type=int, default=100)
    c.add_argument("--timeout", type=float, default=30.0)
    c.add_argument("--json", action="store_true", help="append a JSON copy of the report")
    c.set_defaults(func=cmd_coverage)

    f = sub.add_parser("faults", help="check which fault presence conditions a sample covers")
    f.add_argument("--sample", required=True)
    f.add_argument("--model")
    f.add_argument("--faults", required=True)
    f.set_defaults(func=cmd_faults)

    r = sub.add_parser("random", help="random valid configurations")
    r.add_argument("--model", required=True)
    r.add_argument("--n", type=int, required=True)
    r.add_argument("--seed", type=int, default=0)
    r.add_argument("--timeout", type=float, default=30.0)
    r.add_argument("--out", "-o", required=True)
    r.set_defaults(func=cmd_random)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s: %(message)s")
    if getattr(args, "t", 1) < 1:
        return _fail("--t must be at least 1")
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
