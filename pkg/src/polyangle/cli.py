"""Command-line front end: reproduction, averaging, verification, convergence.

Exit codes: 0 success, 1 verification failure, 2 parse/usage error,
3 prediction-only shape misuse, 4 output I/O failure.
"""

from __future__ import annotations

import argparse
import math
import os
import re
import sys

from .angles import AngleTriple
from .closed_form import predict
from .errors import InvalidN, PolyangleError, PredictionOnlyShape, RegionParseError
from .estimators import (
    DEFAULT_CHUNK_SIZE,
    EstimateResult,
    GridConfig,
    McConfig,
    QuadratureConfig,
    converge_sweep,
    grid_estimate,
    mc_estimate,
    quad_estimate,
)
from .geometry import CircleLimit, RegularNGon, parse_region
from .report import make_record, record_to_json, sweep_rows, write_csv

EXIT_OK = 0
EXIT_VERIFY_FAIL = 1
EXIT_PARSE = 2
EXIT_SHAPE = 3
EXIT_IO = 4

# Published reference values for the 1000 x 1000 unit-square grid run.
REFERENCE_GRID_MEAN = AngleTriple(45.064834706400624, 45.00000000000093, 89.93516529359972)
REPRO_RESOLUTION = 1000
REPRO_TOLERANCE_DEG = 1e-6
VERIFY_TOLERANCE_DEG = 1e-6

THREADS_ENV_VAR = "POLYANGLE_THREADS"

SHAPES_TEXT = """\
Region grammar:
  ngon:<n>[:<side>]   regular n-gon (n >= 3) with one side as the base edge;
                      side defaults to 1
  square              alias for ngon:4:1
  poly:<x0>,<y0>;<x1>,<y1>;...[@<k>]
                      strictly convex counter-clockwise polygon; edge k
                      (default 0) becomes the base edge
  circle              circle limit (n -> infinity); closed-form prediction
                      only, cannot be sampled or integrated
"""


def _fmt(v: float) -> str:
    return format(v, ".15g")


def _resolve_threads(value):
    if value is not None:
        return value
    env = os.environ.get(THREADS_ENV_VAR)
    if env is None:
        return None
    try:
        return int(env)
    except ValueError:
        print(f"ignoring non-integer {THREADS_ENV_VAR}={env!r}", file=sys.stderr)
        return None


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="polyangle",
        description="Mean triangle angles over the base edge of a planar region.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("repro-paper", help="re-run the reference 1000x1000 unit-square grid")
    p.add_argument("--json", action="store_true", help="emit the run record as JSON")
    p.add_argument("--threads", type=int, default=None, help="worker thread cap")
    p.add_argument("--tolerance", type=float, default=REPRO_TOLERANCE_DEG,
                   help=argparse.SUPPRESS)

    p = sub.add_parser("average", help="estimate the mean angles for one region")
    p.add_argument("--region", required=True, help="region string (see `shapes`)")
    p.add_argument("--method", required=True,
                   choices=["grid", "grid-mid", "mc", "quad", "predict"])
    p.add_argument("--n", type=int, default=1000, help="grid resolution")
    p.add_argument("--samples", type=int, default=1_000_000, help="MC sample count")
    p.add_argument("--seed", type=int, default=0, help="MC seed (64-bit)")
    p.add_argument("--order", type=int, default=16, help="Gauss-Legendre order per axis")
    p.add_argument("--levels", type=int, default=3, help="refinement levels")
    p.add_argument("--json", action="store_true")
    p.add_argument("--threads", type=int, default=None)

    p = sub.add_parser("verify", help="compare quadrature with the closed form over an n range")
    p.add_argument("--n", required=True, metavar="A..B", help="side-count range, e.g. 3..12")
    p.add_argument("--order", type=int, default=16)
    p.add_argument("--levels", type=int, default=3)
    p.add_argument("--json", action="store_true",
                   help="emit one run record per n as JSON lines")
    p.add_argument("--threads", type=int, default=None)

    p = sub.add_parser("converge", help="write a work/accuracy sweep as CSV")
    p.add_argument("--region", required=True)
    p.add_argument("--method", required=True, choices=["grid", "grid-mid", "mc", "quad"])
    p.add_argument("--n", help="grid resolutions, e.g. 10,100,1000")
    p.add_argument("--samples", help="MC sample counts, e.g. 1000,10000,100000")
    p.add_argument("--levels", help="quadrature levels, e.g. 0..3")
    p.add_argument("--out", required=True, help="output CSV path")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--order", type=int, default=16)
    p.add_argument("--json", action="store_true",
                   help="also emit one run record per row as JSON lines")
    p.add_argument("--threads", type=int, default=None)

    sub.add_parser("shapes", help="print the region string grammar")
    return parser


def _print_estimate(result: EstimateResult, region_string: str) -> None:
    print(f"region = {region_string}   method = {result.method}")
    print(f"alpha = {_fmt(result.mean.alpha)}")
    print(f"beta = {_fmt(result.mean.beta)}")
    print(f"gamma = {_fmt(result.mean.gamma)}")
    if result.std_error is not None:
        se = result.std_error
        print(f"std_error = {_fmt(se.alpha)} {_fmt(se.beta)} {_fmt(se.gamma)}")
    if result.error_estimate is not None:
        ee = result.error_estimate
        print(f"error_estimate = {_fmt(ee.alpha)} {_fmt(ee.beta)} {_fmt(ee.gamma)}")
    if result.seed is not None:
        print(f"seed = {result.seed}")
    print(f"evaluations = {result.evaluations}")
    print(f"wall_time_s = {result.wall_time:.3f}")


def _cmd_repro_paper(args) -> int:
    square = RegularNGon(4, 1.0)
    grid = grid_estimate(square, GridConfig(REPRO_RESOLUTION, "paper_exact"))
    truth = quad_estimate(square, QuadratureConfig(16, 3))
    deltas = [
        grid.mean.alpha - REFERENCE_GRID_MEAN.alpha,
        grid.mean.beta - REFERENCE_GRID_MEAN.beta,
        grid.mean.gamma - REFERENCE_GRID_MEAN.gamma,
    ]
    ok = all(abs(d) <= args.tolerance for d in deltas)
    if args.json:
        record = make_record(grid, "square", {"n": REPRO_RESOLUTION, "mode": "paper_exact"})
        print(record_to_json(record))
    else:
        print("alpha =", grid.mean.alpha)
        print("beta =", grid.mean.beta)
        print("gamma =", grid.mean.gamma)
        verdict = "PASS" if ok else "FAIL"
        print(
            f"reference deltas: alpha={deltas[0]:+.3e} beta={deltas[1]:+.3e} "
            f"gamma={deltas[2]:+.3e} deg (tolerance {args.tolerance:g}) -> {verdict}"
        )
        print(
            f"quadrature truth: alpha = {_fmt(truth.mean.alpha)} "
            f"beta = {_fmt(truth.mean.beta)} gamma = {_fmt(truth.mean.gamma)}"
        )
        print(
            f"grid placement bias: alpha = {grid.mean.alpha - truth.mean.alpha:+.15g} "
            f"beta = {grid.mean.beta - truth.mean.beta:+.15g} "
            f"gamma = {grid.mean.gamma - truth.mean.gamma:+.15g} deg"
        )
    if not ok:
        print(
            "reference mismatch: deltas "
            + " ".join(f"{d:+.3e}" for d in deltas)
            + f" exceed tolerance {args.tolerance:g} deg",
            file=sys.stderr,
        )
        return EXIT_VERIFY_FAIL
    return EXIT_OK


def _cmd_average(args) -> int:
    region = parse_region(args.region)
    threads = _resolve_threads(args.threads)

    if args.method == "predict":
        if isinstance(region, CircleLimit):
            prediction = predict(math.inf)
        elif isinstance(region, RegularNGon):
            prediction = predict(region.n)
        else:
            raise PredictionOnlyShape(
                "closed-form prediction applies to regular polygons and the circle only"
            )
        mean = prediction.mean
        if args.json:
            result = EstimateResult(mean, None, None, "predict", region, 0, 0.0, None)
            n_str = "inf" if prediction.n == math.inf else prediction.n
            print(record_to_json(make_record(result, args.region, {"n": n_str})))
        else:
            print(f"region = {args.region}   method = predict ({prediction.exactness})")
            print(f"alpha = {_fmt(mean.alpha)}")
            print(f"beta = {_fmt(mean.beta)}")
            print(f"gamma = {_fmt(mean.gamma)}")
        return EXIT_OK

    if args.method in ("grid", "grid-mid"):
        mode = "paper_exact" if args.method == "grid" else "midpoint"
        result = grid_estimate(region, GridConfig(args.n, mode))
        config = {"n": args.n, "mode": mode}
    elif args.method == "mc":
        cfg = McConfig(args.samples, args.seed)
        result = mc_estimate(region, cfg, threads)
        config = {"samples": cfg.samples, "seed": cfg.seed, "chunk_size": cfg.chunk_size}
    else:
        cfg = QuadratureConfig(args.order, args.levels)
        result = quad_estimate(region, cfg)
        config = {"order": cfg.gauss_order, "levels": cfg.refinement_levels}

    if args.json:
        print(record_to_json(make_record(result, args.region, config)))
    else:
        _print_estimate(result, args.region)
    return EXIT_OK


_RANGE_RE = re.compile(r"^(\d+)(?:\.\.(\d+))?$")


def _parse_n_range(text: str) -> tuple[int, int]:
    m = _RANGE_RE.match(text.strip())
    if m is None:
        raise RegionParseError(f"bad n range {text!r}: expected A..B")
    lo = int(m.group(1))
    hi = int(m.group(2)) if m.group(2) is not None else lo
    if not (3 <= lo <= hi <= 64):
        raise InvalidN(f"n range {text!r} must lie within 3..64 with A <= B")
    return lo, hi


def _cmd_verify(args) -> int:
    lo, hi = _parse_n_range(args.n)
    cfg = QuadratureConfig(args.order, args.levels)
    failing = []
    max_dev = 0.0
    lines = []
    records = []
    for n in range(lo, hi + 1):
        region = RegularNGon(n, 1.0)
        result = quad_estimate(region, cfg)
        expected = predict(n).mean
        devs = (
            abs(result.mean.alpha - expected.alpha),
            abs(result.mean.beta - expected.beta),
            abs(result.mean.gamma - expected.gamma),
        )
        dev = max(devs)
        max_dev = max(max_dev, dev)
        if dev > VERIFY_TOLERANCE_DEG:
            failing.append(n)
        lines.append(
            f"  {n:3d}  {_fmt(result.mean.alpha):>22s} {_fmt(result.mean.gamma):>22s} "
            f"{devs[0]:9.2e} {devs[1]:9.2e} {devs[2]:9.2e}"
        )
        if args.json:
            records.append(make_record(
                result, f"ngon:{n}", {"n": n, "order": cfg.gauss_order,
                                      "levels": cfg.refinement_levels}))
    if args.json:
        for record in records:
            print(record_to_json(record))
    else:
        print("    n            quad alpha             quad gamma  dev_a     dev_b     dev_g")
        for line in lines:
            print(line)
        verdict = "PASS" if not failing else "FAIL"
        print(f"max deviation = {max_dev:.3e} deg "
              f"(tolerance {VERIFY_TOLERANCE_DEG:g}) -> {verdict}")
    if failing:
        print(f"verification failed for n = {failing}", file=sys.stderr)
        return EXIT_VERIFY_FAIL
    return EXIT_OK


def _parse_sweep_values(text: str, flag: str) -> list[int]:
    s = text.strip()
    m = _RANGE_RE.match(s)
    if m is not None and m.group(2) is not None:
        return list(range(int(m.group(1)), int(m.group(2)) + 1))
    values = []
    for token in s.split(","):
        token = token.strip()
        try:
            values.append(int(token))
        except ValueError:
            raise RegionParseError(f"bad {flag} sweep token {token!r} in {text!r}") from None
    return values


def _cmd_converge(args) -> int:
    region = parse_region(args.region)
    threads = _resolve_threads(args.threads)
    flag_by_method = {"grid": "--n", "grid-mid": "--n", "mc": "--samples", "quad": "--levels"}
    value_by_method = {"grid": args.n, "grid-mid": args.n, "mc": args.samples,
                       "quad": args.levels}
    flag = flag_by_method[args.method]
    raw = value_by_method[args.method]
    if raw is None:
        raise RegionParseError(f"method {args.method!r} needs a {flag} sweep list")
    values = _parse_sweep_values(raw, flag)
    if len(values) < 2:
        raise RegionParseError(f"sweep needs at least 2 points, got {values}")
    try:
        sweep = converge_sweep(
            region, args.method, values,
            seed=args.seed, chunk_size=DEFAULT_CHUNK_SIZE,
            order=args.order, threads=threads,
        )
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    rows = sweep_rows(args.region, region, sweep)
    try:
        write_csv(args.out, rows)
    except OSError as exc:
        print(f"cannot write {args.out}: {exc}", file=sys.stderr)
        return EXIT_IO
    if args.json:
        config_base = {"order": args.order, "seed": args.seed}
        for (work, result), value in zip(sweep, sorted(values)):
            print(record_to_json(make_record(
                result, args.region, dict(config_base, value=value, work=work))))
    print(f"wrote {args.out} ({len(rows)} rows)")
    return EXIT_OK


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code) if exc.code else EXIT_OK

    try:
        if args.command == "repro-paper":
            return _cmd_repro_paper(args)
        if args.command == "average":
            return _cmd_average(args)
        if args.command == "verify":
            return _cmd_verify(args)
        if args.command == "converge":
            return _cmd_converge(args)
        if args.command == "shapes":
            print(SHAPES_TEXT, end="")
            return EXIT_OK
    except (RegionParseError, InvalidN) as exc:
        print(f"{type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except PredictionOnlyShape as exc:
        print(f"PredictionOnlyShape: {exc}", file=sys.stderr)
        return EXIT_SHAPE
    except PolyangleError as exc:
        print(f"{type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_PARSE
    raise AssertionError(f"unhandled command {args.command!r}")


if __name__ == "__main__":
    sys.exit(main())
