"""Command-line entry point.

Subcommands:
  verify     randomized identity suites over the whole library
  classify   constant-dilaton classification for a given coupling
  linearize  essential-deformation arithmetic plus FD sweeps of the
             linearized curvature quantities
  harmonic   pointwise consequences of divergence-free curvature, on a
             chart file or on synthetic algebraic samples
  search     damped least-squares soliton search over homogeneous families

Output convention: the machine-readable JSON result of a subcommand goes to
stdout; per-check status lines go to stderr.  `--report PATH` additionally
writes the full run report (records, config, environment, timings) as JSON;
`--csv PATH` writes a flat table (check records, or the FD sweep table for
`linearize`).  Exit status: 0 when every check record passed, 1 when some
check failed, 2 on usage or configuration errors.

The environment variable HETSOL_MODE overrides the arithmetic mode
("exact" or "float") wherever a mode applies, taking precedence over the
`--mode` flag; a note is printed to stderr when it does.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import time
from fractions import Fraction

from . import sampling
from .charts import ChartGeometry, poincare_ball_chart
from .curvature3 import Sym2, covector_norm_sq
from .errors import HetsolError
from .homogeneous import (CATALOGUE, SearchConfig, catalogue_as_dict,
                          catalogue_from_dict, grid_scan, lm_solve,
                          multi_start)
from .linearize import essential_chain, linearization_fd_sweep
from .reportio import make_report, records_to_csv, report_to_json, write_report
from .soliton import (HarmonicSample, SolitonParams, classify_constant_dilaton,
                      harmonic_dilaton_test)
from .suites import CheckRecord, SuiteConfig, run_verify_suite

_MODES = ("exact", "float")


class CliError(Exception):
    """Usage or configuration problem; message goes to stderr, exit 2."""


# ---------------------------------------------------------------------------
# Argument helpers


def _fraction_arg(text: str) -> Fraction:
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError) as exc:
        raise argparse.ArgumentTypeError(f"not a rational number: {text!r} ({exc})")


def _pair_arg(text: str) -> tuple:
    parts = text.split(",")
    if len(parts) != 2:
        raise argparse.ArgumentTypeError(f"expected 'shape,e2phi', got {text!r}")
    try:
        return (float(parts[0]), float(parts[1]))
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc))


def _points_arg(text: str) -> tuple:
    """Semicolon-separated points, each a comma-separated rational triple."""
    points = []
    for chunk in text.split(";"):
        coords = chunk.split(",")
        if len(coords) != 3:
            raise argparse.ArgumentTypeError(
                f"point {chunk!r} needs exactly three coordinates")
        try:
            points.append(tuple(Fraction(c) for c in coords))
        except (ValueError, ZeroDivisionError) as exc:
            raise argparse.ArgumentTypeError(f"bad coordinate in {chunk!r}: {exc}")
    return tuple(points)


def _resolve_mode(flag_mode: str) -> str:
    env = os.environ.get("HETSOL_MODE")
    if env is None:
        return flag_mode
    if env not in _MODES:
        raise CliError(f"HETSOL_MODE={env!r}: must be one of {_MODES}")
    if env != flag_mode:
        print(f"note: HETSOL_MODE={env} overrides mode {flag_mode!r}",
              file=sys.stderr)
    return env


def _load_json(path: str, what: str) -> dict:
    try:
        with open(path, encoding="utf-8") as fh:
            return json.load(fh)
    except FileNotFoundError:
        raise CliError(f"{path}: {what} file not found")
    except json.JSONDecodeError as exc:
        raise CliError(f"{path}: not valid JSON ({exc})")


# ---------------------------------------------------------------------------
# Subcommands: each returns (records, config, result_doc, csv_text_or_None)


def cmd_verify(args):
    mode = _resolve_mode(args.mode)
    try:
        cfg = SuiteConfig(seed=args.seed, trials=args.trials, mode=mode,
                          tol=args.tol)
    except ValueError as exc:
        raise CliError(str(exc))
    records = run_verify_suite(cfg)
    config = {"trials": args.trials, "tol": args.tol}
    return records, mode, config, None, None


def cmd_classify(args):
    mode = _resolve_mode("exact")
    kappa = float(args.kappa) if mode == "float" else args.kappa
    start = time.time()
    rep = classify_constant_dilaton(SolitonParams(kappa=kappa))
    passed = rep.hyperbolic_residue == 0 and rep.product_defect != 0
    record = CheckRecord(
        "classify/constant-dilaton", mode, 1,
        abs(float(rep.hyperbolic_residue)), mode == "exact", passed,
        time.time() - start, "; ".join(rep.warnings))
    config = {"kappa": str(args.kappa)}
    return [record], mode, config, rep.as_dict(), None


def cmd_linearize(args):
    mode = _resolve_mode("exact")
    records = []

    start = time.time()
    chain = essential_chain(SolitonParams(kappa=args.kappa))
    worst = max((abs(float(d - e)) for (_, d, e, _) in chain.checks),
                default=0.0)
    records.append(CheckRecord(
        "linearize/essential-chain", "exact", len(chain.checks), worst, True,
        chain.all_ok, time.time() - start, f"kappa={args.kappa}"))

    try:
        step = Fraction(1, args.step_denominator)
    except ZeroDivisionError:
        raise CliError("--step-denominator must be nonzero")
    chart = poincare_ball_chart()
    rng = sampling.child_rng(args.seed, "cli/linearize")
    sweep_rows = []
    for i in range(args.deformations):
        h = sampling.rand_deformation(rng)
        p = sampling.rand_ball_point(rng)
        t0 = time.time()
        rows = linearization_fd_sweep(chart, h, p, step, einstein=True)
        dt = (time.time() - t0) / len(rows)
        for row in rows:
            ok = (row.rel_error <= args.fd_tol
                  and 3.5 <= row.ratio <= 4.5)
            records.append(CheckRecord(
                f"linearize/fd-{row.quantity}-{i:02d}", "float", 1,
                row.rel_error, False, ok, dt,
                f"ratio={row.ratio:.3f} step=1/{args.step_denominator}"))
            sweep_rows.append({"deformation": i, "quantity": row.quantity,
                               "analytic_scale": row.analytic_scale,
                               "defect": row.defect,
                               "defect_half": row.defect_half,
                               "ratio": row.ratio,
                               "rel_error": row.rel_error})

    config = {"kappa": str(args.kappa), "deformations": args.deformations,
              "step": f"1/{args.step_denominator}", "fd_tol": args.fd_tol,
              "chart": "poincare-ball"}
    doc = {"essential_chain": chain.as_dict(), "fd_sweep": sweep_rows}

    import csv as _csv
    import io as _io
    out = _io.StringIO()
    writer = _csv.writer(out)
    writer.writerow(["deformation", "quantity", "analytic_scale", "defect",
                     "defect_half", "ratio", "rel_error"])
    for r in sweep_rows:
        writer.writerow([r["deformation"], r["quantity"],
                         repr(r["analytic_scale"]), repr(r["defect"]),
                         repr(r["defect_half"]), repr(r["ratio"]),
                         repr(r["rel_error"])])
    return records, mode, config, doc, out.getvalue()


def _synthetic_harmonic_samples(rng, kappa, count):
    """Samples with the structure forced by divergence-free curvature:
    Ric = (s/2)(g - dphi x dphi / |dphi|^2), shared s, and e^{2 phi} chosen
    so that |dphi|^2 - (5/2) e^{2 phi} takes the forced constant value."""
    pairs = ((0, 0), (0, 1), (0, 2), (1, 1), (1, 2), (2, 2))
    s = sampling.rand_nonzero_fraction(rng)
    forced_f = -s - Fraction(3, 4) * kappa * s * s
    samples = []
    for _ in range(count):
        g = sampling.rand_metric3(rng)
        dphi = tuple(sampling.rand_fraction(rng) for _ in range(3))
        if all(x == 0 for x in dphi):
            dphi = (Fraction(1), Fraction(0), Fraction(0))
        nsq = covector_norm_sq(g, dphi)
        while nsq <= forced_f:
            dphi = tuple(2 * x for x in dphi)
            nsq = 4 * nsq
        e2phi = (nsq - forced_f) * Fraction(2, 5)
        proj = Sym2(*(g.form.c[k] - dphi[i] * dphi[j] / nsq
                      for k, (i, j) in enumerate(pairs)))
        ric = proj.scale(s / 2)
        samples.append(HarmonicSample(g, ric, s, dphi, e2phi))
    return samples


def cmd_harmonic(args):
    mode = _resolve_mode("exact")
    params = SolitonParams(kappa=args.kappa)
    start = time.time()
    if args.chart:
        doc = _load_json(args.chart, "chart")
        try:
            chart = ChartGeometry.from_json(doc)
        except (KeyError, TypeError) as exc:
            raise CliError(f"{args.chart}: missing or malformed field {exc}")
        except ValueError as exc:
            raise CliError(f"{args.chart}: {exc}")
        if not args.points:
            raise CliError("--chart needs --points 'x,y,z;x,y,z;...'")
        for i, p in enumerate(args.points):
            if not chart.contains(p):
                shown = ",".join(str(c) for c in p)
                raise CliError(f"--points: point {i} = ({shown}) is outside "
                               f"the chart domain ({chart.domain})")
        report = harmonic_dilaton_test(chart, params, list(args.points),
                                       tol=args.tol)
        n = len(args.points)
        source = args.chart
    else:
        rng = sampling.child_rng(args.seed, "cli/harmonic")
        samples = _synthetic_harmonic_samples(rng, args.kappa, args.samples)
        report = harmonic_dilaton_test(samples, params, tol=args.tol)
        n = args.samples
        source = "synthetic"
    dt = (time.time() - start) / max(1, len(report.steps))
    records = [CheckRecord(f"harmonic/{step.name}", mode, n, step.defect,
                           False, step.passed, dt, "")
               for step in report.steps]
    config = {"kappa": str(args.kappa), "source": source, "tol": args.tol,
              "points": n}
    return records, mode, config, report.as_dict(), None


def cmd_search(args):
    mode = "float"   # the solver is floating-point by construction

    if args.dump_catalogue:
        doc = json.dumps(catalogue_as_dict(), indent=2, sort_keys=True) + "\n"
        if args.dump_catalogue == "-":
            sys.stdout.write(doc)
        else:
            with open(args.dump_catalogue, "w", encoding="utf-8") as fh:
                fh.write(doc)
            print(f"catalogue written to {args.dump_catalogue}",
                  file=sys.stderr)
        return [], mode, {}, None, None

    catalogue = None
    if args.catalogue:
        raw = _load_json(args.catalogue, "catalogue")
        try:
            catalogue = catalogue_from_dict(raw)
        except KeyError as exc:
            raise CliError(f"{args.catalogue}: missing field {exc}")
        except (TypeError, ValueError) as exc:
            raise CliError(f"{args.catalogue}: {exc}")
    cat = CATALOGUE if catalogue is None else catalogue

    if not args.family:
        raise CliError("search needs --family (or --dump-catalogue); known: "
                       + ", ".join(sorted(cat)))
    if args.family not in cat:
        raise CliError(f"unknown family {args.family!r}; known: "
                       + ", ".join(sorted(cat)))

    params = SolitonParams(kappa=args.kappa)
    lo_s, hi_s = cat[args.family]["shape_bounds"]
    lo_e, hi_e = cat[args.family]["e2phi_bounds"]
    initial = args.start or ((lo_s + hi_s) / 2.0, (lo_e + hi_e) / 2.0)
    try:
        cfg = SearchConfig(initial=initial, tol=args.tol,
                           max_iter=args.max_iter, seed=args.seed)
    except (ValueError, HetsolError) as exc:
        raise CliError(str(exc))
    config = {"family": args.family, "kappa": str(args.kappa),
              "initial": list(initial), "tol": args.tol,
              "max_iter": args.max_iter,
              "catalogue": args.catalogue or "builtin"}

    start = time.time()
    if args.grid:
        rep = grid_scan(args.family, params, n=args.grid, catalogue=catalogue)
        record = CheckRecord(
            f"search/grid-{args.family}", mode, args.grid * args.grid,
            rep.min_objective, False, True, time.time() - start,
            f"min at shape={rep.argmin[0]:.6g}, e2phi={rep.argmin[1]:.6g}; "
            f"all_positive={rep.all_positive}")
        config["grid"] = args.grid
        return [record], mode, config, rep.as_dict(), None

    if args.starts > 1:
        runs = multi_start(args.family, params, cfg, n_starts=args.starts,
                           catalogue=catalogue)
        best = min(runs, key=lambda r: r.objective)
        n_conv = sum(1 for r in runs if r.converged)
        record = CheckRecord(
            f"search/{args.family}", mode, args.starts, best.objective, False,
            best.converged, time.time() - start,
            f"{n_conv}/{args.starts} starts converged; best: {best.status} "
            f"after {best.iterations} iterations")
        config["starts"] = args.starts
        doc = {"best": best.as_dict(), "runs": [r.as_dict() for r in runs]}
        return [record], mode, config, doc, None

    rep = lm_solve(args.family, params, cfg, catalogue=catalogue)
    record = CheckRecord(
        f"search/{args.family}", mode, 1, rep.objective, False, rep.converged,
        time.time() - start,
        f"{rep.status} after {rep.iterations} iterations at "
        f"shape={rep.shape:.8g}, e2phi={rep.e2phi:.8g}")
    return [record], mode, config, rep.as_dict(), None


# ---------------------------------------------------------------------------
# Parser and dispatch


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="hetsol",
        description="Exact and numerical checks for three-dimensional "
                    "torsionless Heterotic solitons.")
    sub = parser.add_subparsers(dest="command", required=True)

    def add_common(p):
        p.add_argument("--report", metavar="PATH",
                       help="write the full JSON run report to PATH")
        p.add_argument("--csv", metavar="PATH",
                       help="write a flat CSV table to PATH")

    p = sub.add_parser("verify", help="run the randomized identity suites")
    p.add_argument("--seed", type=int, default=7)
    p.add_argument("--trials", type=int, default=200)
    p.add_argument("--mode", choices=_MODES, default="exact")
    p.add_argument("--tol", type=float, default=1e-9,
                   help="float-mode pass tolerance (exact mode needs 0)")
    add_common(p)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("classify",
                       help="constant-dilaton classification for a coupling")
    p.add_argument("--kappa", type=_fraction_arg, default=Fraction(1),
                   help="coupling constant, rational (e.g. 1, 2/3)")
    add_common(p)
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("linearize",
                       help="essential-deformation coefficients and FD sweeps")
    p.add_argument("--kappa", type=_fraction_arg, default=Fraction(1))
    p.add_argument("--seed", type=int, default=3)
    p.add_argument("--deformations", type=int, default=10)
    p.add_argument("--step-denominator", type=int, default=5000,
                   help="FD step is 1/D; defects are also taken at 1/(2D)")
    p.add_argument("--fd-tol", type=float, default=1e-6,
                   help="relative-error bound at the halved step")
    add_common(p)
    p.set_defaults(func=cmd_linearize)

    p = sub.add_parser("harmonic",
                       help="divergence-free curvature consequences")
    p.add_argument("--kappa", type=_fraction_arg, default=Fraction(1))
    p.add_argument("--chart", metavar="PATH",
                   help="chart JSON file; omit for synthetic samples")
    p.add_argument("--points", type=_points_arg,
                   help="semicolon-separated rational triples, e.g. "
                        "'0,0,0;1/8,0,1/16'")
    p.add_argument("--samples", type=int, default=6,
                   help="synthetic sample count (chartless mode)")
    p.add_argument("--seed", type=int, default=11)
    p.add_argument("--tol", type=float, default=1e-12)
    add_common(p)
    p.set_defaults(func=cmd_harmonic)

    p = sub.add_parser("search",
                       help="soliton search over homogeneous families")
    p.add_argument("--family",
                   help="catalogue family name (see --dump-catalogue)")
    p.add_argument("--kappa", type=_fraction_arg, default=Fraction(1))
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--start", type=_pair_arg, metavar="SHAPE,E2PHI",
                   help="initial point; default is the bounds midpoint")
    p.add_argument("--starts", type=int, default=1,
                   help="number of seeded restarts (>1 enables multi-start)")
    p.add_argument("--grid", type=int, metavar="N",
                   help="scan an NxN objective grid instead of solving")
    p.add_argument("--max-iter", type=int, default=200)
    p.add_argument("--tol", type=float, default=1e-12,
                   help="objective value required for convergence")
    p.add_argument("--catalogue", metavar="PATH",
                   help="family catalogue JSON; default is the builtin one")
    p.add_argument("--dump-catalogue", metavar="PATH",
                   help="write the builtin catalogue as JSON ('-' = stdout)")
    add_common(p)
    p.set_defaults(func=cmd_search)

    return parser


def _emit(args, command, mode, records, config, doc, csv_text) -> int:
    for r in records:
        status = "PASS" if r.passed else "FAIL"
        tag = " exact" if r.exact else ""
        note = f"  ({r.note})" if r.note else ""
        print(f"{status} {r.name}  defect={r.defect:.6g}{tag}{note}",
              file=sys.stderr)
    n_pass = sum(1 for r in records if r.passed)
    if records:
        print(f"{n_pass}/{len(records)} checks passed", file=sys.stderr)

    report = make_report(command, mode, getattr(args, "seed", 0), records,
                         config)
    if doc is not None:
        sys.stdout.write(json.dumps(doc, indent=2, sort_keys=True) + "\n")
    elif command == "verify":
        sys.stdout.write(report_to_json(report))
    if args.report:
        write_report(report, args.report)
        print(f"report written to {args.report}", file=sys.stderr)
    if args.csv:
        with open(args.csv, "w", encoding="utf-8") as fh:
            fh.write(csv_text if csv_text is not None
                     else records_to_csv(records))
        print(f"table written to {args.csv}", file=sys.stderr)
    return 0 if report.passed else 1


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        records, mode, config, doc, csv_text = args.func(args)
    except CliError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except HetsolError as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 2
    return _emit(args, args.command, mode, records, config, doc, csv_text)


if __name__ == "__main__":
    sys.exit(main())
