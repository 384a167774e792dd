"""Command line driver.

Subcommands map one-to-one onto the library: sector classification and
phase sweeps, undulary periods and sampling, the randomized inequality
suite, heavy-disk ranking and transition curves, radial-density checks
and the vanishing-perimeter construction, the descent oracle, and the
acceptance suite.  Delimited tables go to ``--csv``, structured payloads
to ``--json``, and figures to ``--plot`` (SVG next to the tables).

Exit codes: 0 on success, 1 on domain or numerical errors (and on failed
acceptance criteria), 2 on usage errors.
"""

from __future__ import annotations

import argparse
import math
import sys
from concurrent.futures import ThreadPoolExecutor

import numpy as np

from . import cgc, disk, oracle, radial, report, sector, validate
from .errors import IsoSectorError
from .measures import PowerDensity, semicircle_measures
from .oracle import _thread_count

__all__ = ["main", "parse_grid"]


def parse_grid(text: str) -> np.ndarray:
    """Parse ``lo:hi:lin:count`` or ``lo:hi:log:count`` into a grid."""
    parts = text.split(":")
    if len(parts) != 4 or parts[2] not in ("lin", "log"):
        raise argparse.ArgumentTypeError(
            f"grid must look like lo:hi:lin:count or lo:hi:log:count, got {text!r}")
    try:
        lo, hi, count = float(parts[0]), float(parts[1]), int(parts[3])
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"bad grid {text!r}: {exc}") from None
    if count < 2 or not (hi > lo):
        raise argparse.ArgumentTypeError(
            f"grid needs hi > lo and count >= 2, got {text!r}")
    if parts[2] == "log":
        if lo <= 0.0:
            raise argparse.ArgumentTypeError(
                f"log grid needs lo > 0, got {text!r}")
        return np.geomspace(lo, hi, count)
    return np.linspace(lo, hi, count)


def _cmd_classify(args) -> int:
    dens = PowerDensity(args.p)
    cls = sector.classify_sector(dens, args.theta0)
    print(f"p={args.p:g} theta0={args.theta0:g}: winner {cls.winner.tag} "
          f"(ratio {cls.winner.ratio:.9f}, margin {cls.margin:.3e})")
    for cand in cls.candidates:
        print(f"  {cand.tag:<12} ratio {cand.ratio:.12f}")
    if cls.note:
        print(f"  note: {cls.note}")
    if args.csv:
        report.write_csv(args.csv, ("tag", "ratio", "param"),
                         [(c.tag, c.ratio, c.param) for c in cls.candidates])
    if args.json:
        report.write_json(args.json, {
            "kind": "sector-classification",
            "p": args.p, "theta0": args.theta0,
            "winner": cls.winner.tag, "margin": cls.margin,
            "candidates": [{"tag": c.tag, "ratio": c.ratio, "param": c.param}
                           for c in cls.candidates],
            "note": cls.note,
        })
    if args.plot:
        curves = []
        area_unit = 1.0
        r_arc = ((dens.p + 2.0) * area_unit / args.theta0) ** (1.0 / (dens.p + 2.0))
        grid = np.linspace(0.0, args.theta0, 512)
        curves.append((grid, np.full(grid.size, r_arc), "arc"))
        if dens.p > 0.0 and args.theta0 >= math.pi / 2.0:
            base = semicircle_measures(1.0, dens).area
            d = (area_unit / base) ** (1.0 / (dens.p + 2.0))
            half = np.linspace(0.0, math.pi / 2.0, 512)
            curves.append((half, d * np.cos(half), "half-disk"))
        for cand in cls.candidates:
            if cand.tag == sector.UNDULARY:
                spec = cgc.UndularySpec.from_r1(cand.param, dens)
                graph = cgc.integrate_undulary(spec, nodes=1025)
                _, _, area = cgc.undulary_measures(spec)
                k = (area_unit / area) ** (1.0 / (dens.p + 2.0))
                curves.append((graph.theta, k * graph.radius, "undulary"))
        report.plot_sector_curves(args.plot, args.theta0, curves,
                                  f"candidates at p={args.p:g}, "
                                  f"theta0={args.theta0:g}, area 1")
    return 0


def _cmd_phase(args) -> int:
    p_values = [float(p) for p in args.p_grid]
    theta_values = args.theta_grid

    def rows_for(p: float):
        return sector.phase_rows(PowerDensity(p), theta_values)

    with ThreadPoolExecutor(max_workers=_thread_count(len(p_values))) as pool:
        chunks = list(pool.map(rows_for, p_values))
    rows = [row for chunk in chunks for row in chunk]
    winners = {row[2] for row in rows}
    print(f"phase table: {len(rows)} cells, winners seen: "
          f"{', '.join(sorted(winners))}")
    if args.csv:
        report.write_csv(args.csv, sector.PHASE_HEADER, rows)
    if args.json:
        report.write_json(args.json, {
            "kind": "phase-table",
            "p_grid": list(p_values),
            "theta_grid": [float(t) for t in theta_values],
            "rows": [dict(zip(sector.PHASE_HEADER, row)) for row in rows],
        })
    if args.plot:
        report.plot_phase_table(args.plot, rows, "winning candidate by cell")
    return 0


def _cmd_period(args) -> int:
    dens = PowerDensity(args.p)
    r1 = 1.0 + args.grid
    rows = cgc.period_table(dens, r1)
    low = cgc.half_period_low_limit(dens)
    high = cgc.half_period_high_limit(dens)
    periods = np.array([t for _, t in rows])
    print(f"half period at p={args.p:g}: {rows[0][1]:.8f} .. {rows[-1][1]:.8f} "
          f"over {len(rows)} radii (limits {low:.8f}, {high:.8f})")
    if args.csv:
        report.write_csv(args.csv, ("r1", "half_period"), rows)
    if args.plot:
        report.plot_period_curve(args.plot, np.array([r for r, _ in rows]),
                                 periods, low, high,
                                 f"undulary half period, p={args.p:g}")
    return 0


def _cmd_undulary(args) -> int:
    dens = PowerDensity(args.p)
    if args.r1 is not None:
        spec = cgc.UndularySpec.from_r1(args.r1, dens)
    else:
        sol = cgc.solve_equilibrium_undulary(args.theta0, dens)
        if isinstance(sol, cgc.NoSolution):
            print(f"no undulary half wave at theta0={args.theta0:g}: "
                  f"attainable periods [{sol.t_min:.6f}, {sol.t_max:.6f}]")
            return 1
        spec = sol
    span, perim, area = cgc.undulary_measures(spec)
    graph = cgc.integrate_undulary(spec, nodes=args.nodes)
    ratio = perim * area ** (-(dens.p + 1.0) / (dens.p + 2.0))
    print(f"undulary r1={spec.r1:.10g} lam={spec.lam:.10g} span={span:.10g} "
          f"P={perim:.10g} A={area:.10g} ratio={ratio:.10g}")
    if args.csv:
        report.write_csv(args.csv, ("theta", "radius"),
                         list(zip(graph.theta, graph.radius)))
    if args.json:
        report.write_json(args.json, {
            "kind": "undulary",
            "p": dens.p, "r1": spec.r1, "lam": spec.lam,
            "half_period": span, "perimeter": perim, "area": area,
            "ratio": ratio,
        })
    if args.plot:
        report.plot_sector_curves(args.plot, graph.theta0,
                                  [(graph.theta, graph.radius, "undulary")],
                                  f"half wave, p={dens.p:g}, r1={spec.r1:.4g}")
    return 0


def _cmd_inequality(args) -> int:
    dens = PowerDensity(args.p)
    rep = sector.random_inequality_suite(dens, args.theta0,
                                         n_trials=args.trials, seed=args.seed)
    print(f"inequality suite p={args.p:g} theta0={args.theta0:g}: "
          f"{rep.violations} violations in {rep.n_trials} trials, "
          f"worst margin {rep.worst_margin:.3e}")
    if args.json:
        report.write_json(args.json, {
            "kind": "inequality-suite",
            "p": rep.p, "theta0": rep.theta0, "n_trials": rep.n_trials,
            "violations": rep.violations, "worst_margin": rep.worst_margin,
            "seed": rep.seed,
        })
    return 0 if rep.violations == 0 else 1


def _cmd_disk(args) -> int:
    dd = disk.DiskDensity(args.a)
    if args.area is not None:
        ranked = disk.classify_disk(dd, args.theta0, args.area)
        print(f"a={args.a:g} theta0={args.theta0:g} area={args.area:g}: "
              f"winner {ranked[0].tag} (P={ranked[0].perimeter:.9f})")
        for cand in ranked:
            print(f"  {cand.tag:<16} P={cand.perimeter:.12f} "
                  f"param={cand.param:.12f}")
        if args.csv:
            report.write_csv(args.csv, ("tag", "perimeter", "param"),
                             [(c.tag, c.perimeter, c.param) for c in ranked])
        if args.json:
            report.write_json(args.json, {
                "kind": "disk-ranking",
                "a": args.a, "theta0": args.theta0, "area": args.area,
                "winner": ranked[0].tag,
                "candidates": [{"tag": c.tag, "perimeter": c.perimeter,
                                "param": c.param} for c in ranked],
            })
        return 0
    rows = []
    for area in args.area_grid:
        ranked = disk.classify_disk(dd, args.theta0, float(area))
        rows.append((float(area), ranked[0].tag, ranked[0].perimeter))
    transitions = disk.winner_transitions(dd, args.theta0,
                                          area_lo=float(args.area_grid[0]),
                                          area_hi=float(args.area_grid[-1]))
    print(f"a={args.a:g} theta0={args.theta0:g}: {len(rows)} areas, "
          f"{len(transitions)} winner changes")
    for cross, before, after in transitions:
        print(f"  {before} -> {after} at area {cross:.9f}")
    if args.csv:
        report.write_csv(args.csv, ("area", "winner", "perimeter"), rows)
    if args.json:
        report.write_json(args.json, {
            "kind": "disk-sweep",
            "a": args.a, "theta0": args.theta0,
            "rows": [{"area": a, "winner": t, "perimeter": p}
                     for a, t, p in rows],
            "transitions": [{"area": c, "before": b, "after": a}
                            for c, b, a in transitions],
        })
    if args.plot:
        report.plot_disk_winners(args.plot, rows,
                                 f"winner by area, a={args.a:g}, "
                                 f"theta0={args.theta0:g}")
    return 0


def _cmd_disk_curves(args) -> int:
    rows = [disk.transition_curves_row(disk.DiskDensity(float(a)),
                                       eps=args.eps)
            for a in args.a_grid]
    print(f"transition curves over {len(rows)} densities "
          f"(eps={args.eps:g})")
    if args.csv:
        report.write_csv(args.csv, ("a", "theta_small", "theta_bite"), rows)
    if args.plot:
        report.plot_transition_curves(args.plot, rows,
                                      "handover openings against density")
    return 0


_PROFILES = {
    "r": lambda: radial.power_profile(1.0),
    "r2": lambda: radial.power_profile(2.0),
    "r3": lambda: radial.power_profile(3.0),
    "1+r": lambda: radial.RadialProfile(fn=lambda r: 1.0 + r, r_max=10.0,
                                        label="1+r"),
    "sqrt": lambda: radial.power_profile(0.5),
}


def _cmd_rn_check(args) -> int:
    profile = _PROFILES[args.profile]()
    verdict = radial.betta_convexity_check(profile, args.n)
    failures = 0
    for j in range(args.trials):
        region = radial.random_star_region(args.n, args.count,
                                           seed=args.seed + j)
        if not radial.averaging_inequality_check(region, profile).ok:
            failures += 1
    print(f"profile {profile.label}, n={args.n}: convex={verdict.convex} "
          f"(worst second difference {verdict.worst_second_difference:.3e}); "
          f"averaging chain failed {failures}/{args.trials}")
    if args.json:
        report.write_json(args.json, {
            "kind": "radial-check",
            "profile": profile.label, "n": args.n,
            "convex": verdict.convex,
            "worst_second_difference": verdict.worst_second_difference,
            "trials": args.trials, "chain_failures": failures,
            "seed": args.seed,
        })
    return 0 if failures == 0 else 1


def _cmd_rn_demo(args) -> int:
    radii = tuple(float(r) for r in args.radii)
    rows = radial.vanishing_perimeter_demo(args.n, args.p, args.volume,
                                           radii=radii)
    print(f"n={args.n} p={args.p:g} volume={args.volume:g}: weighted surface "
          f"{rows[0].surface:.6f} -> {rows[-1].surface:.6f} over "
          f"{len(rows)} balls")
    table = [(r.radius, r.center, r.volume, r.surface) for r in rows]
    if args.csv:
        report.write_csv(args.csv, ("radius", "center", "volume", "surface"),
                         table)
    if args.plot:
        report.plot_demo_rows(args.plot, table,
                              f"surface decay, n={args.n}, p={args.p:g}")
    return 0


def _cmd_oracle(args) -> int:
    prob = oracle.OracleProblem(args.p, args.theta0, node_count=args.nodes)
    verdict = oracle.oracle_classify(prob)
    best = verdict.best
    print(f"oracle p={args.p:g} theta0={args.theta0:g}: {verdict.tag} "
          f"(P={best.perimeter:.9f}, ratio={best.ratio:.9f}, "
          f"start {best.start}, {best.iterations} iterations)")
    for run in verdict.runs:
        print(f"  start {run.start:<10} converged={run.converged} "
              f"P={run.perimeter:.9f} gnorm={run.gradient_norm:.2e}")
    if args.json:
        report.write_json(args.json, {
            "kind": "oracle-verdict",
            "p": args.p, "theta0": args.theta0, "tag": verdict.tag,
            "best": {"start": best.start, "perimeter": best.perimeter,
                     "area": best.area, "ratio": best.ratio,
                     "iterations": best.iterations,
                     "gradient_norm": best.gradient_norm},
            "runs": [{"start": r.start, "converged": r.converged,
                      "perimeter": r.perimeter,
                      "gradient_norm": r.gradient_norm} for r in verdict.runs],
        })
    if args.plot:
        report.plot_sector_curves(args.plot, args.theta0,
                                  [(best.theta, best.radius, "minimizer")],
                                  f"descent minimizer, p={args.p:g}, "
                                  f"theta0={args.theta0:g}")
    return 0


def _cmd_validate(args) -> int:
    numbers = args.criteria if args.criteria else None
    rep = validate.run_all(numbers)
    if args.json:
        report.write_json(args.json, validate.report_payload(rep))
    print(f"{sum(r.passed for r in rep.results)}/{len(rep.results)} "
          f"criteria passed")
    return 0 if rep.all_passed else 1


def _parser() -> argparse.ArgumentParser:
    top = argparse.ArgumentParser(
        prog="iso-sector",
        description="isoperimetric comparisons in weighted sectors, a heavy "
                    "disk, and radial densities")
    sub = top.add_subparsers(dest="command", required=True)

    def add_output(p, csv=True, json=True, plot=True):
        if csv:
            p.add_argument("--csv", metavar="PATH", help="write a table here")
        if json:
            p.add_argument("--json", metavar="PATH", help="write a payload here")
        if plot:
            p.add_argument("--plot", metavar="PATH", help="write an SVG here")

    p = sub.add_parser("classify", help="rank sector candidates at one cell")
    p.add_argument("--p", type=float, required=True)
    p.add_argument("--theta0", type=float, required=True)
    add_output(p)
    p.set_defaults(func=_cmd_classify)

    p = sub.add_parser("phase", help="winner table over p and theta0 grids")
    p.add_argument("--p-grid", type=parse_grid, required=True,
                   metavar="lo:hi:lin|log:count")
    p.add_argument("--theta-grid", type=parse_grid, required=True,
                   metavar="lo:hi:lin|log:count")
    add_output(p)
    p.set_defaults(func=_cmd_phase)

    p = sub.add_parser("period", help="undulary half period sweep")
    p.add_argument("--p", type=float, required=True)
    p.add_argument("--grid", type=parse_grid, required=True,
                   metavar="lo:hi:lin|log:count",
                   help="grid of r1 - 1 values")
    add_output(p, json=False)
    p.set_defaults(func=_cmd_period)

    p = sub.add_parser("undulary", help="sample one undulary half wave")
    p.add_argument("--p", type=float, required=True)
    group = p.add_mutually_exclusive_group(required=True)
    group.add_argument("--r1", type=float)
    group.add_argument("--theta0", type=float)
    p.add_argument("--nodes", type=int, default=1025)
    add_output(p)
    p.set_defaults(func=_cmd_undulary)

    p = sub.add_parser("inequality", help="randomized integral inequality suite")
    p.add_argument("--p", type=float, required=True)
    p.add_argument("--theta0", type=float, required=True)
    p.add_argument("--trials", type=int, default=10_000)
    p.add_argument("--seed", type=int, default=validate.BASE_SEED)
    add_output(p, csv=False, plot=False)
    p.set_defaults(func=_cmd_inequality)

    p = sub.add_parser("disk", help="rank heavy-disk candidates")
    p.add_argument("--a", type=float, required=True)
    p.add_argument("--theta0", type=float, required=True)
    group = p.add_mutually_exclusive_group(required=True)
    group.add_argument("--area", type=float)
    group.add_argument("--area-grid", type=parse_grid,
                       metavar="lo:hi:lin|log:count")
    add_output(p)
    p.set_defaults(func=_cmd_disk)

    p = sub.add_parser("disk-curves", help="handover openings against density")
    p.add_argument("--a-grid", type=parse_grid, required=True,
                   metavar="lo:hi:lin|log:count")
    p.add_argument("--eps", type=float, default=1e-3)
    add_output(p, json=False)
    p.set_defaults(func=_cmd_disk_curves)

    p = sub.add_parser("rn-check", help="convexity certificate and averaging chain")
    p.add_argument("--n", type=int, required=True, choices=(2, 3))
    p.add_argument("--profile", required=True, choices=sorted(_PROFILES))
    p.add_argument("--trials", type=int, default=100)
    p.add_argument("--count", type=int, default=1024)
    p.add_argument("--seed", type=int, default=validate.BASE_SEED)
    add_output(p, csv=False, plot=False)
    p.set_defaults(func=_cmd_rn_check)

    p = sub.add_parser("rn-demo", help="vanishing weighted perimeter construction")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--p", type=float, required=True)
    p.add_argument("--volume", type=float, default=1.0)
    p.add_argument("--radii", type=float, nargs="+",
                   default=(2.0, 4.0, 8.0, 16.0, 32.0, 64.0, 128.0, 256.0))
    add_output(p, json=False)
    p.set_defaults(func=_cmd_rn_demo)

    p = sub.add_parser("oracle", help="projected descent at fixed area")
    p.add_argument("--p", type=float, required=True)
    p.add_argument("--theta0", type=float, required=True)
    p.add_argument("--nodes", type=int, default=257)
    add_output(p, csv=False)
    p.set_defaults(func=_cmd_oracle)

    p = sub.add_parser("validate", help="run the acceptance suite")
    p.add_argument("--criteria", type=int, nargs="+", metavar="N",
                   help="restrict to these criterion numbers")
    add_output(p, csv=False, plot=False)
    p.set_defaults(func=_cmd_validate)

    return top


def main(argv=None) -> int:
    try:
        args = _parser().parse_args(argv)
    except SystemExit as exc:
        return int(exc.code) if exc.code is not None else 0
    try:
        return args.func(args)
    except IsoSectorError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
