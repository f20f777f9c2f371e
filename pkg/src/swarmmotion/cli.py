"""Command-line interface.

Commands: analyze, classify, cluster, simulate, verify. Each takes a
spec path or the bare name of a bundled example. Reports are JSON on
stdout; artifacts go next to the --out path. Exit codes: 0 success,
1 analysis error (or a verify disagreement), 2 spec error. Set the
SWARM_LOG environment variable to a level name for diagnostics on
stderr.
"""
from __future__ import annotations

import argparse
import json
import logging
import math
import os
import sys
from pathlib import Path

import numpy as np

from . import classify as classifymod
from . import clustering, datasets, export, graph as graphmod, simulate, spectral
from .errors import AnalysisError, SpecError
from .specio import SimParams, SystemSpec, load_spec, parse_spec

logger = logging.getLogger("swarmmotion")

VERIFY_HORIZON_MARGIN = 2.5
VERIFY_GROWTH_BUDGET = 25.0
VERIFY_MAX_STEPS = 400_000


def _complex_json(z: complex) -> dict:
    return {"re": float(z.real), "im": float(z.imag)}


def _spectrum_json(spectrum: spectral.ComplexSpectrum) -> list:
    return [_complex_json(z) for z in spectrum.values]


def _verdict_json(v: spectral.HurwitzVerdict) -> dict:
    return {
        "max_real_part": float(v.max_real_part),
        "is_hurwitz": v.is_hurwitz,
        "is_marginal": v.is_marginal,
    }


def _round_numbers(obj, ndigits: int):
    if isinstance(obj, float):
        return round(obj, ndigits)
    if isinstance(obj, list):
        return [_round_numbers(v, ndigits) for v in obj]
    if isinstance(obj, dict):
        return {k: _round_numbers(v, ndigits) for k, v in obj.items()}
    return obj


def _resolve_spec(arg: str) -> SystemSpec:
    if os.path.exists(arg):
        logger.info("loading spec file %s", arg)
        return load_spec(arg)
    if arg in datasets.bundled_names():
        logger.info("loading bundled spec %s", arg)
        return datasets.load_bundled(arg)
    raise SpecError(
        f"spec {arg!r} is neither a file nor a bundled name "
        f"({', '.join(datasets.bundled_names())})"
    )


def _apply_overrides(spec: SystemSpec, args) -> SystemSpec:
    sim = spec.sim
    dt = args.dt if args.dt is not None else sim.dt
    t_end = args.t_end if args.t_end is not None else sim.t_end
    seed = args.seed if args.seed is not None else sim.seed
    if dt <= 0:
        raise SpecError(f"--dt must be positive, got {dt}")
    if t_end < 0:
        raise SpecError(f"--t-end must be nonnegative, got {t_end}")
    return SystemSpec(
        n=spec.n,
        d=spec.d,
        a=spec.a,
        f=spec.f,
        graph=spec.graph,
        x0=spec.x0,
        sim=SimParams(dt=dt, t_end=t_end, seed=seed),
        notes=spec.notes,
    )


def _initial_state(spec: SystemSpec) -> np.ndarray:
    if spec.x0 is not None:
        return spec.x0
    return simulate.default_initial_state(spec.n, spec.d, spec.sim.seed)


def _group_json(gv: classifymod.GroupVerdict) -> dict:
    return {
        "members": list(gv.group),
        "agrees": gv.agrees,
        "limit_dynamics": gv.limit_dynamics,
        "spectrum": _spectrum_json(gv.group_spectrum),
    }


def _analyze_report(spec: SystemSpec) -> dict:
    lap = graphmod.laplacian(spec.graph)
    report = spectral.spectral_report(spec.a, spec.f, lap)
    spanning = graphmod.has_spanning_tree(spec.graph)
    groups = classifymod.analyze_groups(spec.a, spec.f, spec.graph)
    return {
        "n": spec.n,
        "d": spec.d,
        "spanning_tree": spanning,
        "a_verdict": _verdict_json(report.a_verdict),
        "laplacian_spectrum": _spectrum_json(report.laplacian_spectrum),
        "entries": [
            {
                "lambda": _complex_json(e.value),
                "is_zero": e.is_zero,
                "shifted_spectrum": _spectrum_json(e.shifted_spectrum),
                "verdict": _verdict_json(e.verdict),
            }
            for e in report.per_eigenvalue
        ],
        "groups": [_group_json(gv) for gv in groups],
        "ungrouped": list(
            classifymod.ungrouped_vertices(spec.graph, [gv.group for gv in groups])
        ),
    }


def _classify_report(spec: SystemSpec) -> dict:
    lap = graphmod.laplacian(spec.graph)
    report = spectral.spectral_report(spec.a, spec.f, lap)
    motion = classifymod.classify_motion(
        report, graphmod.has_spanning_tree(spec.graph)
    )
    return {
        "label": motion.label,
        "evidence": {
            "has_spanning_tree": motion.evidence.has_spanning_tree,
            "a_hurwitz": motion.evidence.a_hurwitz,
            "nonzero_shift_verdicts": list(motion.evidence.nonzero_shift_verdicts),
        },
    }


def _cluster_report(spec: SystemSpec, tol: float | None) -> dict:
    prediction = clustering.predict_clusters(
        spec.a,
        spec.f,
        spec.graph,
        tol=tol if tol is not None else clustering.PSI_ZERO_TOL,
    )
    return {
        "pairs": [list(p) for p in prediction.agreeing_pairs],
        "clusters": [list(b) for b in prediction.partition],
    }


def _run_simulation(spec: SystemSpec) -> simulate.TrajectoryRecord:
    sys_ = simulate.assemble(spec.a, spec.f, graphmod.laplacian(spec.graph))
    x0 = _initial_state(spec)
    return simulate.integrate(sys_, x0, spec.sim.dt, spec.sim.t_end)


def _simulate_report(spec: SystemSpec, args) -> dict:
    traj = _run_simulation(spec)
    rel_tol = args.tol if args.tol is not None else simulate.DEFAULT_REL_TOL
    partition = simulate.empirical_clusters(traj, rel_tol=rel_tol)
    report = {
        "dt": spec.sim.dt,
        "t_end": spec.sim.t_end,
        "seed": spec.sim.seed,
        "samples": int(len(traj.times)),
        "truncated": traj.truncated,
        "partition": [list(b) for b in partition],
    }
    wants_artifact = args.csv or args.svg
    if wants_artifact and not args.out:
        raise SpecError("--csv and --svg need --out to name their files")
    if wants_artifact:
        stem = args.out[: -len(".json")] if args.out.endswith(".json") else args.out
        if args.csv:
            path = stem + ".csv"
            Path(path).write_text(export.trajectory_csv(traj), encoding="utf-8")
            logger.info("wrote %s", path)
            report["csv_path"] = path
        if args.svg:
            path = stem + ".svg"
            Path(path).write_text(export.trajectory_svg(traj), encoding="utf-8")
            logger.info("wrote %s", path)
            report["svg_path"] = path
    return report


def _group_decay_rates(spec: SystemSpec, gv: classifymod.GroupVerdict) -> list[float]:
    lap_scale = 1e-6 * max(
        1.0, float(np.abs(np.asarray(graphmod.laplacian(spec.graph))).sum(axis=1).max())
    )
    rates = []
    for lam in gv.group_spectrum.values:
        if abs(lam) <= lap_scale:
            continue
        verdict = spectral.hurwitz(spectral.shifted_spectrum(spec.a, spec.f, lam))
        rates.append(-verdict.max_real_part)
    return rates


def _verify_horizon(
    spec: SystemSpec,
    report: spectral.SpectralReport,
    decay_rates: list[float],
    rel_tol: float,
) -> float:
    """Pick a horizon long enough for predicted agreements to show.

    A gap that must die at rate rho needs roughly ln(1/rel_tol)/rho
    before the relative detector can see it; the window mean lags the
    endpoint, hence the correction by half the window fraction. The
    horizon is capped twice: exponential growth must stay far from the
    overflow guard, and the step count stays within a fixed budget.
    """
    t_end = spec.sim.t_end
    positive = [r for r in decay_rates if r > 0]
    if positive:
        rho = min(positive)
        needed = (math.log(1.0 / rel_tol) + VERIFY_HORIZON_MARGIN) / (
            rho * (1.0 - simulate.DEFAULT_WINDOW_FRACTION / 2.0)
        )
        t_end = max(t_end, needed)
    growth = max(
        [report.a_verdict.max_real_part]
        + [e.verdict.max_real_part for e in report.nonzero_entries()]
    )
    if growth > 0.05:
        t_end = max(spec.sim.t_end, min(t_end, VERIFY_GROWTH_BUDGET / growth))
    return min(t_end, spec.sim.dt * VERIFY_MAX_STEPS)


def _verify_report(spec: SystemSpec, args) -> tuple[dict, bool]:
    rel_tol = args.tol if args.tol is not None else simulate.DEFAULT_REL_TOL
    lap = graphmod.laplacian(spec.graph)
    report = spectral.spectral_report(spec.a, spec.f, lap)
    spanning = graphmod.has_spanning_tree(spec.graph)
    motion = classifymod.classify_motion(report, spanning)
    groups = classifymod.analyze_groups(spec.a, spec.f, spec.graph)

    prediction = None
    decay_rates: list[float] = []
    if spanning:
        prediction = clustering.predict_clusters(spec.a, spec.f, spec.graph)
        if prediction.agreeing_pairs:
            decay_rates.extend(
                -e.verdict.max_real_part
                for e in report.nonzero_entries()
                if e.verdict.is_hurwitz
            )
    for gv in groups:
        if gv.agrees and len(gv.group) > 1:
            decay_rates.extend(_group_decay_rates(spec, gv))

    if args.t_end is not None:
        # an explicit flag pins the horizon; only derive one ourselves
        t_end = spec.sim.t_end
    else:
        t_end = _verify_horizon(spec, report, decay_rates, rel_tol)
    logger.info("verify horizon %.3f (spec horizon %.3f)", t_end, spec.sim.t_end)
    sim_spec = SystemSpec(
        n=spec.n,
        d=spec.d,
        a=spec.a,
        f=spec.f,
        graph=spec.graph,
        x0=spec.x0,
        sim=SimParams(dt=spec.sim.dt, t_end=t_end, seed=spec.sim.seed),
        notes=spec.notes,
    )
    traj = _run_simulation(sim_spec)
    partition = simulate.empirical_clusters(traj, rel_tol=rel_tol)

    checks = []

    def add_check(name: str, ok: bool, detail: str) -> None:
        checks.append({"name": name, "ok": bool(ok), "detail": detail})

    if motion.label in (classifymod.CONSENSUS, classifymod.STABLE_TRIVIAL):
        add_check(
            "all_agents_in_one_block",
            len(partition) == 1,
            f"empirical partition {partition}",
        )
    if motion.label == classifymod.CLASS1:
        grew = False
        for i in range(1, spec.n + 1):
            for j in range(i + 1, spec.n + 1):
                gap = simulate.pairwise_gap(traj, i, j)
                if gap[-1] > gap[0]:
                    grew = True
        add_check("some_gap_grows", grew, "mutual repulsion needs a growing gap")
    if prediction is not None:
        mismatches = []
        for i in range(1, spec.n + 1):
            j = i % spec.n + 1
            predicted = (i, j) in prediction.agreeing_pairs
            observed = simulate.pair_agrees(traj, i, j, rel_tol=rel_tol)
            if predicted != observed:
                mismatches.append((i, j, predicted, observed))
        add_check(
            "row_test_matches_simulation",
            not mismatches,
            f"cyclic pair mismatches: {mismatches}" if mismatches else "all cyclic pairs match",
        )
    if not spanning:
        for gv in groups:
            merged = any(set(gv.group) <= set(block) for block in partition)
            if gv.agrees:
                add_check(
                    f"group_{'_'.join(map(str, gv.group))}_clusters",
                    merged,
                    f"members must share one empirical block, partition {partition}",
                )
            else:
                add_check(
                    f"group_{'_'.join(map(str, gv.group))}_stays_apart",
                    not merged or len(gv.group) == 1,
                    f"members must not all share a block, partition {partition}",
                )

    agree = all(c["ok"] for c in checks)
    out = {
        "label": motion.label,
        "spanning_tree": spanning,
        "dt": spec.sim.dt,
        "seed": spec.sim.seed,
        "t_end": t_end,
        "rel_tol": rel_tol,
        "truncated": traj.truncated,
        "partition": [list(b) for b in partition],
        "prediction": None
        if prediction is None
        else {
            "pairs": [list(p) for p in prediction.agreeing_pairs],
            "clusters": [list(b) for b in prediction.partition],
        },
        "groups": [_group_json(gv) for gv in groups],
        "checks": checks,
        "agree": agree,
    }
    return out, agree


def _emit(report: dict, args) -> None:
    if args.round is not None:
        report = _round_numbers(report, args.round)
    text = json.dumps(report, indent=2)
    print(text)
    if args.out:
        Path(args.out).write_text(text + "\n", encoding="utf-8")
        logger.info("wrote %s", args.out)


def _configure_logging() -> None:
    level_name = os.environ.get("SWARM_LOG", "").strip()
    if not level_name or level_name == "0":
        level = logging.WARNING
    else:
        level = getattr(logging, level_name.upper(), logging.DEBUG)
    logging.basicConfig(level=level, stream=sys.stderr, format="%(name)s: %(message)s")


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="swarmmotion",
        description="Analyze, classify and simulate linear multi-agent motion.",
    )
    sub = parser.add_subparsers(dest="command", required=True)
    for name, help_text in (
        ("analyze", "spectrum, verdicts, spanning tree and independent groups"),
        ("classify", "motion class label with evidence"),
        ("cluster", "row-pattern cluster prediction (spanning-tree graphs)"),
        ("simulate", "integrate the dynamics, emit partition and artifacts"),
        ("verify", "compare theoretical predictions against simulation"),
    ):
        p = sub.add_parser(name, help=help_text)
        p.add_argument("spec", help="spec file path or bundled name (example1 .. example5)")
        p.add_argument("--out", help="also write the report JSON to this path")
        p.add_argument("--dt", type=float, help="override integration step")
        p.add_argument("--t-end", type=float, dest="t_end", help="override horizon")
        p.add_argument("--seed", type=int, help="override the initial-state seed")
        p.add_argument("--svg", action="store_true", help="write a phase plot next to --out")
        p.add_argument("--csv", action="store_true", help="write the trajectory table next to --out")
        p.add_argument("--round", type=int, help="round report numbers to this many decimals")
        p.add_argument(
            "--tol",
            type=float,
            help="zero tolerance for cluster, agreement tolerance for simulate/verify",
        )
    return parser


def main(argv=None) -> int:
    _configure_logging()
    args = _build_parser().parse_args(argv)
    try:
        spec = _apply_overrides(_resolve_spec(args.spec), args)
        if args.command == "analyze":
            _emit(_analyze_report(spec), args)
        elif args.command == "classify":
            _emit(_classify_report(spec), args)
        elif args.command == "cluster":
            _emit(_cluster_report(spec, args.tol), args)
        elif args.command == "simulate":
            _emit(_simulate_report(spec, args), args)
        elif args.command == "verify":
            report, agree = _verify_report(spec, args)
            _emit(report, args)
            if not agree:
                return 1
        return 0
    except SpecError as exc:
        _emit({"error": {"type": "spec", "message": str(exc)}}, args)
        return 2
    except AnalysisError as exc:
        _emit({"error": {"type": "analysis", "message": str(exc)}}, args)
        return 1


if __name__ == "__main__":
    sys.exit(main())
