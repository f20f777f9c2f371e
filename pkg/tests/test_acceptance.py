"""Frozen end-to-end acceptance checks.

Each criterion prints one summary line (run with -s to see them all;
the suite-wide runtime line is printed from conftest at session end).
Reference numbers were frozen from step-halved refinement runs on the
bundled systems and pin the behavior a release must keep.
"""
import time
from functools import lru_cache

import numpy as np

from swarmmotion import (
    CLASS1,
    CLASS2,
    CLASS3,
    assemble,
    build_graph,
    classify_system,
    default_initial_state,
    eigenvalues,
    empirical_clusters,
    from_weight_matrix,
    has_spanning_tree,
    independent_groups,
    induced_laplacian,
    integrate,
    laplacian,
    limit_dynamics_check,
    load_bundled,
    pair_agrees,
    pairwise_gap,
    predict_clusters,
    spectral_report,
)
from swarmmotion.errors import AnalysisError
from swarmmotion.simulate import StackedSystem


def _line(num: int, ok: bool, detail: str) -> None:
    print(f"criterion {num}: {'PASS' if ok else 'FAIL'} ({detail})")
    assert ok, detail


def _multiset_close(actual, expected, tol):
    """Greedy nearest matching; every expected value must be claimed."""
    remaining = list(actual)
    for z in expected:
        if not remaining:
            return False
        nearest = min(remaining, key=lambda w: abs(w - z))
        if max(abs(nearest.real - z.real), abs(nearest.imag - z.imag)) > tol:
            return False
        remaining.remove(nearest)
    return not remaining


@lru_cache(maxsize=None)
def _bundled_run(name):
    spec = load_bundled(name)
    sys_ = assemble(spec.a, spec.f, laplacian(spec.graph))
    x0 = (
        spec.x0
        if spec.x0 is not None
        else default_initial_state(spec.n, spec.d, spec.sim.seed)
    )
    return spec, integrate(sys_, x0, spec.sim.dt, spec.sim.t_end)


LAP_EX1 = (0, 3, 1.53 + 0.51j, 1.53 - 0.51j, 3.96 + 0.56j, 3.96 - 0.56j)
LAP_EX3 = (3, 2, 1, 1, 0, 0)
LAP_EX4 = (3, 2, 1, 0.3, 0, 0)

# shifted spectra keyed by the Laplacian eigenvalue they belong to;
# duplicate eigenvalues repeat their pair
SHIFTS_EX1 = (
    (3.96 + 0.56j, (0.80 - 1.03j, 0.17 + 1.60j)),
    (3.96 - 0.56j, (0.80 + 1.03j, 0.17 - 1.60j)),
    (0, (-1.0, -2.0)),
    (1.53 + 0.51j, (-0.02 + 0.16j, -1.44 + 0.35j)),
    (1.53 - 0.51j, (-0.02 - 0.16j, -1.44 - 0.35j)),
    (3, (0.71j, -0.71j)),
)
SHIFTS_EX2 = (
    (3.96 + 0.56j, (0.86 + 3.32j, 1.13 - 3.18j)),
    (3.96 - 0.56j, (0.86 - 3.32j, 1.13 + 3.18j)),
    (0, (0.50 + 1.32j, 0.50 - 1.32j)),
    (1.53 + 0.51j, (0.44 + 2.48j, 0.94 - 2.35j)),
    (1.53 - 0.51j, (0.44 - 2.48j, 0.94 + 2.35j)),
    (3, (0.88 + 2.97j, 0.88 - 2.97j)),
)
SHIFTS_EX3 = (
    (3, (0.71j, -0.71j)),
    (1, (-1.71, -0.30)),
    (2, (-1.0, 0.0)),
    (0, (-1.0, -2.0)),
)
# the second value of the lambda = 1 pair is pinned by the invariants
# trace(A - F) = -5 and det(A - F) = 2, giving (-5 +- sqrt(17)) / 2
SHIFTS_EX4 = (
    (3, (-8.50 + 2.78j, -8.50 - 2.78j)),
    (1, (-4.56, -0.44)),
    (2, (-7.0, -4.0)),
    (0, (0.50 + 1.32j, 0.50 - 1.32j)),
    (0.3, (-1.34, 0.54)),
)
SHIFTS_EX5 = (
    (3, (-1.74 + 3.11j, -1.74 - 3.11j)),
    (1, (-0.25 + 8.77j, -0.25 - 8.77j)),
    (2, (-0.99 + 8.91j, -0.99 - 8.91j)),
    (0, (0.50 + 1.32j, 0.50 - 1.32j)),
)


def test_criterion_1_laplacian_spectra(example1, example3, example4):
    got1 = eigenvalues(laplacian(example1.graph)).values
    got3 = eigenvalues(laplacian(example3.graph)).values
    got4 = eigenvalues(laplacian(example4.graph)).values
    ok = (
        _multiset_close(got1, LAP_EX1, 0.01)
        and _multiset_close(got3, LAP_EX3, 1e-6)
        and _multiset_close(got4, LAP_EX4, 1e-6)
    )
    _line(1, ok, "three reference spectra matched as multisets")


def test_criterion_2_shifted_spectra(example1, example2, example3, example4, example5):
    tables = (
        (example1, SHIFTS_EX1),
        (example2, SHIFTS_EX2),
        (example3, SHIFTS_EX3),
        (example4, SHIFTS_EX4),
        (example5, SHIFTS_EX5),
    )
    failures = []
    for idx, (spec, table) in enumerate(tables, start=1):
        report = spectral_report(spec.a, spec.f, laplacian(spec.graph))
        for lam, expected in table:
            near = [
                e for e in report.per_eigenvalue if abs(e.value - lam) <= 0.02
            ]
            hit = any(
                _multiset_close(e.shifted_spectrum.values, expected, 0.01)
                for e in near
            )
            if not (near and hit):
                failures.append(f"example{idx} at {lam}")
    _line(2, not failures, f"all listed pairs within 0.01; failures: {failures or 'none'}")


def test_criterion_3_classification(example1, example2, example3, example4, example5):
    labels = [
        classify_system(s.a, s.f, s.graph).label
        for s in (example1, example2, example3, example4, example5)
    ]
    expected = [CLASS1, CLASS1, CLASS2, CLASS2, CLASS3]
    hurwitz_split = (
        classify_system(example3.a, example3.f, example3.graph).evidence.a_hurwitz
        and not classify_system(example4.a, example4.f, example4.graph).evidence.a_hurwitz
    )
    ok = labels == expected and hurwitz_split
    _line(3, ok, f"labels {labels}")


def test_criterion_4_independent_groups(example3, example4):
    groups = independent_groups(example3.graph)
    ok = groups == ((2, 4, 6), (3, 5))
    ok = ok and independent_groups(example4.graph) == ((2, 4, 6), (3, 5))
    l1 = induced_laplacian(example3.graph, (3, 5))
    l2 = induced_laplacian(example3.graph, (2, 4, 6))
    ok = ok and np.allclose(l1, [[1, -1], [0, 0]])
    ok = ok and np.allclose(l2, [[1, 0, -1], [-1, 1, 0], [-1, 0, 1]])
    spectra = {
        "g1_ex3": (eigenvalues(l1).values, (0, 1)),
        "g2_ex3": (eigenvalues(l2).values, (0, 1, 2)),
        "g1_ex4": (
            eigenvalues(induced_laplacian(example4.graph, (3, 5))).values,
            (0, 0.3),
        ),
        "g2_ex4": (
            eigenvalues(induced_laplacian(example4.graph, (2, 4, 6))).values,
            (0, 1, 2),
        ),
    }
    for got, want in spectra.values():
        ok = ok and _multiset_close(got, want, 1e-6)
    _line(4, ok, "groups, induced blocks and their spectra all match")


def test_criterion_5_group_spectrum_embedding():
    t0 = time.perf_counter()
    checked = 0
    for seed in range(100):
        rng = np.random.default_rng(seed)
        n = 3 + seed % 10
        density = (0.2, 0.4, 0.6)[seed % 3]
        arcs = []
        for i in range(1, n + 1):
            for j in range(1, n + 1):
                if i != j and rng.random() < density:
                    arcs.append((i, j, float(rng.uniform(0.1, 2.0))))
        g = build_graph(n, arcs)
        full = list(eigenvalues(laplacian(g)).values)
        for group in independent_groups(g):
            part = eigenvalues(induced_laplacian(g, group)).values
            remaining = list(full)
            for z in part:
                nearest = min(remaining, key=lambda w: abs(w - z))
                assert abs(nearest - z) < 1e-6, f"seed {seed}, group {group}"
                remaining.remove(nearest)
            checked += 1
    elapsed = time.perf_counter() - t0
    _line(5, elapsed < 5.0, f"{checked} groups over 100 digraphs in {elapsed:.2f} s")


def test_criterion_6_qualitative_reproduction():
    details = []
    ok = True

    _, t3 = _bundled_run("example3")
    g35 = pairwise_gap(t3, 3, 5)
    g46 = pairwise_gap(t3, 4, 6)
    r35 = g35[-1] / g35[0]
    r46 = g46[-1] / g46[0]
    ok = ok and r35 < 0.05 and r46 < 0.11
    details.append(f"gap ratios {r35:.3f}/{r46:.3f}")
    for agent in (3, 5):
        ok = ok and np.abs(t3.agent_states(agent)[-1]).max() < 0.05
    ok = ok and not pair_agrees(t3, 2, 4)

    _, t4 = _bundled_run("example4")
    ok = ok and (2, 4, 6) in empirical_clusters(t4)
    x2 = t4.agent_states(2)
    ok = ok and np.linalg.norm(x2[-1]) > np.linalg.norm(x2[0])
    details.append("246 clusters, agent 2 repelled")

    _, t5 = _bundled_run("example5")
    ok = ok and empirical_clusters(t5, rel_tol=2.0) == ((1,), (2, 4, 6), (3, 5))
    details.append("ex5 partition")

    for name in ("example1", "example2"):
        _, t = _bundled_run(name)
        grown = any(
            pairwise_gap(t, i, j)[-1] > pairwise_gap(t, i, j)[0]
            for i in range(1, 7)
            for j in range(i + 1, 7)
        )
        ok = ok and grown
    details.append("repulsion grows")
    _line(6, ok, "; ".join(details))


def test_criterion_7_limit_dynamics_residual():
    spec3, t3 = _bundled_run("example3")
    spec4, t4 = _bundled_run("example4")
    worst3 = max(
        (lambda r: r[-1] / r.max())(limit_dynamics_check(t3, (3, 5), spec3.a, member=m))
        for m in (3, 5)
    )
    worst4 = max(
        (lambda r: r[-1] / r.max())(
            limit_dynamics_check(t4, (2, 4, 6), spec4.a, member=m)
        )
        for m in (2, 4, 6)
    )
    ok = worst3 < 0.05 and worst4 < 1e-2
    _line(7, ok, f"residual end/peak ratios {worst3:.4f} and {worst4:.2e}")


def _random_spanning_weights(rng, n):
    w = np.zeros((n, n))
    perm = rng.permutation(n)
    for k in range(1, n):
        src = perm[rng.integers(0, k)]
        w[perm[k], src] = rng.uniform(0.2, 1.5)
    for _ in range(int(rng.integers(0, n))):
        i, j = rng.integers(0, n, size=2)
        if i != j:
            w[i, j] += rng.uniform(0.2, 1.0)
    return w


def test_criterion_8_row_test_against_integration():
    """Random systems built so both verdict kinds appear with margin.

    F = c I splits the real parts of the nonzero Laplacian eigenvalues
    at their widest gap, which guarantees mixed Hurwitz verdicts at a
    known distance from the boundary; the horizon is derived from the
    slowest decaying agreeing mode.
    """
    eligible = 0
    mismatches = []
    seed = 0
    while eligible < 20 and seed < 120:
        seed += 1
        rng = np.random.default_rng(1000 + seed)
        n = int(rng.integers(3, 9))
        g = from_weight_matrix(_random_spanning_weights(rng, n))
        lap = laplacian(g)
        lams = np.linalg.eigvals(lap)
        reals = sorted(set(np.round(lams.real[np.abs(lams) > 1e-9], 9)))
        if len(reals) < 2:
            continue
        gap, k = max((reals[k + 1] - reals[k], k) for k in range(len(reals) - 1))
        a0 = rng.uniform(0.5, 1.2)
        c = 2.0 * a0 / (reals[k] + reals[k + 1])
        if c * gap / 2.0 < 0.25:
            continue
        r = rng.uniform(-1, 1, (2, 2))
        a = r + (a0 - np.linalg.eigvals(r).real.max()) * np.eye(2)
        f = c * np.eye(2)

        report = spectral_report(a, f, lap)
        res = [e.verdict for e in report.nonzero_entries()]
        if all(v.is_hurwitz for v in res) or not any(v.is_hurwitz for v in res):
            continue
        try:
            prediction = predict_clusters(a, f, g)
        except AnalysisError:
            continue
        rho = min(-v.max_real_part for v in res if v.is_hurwitz)
        sig = max(
            [report.a_verdict.max_real_part]
            + [v.max_real_part for v in res if not v.is_hurwitz]
        )
        t_need = (np.log(1.0 / 0.05) + 2.5) / (rho * 0.9)
        t_cap = 25.0 / sig if sig > 0.05 else np.inf
        if t_need > t_cap:
            continue

        eligible += 1
        sys_ = assemble(a, f, lap)
        x0 = default_initial_state(n, 2, 2000 + seed)
        traj = integrate(sys_, x0, 2e-3, t_need)
        for i in range(1, n + 1):
            j = i % n + 1
            predicted = (i, j) in prediction.agreeing_pairs
            observed = pair_agrees(traj, i, j, rel_tol=0.05)
            if predicted != observed:
                mismatches.append((1000 + seed, i, j))
    ok = eligible == 20 and not mismatches
    _line(8, ok, f"{eligible} systems, cyclic-pair mismatches: {mismatches or 'none'}")


def test_criterion_9_numerics():
    ratios = []
    for s in range(5):
        rng = np.random.default_rng(300 + s)
        r = rng.normal(size=(4, 4))
        m = r - (np.linalg.eigvals(r).real.max() + 0.5) * np.eye(4)
        x0 = rng.normal(size=4)
        sys_ = StackedSystem(m=m, n=2, d=2)
        ref = integrate(sys_, x0, 0.01 / 8.0, 1.0).states[-1]
        err1 = np.linalg.norm(integrate(sys_, x0, 0.01, 1.0).states[-1] - ref)
        err2 = np.linalg.norm(integrate(sys_, x0, 0.005, 1.0).states[-1] - ref)
        ratios.append(err1 / err2)
    order_ok = all(12.0 <= r <= 20.0 for r in ratios)

    symmetry_ok = True
    for seed in range(200):
        rng = np.random.default_rng(seed)
        n = 2 + seed % 7
        m = rng.normal(size=(n, n))
        values = eigenvalues(m).values
        paired = tuple(
            sorted((z.conjugate() for z in values), key=lambda z: (z.real, z.imag))
        )
        scale = max(1.0, abs(np.trace(m)))
        if values != paired or abs(sum(values) - np.trace(m)) > 1e-8 * scale:
            symmetry_ok = False
    ok = order_ok and symmetry_ok
    _line(
        9,
        ok,
        f"step-halving ratios {['%.1f' % r for r in ratios]}, 200 spectra symmetric",
    )
