import numpy as np
import pytest

from swarmmotion import (
    AnalysisError,
    SpecError,
    assemble,
    build_graph,
    default_initial_state,
    empirical_clusters,
    integrate,
    laplacian,
    limit_dynamics_check,
    pair_agrees,
    pairwise_gap,
)
from swarmmotion.simulate import StackedSystem


def test_assemble_matches_blockwise_form(example1):
    lap = laplacian(example1.graph)
    a = np.asarray(example1.a)
    f = np.asarray(example1.f)
    sys_ = assemble(a, f, lap)
    n, d = 6, 2
    direct = np.zeros((n * d, n * d))
    for i in range(n):
        for j in range(n):
            block = -lap[i, j] * f
            if i == j:
                block = block + a
            direct[i * d : (i + 1) * d, j * d : (j + 1) * d] = block
    assert np.max(np.abs(sys_.m - direct)) < 1e-12
    assert (sys_.n, sys_.d) == (n, d)


def test_assemble_rejects_mismatched_shapes():
    with pytest.raises(SpecError):
        assemble(np.eye(2), np.eye(3), np.zeros((2, 2)))


def test_rk4_against_closed_form():
    sys_ = StackedSystem(m=np.array([[-1.0]]), n=1, d=1)
    traj = integrate(sys_, np.array([1.0]), dt=0.01, t_end=1.0)
    assert traj.states[-1, 0] == pytest.approx(np.exp(-1.0), abs=1e-9)


def test_integration_is_linear():
    rng = np.random.default_rng(3)
    m = rng.normal(size=(4, 4)) - 2.0 * np.eye(4)
    sys_ = StackedSystem(m=m, n=2, d=2)
    x = rng.normal(size=4)
    y = rng.normal(size=4)
    tx = integrate(sys_, x, 0.01, 1.0).states[-1]
    ty = integrate(sys_, y, 0.01, 1.0).states[-1]
    txy = integrate(sys_, 2.0 * x - y, 0.01, 1.0).states[-1]
    assert np.allclose(txy, 2.0 * tx - ty, atol=1e-10)


def test_consensus_subspace_is_invariant(example1):
    """Identical initial states stay identical: gaps remain exactly zero."""
    lap = laplacian(example1.graph)
    sys_ = assemble(example1.a, example1.f, lap)
    x0 = np.tile([0.3, -0.7], 6)
    traj = integrate(sys_, x0, 0.01, 2.0)
    for i in range(1, 6):
        assert np.max(pairwise_gap(traj, 1, i + 1)) < 1e-12


def test_overflow_truncates_record():
    sys_ = StackedSystem(m=np.array([[4.0]]), n=1, d=1)
    traj = integrate(sys_, np.array([1.0]), dt=0.01, t_end=10.0, overflow_bound=1e6)
    assert traj.truncated
    assert traj.times[-1] < 10.0
    assert np.abs(traj.states[-1, 0]) >= 1e6


def test_default_initial_state_is_reproducible():
    a = default_initial_state(6, 2, 42)
    b = default_initial_state(6, 2, 42)
    c = default_initial_state(6, 2, 43)
    assert np.array_equal(a, b)
    assert not np.array_equal(a, c)
    assert a.shape == (12,)
    assert np.max(np.abs(a)) <= 1.0


def test_pair_agrees_on_contracting_pair():
    g = build_graph(2, [(1, 2, 1.0), (2, 1, 1.0)])
    a = np.zeros((1, 1))
    f = np.eye(1)
    sys_ = assemble(a, f, laplacian(g))
    traj = integrate(sys_, np.array([1.0, -1.0]), 0.01, 8.0)
    assert pair_agrees(traj, 1, 2)


def test_pair_agrees_needs_enough_samples():
    sys_ = StackedSystem(m=-np.eye(2), n=2, d=1)
    traj = integrate(sys_, np.array([1.0, 2.0]), 0.1, 0.5)
    with pytest.raises(SpecError):
        pair_agrees(traj, 1, 2)


def test_empirical_clusters_example4(example4):
    lap = laplacian(example4.graph)
    sys_ = assemble(example4.a, example4.f, lap)
    x0 = default_initial_state(6, 2, example4.sim.seed)
    traj = integrate(sys_, x0, example4.sim.dt, example4.sim.t_end)
    assert empirical_clusters(traj) == ((1,), (2, 4, 6), (3,), (5,))


def test_limit_dynamics_residual_drops(example4):
    lap = laplacian(example4.graph)
    sys_ = assemble(example4.a, example4.f, lap)
    x0 = default_initial_state(6, 2, example4.sim.seed)
    traj = integrate(sys_, x0, example4.sim.dt, example4.sim.t_end)
    residual = limit_dynamics_check(traj, (2, 4, 6), example4.a)
    assert residual.shape == (len(traj.times) - 2,)
    assert residual[-1] < 1e-2 * residual.max()


def test_non_finite_state_raises():
    sys_ = StackedSystem(m=np.array([[1e4]]), n=1, d=1)
    with pytest.raises(AnalysisError):
        integrate(sys_, np.array([1.0]), 1.0, 50.0, overflow_bound=np.inf)
