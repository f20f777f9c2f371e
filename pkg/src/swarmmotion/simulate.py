"""Numerical integration of the stacked dynamics and empirical detectors.

The stacked system matrix is I_N (x) A - L (x) F, so a single linear
ODE carries all agents at once. Integration is classical fixed-step
RK4: the dynamics are linear and small, and a fixed grid makes every
run bit-for-bit reproducible, which the golden tests rely on.
"""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import AnalysisError, SpecError

OVERFLOW_BOUND = 1e12
DEFAULT_REL_TOL = 1e-2
DEFAULT_WINDOW_FRACTION = 0.2


@dataclass(frozen=True)
class StackedSystem:
    """Stacked dynamics matrix with its agent layout."""

    m: np.ndarray
    n: int
    d: int


@dataclass(frozen=True)
class TrajectoryRecord:
    """Sampled trajectory of the stacked state.

    ``states`` has one row per sample and n*d columns; agent i's block
    is columns (i-1)*d .. i*d. ``truncated`` marks runs stopped early
    by the overflow guard.
    """

    times: np.ndarray
    states: np.ndarray
    dt: float
    method: str
    n: int
    d: int
    truncated: bool = field(default=False)

    def agent_states(self, i: int) -> np.ndarray:
        """(samples, d) slice for agent ``i`` (1-based)."""
        if not 1 <= i <= self.n:
            raise SpecError(f"agent id {i} outside [1, {self.n}]")
        return self.states[:, (i - 1) * self.d : i * self.d]


def assemble(a, f, lap) -> StackedSystem:
    """Build I (x) A - L (x) F after checking dimensions."""
    a = np.asarray(a, dtype=float)
    f = np.asarray(f, dtype=float)
    lap = np.asarray(lap, dtype=float)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise SpecError(f"A must be square, got shape {a.shape}")
    if f.shape != a.shape:
        raise SpecError(f"F must match A in shape, got {f.shape} and {a.shape}")
    if lap.ndim != 2 or lap.shape[0] != lap.shape[1]:
        raise SpecError(f"Laplacian must be square, got shape {lap.shape}")
    n = lap.shape[0]
    d = a.shape[0]
    m = np.kron(np.eye(n), a) - np.kron(lap, f)
    return StackedSystem(m=m, n=n, d=d)


def default_initial_state(n: int, d: int, seed: int = 42) -> np.ndarray:
    """Deterministic uniform draw in [-1, 1]^d per agent.

    Agents are drawn in id order from a single generator, so the same
    seed always produces the same stacked vector.
    """
    rng = np.random.default_rng(seed)
    return rng.uniform(-1.0, 1.0, size=(n, d)).reshape(-1)


def integrate(
    sys: StackedSystem,
    x0,
    dt: float,
    t_end: float,
    overflow_bound: float = OVERFLOW_BOUND,
) -> TrajectoryRecord:
    """Classical RK4 on the stacked system.

    Samples sit at 0, dt, 2 dt, ... up to t_end. If the state's
    infinity norm exceeds ``overflow_bound`` the run stops and returns
    the partial record flagged truncated; genuinely divergent classes
    are expected to trip this. A non-finite state is an error and
    reports the time at which it appeared.
    """
    x0 = np.asarray(x0, dtype=float).reshape(-1)
    if x0.size != sys.n * sys.d:
        raise SpecError(
            f"initial state must have length {sys.n * sys.d}, got {x0.size}"
        )
    if not np.all(np.isfinite(x0)):
        raise SpecError("initial state contains non-finite entries")
    if not dt > 0.0:
        raise SpecError(f"dt must be positive, got {dt}")
    if t_end < 0.0:
        raise SpecError(f"t_end must be nonnegative, got {t_end}")
    steps = int(round(t_end / dt))
    m = sys.m
    states = np.empty((steps + 1, x0.size))
    states[0] = x0
    x = x0.copy()
    truncated = False
    filled = steps + 1
    # the finiteness guard below makes numpy's own overflow warnings
    # redundant noise
    with np.errstate(over="ignore", invalid="ignore"):
        for k in range(steps):
            k1 = m @ x
            k2 = m @ (x + 0.5 * dt * k1)
            k3 = m @ (x + 0.5 * dt * k2)
            k4 = m @ (x + dt * k3)
            x = x + (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4)
            if not np.all(np.isfinite(x)):
                raise AnalysisError(
                    f"state became non-finite at t = {(k + 1) * dt:.6g}"
                )
            states[k + 1] = x
            if np.abs(x).max() > overflow_bound:
                truncated = True
                filled = k + 2
                break
    states = states[:filled]
    times = np.arange(filled) * dt
    return TrajectoryRecord(
        times=times,
        states=states,
        dt=dt,
        method="rk4",
        n=sys.n,
        d=sys.d,
        truncated=truncated,
    )


def pairwise_gap(traj: TrajectoryRecord, i: int, j: int) -> np.ndarray:
    """Euclidean norm of x_i - x_j at every sample."""
    return np.linalg.norm(traj.agent_states(i) - traj.agent_states(j), axis=1)


def _window_start(traj: TrajectoryRecord, window_fraction: float) -> int:
    samples = len(traj.times)
    win = int(np.ceil(window_fraction * samples))
    if win < 10:
        raise SpecError(
            f"final window holds {win} samples; need at least 10 "
            f"(trajectory too short for the detector)"
        )
    return samples - win


def pair_statistics(
    traj: TrajectoryRecord,
    i: int,
    j: int,
    window_fraction: float = DEFAULT_WINDOW_FRACTION,
) -> tuple[float, float, float]:
    """(initial gap, final-window mean gap, final-window slope)."""
    gap = pairwise_gap(traj, i, j)
    w0 = _window_start(traj, window_fraction)
    mean = float(gap[w0:].mean())
    slope = float(np.polyfit(traj.times[w0:], gap[w0:], 1)[0])
    return float(gap[0]), mean, slope


def pair_agrees(
    traj: TrajectoryRecord,
    i: int,
    j: int,
    rel_tol: float = DEFAULT_REL_TOL,
    window_fraction: float = DEFAULT_WINDOW_FRACTION,
) -> bool:
    """Empirical agreement verdict for one pair.

    The pair agrees when the final-window mean gap drops below
    ``rel_tol`` times the initial gap and the window trend is
    non-increasing. Two numerical floors keep the rule usable at the
    extremes: a pair starting identical (zero initial gap) passes when
    its window mean sits at integration-noise level, and a fitted
    slope is treated as non-increasing when its total rise over the
    window is under one percent of the window mean, which is where
    float roundoff lands for long-dead gaps.
    """
    g0, mean, slope = pair_statistics(traj, i, j, window_fraction)
    w0 = _window_start(traj, window_fraction)
    state_scale = float(np.abs(traj.states[w0:]).max())
    small = mean < rel_tol * g0 + 1e-9 * max(1.0, state_scale)
    span = float(traj.times[-1] - traj.times[w0])
    flat = slope <= 0.0 or slope * span <= 0.01 * mean
    return bool(small and flat)


def empirical_clusters(
    traj: TrajectoryRecord,
    rel_tol: float = DEFAULT_REL_TOL,
    window_fraction: float = DEFAULT_WINDOW_FRACTION,
) -> tuple[tuple[int, ...], ...]:
    """Partition the agents by the empirical agreement relation.

    Every unordered pair is tested with ``pair_agrees`` and the
    partition is the transitive closure. Blocks come out sorted by
    smallest member.
    """
    n = traj.n
    parent = list(range(n + 1))

    def find(v: int) -> int:
        while parent[v] != v:
            parent[v] = parent[parent[v]]
            v = parent[v]
        return v

    for i in range(1, n + 1):
        for j in range(i + 1, n + 1):
            if pair_agrees(traj, i, j, rel_tol, window_fraction):
                parent[find(i)] = find(j)
    blocks: dict[int, list[int]] = {}
    for v in range(1, n + 1):
        blocks.setdefault(find(v), []).append(v)
    return tuple(
        tuple(sorted(b)) for b in sorted(blocks.values(), key=lambda b: b[0])
    )


def limit_dynamics_check(
    traj: TrajectoryRecord,
    group,
    a,
    member: int | None = None,
) -> np.ndarray:
    """Residual series ||xdot_i - A x_i|| for one group member.

    The derivative is estimated with central differences, so the
    series aligns with ``traj.times[1:-1]``. For a group that has
    reached agreement the residual must trend to zero: the coupling
    term dies with the internal gaps and the trajectory follows the
    autonomous dynamics. The representative defaults to the smallest
    group member id.
    """
    members = tuple(sorted(set(int(v) for v in group)))
    if not members:
        raise SpecError("group must be nonempty")
    rep = members[0] if member is None else int(member)
    if rep not in members:
        raise SpecError(f"member {rep} is not in group {members}")
    a = np.asarray(a, dtype=float)
    xi = traj.agent_states(rep)
    if len(traj.times) < 3:
        raise SpecError("need at least 3 samples for a central difference")
    deriv = (xi[2:] - xi[:-2]) / (2.0 * traj.dt)
    residual = deriv - xi[1:-1] @ a.T
    return np.linalg.norm(residual, axis=1)
