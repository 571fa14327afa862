"""Phase dynamics on graphs: right-hand sides, integration, sync detection.

The model couples each vertex to its neighbours through a sine with a fixed
phase lag, so equal phases are not stationary in general; rigid rotations
are.  Both the full vertex system and the block quotient system share one
integration core: classical fixed-step RK4 or an embedded Dormand-Prince
4(5) pair with proportional step control.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Sequence

import numpy as np

from .errors import (
    BadParameterError,
    DimensionMismatchError,
    EmptyTrajectoryError,
    FormatError,
    NonFiniteStateError,
    PartitionMismatchError,
    StepUnderflowError,
    TooShortError,
)
from .graph_core import Graph, QuotientMatrix, VertexPartition

__all__ = [
    "ModelParams",
    "IntegratorConfig",
    "Trajectory",
    "LinearTrajectory",
    "SyncReport",
    "kuramoto_rhs",
    "quotient_rhs",
    "integrate",
    "integrate_quotient",
    "lift_quotient_trajectory",
    "exact_sync_partition",
    "asymptotic_sync_clusters",
    "analytic_regular_solution",
    "residual_max",
    "trajectory_to_csv",
    "trajectory_from_csv",
]

MIN_ADAPTIVE_STEP = 1e-12


@dataclass(frozen=True)
class ModelParams:
    """Phase-lag oscillator parameters: lag alpha, drift omega, coupling gain."""

    alpha: float
    omega: float = 0.0
    coupling: float = 1.0

    def __post_init__(self) -> None:
        if not 0.0 < self.alpha <= math.pi / 2:
            raise BadParameterError(f"alpha must lie in (0, pi/2], got {self.alpha}")
        if not self.coupling > 0.0:
            raise BadParameterError(f"coupling must be positive, got {self.coupling}")
        if not math.isfinite(self.omega):
            raise BadParameterError(f"omega must be finite, got {self.omega}")

    @property
    def at_right_angle(self) -> bool:
        return self.alpha == math.pi / 2


@dataclass(frozen=True)
class IntegratorConfig:
    """How to march in time and what to record.

    method "rk4" takes fixed steps of dt; "rk45" adapts its step so the
    embedded local error estimate stays below abs_tol + rel_tol * |theta|.
    Every record_every-th step is recorded, plus the final time.
    """

    t_end: float
    method: str = "rk45"
    dt: float | None = None
    rel_tol: float = 1e-9
    abs_tol: float = 1e-11
    record_every: int = 1

    def __post_init__(self) -> None:
        if self.method not in ("rk4", "rk45"):
            raise BadParameterError(f"unknown method {self.method!r}")
        if not (math.isfinite(self.t_end) and self.t_end >= 0.0):
            raise BadParameterError(f"t_end must be finite and >= 0, got {self.t_end}")
        if self.method == "rk4":
            if self.dt is None or not self.dt > 0.0:
                raise BadParameterError("rk4 needs dt > 0")
        elif self.dt is not None:
            raise BadParameterError("dt applies to rk4 only")
        if not (self.rel_tol > 0.0 and self.abs_tol > 0.0):
            raise BadParameterError("tolerances must be positive")
        if self.record_every < 1:
            raise BadParameterError(f"record_every must be >= 1, got {self.record_every}")


class Trajectory:
    """Recorded phases over time: times (m,), states (m, n).

    Optional derivatives hold closed-form time derivatives at the recorded
    times, supplied by analytic constructions; integrator output leaves them
    unset so residual checks stay independent of the solver.
    """

    def __init__(
        self,
        times: np.ndarray,
        states: np.ndarray,
        derivatives: np.ndarray | None = None,
    ) -> None:
        times = np.asarray(times, dtype=float)
        states = np.asarray(states, dtype=float)
        if times.ndim != 1 or times.size == 0:
            raise EmptyTrajectoryError("trajectory needs at least one recorded time")
        if states.ndim != 2 or states.shape[0] != times.size:
            raise DimensionMismatchError(
                f"states shape {states.shape} does not match {times.size} times"
            )
        if times[0] != 0.0:
            raise BadParameterError(f"recorded times must start at 0, got {times[0]}")
        if times.size > 1 and not np.all(np.diff(times) > 0.0):
            raise BadParameterError("recorded times must increase strictly")
        if derivatives is not None:
            derivatives = np.asarray(derivatives, dtype=float)
            if derivatives.shape != states.shape:
                raise DimensionMismatchError("derivatives shape must match states")
        self.times = times
        self.states = states
        self.derivatives = derivatives

    @property
    def dimension(self) -> int:
        return self.states.shape[1]

    @property
    def n_recorded(self) -> int:
        return self.times.size

    def initial_state(self) -> np.ndarray:
        return self.states[0].copy()

    def final_state(self) -> np.ndarray:
        return self.states[-1].copy()


class LinearTrajectory:
    """Closed-form motion theta(t) = start + rate * t."""

    def __init__(self, start: Sequence[float], rate: Sequence[float] | float) -> None:
        self.start = np.asarray(start, dtype=float)
        if np.isscalar(rate):
            self.rate = np.full(self.start.shape, float(rate))
        else:
            self.rate = np.asarray(rate, dtype=float)
        if self.rate.shape != self.start.shape:
            raise DimensionMismatchError("rate shape must match start")

    def at(self, t: float) -> np.ndarray:
        return self.start + self.rate * t

    def sample(self, times: Sequence[float]) -> Trajectory:
        ts = np.asarray(times, dtype=float)
        states = self.start[None, :] + np.outer(ts, self.rate)
        derivs = np.tile(self.rate, (ts.size, 1))
        return Trajectory(ts, states, derivatives=derivs)


def kuramoto_rhs(g: Graph, theta: Sequence[float], params: ModelParams) -> np.ndarray:
    """Phase velocities: omega + coupling * sum_j A_ij sin(theta_j - theta_i - alpha)."""
    th = np.asarray(theta, dtype=float)
    if th.shape != (g.n,):
        raise DimensionMismatchError(f"state length {th.shape} does not match n={g.n}")
    a = g.adjacency_matrix()
    diff = th[None, :] - th[:, None] - params.alpha
    return params.omega + params.coupling * np.sum(a * np.sin(diff), axis=1)


def quotient_rhs(gamma: QuotientMatrix, f: Sequence[float], alpha: float) -> np.ndarray:
    """Block system: f_i' = sum_j gamma_ij sin(f_j - f_i - alpha)."""
    fv = np.asarray(f, dtype=float)
    k = gamma.k
    if fv.shape != (k,):
        raise DimensionMismatchError(f"state length {fv.shape} does not match k={k}")
    gm = gamma.as_array()
    diff = fv[None, :] - fv[:, None] - alpha
    return np.sum(gm * np.sin(diff), axis=1)


def _check_finite(y: np.ndarray, where: str) -> None:
    if not np.all(np.isfinite(y)):
        raise NonFiniteStateError(f"non-finite state {where}")


def _validate_t_eval(t_eval: Sequence[float] | None, t_end: float) -> np.ndarray | None:
    if t_eval is None:
        return None
    te = np.asarray(t_eval, dtype=float)
    if te.ndim != 1 or te.size == 0 or te[0] != 0.0:
        raise BadParameterError("t_eval must be 1-D and start at 0")
    if te.size > 1 and not np.all(np.diff(te) > 0.0):
        raise BadParameterError("t_eval must increase strictly")
    if te[-1] > t_end + 1e-12:
        raise BadParameterError("t_eval extends past t_end")
    return te


def _rk4_path(
    f: Callable[[np.ndarray], np.ndarray],
    y0: np.ndarray,
    cfg: IntegratorConfig,
) -> tuple[list[float], list[np.ndarray]]:
    dt = float(cfg.dt)  # validated > 0
    t_end = cfg.t_end
    n_full = int(math.floor(t_end / dt + 1e-9))
    remainder = t_end - n_full * dt
    times = [0.0]
    states = [y0.copy()]
    y = y0.copy()
    for i in range(1, n_full + 1):
        h = dt
        k1 = f(y)
        k2 = f(y + 0.5 * h * k1)
        k3 = f(y + 0.5 * h * k2)
        k4 = f(y + h * k3)
        y = y + (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4)
        _check_finite(y, f"after step {i}")
        if i % cfg.record_every == 0 or (i == n_full and remainder <= 1e-9 * max(dt, 1.0)):
            t_i = i * dt if i < n_full or remainder > 1e-9 * max(dt, 1.0) else t_end
            if t_i > times[-1]:
                times.append(t_i)
                states.append(y.copy())
    if remainder > 1e-9 * max(dt, 1.0):
        h = remainder
        k1 = f(y)
        k2 = f(y + 0.5 * h * k1)
        k3 = f(y + 0.5 * h * k2)
        k4 = f(y + h * k3)
        y = y + (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4)
        _check_finite(y, "after final step")
        times.append(t_end)
        states.append(y.copy())
    elif times[-1] < t_end:
        times.append(t_end)
        states.append(y.copy())
    return times, states


# Dormand-Prince 4(5) pair.  _DP_B is the 5th-order propagating weight row;
# _DP_E is the difference against the embedded 4th-order row.
_DP_C = np.array([0.0, 1 / 5, 3 / 10, 4 / 5, 8 / 9, 1.0, 1.0])
_DP_A = [
    np.array([]),
    np.array([1 / 5]),
    np.array([3 / 40, 9 / 40]),
    np.array([44 / 45, -56 / 15, 32 / 9]),
    np.array([19372 / 6561, -25360 / 2187, 64448 / 6561, -212 / 729]),
    np.array([9017 / 3168, -355 / 33, 46732 / 5247, 49 / 176, -5103 / 18656]),
    np.array([35 / 384, 0.0, 500 / 1113, 125 / 192, -2187 / 6784, 11 / 84]),
]
_DP_B = np.array([35 / 384, 0.0, 500 / 1113, 125 / 192, -2187 / 6784, 11 / 84, 0.0])
_DP_E = _DP_B - np.array(
    [5179 / 57600, 0.0, 7571 / 16695, 393 / 640, -92097 / 339200, 187 / 2100, 1 / 40]
)


def _rk45_path(
    f: Callable[[np.ndarray], np.ndarray],
    y0: np.ndarray,
    cfg: IntegratorConfig,
    t_eval: np.ndarray | None,
) -> tuple[list[float], list[np.ndarray]]:
    t_goal = cfg.t_end if t_eval is None else float(t_eval[-1])
    times = [0.0]
    states = [y0.copy()]
    if t_goal == 0.0:
        return times, states
    y = y0.copy()
    t = 0.0
    h = min(t_goal, max(t_goal / 100.0, 1e-6))
    eval_idx = 1  # t_eval[0] == 0 already recorded
    accepted = 0
    max_steps = 10_000_000
    steps = 0
    while t < t_goal:
        steps += 1
        if steps > max_steps:
            raise StepUnderflowError(f"step budget exhausted at t={t}")
        if h < MIN_ADAPTIVE_STEP:
            raise StepUnderflowError(f"adaptive step fell below {MIN_ADAPTIVE_STEP} at t={t}")
        boundary = t_eval[eval_idx] if t_eval is not None else t_goal
        clipped = t + h >= boundary
        h_step = boundary - t if clipped else h
        ks = [f(y)]
        for i in range(1, 7):
            yi = y + h_step * np.tensordot(_DP_A[i], ks, axes=1)
            ks.append(f(yi))
        k_arr = np.array(ks)
        y_new = y + h_step * np.tensordot(_DP_B, k_arr, axes=1)
        err_vec = h_step * np.tensordot(_DP_E, k_arr, axes=1)
        scale = cfg.abs_tol + cfg.rel_tol * np.maximum(np.abs(y), np.abs(y_new))
        with np.errstate(over="ignore"):
            err = math.sqrt(float(np.mean((err_vec / scale) ** 2)))
        if err <= 1.0:
            t = boundary if clipped else t + h_step
            y = y_new
            _check_finite(y, f"at t={t}")
            accepted += 1
            if t_eval is not None:
                if clipped:
                    times.append(float(t))
                    states.append(y.copy())
                    eval_idx += 1
                    if eval_idx >= t_eval.size:
                        break
            else:
                if accepted % cfg.record_every == 0 or t >= t_goal:
                    if t > times[-1]:
                        times.append(float(t))
                        states.append(y.copy())
        factor = 5.0 if err == 0.0 else min(5.0, max(0.2, 0.9 * err ** -0.2))
        h = h_step * factor if (not clipped or err > 1.0) else h * factor
        h = min(h, t_goal)
    if t_eval is None and times[-1] < t_goal:
        times.append(t_goal)
        states.append(states[-1].copy())
    return times, states


def _integrate_core(
    f: Callable[[np.ndarray], np.ndarray],
    init: Sequence[float],
    cfg: IntegratorConfig,
    t_eval: Sequence[float] | None,
) -> Trajectory:
    y0 = np.asarray(init, dtype=float).copy()
    _check_finite(y0, "in initial condition")
    te = _validate_t_eval(t_eval, cfg.t_end)
    if cfg.method == "rk4":
        if te is not None:
            raise BadParameterError("t_eval is supported by rk45 only")
        times, states = _rk4_path(f, y0, cfg)
    else:
        times, states = _rk45_path(f, y0, cfg, te)
    return Trajectory(np.array(times), np.array(states))


def integrate(
    g: Graph,
    init: Sequence[float],
    params: ModelParams,
    cfg: IntegratorConfig,
    t_eval: Sequence[float] | None = None,
) -> Trajectory:
    """March the full vertex system from init; deterministic for fixed inputs.

    When t_eval is given (rk45 only), steps are clipped to land exactly on
    those times and only they are recorded, which gives directly comparable
    grids across runs of different dimension.
    """
    y0 = np.asarray(init, dtype=float)
    if y0.shape != (g.n,):
        raise DimensionMismatchError(f"init length {y0.shape} does not match n={g.n}")
    a = g.adjacency_matrix()
    alpha, omega, coupling = params.alpha, params.omega, params.coupling

    def f(y: np.ndarray) -> np.ndarray:
        diff = y[None, :] - y[:, None] - alpha
        return omega + coupling * np.sum(a * np.sin(diff), axis=1)

    return _integrate_core(f, y0, cfg, t_eval)


def integrate_quotient(
    gamma: QuotientMatrix,
    init: Sequence[float],
    alpha: float,
    cfg: IntegratorConfig,
    t_eval: Sequence[float] | None = None,
) -> Trajectory:
    """March the k-dimensional block system under the quotient counts."""
    f0 = np.asarray(init, dtype=float)
    if f0.shape != (gamma.k,):
        raise DimensionMismatchError(f"init length {f0.shape} does not match k={gamma.k}")
    gm = gamma.as_array()

    def f(y: np.ndarray) -> np.ndarray:
        diff = y[None, :] - y[:, None] - alpha
        return np.sum(gm * np.sin(diff), axis=1)

    return _integrate_core(f, f0, cfg, t_eval)


def lift_quotient_trajectory(
    p: VertexPartition,
    qt: Trajectory,
    gamma: QuotientMatrix | None = None,
    alpha: float | None = None,
) -> Trajectory:
    """Copy each block trajectory onto every vertex of its block.

    With gamma and alpha supplied, the lifted trajectory carries the block
    system's derivative at each recorded time, so a residual check against
    the full system verifies the block-consistency identity rather than the
    integrator.
    """
    if qt.dimension != p.k:
        raise DimensionMismatchError(
            f"quotient dimension {qt.dimension} does not match {p.k} blocks"
        )
    n = max(v for b in p.blocks for v in b)
    if p.vertices() != frozenset(range(1, n + 1)):
        raise PartitionMismatchError("partition must cover 1..n")
    imap = p.index_map()
    cols = np.array([imap[v] for v in range(1, n + 1)])
    states = qt.states[:, cols]
    derivs = None
    if gamma is not None and alpha is not None:
        qd = np.array([quotient_rhs(gamma, fk, alpha) for fk in qt.states])
        derivs = qd[:, cols]
    elif qt.derivatives is not None:
        derivs = qt.derivatives[:, cols]
    return Trajectory(qt.times.copy(), states, derivatives=derivs)


def _pairwise_max_dev(traj: Trajectory, rows: np.ndarray | None = None) -> np.ndarray:
    states = traj.states if rows is None else traj.states[rows]
    n = states.shape[1]
    out = np.zeros((n, n))
    for i in range(n):
        d = np.abs(states[:, i + 1 :] - states[:, i : i + 1])
        if d.size:
            out[i, i + 1 :] = d.max(axis=0)
    return np.maximum(out, out.T)


def _merge_components(n: int, linked: np.ndarray) -> list[list[int]]:
    parent = list(range(n))

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for i in range(n):
        for j in range(i + 1, n):
            if linked[i, j]:
                ri, rj = find(i), find(j)
                if ri != rj:
                    parent[rj] = ri
    groups: dict[int, list[int]] = {}
    for v in range(n):
        groups.setdefault(find(v), []).append(v + 1)
    return sorted(groups.values(), key=min)


def exact_sync_partition(traj: Trajectory, tol: float = 1e-8) -> VertexPartition:
    """Group vertices whose phases agree within tol at every recorded time.

    Grouping closes under single linkage, so two members of a block can sit
    up to a chain of tol-close intermediaries apart.
    """
    if traj.n_recorded == 0:
        raise EmptyTrajectoryError("no recorded states")
    if tol <= 0.0:
        raise BadParameterError(f"tol must be positive, got {tol}")
    dev = _pairwise_max_dev(traj)
    return VertexPartition.from_blocks(_merge_components(traj.dimension, dev < tol))


def _chained_pairs(
    dev: np.ndarray, partition: VertexPartition, tol: float
) -> tuple[tuple[int, int, float], ...]:
    flagged = []
    for block in partition.blocks:
        for a in range(len(block)):
            for b in range(a + 1, len(block)):
                i, j = block[a], block[b]
                d = dev[i - 1, j - 1]
                if d >= tol:
                    flagged.append((i, j, float(d)))
    return tuple(flagged)


@dataclass(frozen=True, eq=False)
class SyncReport:
    """Synchronisation diagnostics for one trajectory."""

    exact_partition: VertexPartition
    exact_tol: float
    chained_pairs: tuple[tuple[int, int, float], ...]
    clusters: VertexPartition
    tail_fraction: float
    tail_tol: float
    tail_start: float
    block_means: np.ndarray
    tail_max_deviation: tuple[float, ...]
    pair_classes: tuple[tuple[int, int, str, float], ...]


def asymptotic_sync_clusters(
    traj: Trajectory,
    tail_fraction: float = 0.2,
    tol: float = 1e-4,
    exact_tol: float = 1e-8,
) -> SyncReport:
    """Cluster vertices that stay tol-close over the trailing window.

    A pair joins a cluster when its phase gap stays below tol throughout the
    tail window and its tail maximum does not exceed the maximum over the
    window immediately before, a cheap monotonicity proxy for convergence.
    Thresholds are echoed in the report rather than applied silently.
    """
    if not 0.0 < tail_fraction <= 0.5:
        raise BadParameterError(f"tail_fraction must lie in (0, 0.5], got {tail_fraction}")
    if tol <= 0.0 or exact_tol <= 0.0:
        raise BadParameterError("tolerances must be positive")
    times = traj.times
    span = float(times[-1] - times[0])
    tail_lo = times[-1] - tail_fraction * span
    prev_lo = times[-1] - 2.0 * tail_fraction * span
    tail_rows = np.nonzero(times >= tail_lo - 1e-12)[0]
    prev_rows = np.nonzero((times >= prev_lo - 1e-12) & (times < tail_lo - 1e-12))[0]
    if tail_rows.size < 10:
        raise TooShortError(
            f"tail window holds {tail_rows.size} recorded points, need at least 10"
        )
    n = traj.dimension
    dev_full = _pairwise_max_dev(traj)
    dev_tail = _pairwise_max_dev(traj, tail_rows)
    dev_prev = _pairwise_max_dev(traj, prev_rows) if prev_rows.size else None
    linked = dev_tail < tol
    if dev_prev is not None:
        linked &= dev_tail <= dev_prev + 1e-12
    clusters = VertexPartition.from_blocks(_merge_components(n, linked))
    exact = exact_sync_partition(traj, tol=exact_tol)
    cmap = clusters.index_map()
    means = np.empty((traj.n_recorded, clusters.k))
    for b, block in enumerate(clusters.blocks):
        means[:, b] = traj.states[:, [v - 1 for v in block]].mean(axis=1)
    tail_dev = []
    for b, block in enumerate(clusters.blocks):
        gap = traj.states[np.ix_(tail_rows, [v - 1 for v in block])] - means[tail_rows, b : b + 1]
        tail_dev.append(float(np.abs(gap).max()) if gap.size else 0.0)
    emap = exact.index_map()
    pair_classes = []
    for i in range(1, n + 1):
        for j in range(i + 1, n + 1):
            if emap[i] == emap[j] and dev_full[i - 1, j - 1] < exact_tol:
                label = "synchronised"
            elif cmap[i] == cmap[j]:
                label = "asymptotic"
            else:
                label = "desynchronised"
            pair_classes.append((i, j, label, float(dev_tail[i - 1, j - 1])))
    return SyncReport(
        exact_partition=exact,
        exact_tol=exact_tol,
        chained_pairs=_chained_pairs(dev_full, exact, exact_tol),
        clusters=clusters,
        tail_fraction=tail_fraction,
        tail_tol=tol,
        tail_start=float(max(tail_lo, 0.0)),
        block_means=means,
        tail_max_deviation=tuple(tail_dev),
        pair_classes=tuple(pair_classes),
    )


def analytic_regular_solution(
    d: int, alpha: float, n: int, t_grid: Sequence[float]
) -> Trajectory:
    """Rigid rotation of a d-regular graph: every phase equals -d sin(alpha) t."""
    if d < 0 or n < 1:
        raise BadParameterError(f"need d >= 0 and n >= 1, got d={d}, n={n}")
    rate = -d * math.sin(alpha)
    return LinearTrajectory(np.zeros(n), rate).sample(t_grid)


def residual_max(
    g: Graph,
    traj: Trajectory,
    params: ModelParams,
    sample_grid: Sequence[float] | None = None,
) -> float:
    """Worst-case gap between recorded phase velocity and the model velocity.

    Closed-form derivatives are used when the trajectory carries them;
    otherwise interior derivatives come from three-point differences on the
    recorded grid, a coarse but solver-independent estimate.
    """
    if traj.dimension != g.n:
        raise DimensionMismatchError(f"trajectory width {traj.dimension} vs n={g.n}")
    times, states = traj.times, traj.states
    if sample_grid is not None:
        wanted = np.asarray(sample_grid, dtype=float)
        if wanted.size and (wanted.min() < times[0] - 1e-12 or wanted.max() > times[-1] + 1e-12):
            raise BadParameterError("sample grid extends past the trajectory span")
        idx = np.searchsorted(times, wanted)
        idx = np.clip(idx, 0, times.size - 1)
        ok = np.abs(times[idx] - wanted) <= 1e-9
        if not np.all(ok):
            raise BadParameterError("sample grid must consist of recorded times")
        rows = idx
    else:
        rows = np.arange(times.size)
    if traj.derivatives is not None:
        worst = 0.0
        for r in rows:
            rhs = kuramoto_rhs(g, states[r], params)
            worst = max(worst, float(np.abs(traj.derivatives[r] - rhs).max()))
        return worst
    if times.size < 3:
        raise TooShortError("numeric residual needs at least three recorded times")
    worst = 0.0
    interior = [r for r in rows if 1 <= r <= times.size - 2]
    for r in interior:
        h1 = times[r] - times[r - 1]
        h2 = times[r + 1] - times[r]
        w0 = -h2 / (h1 * (h1 + h2))
        w1 = (h2 - h1) / (h1 * h2)
        w2 = h1 / (h2 * (h1 + h2))
        deriv = w0 * states[r - 1] + w1 * states[r] + w2 * states[r + 1]
        rhs = kuramoto_rhs(g, states[r], params)
        worst = max(worst, float(np.abs(deriv - rhs).max()))
    return worst


def trajectory_to_csv(traj: Trajectory) -> str:
    """Header t,theta_1,...,theta_n; 17 significant digits throughout."""
    n = traj.dimension
    lines = ["t," + ",".join(f"theta_{i}" for i in range(1, n + 1))]
    for t, row in zip(traj.times, traj.states):
        lines.append(",".join(f"{x:.17g}" for x in [t, *row]))
    return "\n".join(lines) + "\n"


def trajectory_from_csv(text: str) -> Trajectory:
    lines = [ln for ln in text.splitlines() if ln.strip()]
    if not lines:
        raise FormatError("empty trajectory file")
    header = lines[0].split(",")
    if header[0] != "t" or len(header) < 2:
        raise FormatError(f"bad trajectory header {lines[0]!r}")
    rows = []
    for ln in lines[1:]:
        parts = ln.split(",")
        if len(parts) != len(header):
            raise FormatError(f"row width {len(parts)} does not match header")
        try:
            rows.append([float(x) for x in parts])
        except ValueError:
            raise FormatError(f"non-numeric value in row {ln!r}") from None
    data = np.array(rows)
    if data.size == 0:
        raise FormatError("trajectory file has no data rows")
    return Trajectory(data[:, 0], data[:, 1:])
