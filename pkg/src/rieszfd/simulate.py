"""Time-integration driver: resolve the step size, advance, record snapshots."""

from __future__ import annotations

import dataclasses
import hashlib
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable

import numpy as np

from .errors import ConfigInvalid, NoSuchSnapshot
from .grid import FieldState, Grid1D, InitialCondition, sample_initial
from .kernel import tail_sums, weight_table
from .linalg import lu_factor
from .schemes import (
    SchemeConfig,
    assemble_system,
    explicit_step,
    implicit_step,
    max_stable_dt,
)

# snapshot times are aligned to integer step multiples when their ratios to
# t_end are rational with denominators up to this bound
_ALIGN_DENOMINATOR_LIMIT = 10**6
_ALIGN_STEP_CAP = 50_000_000


@dataclass(frozen=True)
class DtPolicy:
    """Step-size policy: a fixed dt, or a safety fraction of the explicit bound."""

    kind: str
    value: float

    @classmethod
    def fixed(cls, dt: float) -> "DtPolicy":
        if not dt > 0.0:
            raise ConfigInvalid(f"fixed dt must be positive, got {dt}")
        return cls("fixed", float(dt))

    @classmethod
    def auto(cls, safety: float = 0.9) -> "DtPolicy":
        if not 0.0 < safety < 1.0:
            raise ConfigInvalid(f"auto dt safety must lie in (0, 1), got {safety}")
        return cls("auto", float(safety))


@dataclass(frozen=True)
class SimulationConfig:
    grid: Grid1D
    scheme: SchemeConfig
    initial: InitialCondition
    t_end: float
    snapshot_times: tuple[float, ...] = ()
    dt_policy: DtPolicy = DtPolicy.auto(0.9)

    def __post_init__(self):
        if not self.t_end > 0.0:
            raise ConfigInvalid(f"t_end must be positive, got {self.t_end}")
        times = tuple(sorted(float(t) for t in self.snapshot_times))
        if times and (times[0] < 0.0 or times[-1] > self.t_end * (1.0 + 1e-12)):
            raise ConfigInvalid(f"snapshot times {times} not within [0, {self.t_end}]")
        object.__setattr__(self, "snapshot_times", times)


@dataclass(frozen=True)
class SnapshotSeries:
    """Recorded states (first entry is always the t = 0 initial state)."""

    config: SimulationConfig
    dt: float
    n_steps: int
    snapshots: tuple[FieldState, ...]
    config_hash: str

    @property
    def times(self) -> tuple[float, ...]:
        return tuple(s.time for s in self.snapshots)

    def nearest(self, time: float) -> FieldState:
        """Recorded state closest to ``time``; must lie within one dt."""
        best = min(self.snapshots, key=lambda s: abs(s.time - time))
        if abs(best.time - time) > self.dt * (1.0 + 1e-9):
            raise NoSuchSnapshot(f"no snapshot within dt={self.dt} of t={time}")
        return best


def _canonical_text(obj) -> str:
    if dataclasses.is_dataclass(obj) and not isinstance(obj, type):
        fields = (
            (f.name, _canonical_text(getattr(obj, f.name)))
            for f in dataclasses.fields(obj)
            if f.compare
        )
        inner = ",".join(f"{name}={text}" for name, text in fields)
        return f"{type(obj).__name__}({inner})"
    if isinstance(obj, float):
        return repr(obj)
    if isinstance(obj, (tuple, list)):
        return "[" + ",".join(_canonical_text(v) for v in obj) + "]"
    return repr(obj)


def config_hash(config: SimulationConfig) -> str:
    """Short content hash of every resolved config field."""
    return hashlib.sha256(_canonical_text(config).encode()).hexdigest()[:12]


def resolve_dt(config: SimulationConfig) -> tuple[float, int]:
    """Concrete (dt, n_steps) for a run.

    An auto policy starts from safety * (explicit stability bound).  The
    step count is then raised so that t_end is an exact step multiple and,
    when the requested snapshot times are rational fractions of t_end, so
    are they; irrational requests fall back to nearest-step recording.
    A fixed policy uses the given dt unchanged and steps until t >= t_end.
    """
    policy = config.dt_policy
    if policy.kind == "fixed":
        dt = policy.value
        n = max(1, math.ceil(config.t_end / dt * (1.0 - 1e-12)))
        return dt, n
    bound = max_stable_dt(config.scheme.params, config.scheme.k_alpha, config.grid.h)
    base = policy.value * bound
    n = max(1, math.ceil(config.t_end / base * (1.0 - 1e-12)))
    denominators = []
    for t in config.snapshot_times:
        if t <= 0.0 or t >= config.t_end:
            continue
        frac = Fraction(t / config.t_end).limit_denominator(_ALIGN_DENOMINATOR_LIMIT)
        if abs(float(frac) - t / config.t_end) < 1e-12:
            denominators.append(frac.denominator)
    if denominators:
        lcm = math.lcm(*denominators)
        aligned = lcm * math.ceil(n / lcm)
        if aligned <= _ALIGN_STEP_CAP:
            n = aligned
    return config.t_end / n, n


def run(config: SimulationConfig) -> SnapshotSeries:
    """Advance the field from t = 0 past t_end, recording snapshots.

    Deterministic: identical configs produce bit-identical series.  The
    weight table and tail sums are built once and reused every step; for
    sigma < 1 the system matrix is factored once as well.
    """
    dt, n_steps = resolve_dt(config)
    grid = config.grid
    scheme = dataclasses.replace(config.scheme, dt=dt)
    table = weight_table(scheme.params, -(grid.n_cells - 1), grid.n_cells - 1)
    tails = tail_sums(scheme.params)

    state = sample_initial(config.initial, grid)
    recorded = [state]
    # map target times to the step index whose post-step time is nearest
    wanted: dict[int, None] = {}
    for t in config.snapshot_times:
        if t <= 0.0:
            continue
        wanted[min(n_steps, max(1, round(t / dt)))] = None
    wanted[n_steps] = None

    if scheme.sigma == 1.0:
        step: Callable[[FieldState], FieldState] = lambda s: explicit_step(
            s, scheme, table, tails
        )
    else:
        factorization = lu_factor(assemble_system(state, scheme, table, tails).matrix)
        step = lambda s: implicit_step(s, scheme, table, tails, factorization)

    for f in range(1, n_steps + 1):
        state = step(state)
        if f in wanted:
            recorded.append(state)
    return SnapshotSeries(
        config=config,
        dt=dt,
        n_steps=n_steps,
        snapshots=tuple(recorded),
        config_hash=config_hash(config),
    )


def snapshot_error(
    series: SnapshotSeries,
    oracle: Callable[[np.ndarray, float], np.ndarray],
    time: float,
    norm: str = "l2rel",
    x_window: tuple[float, float] | None = None,
) -> float:
    """Discrete norm of (numeric - oracle) at the snapshot nearest ``time``.

    ``oracle(x, t)`` evaluates the reference solution on node coordinates.
    ``l2rel`` divides by the oracle norm; ``linf`` is the max abs error.
    ``x_window`` restricts the comparison to nodes inside [lo, hi].
    """
    state = series.nearest(time)
    xs = state.grid.nodes()
    numeric = state.values
    if x_window is not None:
        mask = (xs >= x_window[0]) & (xs <= x_window[1])
        xs, numeric = xs[mask], numeric[mask]
    reference = np.asarray(oracle(xs, state.time), dtype=float)
    diff = numeric - reference
    if norm == "l2rel":
        ref_norm = float(np.sqrt(np.sum(reference**2)))
        if ref_norm == 0.0:
            raise ZeroDivisionError("oracle is identically zero; use norm='linf'")
        return float(np.sqrt(np.sum(diff**2))) / ref_norm
    if norm == "linf":
        return float(np.max(np.abs(diff)))
    raise ValueError(f"unknown norm {norm!r}; expected 'l2rel' or 'linf'")
