"""Sigma-weighted finite-difference time stepping on a bounded domain.

One step advances the interior nodes by the discretized fractional
operator while both Dirichlet values enter every interior node through
closed-form tail sums (values beyond the domain are held at the nearest
boundary value).  ``sigma`` blends the time levels: 1 is fully explicit,
0 fully implicit, anything between is a partially implicit scheme.
Boundary data is evaluated at half steps t = dt*(f + 1/2).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import UnstableTimestep
from .grid import BoundarySpec, FieldState, boundary_at_half_step
from .kernel import FractionalParams, TailSums, WeightTable, weight
from .linalg import LUFactorization, lu_factor, lu_solve


@dataclass(frozen=True)
class SchemeConfig:
    """Diffusion coefficient, time step, sigma weight and boundary data.

    ``dt`` may be None when a simulation-level policy resolves it later;
    the step functions themselves require a concrete value.  Explicit
    stepping refuses dt at or above the positivity bound unless
    ``allow_unstable_dt`` is set.
    """

    params: FractionalParams
    k_alpha: float
    dt: float | None = None
    sigma: float = 1.0
    bc_left: BoundarySpec = BoundarySpec.constant(0.0)
    bc_right: BoundarySpec = BoundarySpec.constant(0.0)
    allow_unstable_dt: bool = False

    def __post_init__(self):
        if not self.k_alpha > 0.0:
            raise ValueError(f"diffusion coefficient must be positive, got {self.k_alpha}")
        if self.dt is not None and not self.dt > 0.0:
            raise ValueError(f"dt must be positive, got {self.dt}")
        if not 0.0 <= self.sigma <= 1.0:
            raise ValueError(f"sigma must lie in [0, 1], got {self.sigma}")

    def _require_dt(self) -> float:
        if self.dt is None:
            raise ValueError("scheme has no concrete dt; set dt or use a dt policy")
        return self.dt


def max_stable_dt(params: FractionalParams, k_alpha: float, h: float) -> float:
    """Largest explicit time step keeping the k = 0 update coefficient positive.

    Equals -h**alpha / (k_alpha * w_0); w_0 < 0 for all valid parameters,
    so the bound is strictly positive.
    """
    if k_alpha <= 0.0 or h <= 0.0:
        raise ValueError("k_alpha and h must be positive")
    return -(h**params.alpha) / (k_alpha * weight(0, params))


def p_coefficient(k: int, cfg: SchemeConfig, h: float) -> float:
    """Explicit update coefficient: 1 + r*w_0 at k = 0, r*w_k otherwise,
    with r = k_alpha * dt / h**alpha."""
    r = cfg.k_alpha * cfg._require_dt() / h**cfg.params.alpha
    w = weight(int(k), cfg.params)
    return 1.0 + r * w if k == 0 else r * w


def rf_apply_bounded(
    state: FieldState,
    g_left: float,
    g_right: float,
    table: WeightTable,
    tails: TailSums,
) -> np.ndarray:
    """Discrete fractional operator at the N-1 interior nodes.

    out[i-1] = h**-alpha * ( sum_{k=-i}^{N-i} C_{i+k} w_k
                             + g_left * s_L(i) + g_right * s_R(N-i) )

    The window sum covers every node of the bounded grid; the tail sums
    carry the boundary values held on the virtual nodes outside it.
    """
    n = state.grid.n_cells
    w_mat = table.application_matrix(n)  # raises WindowTooSmall if undersized
    s_left, s_right = tails.interior_arrays(n)
    acc = w_mat @ state.values
    acc += g_left * s_left
    acc += g_right * s_right[::-1]  # s_R(N-i) for i = 1..N-1
    return acc / state.grid.h ** table.params.alpha


def explicit_step(
    state: FieldState,
    cfg: SchemeConfig,
    table: WeightTable,
    tails: TailSums,
) -> FieldState:
    """One forward step of the fully explicit (sigma = 1) scheme."""
    dt = cfg._require_dt()
    if not cfg.allow_unstable_dt:
        bound = max_stable_dt(cfg.params, cfg.k_alpha, state.grid.h)
        if dt >= bound:
            raise UnstableTimestep(
                f"dt={dt} is at or above the explicit bound {bound}; "
                f"reduce dt or set allow_unstable_dt"
            )
    f = state.step_index
    gl = boundary_at_half_step(cfg.bc_left, dt, f)
    gr = boundary_at_half_step(cfg.bc_right, dt, f)
    new = np.empty_like(state.values)
    new[1:-1] = state.values[1:-1] + dt * cfg.k_alpha * rf_apply_bounded(
        state, gl, gr, table, tails
    )
    new[0] = gl
    new[-1] = gr
    return FieldState(grid=state.grid, values=new, time=dt * (f + 1), step_index=f + 1)


@dataclass(frozen=True)
class LinearSystem:
    """Dense system A C = b of one implicit step."""

    matrix: np.ndarray
    rhs: np.ndarray


def _assemble_matrix(cfg: SchemeConfig, table: WeightTable, n_cells: int, h: float) -> np.ndarray:
    """A[i, j] = delta_ij + a_{j-i} on interior rows, unit boundary rows."""
    n = n_cells
    ratio = (cfg.sigma - 1.0) * cfg.k_alpha * cfg._require_dt() / h**cfg.params.alpha
    a = np.zeros((n + 1, n + 1))
    a[1:-1, :] = ratio * table.application_matrix(n)
    np.fill_diagonal(a, a.diagonal() + 1.0)
    a[0, 0] = 1.0
    a[-1, -1] = 1.0
    return a


def _assemble_rhs(
    state: FieldState,
    cfg: SchemeConfig,
    table: WeightTable,
    tails: TailSums,
    gl: float,
    gr: float,
) -> np.ndarray:
    n = state.grid.n_cells
    r = cfg.k_alpha * cfg._require_dt() / state.grid.h ** cfg.params.alpha
    s_left, s_right = tails.interior_arrays(n)
    interior = gl * s_left + gr * s_right[::-1]
    if cfg.sigma != 0.0:
        interior = interior + cfg.sigma * (table.application_matrix(n) @ state.values)
    rhs = np.empty(n + 1)
    rhs[1:-1] = state.values[1:-1] + r * interior
    rhs[0] = gl
    rhs[-1] = gr
    return rhs


def assemble_system(
    state: FieldState,
    cfg: SchemeConfig,
    table: WeightTable,
    tails: TailSums,
) -> LinearSystem:
    """Dense matrix and right-hand side for one sigma-weighted step."""
    dt = cfg._require_dt()
    f = state.step_index
    gl = boundary_at_half_step(cfg.bc_left, dt, f)
    gr = boundary_at_half_step(cfg.bc_right, dt, f)
    matrix = _assemble_matrix(cfg, table, state.grid.n_cells, state.grid.h)
    rhs = _assemble_rhs(state, cfg, table, tails, gl, gr)
    return LinearSystem(matrix=matrix, rhs=rhs)


def implicit_step(
    state: FieldState,
    cfg: SchemeConfig,
    table: WeightTable,
    tails: TailSums,
    factorization: LUFactorization | None = None,
) -> FieldState:
    """One step solving A C^{f+1} = b.

    The matrix depends only on (params, k_alpha, dt, sigma, N): pass the
    factorization in when stepping repeatedly so A is factored once.
    """
    dt = cfg._require_dt()
    f = state.step_index
    gl = boundary_at_half_step(cfg.bc_left, dt, f)
    gr = boundary_at_half_step(cfg.bc_right, dt, f)
    if factorization is None:
        system = assemble_system(state, cfg, table, tails)
        factorization = lu_factor(system.matrix)
        rhs = system.rhs
    else:
        rhs = _assemble_rhs(state, cfg, table, tails, gl, gr)
    new = lu_solve(factorization, rhs)
    # boundary nodes are prescribed, not solved for; pin them so pivoting
    # noise from the elimination cannot leak onto them
    new[0] = gl
    new[-1] = gr
    return FieldState(grid=state.grid, values=new, time=dt * (f + 1), step_index=f + 1)
