"""Locating the monotone bistable front by iterate-and-recenter.

The step operator is monotone and the cooperative-frame corners (0,0) and
(1,1) are strongly stable, so iterating from monotone ramp data and
re-centering the half-level crossing of the first component after every
step converges to a translating profile.  The accumulated re-centering
shifts give the front speed; no formula for it is available, so the speed
is purely an output of the construction (zero in the exchange-symmetric
case).  Newton-type profile solving is deliberately avoided: the operator
is cheap and globally monotone, while its derivative is not something we
ever need to build.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np
from scipy.special import expit

from .errors import (
    ConvergenceError,
    DegenerateDataError,
    DomainError,
    MeasurementError,
    ParameterError,
    RangeError,
)
from .evolution import (
    DEFAULT_DX,
    DEFAULT_HALF_LENGTH,
    Grid,
    SpatialState,
    apply_Q,
    interior_slice,
    translate,
)
from .kernels import Kernel, discretize, validate_hypotheses
from .model import TRANSFORMED_FRAME, ModelParams, validate_params
from .speeds import counter_propagation, front_position


@dataclass(frozen=True)
class WaveOptions:
    """Tolerances and budgets for the front solver."""

    profile_tol: float = 1e-6
    speed_tol: float = 1e-4
    max_steps: int = 2000
    trailing: int = 20  # steps averaged for the speed estimate
    init_width: float = 1.0
    level: float = 0.5
    eps_trunc: float = 1e-12
    method: str = "fft"


@dataclass
class WaveHistory:
    """Per-step convergence diagnostics of the front solver."""

    sup_diffs: list = field(default_factory=list)
    displacements: list = field(default_factory=list)
    int_shifts: list = field(default_factory=list)
    fractions: list = field(default_factory=list)
    monotone_defects: list = field(default_factory=list)

    @property
    def total_displacement(self) -> float:
        return float(sum(self.displacements))


@dataclass
class WaveProfile:
    """A translating profile pair with its speed and defect diagnostics."""

    grid: Grid
    phi: np.ndarray
    psi: np.ndarray
    speed: float
    residual: float
    steps: int
    history: WaveHistory
    kernel_half_width: int


def step_initial_data(grid: Grid, width: float) -> SpatialState:
    """Monotone ramp data: both components follow a logistic sigmoid."""
    if not (width > 0):
        raise DomainError(f"ramp width must be positive, got {width}")
    ramp = expit(grid.x / width)
    return SpatialState(
        grid=grid, frame=TRANSFORMED_FRAME, U=ramp, V=ramp.copy(), step=0
    )


def _shift_fractional(values: np.ndarray, offset: float, dx: float) -> np.ndarray:
    """Resample at x + offset for |offset| <= dx by linear interpolation.

    Linear interpolation keeps monotone data monotone and stays inside the
    sample range, which higher-order schemes would not.
    """
    if offset == 0.0:
        return values.copy()
    t = offset / dx
    if not (-1.0 <= t <= 1.0):
        raise RangeError(f"fractional shift {offset} exceeds one cell ({dx})")
    out = np.empty_like(values)
    if t > 0.0:
        out[:-1] = (1.0 - t) * values[:-1] + t * values[1:]
        out[-1] = values[-1]
    else:
        s = -t
        out[1:] = (1.0 - s) * values[1:] + s * values[:-1]
        out[0] = values[0]
    return out


def _resample_shifted(state: SpatialState, offset: float) -> tuple:
    """State fields sampled at x + offset (integer cells + linear remainder).

    Returns (U, V, whole_cells, fraction) with offset = whole_cells*dx +
    fraction exactly.
    """
    dx = state.grid.dx
    m = int(round(offset / dx))
    if abs(m) >= state.grid.n_points:
        raise RangeError(f"shift {offset} exceeds the grid")
    f = offset - m * dx
    shifted = translate(state, -m)
    U = _shift_fractional(shifted.U, f, dx)
    V = _shift_fractional(shifted.V, f, dx)
    return U, V, m, f


def _min_adjacent_diff(values: np.ndarray) -> float:
    return float(np.min(np.diff(values)))


def find_bistable_wave(
    p: ModelParams,
    kernel1: Kernel,
    kernel2: Kernel,
    grid: Grid | None = None,
    opts: WaveOptions | None = None,
    initial: SpatialState | None = None,
) -> WaveProfile:
    """Iterate from ramp data, recentering the front, until it translates.

    Convergence requires both a small sup-norm change between consecutive
    recentered profiles and a small spread of the trailing per-step
    displacements; the speed is the trailing mean displacement.  Raises
    ConvergenceError (with the history attached) on step-budget exhaustion
    and DegenerateDataError if the tracked level crossing disappears.
    ``initial`` replaces the default ramp data (it must be a monotone
    transformed-frame state on the same grid).
    """
    opts = opts or WaveOptions()
    grid = grid or Grid(half_length=DEFAULT_HALF_LENGTH, dx=DEFAULT_DX)

    report = validate_params(p)
    if not report.passed:
        raise ParameterError("; ".join(report.violations))
    for name, k in (("kernel1", kernel1), ("kernel2", kernel2)):
        hyp = validate_hypotheses(k)
        if not hyp.passed:
            raise ParameterError(f"{name}: " + "; ".join(hyp.violations))
    if not counter_propagation(p, kernel1, kernel2).passed:
        raise ParameterError("counter-propagation sums are not both positive")

    dk1 = discretize(kernel1, grid.dx, opts.eps_trunc)
    dk2 = discretize(kernel2, grid.dx, opts.eps_trunc)

    if initial is None:
        state = step_initial_data(grid, opts.init_width)
    else:
        if initial.grid != grid or initial.frame != TRANSFORMED_FRAME:
            raise DomainError("initial state must be transformed-frame on the solver grid")
        state = initial
    history = WaveHistory()
    converged = False
    steps_done = 0

    for n in range(1, opts.max_steps + 1):
        prev_U, prev_V = state.U, state.V
        state = apply_Q(state, p, dk1, dk2, opts.method)
        try:
            t = front_position(grid.x, state.U, opts.level)
        except MeasurementError as exc:
            raise DegenerateDataError(
                f"front level {opts.level} lost at step {n}"
            ) from exc
        U, V, m, f = _resample_shifted(state, t)
        state = SpatialState(
            grid=grid, frame=TRANSFORMED_FRAME, U=U, V=V, step=state.step
        )

        history.displacements.append(t)
        history.int_shifts.append(m)
        history.fractions.append(f)
        sup_diff = max(
            float(np.max(np.abs(state.U - prev_U))),
            float(np.max(np.abs(state.V - prev_V))),
        )
        history.sup_diffs.append(sup_diff)
        history.monotone_defects.append(
            min(_min_adjacent_diff(state.U), _min_adjacent_diff(state.V))
        )
        steps_done = n

        if n >= opts.trailing:
            tail = history.displacements[-opts.trailing :]
            spread = max(tail) - min(tail)
            if sup_diff < opts.profile_tol and spread < opts.speed_tol:
                converged = True
                break

    if not converged:
        raise ConvergenceError(
            f"no traveling profile within {opts.max_steps} steps "
            f"(last sup diff {history.sup_diffs[-1]:.3e}, "
            f"displacement spread {max(history.displacements[-opts.trailing:]) - min(history.displacements[-opts.trailing:]):.3e})",
            history=history,
        )

    speed = float(np.mean(history.displacements[-opts.trailing :]))
    profile = WaveProfile(
        grid=grid,
        phi=state.U,
        psi=state.V,
        speed=speed,
        residual=math.nan,
        steps=steps_done,
        history=history,
        kernel_half_width=max(dk1.half_width, dk2.half_width),
    )
    profile.residual = wave_residual(profile, p, kernel1, kernel2, opts=opts)
    return profile


def wave_residual(
    wp: WaveProfile,
    p: ModelParams,
    kernel1: Kernel,
    kernel2: Kernel,
    opts: WaveOptions | None = None,
) -> float:
    """Sup-norm defect of the translating-profile equation.

    Applies one step to (phi, psi), shifts the result back by the wave
    speed (linear interpolation), and takes the largest deviation from the
    profile over the boundary-safe interior window.
    """
    opts = opts or WaveOptions()
    dk1 = discretize(kernel1, wp.grid.dx, opts.eps_trunc)
    dk2 = discretize(kernel2, wp.grid.dx, opts.eps_trunc)

    state = SpatialState(
        grid=wp.grid,
        frame=TRANSFORMED_FRAME,
        U=np.clip(wp.phi, 0.0, 1.0),
        V=np.clip(wp.psi, 0.0, 1.0),
    )
    stepped = apply_Q(state, p, dk1, dk2, opts.method)
    U, V, m, _ = _resample_shifted(stepped, wp.speed)

    margin = max(dk1.half_width, dk2.half_width) + abs(m) + 2
    if 2 * margin >= wp.grid.n_points:
        raise RangeError(
            f"speed {wp.speed} and kernel width leave no interior window"
        )
    win = interior_slice(wp.grid, margin)
    return max(
        float(np.max(np.abs(U[win] - wp.phi[win]))),
        float(np.max(np.abs(V[win] - wp.psi[win]))),
    )


@dataclass
class ProfileTolerances:
    monotone_slack: float = 1e-10
    tail_tol: float = 1e-3
    residual_tol: float = 1e-4
    tail_fraction: float = 0.1


@dataclass
class ProfileValidation:
    """Per-clause pass/fail record for a candidate wave profile."""

    monotone_ok: bool
    range_ok: bool
    left_tail_ok: bool
    right_tail_ok: bool
    residual_ok: bool
    details: dict

    @property
    def passed(self) -> bool:
        return (
            self.monotone_ok
            and self.range_ok
            and self.left_tail_ok
            and self.right_tail_ok
            and self.residual_ok
        )


def validate_profile(
    wp: WaveProfile, tols: ProfileTolerances | None = None
) -> ProfileValidation:
    """Check monotonicity, range, tail limits and the translation defect."""
    tols = tols or ProfileTolerances()
    win = interior_slice(wp.grid, wp.kernel_half_width)
    phi = wp.phi[win]
    psi = wp.psi[win]

    worst_step = min(_min_adjacent_diff(phi), _min_adjacent_diff(psi))
    monotone_ok = worst_step >= -tols.monotone_slack

    lo = min(float(wp.phi.min()), float(wp.psi.min()))
    hi = max(float(wp.phi.max()), float(wp.psi.max()))
    range_ok = lo >= 0.0 and hi <= 1.0

    band = max(1, int(tols.tail_fraction * len(phi)))
    left_dev = max(float(np.max(phi[:band])), float(np.max(psi[:band])))
    right_dev = max(
        float(np.max(1.0 - phi[-band:])), float(np.max(1.0 - psi[-band:]))
    )
    left_tail_ok = left_dev <= tols.tail_tol
    right_tail_ok = right_dev <= tols.tail_tol

    residual_ok = wp.residual <= tols.residual_tol

    return ProfileValidation(
        monotone_ok=monotone_ok,
        range_ok=range_ok,
        left_tail_ok=left_tail_ok,
        right_tail_ok=right_tail_ok,
        residual_ok=residual_ok,
        details={
            "worst_monotone_step": worst_step,
            "range": (lo, hi),
            "left_tail_deviation": left_dev,
            "right_tail_deviation": right_dev,
            "residual": wp.residual,
            "speed": wp.speed,
        },
    )
