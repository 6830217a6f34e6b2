"""Per-period action of an axial loop and its minimization.

For a ring configuration with n primaries at radius r, the action of a loop
z over one period is

    f(z) = (1/2) * int_0^1 z'(t)^2 dt  +  int_0^1 n / sqrt(r^2 + z(t)^2) dt.

The kinetic term is evaluated exactly through Parseval,

    (1/2) * int z'^2 = (1/4) * sum_k (2*pi*k)^2 (a_k^2 + b_k^2),

while the interaction term uses the trapezoid rule on a uniform grid, which
is spectrally accurate for smooth periodic integrands; the grid must
oversample the top harmonic by at least 8x to keep aliasing from the
nonlinear denominator negligible. Gradients and Hessian-vector products are
analytic in coefficient space and projected onto the loop's symmetry class.

Minimization is BFGS with a backtracking (sufficient-decrease) line search,
so the action strictly decreases across accepted iterations, and a 2-norm
gradient stopping rule. The zero loop is a critical point; by default a
start sitting exactly there is nudged by 1e-3 along the k=1 sine mode,
the direction of steepest negative curvature whenever one exists.
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass, field

import numpy as np

from .geometry import CircularConfig
from .loopspace import (
    LoopPath,
    SymmetryClass,
    class_mask,
    coefficient_vector,
    from_coefficients,
    loop_to_dict,
    random_loop,
    sobolev_norm,
)

logger = logging.getLogger(__name__)

ZERO_START_NUDGE = 1e-3
ACTION_TIE_REL = 1e-12
ARMIJO_SLOPE_FRACTION = 1e-4


class NumericalError(RuntimeError):
    """A non-finite value appeared where the math guarantees finiteness."""


@dataclass(frozen=True)
class ActionEvaluation:
    """Action value with its analytic coefficient-space gradient."""

    value: float
    gradient: np.ndarray  # dense [d/da_k, d/db_k], projected to the class
    gradient_norm: float
    kinetic: float
    potential: float


@dataclass(frozen=True)
class StartOutcome:
    """Per-start record kept by multi-start minimization."""

    label: str
    action: float
    gradient_norm: float
    iterations: int
    converged: bool


@dataclass(frozen=True)
class MinimizeResult:
    loop: LoopPath
    action: float
    gradient_norm: float
    iterations: int
    amplitude: float  # max_t |z(t)| on the quadrature grid
    converged: bool
    starts: tuple[StartOutcome, ...] = field(default=(), repr=False)


def _require_grid(grid: int, max_harmonic: int) -> None:
    if grid < 8 * max_harmonic:
        raise ValueError(f"grid={grid} is too small; need at least 8*max_harmonic={8 * max_harmonic}")


class _Evaluator:
    """Cached trig tables for one (config, symmetry, max_harmonic, grid)."""

    def __init__(self, config: CircularConfig, symmetry: SymmetryClass, max_harmonic: int, grid: int):
        _require_grid(grid, max_harmonic)
        self.config = config
        self.symmetry = symmetry
        self.max_harmonic = max_harmonic
        self.grid = grid
        t = np.arange(grid) / grid
        k = np.arange(1, max_harmonic + 1, dtype=float)
        phase = 2.0 * math.pi * np.outer(t, k)
        self.cos = np.cos(phase)
        self.sin = np.sin(phase)
        self.w2 = (2.0 * math.pi * k) ** 2
        self.mask = class_mask(symmetry, max_harmonic)
        self.free = np.flatnonzero(self.mask)

    def split(self, x: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
        return x[: self.max_harmonic], x[self.max_harmonic :]

    def z_values(self, x: np.ndarray) -> np.ndarray:
        a, b = self.split(x)
        return self.cos @ a + self.sin @ b

    def value_parts(self, x: np.ndarray) -> tuple[float, float]:
        a, b = self.split(x)
        kinetic = 0.25 * float(self.w2 @ (a * a + b * b))
        z = self.z_values(x)
        potential = self.config.n * float(np.mean(1.0 / np.sqrt(self.config.radius**2 + z * z)))
        return kinetic, potential

    def value_grad(self, x: np.ndarray) -> tuple[float, np.ndarray]:
        a, b = self.split(x)
        z = self.z_values(x)
        sq = self.config.radius**2 + z * z
        value = 0.25 * float(self.w2 @ (a * a + b * b)) + self.config.n * float(
            np.mean(1.0 / np.sqrt(sq))
        )
        force = -self.config.n * z / sq**1.5  # d/dz of the interaction density
        grad = np.concatenate(
            [
                0.5 * self.w2 * a + self.cos.T @ force / self.grid,
                0.5 * self.w2 * b + self.sin.T @ force / self.grid,
            ]
        )
        grad[~self.mask] = 0.0
        return value, grad

    def value_grad_packed(self, xp: np.ndarray) -> tuple[float, np.ndarray]:
        x = np.zeros(2 * self.max_harmonic)
        x[self.free] = xp
        value, grad = self.value_grad(x)
        return value, grad[self.free]

    def amplitude(self, x: np.ndarray) -> float:
        return float(np.max(np.abs(self.z_values(x)))) if np.any(x != 0.0) else 0.0

    def embed(self, xp: np.ndarray) -> np.ndarray:
        x = np.zeros(2 * self.max_harmonic)
        x[self.free] = xp
        return x


def action(config: CircularConfig, loop: LoopPath, grid: int) -> ActionEvaluation:
    """Evaluate the action and its gradient for one loop.

    Raises ValueError when the grid undersamples the loop's top harmonic.
    """
    ev = _Evaluator(config, loop.symmetry, loop.max_harmonic, grid)
    x = coefficient_vector(loop)
    kinetic, potential = ev.value_parts(x)
    value, grad = ev.value_grad(x)
    return ActionEvaluation(
        value=value,
        gradient=grad,
        gradient_norm=float(np.linalg.norm(grad)),
        kinetic=kinetic,
        potential=potential,
    )


def hessian_vector(config: CircularConfig, loop: LoopPath, direction, grid: int) -> np.ndarray:
    """Second derivative of the action applied to a coefficient direction.

    The kinetic block is diagonal, (2*pi*k)^2 / 2 per coefficient; the
    interaction block integrates n*(2z^2 - r^2)/(r^2 + z^2)^(5/2) against
    products of modes. The direction must live in the loop's symmetry class
    (zero on every forbidden slot).
    """
    ev = _Evaluator(config, loop.symmetry, loop.max_harmonic, grid)
    d = np.asarray(direction, dtype=float)
    if d.shape != (2 * loop.max_harmonic,):
        raise ValueError(
            f"direction must have shape ({2 * loop.max_harmonic},) for this loop, got {d.shape}"
        )
    if np.any(d[~ev.mask] != 0.0):
        raise ValueError("direction has components outside the loop's symmetry class")
    da, db = ev.split(d)
    z = ev.z_values(coefficient_vector(loop))
    sq = config.radius**2 + z * z
    curvature = config.n * (2.0 * z * z - config.radius**2) / sq**2.5
    dz = ev.cos @ da + ev.sin @ db
    weighted = curvature * dz
    out = np.concatenate(
        [
            0.5 * ev.w2 * da + ev.cos.T @ weighted / grid,
            0.5 * ev.w2 * db + ev.sin.T @ weighted / grid,
        ]
    )
    out[~ev.mask] = 0.0
    return out


def _bfgs(ev: _Evaluator, x0: np.ndarray, tolerance: float, max_iterations: int):
    """Packed-space BFGS with Armijo backtracking.

    Returns (x, action, gradient_norm, iterations, converged); every
    accepted step strictly decreases the action.
    """
    x = x0[ev.free].copy()
    f, g = ev.value_grad_packed(x)
    if not np.isfinite(f):
        raise NumericalError(f"non-finite action {f} at the starting loop")
    dim = x.size
    identity = np.eye(dim)
    inv_hessian = identity.copy()
    iterations = 0
    while float(np.linalg.norm(g)) > tolerance and iterations < max_iterations:
        direction = -inv_hessian @ g
        slope = float(direction @ g)
        if slope >= 0.0:  # stale curvature model; restart from steepest descent
            inv_hessian = identity.copy()
            direction = -g
            slope = float(direction @ g)
        step = 1.0
        accepted = False
        for _ in range(60):
            f_new, g_new = ev.value_grad_packed(x + step * direction)
            if not np.isfinite(f_new):
                raise NumericalError(f"non-finite action {f_new} during line search")
            if f_new <= f + ARMIJO_SLOPE_FRACTION * step * slope:
                accepted = True
                break
            step *= 0.5
        if not accepted:
            break  # no further decrease representable
        s = step * direction
        y = g_new - g
        x = x + s
        f, g = f_new, g_new
        iterations += 1
        sy = float(s @ y)
        if sy > 1e-12 * float(np.linalg.norm(s)) * float(np.linalg.norm(y)):
            rho = 1.0 / sy
            left = identity - rho * np.outer(s, y)
            inv_hessian = left @ inv_hessian @ left.T + rho * np.outer(s, s)
    gradient_norm = float(np.linalg.norm(g))
    return x, f, gradient_norm, iterations, gradient_norm <= tolerance


def _pad_to(loop: LoopPath, max_harmonic: int) -> np.ndarray:
    if loop.max_harmonic > max_harmonic:
        extra_a = loop.a[max_harmonic:]
        extra_b = loop.b[max_harmonic:]
        if np.any(extra_a != 0.0) or np.any(extra_b != 0.0):
            raise ValueError(
                f"start loop has nonzero harmonics above max_harmonic={max_harmonic}"
            )
        a, b = loop.a[:max_harmonic], loop.b[:max_harmonic]
    else:
        pad = max_harmonic - loop.max_harmonic
        a = np.concatenate([loop.a, np.zeros(pad)])
        b = np.concatenate([loop.b, np.zeros(pad)])
    return np.concatenate([a, b])


def _start_vectors(
    ev: _Evaluator,
    start,
    seeds,
    amplitude: float,
    perturb: bool,
) -> list[tuple[str, np.ndarray]]:
    K = ev.max_harmonic
    if isinstance(start, LoopPath):
        if start.symmetry is not ev.symmetry:
            raise ValueError("start loop belongs to a different symmetry class")
        x0 = _pad_to(start, K)
        if perturb and not np.any(x0 != 0.0):
            x0[K] = ZERO_START_NUDGE  # b_1 slot: lowest unstable mode
            return [("zero+nudge", x0)]
        return [("given", x0)]
    if isinstance(start, (int, np.integer)):
        loop = random_loop(ev.symmetry, K, amplitude, int(start))
        return [(f"seed={int(start)}", _pad_to(loop, K))]
    if start is not None:
        raise ValueError(f"start must be a LoopPath, an integer seed, or None, got {type(start)!r}")
    out = []
    for seed in seeds:
        loop = random_loop(ev.symmetry, K, amplitude, int(seed))
        out.append((f"seed={int(seed)}", _pad_to(loop, K)))
    if not out:
        raise ValueError("multi-start needs at least one seed")
    return out


def minimize(
    config: CircularConfig,
    symmetry: SymmetryClass,
    max_harmonic: int = 32,
    grid: int | None = None,
    start: LoopPath | int | None = None,
    seeds=(0, 1, 2, 3),
    amplitude: float = 0.5,
    tolerance: float = 1e-8,
    max_iterations: int = 500,
    perturb: bool = True,
) -> MinimizeResult:
    """Minimize the action over one symmetry class.

    With `start=None` the search is multi-start over `seeds` (random loops of
    the given amplitude) and the candidate with the lowest action wins; ties
    within 1e-12 relative break toward the smaller Sobolev norm, so the
    outcome does not depend on evaluation order. Passing a LoopPath or a
    single integer seed runs exactly one descent. An exactly-zero start is
    nudged off the planar critical point unless `perturb=False`.

    Returns the best iterate even when unconverged (`converged=False`).
    """
    if tolerance <= 0.0:
        raise ValueError(f"tolerance must be positive, got {tolerance}")
    if max_harmonic < 1:
        raise ValueError(f"max_harmonic must be >= 1, got {max_harmonic}")
    if max_iterations < 0:
        raise ValueError(f"max_iterations must be >= 0, got {max_iterations}")
    if grid is None:
        grid = max(256, 8 * max_harmonic)
    ev = _Evaluator(config, symmetry, max_harmonic, grid)

    best = None  # (action, sobolev, packed x, outcome)
    outcomes: list[StartOutcome] = []
    for label, x0 in _start_vectors(ev, start, seeds, amplitude, perturb):
        x, f, gnorm, iterations, converged = _bfgs(ev, x0, tolerance, max_iterations)
        outcome = StartOutcome(
            label=label, action=f, gradient_norm=gnorm, iterations=iterations, converged=converged
        )
        outcomes.append(outcome)
        logger.info(
            "minimize n=%d %s %s: action=%.12g |grad|=%.3g iterations=%d converged=%s",
            config.n, symmetry.value, label, f, gnorm, iterations, converged,
        )
        norm = sobolev_norm(from_coefficients(symmetry, *ev.split(ev.embed(x))))
        if best is None:
            best = (f, norm, x, outcome)
            continue
        tie = abs(f - best[0]) <= ACTION_TIE_REL * max(1.0, abs(f), abs(best[0]))
        if (tie and norm < best[1]) or (not tie and f < best[0]):
            best = (f, norm, x, outcome)

    f, _, x, outcome = best
    dense = ev.embed(x)
    loop = from_coefficients(symmetry, *ev.split(dense))
    return MinimizeResult(
        loop=loop,
        action=f,
        gradient_norm=outcome.gradient_norm,
        iterations=outcome.iterations,
        amplitude=ev.amplitude(dense),
        converged=outcome.converged,
        starts=tuple(outcomes),
    )


def minimize_result_dict(result: MinimizeResult, n: int) -> dict:
    """Wire-format document for a MinimizeResult."""
    return {
        "action": float(result.action),
        "gradient_norm": float(result.gradient_norm),
        "iterations": int(result.iterations),
        "amplitude": float(result.amplitude),
        "converged": bool(result.converged),
        "loop": loop_to_dict(result.loop, n),
    }
