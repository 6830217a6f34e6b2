"""Axial motion of the massless body and Euler-Lagrange verification.

On the vertical axis every primary sits at the same distance
sqrt(r^2 + z^2), so the three-dimensional equations of motion reduce to the
autonomous one-dimensional system

    z'' = -n z / (r^2 + z^2)^(3/2)

with conserved energy v^2/2 - n / sqrt(r^2 + z^2). Integration uses the
classical fixed-step fourth-order Runge-Kutta scheme so that runs are
reproducible bit for bit; the force is globally smooth and bounded, so no
step-size control is needed at the period-one time scales used here.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator, NamedTuple

import numpy as np

from .geometry import CircularConfig
from .loopspace import LoopPath


class TrajectorySample(NamedTuple):
    t: float
    z: float
    v: float
    energy: float


@dataclass(frozen=True)
class Trajectory:
    """Time series emitted by `integrate`; arrays share one length."""

    t: np.ndarray
    z: np.ndarray
    v: np.ndarray
    energy: np.ndarray

    def __len__(self) -> int:
        return self.t.size

    def __getitem__(self, i: int) -> TrajectorySample:
        return TrajectorySample(
            float(self.t[i]), float(self.z[i]), float(self.v[i]), float(self.energy[i])
        )

    def __iter__(self) -> Iterator[TrajectorySample]:
        for i in range(len(self)):
            yield self[i]

    @property
    def energy_drift_max(self) -> float:
        return float(np.max(np.abs(self.energy - self.energy[0])))

    def to_csv(self) -> str:
        """CSV with header t,z,v,energy; shortest round-trip float formatting."""
        lines = ["t,z,v,energy"]
        for i in range(len(self)):
            lines.append(
                f"{float(self.t[i])!r},{float(self.z[i])!r},"
                f"{float(self.v[i])!r},{float(self.energy[i])!r}"
            )
        return "\n".join(lines) + "\n"


def axial_force(config: CircularConfig, z):
    """Vertical force -n z / (r^2 + z^2)^(3/2) on the axis point (0, 0, z)."""
    z = np.asarray(z, dtype=float)
    out = -config.n * z / (config.radius**2 + z * z) ** 1.5
    return float(out) if out.ndim == 0 else out


def energy(config: CircularConfig, z, v):
    """Conserved energy v^2/2 - n / sqrt(r^2 + z^2) of the reduced system."""
    z = np.asarray(z, dtype=float)
    v = np.asarray(v, dtype=float)
    out = 0.5 * v * v - config.n / np.sqrt(config.radius**2 + z * z)
    return float(out) if out.ndim == 0 else out


def integrate(config: CircularConfig, z0: float, v0: float, dt: float, steps: int) -> Trajectory:
    """Fixed-step RK4 integration of (z', v') = (v, force(z)).

    Emits steps+1 samples including the initial state; sample times are
    i*dt. Starting exactly at the equilibrium (0, 0) reproduces the zero
    solution without rounding noise.
    """
    if dt <= 0.0:
        raise ValueError(f"dt must be positive, got {dt}")
    if steps < 1:
        raise ValueError(f"steps must be >= 1, got {steps}")
    n = config.n
    r2 = config.radius**2

    def force(z: float) -> float:
        return -n * z / (r2 + z * z) ** 1.5

    zs = np.empty(steps + 1)
    vs = np.empty(steps + 1)
    z, v = float(z0), float(v0)
    zs[0], vs[0] = z, v
    half = 0.5 * dt
    for i in range(1, steps + 1):
        k1z, k1v = v, force(z)
        k2z, k2v = v + half * k1v, force(z + half * k1z)
        k3z, k3v = v + half * k2v, force(z + half * k2z)
        k4z, k4v = v + dt * k3v, force(z + dt * k3z)
        z += dt * (k1z + 2.0 * (k2z + k3z) + k4z) / 6.0
        v += dt * (k1v + 2.0 * (k2v + k3v) + k4v) / 6.0
        zs[i], vs[i] = z, v
    t = np.arange(steps + 1) * dt
    return Trajectory(t=t, z=zs, v=vs, energy=0.5 * vs * vs - n / np.sqrt(r2 + zs * zs))


def el_residual(config: CircularConfig, loop: LoopPath, samples: int) -> float:
    """Worst Euler-Lagrange defect max_t |z''(t) - force(z(t))| of a loop.

    z'' comes from exact termwise differentiation of the series, so the
    returned number isolates how far the loop is from solving the equation
    of motion: zero for the zero loop, spectral-truncation-sized for a
    converged minimizer, and order one for a generic loop.
    """
    if samples < 2 * loop.max_harmonic:
        raise ValueError(
            f"samples={samples} undersamples the loop; need >= {2 * loop.max_harmonic}"
        )
    t = np.arange(samples) / samples
    k = np.arange(1, loop.max_harmonic + 1, dtype=float)
    phase = 2.0 * np.pi * np.outer(t, k)
    w2 = (2.0 * np.pi * k) ** 2
    z = np.cos(phase) @ loop.a + np.sin(phase) @ loop.b
    z_acc = -(np.cos(phase) @ (w2 * loop.a) + np.sin(phase) @ (w2 * loop.b))
    return float(np.max(np.abs(z_acc - axial_force(config, z))))
