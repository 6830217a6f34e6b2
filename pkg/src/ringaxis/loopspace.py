"""Periodic axial loops as truncated trigonometric series.

A loop z(t) = sum_k [a_k cos(2*pi*k*t) + b_k sin(2*pi*k*t)] has period
exactly 1 and zero mean by construction (there is no constant term). Two
symmetry classes are supported:

* LAMBDA1 -- anti-periodic by half a period, z(t + 1/2) = -z(t); only odd
  harmonics survive.
* LAMBDA2 -- odd in time, z(-t) = -z(t); pure sine series.

The spectral representation turns the class constraints into exact
coefficient masks, makes derivatives exact, and diagonalizes the per-mode
curvature analysis performed elsewhere in the package.

Coefficient vectors use the dense layout [a_1..a_K, b_1..b_K]; entries
forbidden by a class are identically zero.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from typing import Iterable

import numpy as np


class SymmetryClass(enum.Enum):
    """Loop symmetry classes, keyed by their wire-format names."""

    LAMBDA1 = "lambda1"  # z(t + 1/2) = -z(t)
    LAMBDA2 = "lambda2"  # z(-t) = -z(t)


def class_mask(symmetry: SymmetryClass, max_harmonic: int) -> np.ndarray:
    """Boolean mask of admissible slots in the dense coefficient layout."""
    if max_harmonic < 1:
        raise ValueError(f"max_harmonic must be >= 1, got {max_harmonic}")
    k = np.arange(1, max_harmonic + 1)
    if symmetry is SymmetryClass.LAMBDA1:
        odd = k % 2 == 1
        return np.concatenate([odd, odd])
    return np.concatenate([np.zeros(max_harmonic, dtype=bool), np.ones(max_harmonic, dtype=bool)])


@dataclass(frozen=True)
class LoopPath:
    """Immutable periodic loop; index k-1 of `a`/`b` holds harmonic k.

    Construction validates the symmetry-class constraints; use `project`
    or `from_coefficients` to coerce raw coefficients instead.
    """

    symmetry: SymmetryClass
    a: np.ndarray
    b: np.ndarray

    def __post_init__(self) -> None:
        a = np.array(self.a, dtype=float)
        b = np.array(self.b, dtype=float)
        if a.ndim != 1 or a.shape != b.shape or a.size < 1:
            raise ValueError("coefficient arrays must be equal-length 1-d with at least one slot")
        if not (np.all(np.isfinite(a)) and np.all(np.isfinite(b))):
            raise ValueError("coefficients must be finite")
        if self.symmetry is SymmetryClass.LAMBDA2:
            if np.any(a != 0.0):
                raise ValueError("odd loops are pure sine series (all cosine coefficients zero)")
        elif self.symmetry is SymmetryClass.LAMBDA1:
            # even harmonics sit at odd indices (k = index + 1)
            if np.any(a[1::2] != 0.0) or np.any(b[1::2] != 0.0):
                raise ValueError("half-period anti-symmetry admits odd harmonics only")
        else:
            raise ValueError(f"unknown symmetry class {self.symmetry!r}")
        a.setflags(write=False)
        b.setflags(write=False)
        object.__setattr__(self, "a", a)
        object.__setattr__(self, "b", b)

    @property
    def max_harmonic(self) -> int:
        return self.a.size

    @property
    def is_zero(self) -> bool:
        return not (np.any(self.a != 0.0) or np.any(self.b != 0.0))

    def harmonics(self) -> list[tuple[int, float, float]]:
        """Nonzero (k, a_k, b_k) triples in ascending k order."""
        out = []
        for i in range(self.a.size):
            if self.a[i] != 0.0 or self.b[i] != 0.0:
                out.append((i + 1, float(self.a[i]), float(self.b[i])))
        return out


def zero_loop(symmetry: SymmetryClass, max_harmonic: int = 1) -> LoopPath:
    return LoopPath(symmetry, np.zeros(max_harmonic), np.zeros(max_harmonic))


def from_coefficients(symmetry: SymmetryClass, a, b) -> LoopPath:
    """Dense coefficient arrays -> LoopPath, zeroing what the class forbids."""
    a = np.array(a, dtype=float)
    b = np.array(b, dtype=float)
    if a.ndim != 1 or a.shape != b.shape or a.size < 1:
        raise ValueError("coefficient arrays must be equal-length 1-d with at least one slot")
    mask = class_mask(symmetry, a.size)
    a = np.where(mask[: a.size], a, 0.0)
    b = np.where(mask[a.size :], b, 0.0)
    return LoopPath(symmetry, a, b)


def project(
    harmonics: Iterable[tuple[int, float, float]],
    symmetry: SymmetryClass,
    max_harmonic: int | None = None,
) -> LoopPath:
    """Build a loop from raw (k, a_k, b_k) triples, projecting onto the class.

    Forbidden coefficients are zeroed (even k for LAMBDA1, every cosine for
    LAMBDA2); the projection is idempotent. Duplicate mode indices are
    rejected rather than merged.
    """
    entries = [(int(k), float(av), float(bv)) for k, av, bv in harmonics]
    if any(k < 1 for k, _, _ in entries):
        raise ValueError("harmonic indices must be >= 1")
    seen = [k for k, _, _ in entries]
    if len(set(seen)) != len(seen):
        raise ValueError("duplicate harmonic index in raw coefficient list")
    top = max(seen, default=1)
    if max_harmonic is None:
        max_harmonic = top
    elif max_harmonic < top:
        raise ValueError(f"max_harmonic={max_harmonic} drops declared harmonic k={top}")
    a = np.zeros(max_harmonic)
    b = np.zeros(max_harmonic)
    for k, av, bv in entries:
        a[k - 1] = av
        b[k - 1] = bv
    return from_coefficients(symmetry, a, b)


def coefficient_vector(loop: LoopPath) -> np.ndarray:
    """Dense [a_1..a_K, b_1..b_K] vector (a fresh, writable copy)."""
    return np.concatenate([loop.a, loop.b])


def loop_from_vector(symmetry: SymmetryClass, vector) -> LoopPath:
    vector = np.asarray(vector, dtype=float)
    if vector.ndim != 1 or vector.size % 2 != 0 or vector.size < 2:
        raise ValueError("coefficient vector must have even length 2*max_harmonic")
    half = vector.size // 2
    return from_coefficients(symmetry, vector[:half], vector[half:])


def scaled(loop: LoopPath, factor: float) -> LoopPath:
    return LoopPath(loop.symmetry, factor * loop.a, factor * loop.b)


def evaluate(loop: LoopPath, t):
    """Series value and termwise derivative at time(s) t.

    The argument is reduced modulo 1 before evaluation, so periodicity is
    exact: whenever t + 1 is representable, evaluate(loop, t + 1) matches
    evaluate(loop, t) bit for bit. Accepts a scalar or an ndarray; returns
    (z, zdot) of matching shape.
    """
    tau = np.asarray(t, dtype=float)
    scalar = tau.ndim == 0
    tau = np.atleast_1d(tau)
    tau = tau - np.floor(tau)
    k = np.arange(1, loop.max_harmonic + 1, dtype=float)
    phase = 2.0 * math.pi * tau[:, None] * k[None, :]
    cos, sin = np.cos(phase), np.sin(phase)
    w = 2.0 * math.pi * k
    z = cos @ loop.a + sin @ loop.b
    zdot = -sin @ (w * loop.a) + cos @ (w * loop.b)
    if scalar:
        return float(z[0]), float(zdot[0])
    return z, zdot


def sobolev_norm(loop: LoopPath) -> float:
    """L2 norm of the loop plus L2 norm of its derivative (Parseval form)."""
    power = loop.a**2 + loop.b**2
    k = np.arange(1, loop.max_harmonic + 1)
    return math.sqrt(0.5 * float(power.sum())) + math.sqrt(
        0.5 * float(((2.0 * math.pi * k) ** 2 * power).sum())
    )


def random_loop(symmetry: SymmetryClass, max_harmonic: int, amplitude: float, seed: int) -> LoopPath:
    """Deterministic random loop: uniform coefficients, then class projection."""
    if max_harmonic < 1:
        raise ValueError(f"max_harmonic must be >= 1, got {max_harmonic}")
    if not amplitude > 0.0:
        raise ValueError(f"amplitude must be positive, got {amplitude}")
    rng = np.random.default_rng(seed)
    a = rng.uniform(-amplitude, amplitude, max_harmonic)
    b = rng.uniform(-amplitude, amplitude, max_harmonic)
    return from_coefficients(symmetry, a, b)


def symmetry_violation(loop: LoopPath, times) -> float:
    """Largest violation of the loop's class identity over the given times.

    Measures |z(t + 1/2) + z(t)| for LAMBDA1 and |z(-t) + z(t)| for LAMBDA2;
    structurally admissible coefficients keep this at rounding level.
    """
    times = np.atleast_1d(np.asarray(times, dtype=float))
    z, _ = evaluate(loop, times)
    if loop.symmetry is SymmetryClass.LAMBDA1:
        z_mapped, _ = evaluate(loop, times + 0.5)
    else:
        z_mapped, _ = evaluate(loop, -times)
    return float(np.max(np.abs(z_mapped + z)))


def loop_to_dict(loop: LoopPath, n: int) -> dict:
    """Wire-format document: {"n", "space", "harmonics"} with zeros omitted."""
    return {
        "n": int(n),
        "space": loop.symmetry.value,
        "harmonics": [{"k": k, "a": a, "b": b} for k, a, b in loop.harmonics()],
    }


def loop_from_dict(doc) -> tuple[LoopPath, int]:
    """Parse the wire format; raises ValueError on malformed or out-of-class input."""
    if not isinstance(doc, dict):
        raise ValueError("loop document must be a JSON object")
    try:
        n = doc["n"]
        space = doc["space"]
        harmonics = doc["harmonics"]
    except KeyError as missing:
        raise ValueError(f"loop document missing key {missing}") from None
    if not isinstance(n, int) or isinstance(n, bool) or n < 2:
        raise ValueError(f"loop document needs integer n >= 2, got {n!r}")
    try:
        symmetry = SymmetryClass(space)
    except ValueError:
        raise ValueError(f"unknown loop space {space!r}") from None
    if not isinstance(harmonics, list):
        raise ValueError("harmonics must be a list")
    entries: list[tuple[int, float, float]] = []
    for item in harmonics:
        if not isinstance(item, dict) or not {"k", "a", "b"} <= set(item):
            raise ValueError(f"malformed harmonic entry {item!r}")
        k = item["k"]
        if not isinstance(k, int) or isinstance(k, bool) or k < 1:
            raise ValueError(f"harmonic index must be a positive integer, got {k!r}")
        entries.append((k, float(item["a"]), float(item["b"])))
    ks = [k for k, _, _ in entries]
    if len(set(ks)) != len(ks):
        raise ValueError("duplicate harmonic index in loop document")
    if ks != sorted(ks):
        raise ValueError("harmonics must be sorted by ascending k")
    top = max(ks, default=1)
    a = np.zeros(top)
    b = np.zeros(top)
    for k, av, bv in entries:
        a[k - 1] = av
        b[k - 1] = bv
    # direct construction validates the class instead of silently projecting
    return LoopPath(symmetry, a, b), n
