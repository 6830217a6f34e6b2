"""Ring of N equal unit masses on a uniformly rotating circle.

Units throughout: gravitational constant 1, unit masses, rotation period 1
(angular frequency 2*pi). Force balance of the rotating N-gon pins the ring
radius through the cosecant sum S(n) = sum_{j=1..n-1} csc(pi*j/n):

    radius^3 * 16*pi^2 = S(n)

`ring_residual` verifies that balance directly from the raw pairwise
gravitational forces, with no reference to the closed-form radius.
`check_csc_identity` audits the closed form S(n) = 4/n that is sometimes
quoted for the sum; it reports both sides rather than assuming either.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

TWO_PI = 2.0 * math.pi
FOUR_PI_SQ = 4.0 * math.pi**2


@dataclass(frozen=True)
class CircularConfig:
    """Regular n-gon of unit masses rotating rigidly with period 1.

    Immutable; safe to share between threads. `build_config` produces
    force-balanced instances; constructing one by hand (e.g. with a wrong
    radius) is allowed so that `ring_residual` can expose the imbalance.
    """

    n: int
    radius: float
    csc_sum: float

    def __post_init__(self) -> None:
        if self.n < 2:
            raise ValueError(f"need at least 2 primaries, got n={self.n}")
        if not (math.isfinite(self.radius) and self.radius > 0.0):
            raise ValueError(f"radius must be positive and finite, got {self.radius}")
        if not (math.isfinite(self.csc_sum) and self.csc_sum >= 1.0):
            raise ValueError(f"cosecant sum is >= 1 for n >= 2, got {self.csc_sum}")

    def primary_positions(self, t: float) -> np.ndarray:
        """Planar positions of the n primaries at time t, shape (n, 2)."""
        angles = TWO_PI * (t + np.arange(self.n) / self.n)
        return self.radius * np.column_stack([np.cos(angles), np.sin(angles)])


class IdentityCheck(NamedTuple):
    lhs: float
    rhs: float
    holds: bool


def _csc_terms(n: int) -> np.ndarray:
    # sin(pi*j/n) = sin(pi*(n-j)/n): folding j onto min(j, n-j) keeps every
    # argument in (0, pi/2], where sin is well conditioned (no cancellation
    # against an inexact pi near the upper end of the range).
    j = np.arange(1, n)
    return 1.0 / np.sin(np.pi * np.minimum(j, n - j) / n)


def csc_sum(n: int) -> float:
    """Sum of csc(pi*j/n) over j = 1..n-1.

    Terms are accumulated smallest first with error-free-transformation
    summation (math.fsum), so the returned double is exactly rounded given
    the individual terms.
    """
    if n < 2:
        raise ValueError(f"cosecant sum needs n >= 2, got n={n}")
    return math.fsum(np.sort(_csc_terms(n)))


def build_config(n: int) -> CircularConfig:
    """Ring whose radius balances mutual gravity against rotation.

    radius = (csc_sum(n) / (16*pi^2))^(1/3), i.e. the unique positive root
    of the balance condition in the module docstring.
    """
    s = csc_sum(n)
    radius = float(np.cbrt(s / (16.0 * math.pi**2)))
    return CircularConfig(n=n, radius=radius, csc_sum=s)


def ring_residual(config: CircularConfig, t: float = 0.0, samples: int = 1) -> float:
    """Worst Newtonian force-balance error of the ring over sampled times.

    At each of `samples` times spaced uniformly from `t`, the analytic
    acceleration -4*pi^2 * q_i of every primary is compared against the
    pairwise gravitational force sum; the largest vector-norm mismatch is
    returned. A correctly balanced radius drives this to rounding level,
    and by rotational symmetry the value does not depend on `t`.
    """
    if samples < 1:
        raise ValueError(f"samples must be >= 1, got {samples}")
    worst = 0.0
    for m in range(samples):
        q = config.primary_positions(t + m / samples)
        diff = q[None, :, :] - q[:, None, :]  # diff[i, j] = q_j - q_i
        dist = np.linalg.norm(diff, axis=-1)
        np.fill_diagonal(dist, 1.0)  # self-term numerator is the zero vector
        force = (diff / dist[:, :, None] ** 3).sum(axis=1)
        mismatch = np.linalg.norm(-FOUR_PI_SQ * q - force, axis=1)
        worst = max(worst, float(mismatch.max()))
    return worst


def check_csc_identity(n: int, rel_tol: float = 1e-9) -> IdentityCheck:
    """Compare csc_sum(n) against the closed form 4/n quoted for it.

    Returns (lhs, rhs, holds) where lhs is the directly summed value, rhs is
    4/n, and holds means they agree to `rel_tol`. The check never assumes
    the identity; direct summation refutes it for every n tested (already
    at n=2: lhs=1, rhs=2).
    """
    lhs = csc_sum(n)
    rhs = 4.0 / n
    return IdentityCheck(lhs=lhs, rhs=rhs, holds=abs(lhs - rhs) <= rel_tol * max(1.0, abs(rhs)))
