"""Conjugate-point analysis of the planar rest solution z = 0.

The second variation of the action at the zero loop is the quadratic form
int_0^1 (P h'^2 + Q h^2) dt with constant coefficients P = 1/2 and
Q = -n / (2 r^3). Its Euler equation (the Jacobi equation)

    h'' + (n / r^3) h = 0

has, for h(0) = 0, h'(0) = 1, the explicit solution
h(t) = sqrt(r^3/n) * sin(omega t) with omega = sqrt(n / r^3), so the first
conjugate point sits at c = pi / omega. Whenever c < 1/2, the zero loop
fails the necessary condition for a one-period local minimum (a nontrivial
solution of the Jacobi equation vanishes twice inside the period), hence
the action minimizer cannot be planar: that is what `zero_loop_is_saddle`
records.

Substituting the 4/n closed form for the cosecant sum would place the
conjugate point at exactly 1/(2n) for every n; the report carries that
claimed location alongside the directly computed one, together with the
identity audit, so the two routes can be compared rather than conflated.
"""

from __future__ import annotations

import math
from dataclasses import asdict, dataclass
from typing import NamedTuple

import numpy as np

from .geometry import CircularConfig, build_config, check_csc_identity


@dataclass(frozen=True)
class JacobiReport:
    n: int
    p_coeff: float  # 1/2, second derivative of the density in z'
    q_coeff: float  # -n / (2 r^3)
    omega: float  # sqrt(n / r^3)
    conjugate_point: float  # pi / omega
    half_period_value: float  # h(1/2)
    zero_loop_is_saddle: bool  # conjugate_point < 1/2
    claimed_conjugate_point: float  # 1/(2n), implied by the 4/n closed form
    csc_identity_holds: bool


class ScanRow(NamedTuple):
    n: int
    csc_sum: float
    radius: float
    conjugate_point: float
    is_saddle: bool


@dataclass(frozen=True)
class ScanResult:
    rows: tuple[ScanRow, ...]
    n_star: int | None  # smallest n whose zero loop is NOT a saddle


_SPLITTER = 134217729.0  # 2^27 + 1, Veltkamp splitting constant


def _accurate_sin_product(omega: float, t):
    """sin(omega * t) with the product's rounding error compensated.

    The phase omega*t reaches ~20, so a plainly rounded product jitters the
    angle by ~2e-15 and the sine by ~1e-16 per call; second-difference
    oracles divide such jitter by step^2 and would drown in it. A Dekker
    exact product recovers the dropped low part e, and sin(p + e) is
    corrected to first order, leaving errors at a couple of ulps of the
    result.
    """
    p = omega * t
    c_omega = _SPLITTER * omega
    high_omega = c_omega - (c_omega - omega)
    low_omega = omega - high_omega
    c_t = _SPLITTER * t
    high_t = c_t - (c_t - t)
    low_t = t - high_t
    e = ((high_omega * high_t - p) + high_omega * low_t + low_omega * high_t) + low_omega * low_t
    return np.sin(p) + e * np.cos(p)


def jacobi_solution(config: CircularConfig, t):
    """Solution of the Jacobi equation with h(0) = 0, h'(0) = 1."""
    omega = math.sqrt(config.n / config.radius**3)
    t = np.asarray(t, dtype=float)
    h = math.sqrt(config.radius**3 / config.n) * _accurate_sin_product(omega, t)
    return float(h) if h.ndim == 0 else h


def analyze(config: CircularConfig) -> JacobiReport:
    """Full second-variation report for the zero loop of one configuration."""
    r3 = config.radius**3
    omega = math.sqrt(config.n / r3)
    conjugate_point = math.pi / omega
    identity = check_csc_identity(config.n)
    return JacobiReport(
        n=config.n,
        p_coeff=0.5,
        q_coeff=-config.n / (2.0 * r3),
        omega=omega,
        conjugate_point=conjugate_point,
        half_period_value=jacobi_solution(config, 0.5),
        zero_loop_is_saddle=conjugate_point < 0.5,
        claimed_conjugate_point=1.0 / (2.0 * config.n),
        csc_identity_holds=identity.holds,
    )


def second_variation_mode(config: CircularConfig, k: int) -> float:
    """Second variation on the unit-L2 mode sqrt(2)*sin(2*pi*k*t).

    Equals ((2*pi*k)^2 - n/r^3) / 2: negative exactly for the unstable modes
    k < omega / (2*pi), and identical to the zero-loop Hessian diagonal of
    the action in the b_k slot.
    """
    if k < 1:
        raise ValueError(f"mode index must be >= 1, got {k}")
    return 0.5 * (2.0 * math.pi * k) ** 2 - config.n / (2.0 * config.radius**3)


def saddle_scan(n_min: int, n_max: int) -> ScanResult:
    """Conjugate-point location and saddle verdict for every n in [n_min, n_max].

    Each row is computed from the exact cosecant sum for its own n (no
    asymptotics). n_star is the first n whose conjugate point reaches 1/2,
    i.e. whose zero loop stops violating the necessary condition; None when
    every scanned n is still a saddle.
    """
    if not 2 <= n_min <= n_max:
        raise ValueError(f"need 2 <= n_min <= n_max, got [{n_min}, {n_max}]")
    rows = []
    n_star = None
    for n in range(n_min, n_max + 1):
        config = build_config(n)
        report = analyze(config)
        rows.append(
            ScanRow(
                n=n,
                csc_sum=config.csc_sum,
                radius=config.radius,
                conjugate_point=report.conjugate_point,
                is_saddle=report.zero_loop_is_saddle,
            )
        )
        if n_star is None and not report.zero_loop_is_saddle:
            n_star = n
    return ScanResult(rows=tuple(rows), n_star=n_star)


def scan_to_csv(result: ScanResult) -> str:
    lines = ["n,csc_sum,radius,conjugate_point,is_saddle"]
    for row in result.rows:
        lines.append(
            f"{row.n},{row.csc_sum!r},{row.radius!r},{row.conjugate_point!r},"
            f"{'true' if row.is_saddle else 'false'}"
        )
    return "\n".join(lines) + "\n"


def report_to_dict(report: JacobiReport) -> dict:
    doc = asdict(report)
    doc["n"] = int(doc["n"])
    for key in ("p_coeff", "q_coeff", "omega", "conjugate_point", "half_period_value",
                "claimed_conjugate_point"):
        doc[key] = float(doc[key])
    return doc
