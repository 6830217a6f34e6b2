"""Vertical-axis periodic orbits over a rotating ring of equal masses.

A numerical laboratory in three parts: build the rotating ring of n equal
unit masses and verify its force balance (`geometry`), minimize the axial
action functional over symmetric loop spaces to produce nonplanar periodic
orbits of the massless body (`loopspace`, `action`), and run the
second-variation/conjugate-point analysis showing the planar rest solution
is not a minimizer (`jacobi`), with direct integration and Euler-Lagrange
verification closing the loop (`dynamics`).
"""

from .action import (
    ActionEvaluation,
    MinimizeResult,
    NumericalError,
    StartOutcome,
    action,
    hessian_vector,
    minimize,
    minimize_result_dict,
)
from .dynamics import (
    Trajectory,
    TrajectorySample,
    axial_force,
    el_residual,
    energy,
    integrate,
)
from .geometry import (
    CircularConfig,
    IdentityCheck,
    build_config,
    check_csc_identity,
    csc_sum,
    ring_residual,
)
from .jacobi import (
    JacobiReport,
    ScanResult,
    ScanRow,
    analyze,
    jacobi_solution,
    report_to_dict,
    saddle_scan,
    scan_to_csv,
    second_variation_mode,
)
from .loopspace import (
    LoopPath,
    SymmetryClass,
    class_mask,
    coefficient_vector,
    evaluate,
    from_coefficients,
    loop_from_dict,
    loop_from_vector,
    loop_to_dict,
    project,
    random_loop,
    scaled,
    sobolev_norm,
    symmetry_violation,
    zero_loop,
)

__version__ = "0.1.0"

__all__ = [
    "ActionEvaluation",
    "CircularConfig",
    "IdentityCheck",
    "JacobiReport",
    "LoopPath",
    "MinimizeResult",
    "NumericalError",
    "ScanResult",
    "ScanRow",
    "StartOutcome",
    "SymmetryClass",
    "Trajectory",
    "TrajectorySample",
    "action",
    "analyze",
    "axial_force",
    "build_config",
    "check_csc_identity",
    "class_mask",
    "coefficient_vector",
    "csc_sum",
    "el_residual",
    "energy",
    "evaluate",
    "from_coefficients",
    "hessian_vector",
    "integrate",
    "jacobi_solution",
    "loop_from_dict",
    "loop_from_vector",
    "loop_to_dict",
    "minimize",
    "minimize_result_dict",
    "project",
    "random_loop",
    "report_to_dict",
    "ring_residual",
    "saddle_scan",
    "scaled",
    "scan_to_csv",
    "second_variation_mode",
    "sobolev_norm",
    "symmetry_violation",
    "zero_loop",
]
