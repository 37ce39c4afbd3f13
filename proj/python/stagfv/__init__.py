"""Staggered finite-volume solver for the compressible Euler equations.

The heavy lifting lives in the C++ extension; this package re-exports the
main operations: mesh construction, initialization, time stepping with the
conservation audit, the dual-flux coefficients and the exact Riemann solver.
"""

from stagfv._core import (
    AuditReport,
    ConfigurationError,
    Mesh,
    RunResult,
    SolverFailure,
    State,
    build_mesh,
    compute_dt,
    initialize,
    initialize_preset,
    riemann_sample,
    riemann_solve,
    run,
    solve_xi_coefficients,
    step,
)

__all__ = [
    "AuditReport",
    "ConfigurationError",
    "Mesh",
    "RunResult",
    "SolverFailure",
    "State",
    "build_mesh",
    "compute_dt",
    "initialize",
    "initialize_preset",
    "riemann_sample",
    "riemann_solve",
    "run",
    "solve_xi_coefficients",
    "step",
]

__version__ = "0.1.0"
