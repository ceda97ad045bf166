"""Numerical tolerances and limits shared by every module."""

from dataclasses import dataclass


@dataclass(frozen=True)
class Tolerances:
    row_sum: float = 1e-9
    distribution_sum: float = 1e-12
    power_iteration: float = 1e-13
    power_iteration_max_iter: int = 100_000
    eigen_residual: float = 1e-10
    stationary_residual: float = 1e-12
    stationary_start: float = 1e-12
    # pruned enumerations fail loudly past this many visited cylinders
    enumeration_cap: int = 10_000_000
    monofractal: float = 1e-9
    max_ell: int = 64


TOL = Tolerances()
