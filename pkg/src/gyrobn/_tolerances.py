"""Central numerical tolerances shared by every module."""

from dataclasses import dataclass


@dataclass(frozen=True)
class Tolerances:
    reconstruction: float = 1e-10
    property: float = 1e-8
    skew: float = 1e-12
    small_norm: float = 1e-12
    artanh_clip: float = 1e-15
    eig_floor: float = 1e-12
    singular_denominator: float = 1e-12
    arcsin_series: float = 1e-8
    exp_overflow: float = 700.0


TOL = Tolerances()
