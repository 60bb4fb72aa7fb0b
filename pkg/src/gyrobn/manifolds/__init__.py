"""Concrete gyro-structures, one class per manifold family."""

from .correlation import CorrelationOps, cor_to_poly, poly_to_cor
from .euclidean import EuclideanOps
from .grassmannian import GrassmannOnbOps, GrassmannPpOps
from .klein import KleinOps
from .radius import RadiusOps, radius_to_stereo, stereo_to_radius
from .spd import SpdOps
from .stereographic import InfinityError, StereographicOps, infinity, is_infinity

__all__ = [
    "CorrelationOps",
    "EuclideanOps",
    "GrassmannOnbOps",
    "GrassmannPpOps",
    "InfinityError",
    "KleinOps",
    "RadiusOps",
    "SpdOps",
    "StereographicOps",
    "cor_to_poly",
    "infinity",
    "is_infinity",
    "poly_to_cor",
    "radius_to_stereo",
    "stereo_to_radius",
]
