"""Batch normalization over gyro-structures on Riemannian manifolds."""

from .axioms import axiom_suite, family_suite, full_suite
from .base import GyroError, GyroOps
from .batchnorm import (
    BatchNormState,
    BatchReport,
    GyroBatchNorm,
    cor_gyrobn,
    cor_row_states,
    forward,
    init_state,
    normalize,
    state_from_json,
    state_to_json,
)
from .descriptor import DescriptorError, ManifoldDescriptor, make_ops, parse_descriptor
from .frechet import KarcherConfig, binary_barycenter, frechet_mean, frechet_variance

__all__ = [
    "BatchNormState",
    "BatchReport",
    "DescriptorError",
    "GyroBatchNorm",
    "GyroError",
    "GyroOps",
    "KarcherConfig",
    "ManifoldDescriptor",
    "axiom_suite",
    "binary_barycenter",
    "cor_gyrobn",
    "cor_row_states",
    "family_suite",
    "forward",
    "frechet_mean",
    "frechet_variance",
    "full_suite",
    "init_state",
    "make_ops",
    "normalize",
    "parse_descriptor",
    "state_from_json",
    "state_to_json",
]
