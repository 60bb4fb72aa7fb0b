"""Manifold descriptors and their string grammar.

Examples of accepted strings::

    stereo:K=-1:n=16
    radius:K=1:n=8
    klein:K=-0.5:n=4
    grass-onb:n=50:p=10
    grass-pp:n=6:p=2
    spd-aim:n=4
    correlation:n=10

``stereo`` or ``radius`` with ``K=0`` select the Euclidean space.
"""

from dataclasses import dataclass
from typing import Optional

FAMILIES = (
    "stereo",
    "radius",
    "klein",
    "grass-onb",
    "grass-pp",
    "spd-aim",
    "spd-lem",
    "spd-lcm",
    "correlation",
)

_ALIASES = {
    "stereographic": "stereo",
    "grassmannian-onb": "grass-onb",
    "grassmannian-pp": "grass-pp",
}

_CURVED = ("stereo", "radius", "klein")
_GRASS = ("grass-onb", "grass-pp")


class DescriptorError(ValueError):
    """Malformed descriptor string or invalid parameters."""


@dataclass(frozen=True)
class ManifoldDescriptor:
    family: str
    n: int
    K: Optional[float] = None
    p: Optional[int] = None

    def __post_init__(self):
        if self.family not in FAMILIES:
            raise DescriptorError(f"unknown family {self.family!r}")
        if self.n < 1:
            raise DescriptorError("n must be positive")
        if self.family in _CURVED:
            if self.K is None:
                raise DescriptorError(f"{self.family} requires K")
            if self.family == "klein" and not self.K < 0:
                raise DescriptorError("klein requires K < 0")
        elif self.K is not None:
            raise DescriptorError(f"{self.family} takes no curvature")
        if self.family in _GRASS:
            if self.p is None or not 0 < self.p < self.n:
                raise DescriptorError("grassmannian requires 0 < p < n")
        elif self.p is not None:
            raise DescriptorError(f"{self.family} takes no p")
        if self.family == "correlation" and self.n < 2:
            raise DescriptorError("correlation requires n >= 2")

    @property
    def euclidean(self):
        return self.family in ("stereo", "radius") and self.K == 0

    def __str__(self):
        parts = [self.family]
        if self.K is not None:
            parts.append(f"K={self.K:g}")
        parts.append(f"n={self.n}")
        if self.p is not None:
            parts.append(f"p={self.p}")
        return ":".join(parts)


def parse_descriptor(text):
    """Parse ``"family:key=value:..."`` into a :class:`ManifoldDescriptor`."""
    if isinstance(text, ManifoldDescriptor):
        return text
    fields = [f.strip() for f in str(text).strip().split(":") if f.strip()]
    if not fields:
        raise DescriptorError("empty descriptor")
    family = _ALIASES.get(fields[0].lower(), fields[0].lower())
    values = {}
    for item in fields[1:]:
        key, sep, value = item.partition("=")
        if not sep or key not in ("K", "n", "p") or key in values:
            raise DescriptorError(f"bad descriptor field {item!r} in {text!r}")
        try:
            values[key] = float(value) if key == "K" else int(value)
        except ValueError as exc:
            raise DescriptorError(f"bad value in {item!r}") from exc
    if "n" not in values:
        raise DescriptorError(f"descriptor {text!r} lacks n")
    return ManifoldDescriptor(family, values["n"], values.get("K"), values.get("p"))


def make_ops(descriptor):
    """Build the :class:`~gyrobn.base.GyroOps` bundle for a descriptor."""
    from .manifolds import (
        CorrelationOps,
        EuclideanOps,
        GrassmannOnbOps,
        GrassmannPpOps,
        KleinOps,
        RadiusOps,
        SpdOps,
        StereographicOps,
    )

    d = parse_descriptor(descriptor)
    if d.euclidean:
        return EuclideanOps(d)
    if d.family == "stereo":
        return StereographicOps(d)
    if d.family == "radius":
        return RadiusOps(d)
    if d.family == "klein":
        return KleinOps(d)
    if d.family == "grass-onb":
        return GrassmannOnbOps(d)
    if d.family == "grass-pp":
        return GrassmannPpOps(d)
    if d.family.startswith("spd-"):
        return SpdOps(d)
    return CorrelationOps(d)
