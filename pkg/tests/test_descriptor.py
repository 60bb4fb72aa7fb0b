import pytest

from gyrobn.descriptor import DescriptorError, ManifoldDescriptor, make_ops, parse_descriptor
from gyrobn.manifolds import EuclideanOps, GrassmannOnbOps, StereographicOps


@pytest.mark.parametrize(
    "text",
    ["stereo:K=-1:n=16", "radius:K=0.5:n=3", "klein:K=-2:n=4", "grass-onb:n=10:p=3", "grass-pp:n=5:p=2", "spd-aim:n=4", "correlation:n=10"],
)
def test_round_trip(text):
    d = parse_descriptor(text)
    assert parse_descriptor(str(d)) == d


def test_aliases():
    assert parse_descriptor("stereographic:K=-1:n=2").family == "stereo"
    assert parse_descriptor("grassmannian-onb:n=4:p=1").family == "grass-onb"


@pytest.mark.parametrize(
    "text",
    ["", "foo:n=3", "stereo:n=3", "klein:K=1:n=3", "grass-onb:n=3:p=3", "grass-onb:n=3", "spd-aim:K=1:n=3", "correlation:n=1", "stereo:K=-1", "stereo:K=x:n=2", "stereo:K=-1:n=2:n=3"],
)
def test_rejects_invalid(text):
    with pytest.raises(DescriptorError):
        parse_descriptor(text)


def test_make_ops_dispatch():
    assert isinstance(make_ops("stereo:K=0:n=3"), EuclideanOps)
    assert isinstance(make_ops("stereo:K=-1:n=3"), StereographicOps)
    assert isinstance(make_ops(ManifoldDescriptor("grass-onb", 5, p=2)), GrassmannOnbOps)
