import pytest
import numpy as np

from skeptic import config as C
from skeptic.features.tools import preset
from skeptic.mixture.structures import PriorSpec


def test_prior_validation():
    with pytest.raises(ValueError):
        PriorSpec(bounds=())
    with pytest.raises(ValueError):
        PriorSpec(bounds=((1.0, 0.0),))
    with pytest.raises(ValueError):
        PriorSpec(bounds=((0.0, np.inf),))
    with pytest.raises(ValueError):
        PriorSpec(bounds=((0.0, 1.0),), beta_coordinates=(1,))


def test_default_resolution():
    assert PriorSpec(bounds=((0, 1),)).resolution == C.default_nodes_per_dim(1) == 65
    assert PriorSpec(bounds=((0, 1),) * 3).resolution == 33
    assert PriorSpec(bounds=((0, 1),), nodes_per_dim=7).resolution == 7


def test_beta_scale_shift():
    prior = PriorSpec.for_features(preset("strategy-3"), bounds=[(0, 1), (0, 2), (0, 1)])
    assert prior.beta_coordinates == (1,)
    assert np.allclose(prior.theta_bounds, [[0, 1], [-1, 1], [0, 1]])
    assert prior.log_density == pytest.approx(-np.log(2))


def test_origin_support_flag():
    assert not PriorSpec.for_features(preset("strategy-1")).supports_origin
    assert PriorSpec(bounds=((-1, 1), (-0.5, 2))).supports_origin
    # beta in [0, 2] is theta in [-1, 1]
    assert PriorSpec.for_features(preset("strategy-2"), bounds=[(-1, 1), (0, 2)]).supports_origin


def test_contains():
    prior = PriorSpec(bounds=((0, 1), (0, 2)), beta_coordinates=(1,))
    assert prior.contains([0.5, 0.0])
    assert not prior.contains([0.0, 0.0])
    assert prior.contains([0.0, 0.0], strict=False)
    assert not prior.contains([0.5, 1.5], strict=False)


def test_from_text_round_trip():
    spec = preset("strategy-2")
    prior = PriorSpec.from_text("-1:1,0:2", spec, nodes_per_dim=9)
    assert prior.to_text() == "-1:1,0:2"
    assert prior.beta_coordinates == (1,)
    assert prior.resolution == 9


@pytest.mark.parametrize("text", ["0-1", "a:b", "0:1:2"])
def test_from_text_rejects_garbage(text):
    with pytest.raises(ValueError):
        PriorSpec.from_text(text, preset("strategy-1"))


def test_for_features_dimension_mismatch():
    with pytest.raises(ValueError):
        PriorSpec.for_features(preset("strategy-2"), bounds=[(0, 1)])
