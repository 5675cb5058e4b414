import pytest
import numpy as np
from hypothesis import given, settings
from hypothesis import strategies as st

from skeptic.sim.process import preset, generate, oracle_growth_rate
from skeptic.sim.structures import Honest, Constant, FromData, Scenario, Bernoulli, Alternating, MarkovChain


def test_case_one_forecasts_alternate():
    df = generate(preset("case-1", n=6, seed=1))
    assert list(df.columns) == ["n", "p", "x"]
    assert df.p.tolist() == [0.4, 0.6, 0.4, 0.6, 0.4, 0.6]
    assert df.n.tolist() == [1, 2, 3, 4, 5, 6]
    assert set(df.x.unique()) <= {0, 1}


def test_presets():
    case2 = preset("case-2")
    assert case2.reality == Bernoulli(0.5)
    assert case2.forecaster == Alternating((0.4, 0.6))

    case3 = preset("case-3")
    assert case3.forecaster == Constant(0.5)
    assert case3.reality.p11 == 0.7
    assert case3.reality.p10 == 0.3

    honest = preset("honest", forecast=0.3)
    assert honest.reality == Honest()
    assert honest.forecaster == Constant(0.3)

    with pytest.raises(KeyError):
        preset("case-4")


def test_seed_determinism():
    first = generate(preset("case-3", n=500, seed=42))
    second = generate(preset("case-3", n=500, seed=42))
    third = generate(preset("case-3", n=500, seed=43))
    assert first.equals(second)
    assert not first.x.equals(third.x)


def test_honest_constant_forecast_mean():
    n = 10_000
    df = generate(preset("honest", n=n, seed=7))
    sigma = np.sqrt(0.25 / n)
    assert abs(df.x.mean() - 0.5) < 3 * sigma


def test_honest_follows_the_forecast():
    df = generate(preset("honest", n=20_000, seed=1, forecast=0.3))
    assert df.x.mean() == pytest.approx(0.3, abs=0.02)


def test_absorbing_chain():
    scenario = Scenario(forecaster=Constant(0.5), reality=MarkovChain(p11=1.0, p10=0.0, initial=1.0), n=100)
    assert generate(scenario).x.sum() == 100


def test_persistent_chain_has_runs():
    df = generate(preset("case-3", n=20_000, seed=3))
    x = df.x.to_numpy()
    assert x.mean() == pytest.approx(0.5, abs=0.03)
    # P(x_n = 1 | x_{n-1} = 1) close to p11
    assert x[1:][x[:-1] == 1].mean() == pytest.approx(0.7, abs=0.02)


def test_replayed_forecasts():
    scenario = Scenario(forecaster=FromData([0.1, 0.2, 0.3]), reality=Honest(), n=3, seed=0)
    assert generate(scenario).p.tolist() == [0.1, 0.2, 0.3]
    with pytest.raises(ValueError):
        Scenario(forecaster=FromData([0.1, 0.2]), reality=Honest(), n=3)


def test_model_validation():
    with pytest.raises(ValueError):
        Bernoulli(1.2)
    with pytest.raises(ValueError):
        MarkovChain(p11=0.5, p10=-0.1)
    with pytest.raises(ValueError):
        Alternating((0.4, 1.0))
    with pytest.raises(ValueError):
        Constant(0.0)
    with pytest.raises(ValueError):
        Scenario(forecaster=Constant(0.5), reality=Honest(), n=0)


def test_oracle_growth_rate_of_case_one():
    theta, rate = oracle_growth_rate([0.4, 0.6], q=0.7)
    assert theta == pytest.approx(0.88, abs=0.01)
    assert rate == pytest.approx(0.086, abs=0.001)


def test_no_growth_against_a_calibrated_forecast():
    theta, rate = oracle_growth_rate([0.5], q=0.5)
    assert theta == pytest.approx(0.0, abs=1e-3)
    assert rate == pytest.approx(0.0, abs=1e-9)


@settings(max_examples=10)
@given(seed=st.integers(min_value=0, max_value=2**32))
def test_generation_is_reproducible(seed):
    scenario = preset("case-1", n=50, seed=seed)
    assert generate(scenario).equals(generate(scenario))
