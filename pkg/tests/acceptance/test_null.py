import itertools

import numpy as np
import pytest

from skeptic import sim
from skeptic.audit import run_game
from skeptic.features import attach, preset
from skeptic.mixture import PriorSpec, prior_preset, joint_probability, direct_log_capital

from tests.acceptance.helpers import honest_schedule, log_capital_path

pytestmark = pytest.mark.slow


def test_ville_inequality_against_honest_forecasts():
    n = 500
    schedule = honest_schedule(n)
    spec = preset("strategy-2")
    prior = prior_preset("strategy-2", nodes_per_dim=17)

    hits = 0
    for seed in range(1000):
        scenario = sim.Scenario(forecaster=sim.FromData(schedule), reality=sim.Honest(), n=n, seed=seed)
        series = attach(spec, sim.generate(scenario))
        if log_capital_path(prior, series).max() >= np.log(10):
            hits += 1

    assert hits / 1000 <= 0.10 + 0.03


@pytest.mark.parametrize("name", ["strategy-2", "strategy-3"])
def test_expected_capital_is_one(name):
    n = 10
    forecasts = honest_schedule(n, seed=7)
    prior = prior_preset(name, nodes_per_dim=9)
    spec = preset(name)

    # E[K_n] under honest forecasts is the total joint probability of all sequences
    total = sum(joint_probability(prior, spec, forecasts, outcomes) for outcomes in itertools.product([0, 1], repeat=n))
    assert total == pytest.approx(1, rel=1e-8)


def test_incremental_mixture_equals_direct_quadrature():
    rng = np.random.default_rng(2024)
    for game in range(50):
        n = int(rng.integers(1, 11))
        d = int(rng.integers(1, 3))
        name = "strategy-1" if d == 1 else "strategy-2"
        scenario = sim.Scenario(forecaster=sim.FromData(honest_schedule(n, seed=game)), reality=sim.Honest(), n=n, seed=game)
        series = attach(preset(name), sim.generate(scenario))

        lo = rng.uniform(-2, 0, size=d)
        prior = PriorSpec(bounds=tuple(zip(lo, lo + rng.uniform(0.5, 3, size=d))), nodes_per_dim=9)

        result = run_game(series, preset(name), prior=prior, trace_every=0)
        direct = direct_log_capital(prior, series)
        assert result.log_capital == pytest.approx(direct, rel=1e-10, abs=1e-12)
