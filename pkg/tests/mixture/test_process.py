import itertools

import pytest
import numpy as np

from skeptic import config as C
from skeptic.features.tools import preset
from skeptic.game.tools import init_state, play_round
from skeptic.game.structures import Round, RoundSeries
from skeptic.mixture.structures import PriorSpec, MixtureState
from skeptic.mixture.process import (
    log_capital,
    init_mixture,
    prior_preset,
    node_weights,
    update_mixture,
    posterior_mean,
    quadrature_grid,
    joint_probability,
    mixture_bet_ratio,
    direct_log_capital,
)


def random_series(seed: int, n: int, d: int) -> RoundSeries:
    rng = np.random.Generator(np.random.PCG64(seed))
    p = rng.uniform(0.05, 0.95, size=n)
    c = np.column_stack([np.ones(n), rng.uniform(-2, 2, size=(n, d - 1))])
    x = (rng.random(n) < 0.5).astype(int)
    return RoundSeries(p=p, c=c, x=x)


def play_mixture(prior: PriorSpec, series: RoundSeries) -> tuple[MixtureState, float]:
    mix = init_mixture(prior, series.d)
    state = init_state(series.d)
    for round in series:
        state = play_round(state, round, mixture_bet_ratio(mix, round.p, round.c))
        mix = update_mixture(mix, round)
    return mix, state.logK


def two_node_mixture() -> MixtureState:
    out = MixtureState(
        nodes=np.array([[0.0], [np.log(2)]]),
        log_node_capital=np.zeros(2),
        log_quad_weight=np.log([0.5, 0.5]),
    )
    return out


def test_three_node_weights_sum_to_one():
    nodes, log_weights = quadrature_grid(PriorSpec(bounds=((0, 1),), nodes_per_dim=3))
    assert nodes.shape == (3, 1)
    assert np.exp(log_weights).sum() == pytest.approx(1.0)
    assert np.all((nodes > 0) & (nodes < 1))


def test_tensor_grid_size():
    mix = init_mixture(PriorSpec(bounds=((0, 1), (0, 1)), nodes_per_dim=64), 2)
    assert mix.size == 4096
    assert mix.d == 2


def test_initial_capital_is_one():
    mix = init_mixture(prior_preset("strategy-1"), 1)
    assert log_capital(mix) == pytest.approx(0.0, abs=1e-10)
    assert mix.n == 0


def test_init_mixture_validation():
    with pytest.raises(ValueError):
        init_mixture(prior_preset("strategy-2"), 1)
    with pytest.raises(ValueError):
        init_mixture(PriorSpec(bounds=((0, 1),), nodes_per_dim=1), 1)
    with pytest.raises(ValueError):
        init_mixture(PriorSpec(bounds=((0, 1),) * 4, nodes_per_dim=C.NODE_CAP), 4)


def test_symmetric_prior_does_not_bet_at_first():
    mix = init_mixture(PriorSpec(bounds=((-1, 1),), nodes_per_dim=16), 1)
    assert mixture_bet_ratio(mix, 0.5, [1.0]) == pytest.approx(0.0, abs=1e-10)


def test_two_node_bet_ratio():
    mix = two_node_mixture()
    assert mixture_bet_ratio(mix, 0.5, [1.0]) == pytest.approx(1 / 3)


def test_two_node_reweighting():
    mix = two_node_mixture()
    before = mixture_bet_ratio(mix, 0.5, [1.0])
    for _ in range(5):
        mix = update_mixture(mix, Round(p=0.5, c=[1.0], x=1))

    after = mixture_bet_ratio(mix, 0.5, [1.0])
    assert before < after < 2 / 3
    assert node_weights(mix)[1] > 0.5


def test_uninformative_round():
    mix = init_mixture(prior_preset("strategy-1"), 1)
    mix = update_mixture(mix, Round(p=0.3, c=[0.0], x=1))
    assert np.all(mix.log_node_capital == 0)
    assert mix.n == 1


def test_single_node_at_origin_never_moves():
    mix = MixtureState(nodes=np.zeros((1, 1)), log_node_capital=np.zeros(1), log_quad_weight=np.zeros(1))
    for round in random_series(4, 20, 1):
        mix = update_mixture(mix, round)
    assert log_capital(mix) == 0


def test_update_dimension_mismatch():
    mix = init_mixture(prior_preset("strategy-1"), 1)
    with pytest.raises(ValueError):
        update_mixture(mix, Round(p=0.5, c=[1.0, 1.0], x=1))


def test_one_round_closed_form():
    # K = int_0^1 2 e^t / (1 + e^t) dt = 2 log((1 + e) / 2)
    mix = init_mixture(prior_preset("strategy-1"), 1)
    mix = update_mixture(mix, Round(p=0.5, c=[1.0], x=1))
    assert np.exp(log_capital(mix)) == pytest.approx(2 * np.log((1 + np.e) / 2), rel=1e-12)


def test_grid_refinement():
    series = random_series(8, 10, 1)
    coarse = direct_log_capital(PriorSpec(bounds=((0, 1),), nodes_per_dim=65), series)
    fine = direct_log_capital(PriorSpec(bounds=((0, 1),), nodes_per_dim=2001), series)
    assert coarse == pytest.approx(fine, abs=1e-6)


@pytest.mark.parametrize("seed", range(10))
def test_mixture_is_a_capital_process(seed):
    series = random_series(seed, 25, 2)
    prior = PriorSpec(bounds=((-1, 1), (-0.5, 0.5)), nodes_per_dim=9)

    mix, log_k = play_mixture(prior, series)
    assert log_k == pytest.approx(log_capital(mix), abs=1e-9)
    assert log_capital(mix) == pytest.approx(direct_log_capital(prior, series), rel=1e-10, abs=1e-12)


def test_product_of_factors():
    series = random_series(11, 15, 1)
    mix = init_mixture(prior_preset("strategy-1", nodes_per_dim=17), 1)

    total = 0.0
    for round in series:
        nu = mixture_bet_ratio(mix, round.p, round.c)
        total += np.log1p(nu * (round.x - round.p))
        mix = update_mixture(mix, round)

    assert np.exp(total) == pytest.approx(np.exp(log_capital(mix)), rel=1e-10)


@pytest.mark.parametrize("name, n", [("strategy-1", 6), ("strategy-2", 6), ("strategy-3", 5)])
def test_joint_probability_is_normalized(name, n):
    spec = preset(name)
    prior = prior_preset(name, nodes_per_dim=5)
    forecasts = np.linspace(0.2, 0.8, n)

    total = sum(joint_probability(prior, spec, forecasts, list(xs)) for xs in itertools.product([0, 1], repeat=n))
    assert total == pytest.approx(1.0, abs=1e-8)


def test_posterior_mean_moves_toward_the_data():
    prior = PriorSpec(bounds=((-1, 1),), nodes_per_dim=33)
    mix = init_mixture(prior, 1)
    assert posterior_mean(mix) == pytest.approx([0.0], abs=1e-12)

    for _ in range(30):
        mix = update_mixture(mix, Round(p=0.5, c=[1.0], x=1))
    assert posterior_mean(mix)[0] > 0.3
