import numpy as np

from pytest import approx, raises

from syncmodel.core import PhaseState, SpinConfiguration
from syncmodel.errors import ConfigError
from syncmodel.sources import (ExplicitFrequencies, FrequencySource, InitialStateSource, NormalFrequencies,
                               Random3DInitialState, RandomPlanarInitialState, UniformFrequencies,
                               seeded_generators)


def test_explicit_frequencies_from_list_or_dict():
    assert FrequencySource.init([0.5, -0.5]).get(None).omegas == approx([0.5, -0.5])
    assert isinstance(FrequencySource.init({'source': 'explicit', 'values': [1.]}), ExplicitFrequencies)


def test_explicit_values_win_over_samplers():
    source = FrequencySource.init({'source': 'uniform', 'n': 5, 'values': [0.1, 0.2]})
    assert isinstance(source, ExplicitFrequencies)
    assert source.get(None).n == 2


def test_sampler_selection_by_name_or_number():
    assert isinstance(FrequencySource.init({'source': 'Uniform', 'n': 3}), UniformFrequencies)
    assert isinstance(FrequencySource.init({'source': 2, 'n': 3}), NormalFrequencies)


def test_uniform_frequencies_stay_in_range():
    omegas = FrequencySource.init({'source': 'uniform', 'n': 100, 'low': 2., 'high': 3.}) \
        .get(np.random.default_rng(0)).omegas
    assert omegas.size == 100
    assert omegas.min() >= 2. and omegas.max() <= 3.


def test_frequency_config_errors_name_the_field():
    with raises(ConfigError) as e:
        FrequencySource.init({'source': 'uniform'})
    assert e.value.field == 'model.frequencies.n'
    with raises(ConfigError) as e:
        FrequencySource.init({'source': 'lorentzian', 'n': 3})
    assert e.value.field == 'model.frequencies.source'
    with raises(ConfigError) as e:
        FrequencySource.init({'source': 'normal', 'n': 3, 'std': -1.})
    assert e.value.field == 'model.frequencies.std'
    with raises(ConfigError) as e:
        FrequencySource.init({'source': 'uniform', 'n': 3, 'low': 'zero'})
    assert e.value.field == 'model.frequencies.low'
    with raises(ConfigError) as e:
        FrequencySource.init({'n': 3})
    assert e.value.field == 'model.frequencies.source'
    with raises(ConfigError):
        FrequencySource.init('0.5, -0.5')


def test_seeded_generators_are_reproducible_and_independent():
    first, second = seeded_generators(42)
    again, _ = seeded_generators(42)
    a = first.uniform(size=5)
    assert a == approx(again.uniform(size=5))
    assert not np.allclose(a, second.uniform(size=5))


def test_default_initial_state_is_random_planar():
    source = InitialStateSource.init(None)
    assert isinstance(source, RandomPlanarInitialState)
    state = source.get(6, np.random.default_rng(1))
    assert isinstance(state, PhaseState)
    assert np.all((state.thetas >= 0) & (state.thetas < 2 * np.pi))


def test_explicit_initial_states():
    state = InitialStateSource.init({'thetas': [0., 1.]}).get(2)
    assert state.thetas == approx([0., 1.])
    config = InitialStateSource.init({'source': 'explicit', 'spins': [[2., 0., 0.], [0., 0., 3.]]}).get(2)
    assert isinstance(config, SpinConfiguration)
    assert config.norms() == approx([1., 1.])
    assert config.momenta is not None


def test_explicit_initial_state_errors():
    with raises(ConfigError) as e:
        InitialStateSource.init({'thetas': [0., 1.]}).get(3)
    assert e.value.field == 'initial_state'
    with raises(ConfigError) as e:
        InitialStateSource.init({'spins': [[1., 0.]]})
    assert e.value.field == 'initial_state.spins'
    with raises(ConfigError) as e:
        InitialStateSource.init({'source': 'explicit'})
    assert e.value.field == 'initial_state.thetas'


def test_random_3d_initial_state():
    source = InitialStateSource.init({'source': 'random_3d'})
    assert isinstance(source, Random3DInitialState)
    config = source.get(50, np.random.default_rng(2))
    assert config.norms() == approx(np.ones(50))
    assert config.max_out_of_plane() > 0.5
