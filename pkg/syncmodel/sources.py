"""
Input Sources - natural frequencies and initial states built from experiment config
"""

import numpy as np

from abc import ABCMeta, abstractmethod
from enum import Enum

from .core import FrequencySpec, PhaseState, SpinConfiguration
from .errors import ConfigError
from .utils import normalize_rows, random_planar_angles, random_unit_vectors

__all__ = ['FrequencySourceType', 'FrequencySource', 'ExplicitFrequencies', 'UniformFrequencies',
           'NormalFrequencies', 'InitialStateSourceType', 'InitialStateSource', 'ExplicitInitialState',
           'RandomPlanarInitialState', 'Random3DInitialState', 'seeded_generators']


def seeded_generators(seed, count=2):
    """
    Independent generators for the frequency and initial state draws of one run
    """
    return [np.random.default_rng(s) for s in np.random.SeedSequence(seed).spawn(count)]


def _source_type(enum_cls, config, field):
    if 'source' not in config:
        raise ConfigError(field + '.source', 'missing, choose from %s' % [t.name.lower() for t in enum_cls])
    source = config['source']
    try:
        if isinstance(source, str):
            return enum_cls[source.upper()]
        elif isinstance(source, int):
            return enum_cls(source)
    except (KeyError, ValueError):
        pass
    raise ConfigError(field + '.source', 'unknown source %r, choose from %s' %
                      (source, [t.name.lower() for t in enum_cls]))


def _number(config, key, field, default=None):
    if key not in config:
        if default is None:
            raise ConfigError(field + '.' + key, 'required')
        return default
    value = config[key]
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise ConfigError(field + '.' + key, 'expected a number, got %r' % (value,))
    return float(value)


def _size(config, field):
    if 'n' not in config:
        raise ConfigError(field + '.n', 'required for sampled sources')
    n = config['n']
    if isinstance(n, bool) or not isinstance(n, int) or n < 1:
        raise ConfigError(field + '.n', 'expected a positive integer, got %r' % (n,))
    return n


class FrequencySourceType(Enum):
    EXPLICIT = 0
    UNIFORM = 1
    NORMAL = 2


class FrequencySource(metaclass=ABCMeta):
    """
    Natural frequency source
    """
    @classmethod
    def init(cls, config, field='model.frequencies'):
        """
        :param config: frequencies config dict, or a plain list of values
        :param field: dotted config path used in error messages
        """
        if isinstance(config, (list, tuple)):
            return ExplicitFrequencies({'values': list(config)}, field)
        if not isinstance(config, dict):
            raise ConfigError(field, 'expected a list of values or a dict with a source')
        # explicit values win over samplers
        if 'values' in config:
            return ExplicitFrequencies(config, field)

        fs_type = _source_type(FrequencySourceType, config, field)
        if fs_type == FrequencySourceType.UNIFORM:
            return UniformFrequencies(config, field)
        elif fs_type == FrequencySourceType.NORMAL:
            return NormalFrequencies(config, field)
        return ExplicitFrequencies(config, field)

    @abstractmethod
    def get(self, rng):
        """
        :param rng: numpy Generator
        :return: FrequencySpec
        """
        pass


class ExplicitFrequencies(FrequencySource):
    def __init__(self, config, field='model.frequencies'):
        if 'values' not in config:
            raise ConfigError(field + '.values', 'required for explicit frequencies')
        try:
            self.values = FrequencySpec(np.asarray(config['values'], dtype=float))
        except (TypeError, ValueError) as e:
            raise ConfigError(field + '.values', str(e))

    def get(self, rng=None):
        return self.values


class UniformFrequencies(FrequencySource):
    """
    omega_j ~ U[low, high]
    """
    def __init__(self, config, field='model.frequencies'):
        self.n = _size(config, field)
        self.low = _number(config, 'low', field, -1.)
        self.high = _number(config, 'high', field, 1.)
        if self.high < self.low:
            raise ConfigError(field + '.high', 'must be >= low')

    def get(self, rng):
        return FrequencySpec(rng.uniform(self.low, self.high, self.n))


class NormalFrequencies(FrequencySource):
    """
    omega_j ~ N(mean, std^2)
    """
    def __init__(self, config, field='model.frequencies'):
        self.n = _size(config, field)
        self.mean = _number(config, 'mean', field, 0.)
        self.std = _number(config, 'std', field, 1.)
        if self.std < 0:
            raise ConfigError(field + '.std', 'must be >= 0')

    def get(self, rng):
        return FrequencySpec(rng.normal(self.mean, self.std, self.n))


class InitialStateSourceType(Enum):
    EXPLICIT = 0
    RANDOM_PLANAR = 1
    RANDOM_3D = 2


class InitialStateSource(metaclass=ABCMeta):
    """
    Initial state source
    """
    @classmethod
    def init(cls, config, field='initial_state'):
        if config is None:
            return RandomPlanarInitialState({})
        if not isinstance(config, dict):
            raise ConfigError(field, 'expected a dict with a source')
        if 'thetas' in config or 'spins' in config:
            return ExplicitInitialState(config, field)

        is_type = _source_type(InitialStateSourceType, config, field)
        if is_type == InitialStateSourceType.RANDOM_PLANAR:
            return RandomPlanarInitialState(config, field)
        elif is_type == InitialStateSourceType.RANDOM_3D:
            return Random3DInitialState(config, field)
        return ExplicitInitialState(config, field)

    @abstractmethod
    def get(self, n, rng):
        """
        :param n: number of oscillators
        :param rng: numpy Generator
        :return: PhaseState or SpinConfiguration
        """
        pass


class ExplicitInitialState(InitialStateSource):
    def __init__(self, config, field='initial_state'):
        if 'thetas' in config:
            self.state = PhaseState(np.asarray(config['thetas'], dtype=float))
        elif 'spins' in config:
            spins = np.asarray(config['spins'], dtype=float)
            if spins.ndim != 2 or spins.shape[1] != 3:
                raise ConfigError(field + '.spins', 'expected a list of 3-vectors')
            self.state = SpinConfiguration.with_dual_momenta(normalize_rows(spins))
        else:
            raise ConfigError(field + '.thetas', 'explicit initial state needs thetas or spins')

    def get(self, n, rng=None):
        if self.state.n != n:
            raise ConfigError('initial_state', '%d oscillators given, model has %d' % (self.state.n, n))
        return self.state


class RandomPlanarInitialState(InitialStateSource):
    """
    Angles uniform on [0, 2 pi)
    """
    def __init__(self, config, field='initial_state'):
        pass

    def get(self, n, rng):
        return PhaseState(random_planar_angles(rng, n))


class Random3DInitialState(InitialStateSource):
    """
    Unit spins uniform on the sphere
    """
    def __init__(self, config, field='initial_state'):
        pass

    def get(self, n, rng):
        return SpinConfiguration.with_dual_momenta(random_unit_vectors(rng, n))
