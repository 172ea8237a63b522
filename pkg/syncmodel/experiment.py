"""
Experiment Base Template
"""

import copy
import logging
import yaml

from abc import ABCMeta, abstractmethod
from enum import Enum

from . import __version__
from .dynamics import IntegratorConfig, IntegratorMethod, ModelParams, Representation
from .errors import ConfigError
from .observables import OBSERVABLES
from .output import OutputFormat, write_table
from .sources import FrequencySource, InitialStateSource, seeded_generators

__all__ = ['Experiment', 'ExperimentState', 'integrator_config']


class ExperimentState(Enum):
    INITIALIZED = 'initialized'
    COMPLETED = 'completed'


def integrator_config(cfg, field='integrator'):
    """
    Build an IntegratorConfig from its config section, reporting bad values by field
    :param cfg: integrator section dict (may be empty)
    :return: (IntegratorConfig, Representation or None)
    """
    cfg = cfg or {}
    kwargs = {}
    for key in ('dt', 't_end', 'rtol', 'atol'):
        if key in cfg:
            if isinstance(cfg[key], bool) or not isinstance(cfg[key], (int, float)):
                raise ConfigError(field + '.' + key, 'expected a number, got %r' % (cfg[key],))
            kwargs[key] = float(cfg[key])
    if 'method' in cfg:
        matches = [m for m in IntegratorMethod if m.value.lower() == str(cfg['method']).lower()]
        if not matches:
            raise ConfigError(field + '.method', 'unknown method %r, choose from %s' %
                              (cfg['method'], [m.value for m in IntegratorMethod]))
        kwargs['method'] = matches[0]
    if 'renormalize' in cfg:
        kwargs['renormalize'] = bool(cfg['renormalize'])
    if 'sample_every' in cfg:
        kwargs['sample_every'] = int(cfg['sample_every'])

    representation = None
    if 'representation' in cfg:
        try:
            representation = Representation(cfg['representation'])
        except ValueError:
            raise ConfigError(field + '.representation', 'unknown representation %r, choose from %s' %
                              (cfg['representation'], [r.value for r in Representation]))
    try:
        return IntegratorConfig(**kwargs), representation
    except ValueError as e:
        raise ConfigError(field, str(e))


class Experiment(metaclass=ABCMeta):
    """
    Experiment Base Template
    """
    kind = 'experiment'
    default_format = 'csv'

    def __init__(self, config, seed=None, out=None, fmt=None):
        """
        Initialization of params needed to run an experiment
        :param config: config file path or dictionary
        :param seed: overrides the configured seed
        :param out: overrides output.path
        :param fmt: overrides output.format
        :return: n/a
        """
        cfg = copy.deepcopy(Experiment.parse_config(config))

        # CLI overrides are written back so the manifest describes the actual run
        if seed is not None:
            cfg['seed'] = int(seed)
        output = cfg.setdefault('output', {})
        if not isinstance(output, dict):
            raise ConfigError('output', 'expected a section with path and format')
        if out is not None:
            output['path'] = out
        if fmt is not None:
            output['format'] = fmt

        self.cfg = cfg
        self.name = cfg['name'] if 'name' in cfg else self.kind
        self.seed = cfg['seed'] if 'seed' in cfg else 0
        if isinstance(self.seed, bool) or not isinstance(self.seed, int) or self.seed < 0:
            raise ConfigError('seed', 'expected a nonnegative integer, got %r' % (self.seed,))
        self.workers = cfg['workers'] if 'workers' in cfg else 1
        self.out_path = output['path'] if 'path' in output else None
        try:
            self.out_format = OutputFormat(output['format'] if 'format' in output else self.default_format)
        except ValueError:
            raise ConfigError('output.format', 'must be csv or json, got %r' % output['format'])

        self.__results = {}
        self.__state = ExperimentState.INITIALIZED

    @property
    def state(self):
        """
        Retrieve experiment state
        :return: ExperimentState Enum
        """
        return self.__state

    def get(self, item):
        """
        Getter for results stored by run()
        """
        return self.__results[item] if item in self.__results else None

    def set(self, item, value):
        self.__results[item] = value

    @staticmethod
    def parse_config(config):
        """
        Input validation of config
        :param config: config file path or dictionary
        :return: experiment config dict
        """
        if isinstance(config, str):
            with open(config, 'r') as cfg_file:
                try:
                    cfg = yaml.load(cfg_file, yaml.SafeLoader)
                except yaml.YAMLError as e:
                    mark = getattr(e, 'problem_mark', None)
                    where = config + (':%d' % (mark.line + 1) if mark is not None else '')
                    raise ConfigError(where, 'invalid YAML, %s' % getattr(e, 'problem', e))
            if not isinstance(cfg, dict):
                raise ConfigError(config, 'top level must be a mapping')
            if 'experiment' in cfg:
                cfg = cfg['experiment']
        elif isinstance(config, dict):
            if 'experiment' in config:
                cfg = config['experiment']
            else:
                cfg = config
        else:
            raise TypeError('Experiment configuration needs to be passed in as either yaml file path or dict.')

        if not isinstance(cfg, dict):
            raise ConfigError('experiment', 'section must be a mapping')
        return cfg

    def section(self, name, required=False):
        if name not in self.cfg:
            if required:
                raise ConfigError(name, 'section missing')
            return {}
        if not isinstance(self.cfg[name], dict):
            raise ConfigError(name, 'expected a mapping')
        return self.cfg[name]

    def generators(self):
        """
        (frequency rng, initial state rng), both derived from the run seed
        """
        return seeded_generators(self.seed)

    def frequencies(self, rng):
        model = self.section('model', required=True)
        if 'frequencies' not in model:
            raise ConfigError('model.frequencies', 'required')
        return FrequencySource.init(model['frequencies']).get(rng)

    def coupling(self):
        model = self.section('model', required=True)
        if 'coupling' not in model:
            raise ConfigError('model.coupling', 'required')
        value = model['coupling']
        if isinstance(value, bool) or not isinstance(value, (int, float)) or value < 0:
            raise ConfigError('model.coupling', 'expected a number >= 0, got %r' % (value,))
        return float(value)

    def initial_state(self, n, rng):
        return InitialStateSource.init(self.cfg['initial_state'] if 'initial_state' in self.cfg else None).get(n, rng)

    def model_params(self, freqs):
        return ModelParams(freqs, self.coupling())

    def integrator(self):
        return integrator_config(self.section('integrator'))

    def observable_names(self, default=('energy',)):
        names = self.cfg['observables'] if 'observables' in self.cfg else list(default)
        unknown = [n for n in names if n not in OBSERVABLES]
        if unknown:
            raise ConfigError('observables', 'unknown %s, choose from %s' % (unknown, sorted(OBSERVABLES)))
        return list(names)

    def manifest(self):
        """
        Everything needed to rerun: full config (seed included), the command and the code version
        """
        return {'command': self.kind, 'config': self.cfg, 'seed': self.seed, 'version': __version__}

    def execute(self):
        """
        Run, then write the result table
        :return: rendered output text
        """
        logging.info('%s: running %s (seed %d)' % (self.kind, self.name, self.seed))
        frame = self.run()
        self.set('table', frame)
        self.__state = ExperimentState.COMPLETED
        return write_table(frame, self.manifest(), self.out_path, self.out_format)

    @abstractmethod
    def run(self):
        """
        Run the experiment
        :return: result DataFrame
        """
        pass
