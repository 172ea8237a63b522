import numpy as np
import yaml

from pytest import fixture

from syncmodel.dynamics import ModelParams


@fixture
def rng():
    return np.random.default_rng(20240611)


@fixture
def n2_params():
    # the two oscillator locking example, sin(theta_1 - theta_2) = 1/2
    return ModelParams([0.5, -0.5], 2.)


@fixture
def n2_config():
    return {'experiment': {'name': 'n2_locking',
                           'seed': 0,
                           'model': {'frequencies': {'source': 'explicit', 'values': [0.5, -0.5]},
                                     'coupling': 2.0},
                           'initial_state': {'source': 'explicit', 'thetas': [0.0, 0.0]},
                           'integrator': {'method': 'rk4', 'dt': 0.01, 't_end': 20.0, 'sample_every': 10},
                           'observables': ['energy']}}


@fixture
def write_config(tmp_path):
    def write(config, name='config.yml'):
        path = tmp_path / name
        with open(path, 'w') as f:
            yaml.safe_dump(config, f)
        return str(path)
    return write
