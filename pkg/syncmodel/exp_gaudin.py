"""
Gaudin - ground state search of the semiclassical pairing Hamiltonian built from a Kuramoto model
"""

import logging
import pandas as pd

from .errors import ConfigError
from .experiment import Experiment
from .gaudin import minimize_h1, richardson_map

__all__ = ['GaudinExperiment']


class GaudinExperiment(Experiment):
    """
    Config sections: model, gaudin {restarts, steps}
    """
    kind = 'gaudin'

    def run(self):
        """
        :return: DataFrame with one row per pseudo spin: j, epsilon, t1, t2, t3 and the energy h1
        """
        freq_rng, _ = self.generators()
        params = self.model_params(self.frequencies(freq_rng))
        rp = richardson_map(params)

        cfg = self.section('gaudin')
        restarts = cfg['restarts'] if 'restarts' in cfg else 32
        steps = cfg['steps'] if 'steps' in cfg else 1000
        for key, value in (('restarts', restarts), ('steps', steps)):
            if isinstance(value, bool) or not isinstance(value, int) or value < 1:
                raise ConfigError('gaudin.' + key, 'expected a positive integer, got %r' % (value,))

        config, energy = minimize_h1(rp, restarts=restarts, steps=steps, seed=self.seed)
        self.set('energy', energy)
        self.set('pseudo_spins', config)
        logging.info('gaudin: N=%d, g=%g, ground state estimate %.12g' % (rp.n, rp.g, energy))

        return pd.DataFrame({'j': range(rp.n),
                             'epsilon': rp.epsilons,
                             't1': config.taus[:, 0],
                             't2': config.taus[:, 1],
                             't3': config.taus[:, 2],
                             'h1': energy})
