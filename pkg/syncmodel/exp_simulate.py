"""
Simulate - integrate one system and record its observables
"""

import itertools
import logging

from .analysis import classify
from .dynamics import integrate, relax
from .errors import ConfigError, InsufficientData
from .experiment import Experiment
from .observables import observers

__all__ = ['SimulateExperiment']


class SimulateExperiment(Experiment):
    """
    Config sections: model, initial_state, integrator, observables, simulate {pairs, until_converged, window}
    """
    kind = 'simulate'

    def pairs(self, n):
        cfg = self.section('simulate')
        if 'pairs' in cfg:
            pairs = [tuple(p) for p in cfg['pairs']]
            if any(len(p) != 2 or not (0 <= p[0] < n and 0 <= p[1] < n) for p in pairs):
                raise ConfigError('simulate.pairs', 'expected index pairs within [0, %d)' % n)
            return pairs
        if n <= 8:
            return list(itertools.combinations(range(n), 2))
        # large systems: differences to the first oscillator only
        return [(0, k) for k in range(1, n)]

    def run(self):
        """
        :return: DataFrame with t, r_modulus, theta0, requested observables and delta_j_k columns
        """
        freq_rng, state_rng = self.generators()
        freqs = self.frequencies(freq_rng)
        params = self.model_params(freqs)
        state = self.initial_state(freqs.n, state_rng)
        cfg, representation = self.integrator()
        obs = observers(self.observable_names())

        sim_cfg = self.section('simulate')
        if sim_cfg.get('until_converged', False):
            traj, converged = relax(params, state, cfg, observers=obs, representation=representation)
            self.set('converged', converged)
        else:
            traj = integrate(params, state, cfg, observers=obs, representation=representation)
        self.set('trajectory', traj)

        window = sim_cfg['window'] if 'window' in sim_cfg else min(10., cfg.t_end)
        try:
            state_class = classify(traj.window(window), n_oscillators=freqs.n)
            self.set('classification', state_class)
            logging.info('simulate: N=%d, lambda=%g, final |r| = %.6f, %s' %
                         (freqs.n, params.coupling, traj.observable('r_modulus')[-1], state_class.value))
        except InsufficientData as e:
            logging.warning('simulate: no classification, %s' % e)

        frame = traj.to_frame().join(traj.phase_differences(self.pairs(freqs.n)))
        return frame.reset_index()
