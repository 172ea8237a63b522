"""
Sweep - long time order parameter across a grid of couplings, next to the self-consistent and asymptotic |J|
"""

import logging
import numpy as np
import pandas as pd

from concurrent.futures import ProcessPoolExecutor

from .analysis import asymptotic_J, classify, coupling_bounds, detect_locking, solve_self_consistent_J
from .dynamics import ModelParams, integrate
from .errors import ConfigError, NoSolution
from .experiment import Experiment

__all__ = ['SweepExperiment', 'sweep_point']


def sweep_point(freqs, coupling, state, cfg, representation, window, lock_tol):
    """
    One grid point; module level so that it can be shipped to worker processes
    :return: dict row
    """
    params = ModelParams(freqs, coupling)
    traj = integrate(params, state, cfg, representation=representation)
    tail = traj.window(window)
    r = tail.observable('r_modulus')

    try:
        J_solver = solve_self_consistent_J(freqs, coupling).J_mod if coupling > 0 else np.nan
    except NoSolution:
        J_solver = np.nan
    J_asymptotic = asymptotic_J(freqs, coupling) if coupling > 0 else np.nan

    row = {'coupling': coupling,
           'r_simulated': float(r.mean()),
           'r_spread': float(np.ptp(r)),
           'J_solver': J_solver,
           'J_asymptotic': J_asymptotic,
           'locked_pairs': len(detect_locking(traj, window, lock_tol)),
           'classification': classify(r, n_oscillators=freqs.n).value}
    logging.info('sweep: lambda = %g, |r| = %.6f, %s' % (coupling, row['r_simulated'], row['classification']))
    return row


class SweepExperiment(Experiment):
    """
    Config sections: model (couplings grid instead of coupling), initial_state, integrator, sweep {window, lock_tol}
    """
    kind = 'sweep'

    def couplings(self):
        model = self.section('model', required=True)
        if 'couplings' not in model:
            raise ConfigError('model.couplings', 'required, a list or {start, stop, num}')
        grid = model['couplings']
        if isinstance(grid, dict):
            try:
                grid = np.linspace(float(grid['start']), float(grid['stop']), int(grid['num'])).tolist()
            except KeyError as e:
                raise ConfigError('model.couplings.' + e.args[0], 'required')
        try:
            grid = [float(x) for x in grid]
        except (TypeError, ValueError):
            raise ConfigError('model.couplings', 'expected numbers, got %r' % (grid,))
        if not grid:
            raise ConfigError('model.couplings', 'grid is empty')
        if any(b < a for a, b in zip(grid[:-1], grid[1:])):
            raise ConfigError('model.couplings', 'grid must be sorted ascending')
        if grid[0] < 0:
            raise ConfigError('model.couplings', 'couplings must be >= 0')
        return grid

    def run(self):
        """
        :return: DataFrame, one row per coupling
        """
        freq_rng, state_rng = self.generators()
        freqs = self.frequencies(freq_rng)
        state = self.initial_state(freqs.n, state_rng)
        cfg, representation = self.integrator()
        grid = self.couplings()
        sweep_cfg = self.section('sweep')
        window = float(sweep_cfg['window']) if 'window' in sweep_cfg else min(10., cfg.t_end)
        lock_tol = float(sweep_cfg['lock_tol']) if 'lock_tol' in sweep_cfg else 1e-6
        if window > cfg.t_end:
            raise ConfigError('sweep.window', 'window %g is longer than integrator.t_end %g' % (window, cfg.t_end))

        bounds = coupling_bounds(freqs)
        self.set('bounds', bounds)
        logging.info('sweep: N=%d, lambda_c = %g, lambda_s = %g, %d grid points' %
                     (freqs.n, bounds.lambda_c, bounds.lambda_s, len(grid)))

        args = [(freqs, c, state, cfg, representation, window, lock_tol) for c in grid]
        if self.workers > 1:
            with ProcessPoolExecutor(max_workers=self.workers) as pool:
                # map keeps submission order
                rows = list(pool.map(sweep_point, *zip(*args)))
        else:
            rows = [sweep_point(*a) for a in args]

        return pd.DataFrame(rows, columns=['coupling', 'r_simulated', 'r_spread', 'J_solver', 'J_asymptotic',
                                           'locked_pairs', 'classification'])
