"""
Kink - single spin flip relaxation, numerically and in closed form, or relaxation rates over a parameter grid
"""

import logging
import numpy as np
import pandas as pd

from .errors import ConfigError, ImaginaryRate
from .experiment import Experiment
from .spinflip import (KinkParams, fit_relaxation_rate, flip_phase, integrate_kink, kink_analytic,
                       relaxation_rate, stable_equilibrium)

__all__ = ['KinkExperiment']


class KinkExperiment(Experiment):
    """
    Config section kink:
        omega, Omega, lambdaJ, delta0, t_end, dt       single relaxation path
        grid: {lambdaJ: [...], detuning: [...]}        rate table instead
    """
    kind = 'kink'

    def _value(self, cfg, key, default):
        value = cfg[key] if key in cfg else default
        if isinstance(value, bool) or not isinstance(value, (int, float)):
            raise ConfigError('kink.' + key, 'expected a number, got %r' % (value,))
        return float(value)

    def _params(self, cfg):
        try:
            return KinkParams(self._value(cfg, 'omega', 0.), self._value(cfg, 'Omega', 0.),
                              self._value(cfg, 'lambdaJ', 1.))
        except ValueError as e:
            if isinstance(e, ConfigError):
                raise
            raise ConfigError('kink.lambdaJ', str(e))

    def relaxation_path(self, cfg):
        p = self._params(cfg)
        delta0 = self._value(cfg, 'delta0', np.pi / 2)
        dt = self._value(cfg, 'dt', 0.01)
        try:
            rate = relaxation_rate(p)
        except ImaginaryRate as e:
            raise ConfigError('kink.lambdaJ', str(e))
        t_end = self._value(cfg, 't_end', 10. / rate)

        phi0 = stable_equilibrium(p)
        path = integrate_kink(p, phi0 + delta0, t_end, dt=dt)
        frame = pd.DataFrame({'phi': path.values,
                              'delta_numeric': path.values - phi0,
                              'delta_analytic': kink_analytic(p, delta0, path.index.values)},
                             index=path.index)

        self.set('rate', rate)
        self.set('flip_phase', flip_phase(p))
        logging.info('kink: Lambda = %g, flip phase = %.9f' % (rate, self.get('flip_phase')))
        return frame.reset_index()

    def rate_table(self, cfg):
        grid = cfg['grid']
        if 'lambdaJ' not in grid or 'detuning' not in grid:
            raise ConfigError('kink.grid', 'needs lambdaJ and detuning lists')
        delta0 = self._value(cfg, 'delta0', 1e-3)

        rows = []
        for lamJ in grid['lambdaJ']:
            for detuning in grid['detuning']:
                p = KinkParams(float(detuning), 0., float(lamJ))
                try:
                    rate = relaxation_rate(p)
                except ImaginaryRate:
                    rows.append({'lambdaJ': lamJ, 'detuning': detuning, 'rate': np.nan, 'rate_fitted': np.nan,
                                 'relative_error': np.nan})
                    continue
                phi0 = stable_equilibrium(p)
                path = integrate_kink(p, phi0 + delta0, 5. / rate, dt=0.05 / rate)
                fitted = fit_relaxation_rate(path.index.values, path.values - phi0)
                rows.append({'lambdaJ': lamJ, 'detuning': detuning, 'rate': rate, 'rate_fitted': fitted,
                             'relative_error': abs(fitted - rate) / rate})
        return pd.DataFrame(rows, columns=['lambdaJ', 'detuning', 'rate', 'rate_fitted', 'relative_error'])

    def run(self):
        cfg = self.section('kink')
        if 'grid' in cfg:
            return self.rate_table(cfg)
        return self.relaxation_path(cfg)
