"""
Trajectory class
    holds everything recorded along an integration: sample times, states and observable time series
"""

import itertools
import numpy as np
import pandas as pd

from .errors import InsufficientData

__all__ = ['Trajectory']


class Trajectory:
    """
    Trajectory needs per sample: time, state (PhaseState or SpinConfiguration), observables
    """
    def __init__(self, times, states, observables=None):
        times = np.asarray(times, dtype=float)
        if times.ndim != 1:
            raise ValueError('Trajectory: times must be one dimensional.')
        if len(states) != times.size:
            raise ValueError('Trajectory: %d states for %d sample times.' % (len(states), times.size))
        if times.size > 1 and np.any(np.diff(times) <= 0):
            raise ValueError('Trajectory: sample times must be strictly increasing.')

        self.times = times
        self.states = list(states)
        self.observables = {}
        for name, values in (observables or {}).items():
            self.add_observable(name, values)

    def __len__(self):
        return self.times.size

    def add_observable(self, name, values):
        values = np.asarray(values)
        if values.shape[0] != self.times.size:
            raise ValueError('Trajectory.add_observable: %s has %d samples, trajectory has %d' %
                             (name, values.shape[0], self.times.size))
        self.observables[name] = values

    def observable(self, name):
        return self.observables[name]

    @property
    def duration(self):
        return float(self.times[-1] - self.times[0]) if self.times.size else 0.

    @property
    def final_state(self):
        return self.states[-1]

    def window(self, duration):
        """
        Trailing part of the trajectory covering the last `duration` time units
        :param duration: window length
        :return: Trajectory
        """
        if self.times.size < 2 or self.duration < duration * (1 - 1e-12):
            raise InsufficientData('Trajectory.window: trajectory covers %g time units, window needs %g' %
                                   (self.duration, duration))
        start = np.searchsorted(self.times, self.times[-1] - duration * (1 + 1e-12))
        return Trajectory(self.times[start:], self.states[start:],
                          {k: v[start:] for k, v in self.observables.items()})

    def phases(self):
        """
        Angles of every oscillator at every sample, unwrapped along time.
        Spin states use their azimuth around e3.
        :return: (T, N) array
        """
        rows = []
        for state in self.states:
            if hasattr(state, 'thetas'):
                rows.append(np.asarray(state.thetas))
            else:
                rows.append(np.arctan2(state.spins[:, 1], state.spins[:, 0]))
        return np.unwrap(np.array(rows), axis=0)

    def phase_differences(self, pairs=None):
        """
        Delta_jk(t) = theta_j(t) - theta_k(t) for the requested pairs (all j < k by default)
        :return: DataFrame indexed by time, one column per pair
        """
        thetas = self.phases()
        if pairs is None:
            pairs = itertools.combinations(range(thetas.shape[1]), 2)
        return pd.DataFrame({'delta_{j}_{k}'.format(j=j, k=k): thetas[:, j] - thetas[:, k] for j, k in pairs},
                            index=pd.Index(self.times, name='t'))

    def to_frame(self):
        """
        Observables as a DataFrame indexed by time; complex series are split into real/imag columns
        """
        columns = {}
        for name, values in self.observables.items():
            if np.iscomplexobj(values):
                columns[name + '_real'] = values.real
                columns[name + '_imag'] = values.imag
            else:
                columns[name] = values
        return pd.DataFrame(columns, index=pd.Index(self.times, name='t'))
