"""
Named observables that integrate() can record along a trajectory
"""

import numpy as np

from .core import PhaseState, order_parameter
from .dynamics import instantaneous_frequencies
from .variational import PhaseSpacePoint, hamiltonian

__all__ = ['OBSERVABLES', 'observers']


def _point(state):
    if isinstance(state, PhaseState):
        return PhaseSpacePoint.planar(state.thetas)
    return PhaseSpacePoint.from_configuration(state)


def energy(params, state):
    return hamiltonian(params, _point(state))


def norm_drift(params, state):
    if isinstance(state, PhaseState):
        return 0.
    return state.max_norm_drift()


def planarity(params, state):
    """
    max_j |e3 . S_j|
    """
    if isinstance(state, PhaseState):
        return 0.
    return state.max_out_of_plane()


def order_parameter_complex(params, state):
    return order_parameter(state).r_complex


def mean_frequency_spread(params, state):
    rates = instantaneous_frequencies(params, state)
    return float(np.max(np.abs(rates - rates.mean())))


OBSERVABLES = {
    'energy': energy,
    'norm_drift': norm_drift,
    'planarity': planarity,
    'r': order_parameter_complex,
    'frequency_spread': mean_frequency_spread,
}


def observers(names):
    """
    :param names: observable names
    :return: dict name -> f(params, state), ready for integrate()
    """
    unknown = [name for name in names if name not in OBSERVABLES]
    if unknown:
        raise ValueError('observers: unknown observables %s, choose from %s' % (unknown, sorted(OBSERVABLES)))
    return {name: OBSERVABLES[name] for name in names}
