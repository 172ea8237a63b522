"""
Lagrangian and Hamiltonian structure of the spin formulation, and the closed form obstruction for the angular system
"""

import numpy as np

from dataclasses import dataclass

from .core import PhaseState, SpinConfiguration, to_spin
from .dynamics import kuramoto_rhs
from .errors import DimensionMismatch, SameIndex
from .utils import E3, central_difference, e3_cross, finite_gradient

__all__ = ['PhaseSpacePoint', 'lagrangian', 'euler_lagrange_residual', 'trajectory_euler_lagrange_residual',
           'hamiltonian', 'hamiltonian_gradients', 'hamilton_rhs', 'finite_difference_gradients',
           'candidate_gradient', 'curl_mismatch_closed_form', 'curl_mismatch_numeric', 'lambda3_cancellation']


@dataclass(frozen=True, eq=False)
class PhaseSpacePoint:
    """
    Spins S_j and momenta P_j, both (N, 3)
    """
    spins: np.ndarray
    momenta: np.ndarray

    def __post_init__(self):
        spins = np.atleast_2d(np.array(self.spins, dtype=float))
        momenta = np.atleast_2d(np.array(self.momenta, dtype=float))
        if spins.shape != momenta.shape or spins.ndim != 2 or spins.shape[1] != 3:
            raise DimensionMismatch('PhaseSpacePoint: spins %s and momenta %s must both be (N, 3)' %
                                    (spins.shape, momenta.shape))
        spins.setflags(write=False)
        momenta.setflags(write=False)
        object.__setattr__(self, 'spins', spins)
        object.__setattr__(self, 'momenta', momenta)

    @classmethod
    def planar(cls, thetas):
        """
        Point on the planar submanifold, S_j = (cos, sin, 0) and P_j = S_j x e3
        """
        config = to_spin(PhaseState(thetas))
        return cls(config.spins, config.momenta)

    @classmethod
    def from_configuration(cls, config):
        if config.momenta is None:
            config = SpinConfiguration.with_dual_momenta(config.spins)
        return cls(config.spins, config.momenta)

    @property
    def n(self):
        return self.spins.shape[0]


def _check_n(params, n, caller):
    if n != params.n:
        raise DimensionMismatch('%s: %d spins for %d frequencies' % (caller, n, params.n))


def _project_e3(v):
    out = np.zeros_like(v)
    out[..., 2] = v[..., 2]
    return out


def lagrangian(params, spins, spin_rates):
    """
    L = sum_j e3.(S_dot_j x S_j) - omega_j |S_j|^2 + lambda (e3 x [(J x S_j) x S_j]).S_j
    :param params: ModelParams
    :param spins: (N, 3) array
    :param spin_rates: (N, 3) array
    :return: float
    """
    S = np.atleast_2d(np.asarray(spins, dtype=float))
    S_dot = np.atleast_2d(np.asarray(spin_rates, dtype=float))
    if S.shape != S_dot.shape:
        raise DimensionMismatch('lagrangian: spins %s and rates %s differ in shape' % (S.shape, S_dot.shape))
    _check_n(params, S.shape[0], 'lagrangian')

    J = S.mean(axis=0)
    kinetic = np.cross(S_dot, S) @ E3
    potential = -params.omegas * np.einsum('ij,ij->i', S, S)
    inner = np.cross(np.cross(J[None, :], S), S)
    interaction = params.coupling * np.einsum('ij,ij->i', e3_cross(inner), S)
    return float(np.sum(kinetic + potential + interaction))


def euler_lagrange_residual(params, spins, spin_rates):
    """
    S_dot_j - P3 S_dot_j - omega_j e3 x S_j - lambda S_j x [P3 (J x S_j)], with P3 the projector onto e3
    :return: (N, 3) array
    """
    S = np.atleast_2d(np.asarray(spins, dtype=float))
    S_dot = np.atleast_2d(np.asarray(spin_rates, dtype=float))
    _check_n(params, S.shape[0], 'euler_lagrange_residual')
    J = S.mean(axis=0)
    torque = np.cross(S, _project_e3(np.cross(J[None, :], S)))
    return S_dot - _project_e3(S_dot) - params.omegas[:, None] * e3_cross(S) - params.coupling * torque


def trajectory_euler_lagrange_residual(params, traj):
    """
    Euler-Lagrange residual along a uniformly sampled trajectory, rates from a five point stencil
    :param params: ModelParams
    :param traj: Trajectory of spin (or phase) states
    :return: (T - 4, N, 3) array of residuals at the interior samples
    """
    dts = np.diff(traj.times)
    if dts.size == 0 or np.ptp(dts) > 1e-9 * dts.max():
        raise ValueError('trajectory_euler_lagrange_residual: needs uniformly spaced samples.')
    spins = np.array([s.spins if isinstance(s, SpinConfiguration) else to_spin(s).spins for s in traj.states])
    rates = central_difference(spins, float(dts.mean()))
    return np.array([euler_lagrange_residual(params, S, S_dot) for S, S_dot in zip(spins[2:-2], rates)])


def _as_point(point):
    if isinstance(point, SpinConfiguration):
        return PhaseSpacePoint.from_configuration(point)
    return point


def _hamiltonian(params, S, P):
    J = S.mean(axis=0)
    free = -0.5 * params.omegas * (np.einsum('ij,ij->i', S, S) + np.einsum('ij,ij->i', P, P))
    coupling = params.coupling * np.einsum('ij,ij->i', np.cross(J[None, :], S), np.cross(P, S))
    return float(np.sum(free + coupling))


def hamiltonian(params, point):
    """
    H = sum_j -(omega_j / 2)(|S_j|^2 + |P_j|^2) + lambda (J x S_j).(P_j x S_j)
    :param params: ModelParams
    :param point: PhaseSpacePoint
    :return: float
    """
    point = _as_point(point)
    _check_n(params, point.n, 'hamiltonian')
    return _hamiltonian(params, point.spins, point.momenta)


def hamiltonian_gradients(params, point):
    """
    Exact partial derivatives of H, the dependence of J on every S_j included
    :return: (dH/dS, dH/dP), each (N, 3)
    """
    point = _as_point(point)
    _check_n(params, point.n, 'hamiltonian_gradients')
    S, P = point.spins, point.momenta
    lam, w = params.coupling, params.omegas[:, None]
    J = S.mean(axis=0)[None, :]

    JxS = np.cross(J, S)
    PxS = np.cross(P, S)
    mean_field = np.cross(S, PxS).mean(axis=0)[None, :]
    dS = -w * S + lam * (np.cross(JxS, P) + np.cross(PxS, J) + mean_field)
    dP = -w * P + lam * np.cross(S, JxS)
    return dS, dP


def hamilton_rhs(params, point):
    """
    S_dot = dH/dP, P_dot = -dH/dS
    """
    dS, dP = hamiltonian_gradients(params, point)
    return dP, -dS


def finite_difference_gradients(params, point, h=1e-5, richardson=True):
    """
    Central difference gradients of H, optionally Richardson extrapolated from steps h and h/2
    """
    point = _as_point(point)
    _check_n(params, point.n, 'finite_difference_gradients')
    S, P = np.array(point.spins), np.array(point.momenta)

    def grads(step):
        return (finite_gradient(S, lambda x: _hamiltonian(params, x, P), step),
                finite_gradient(P, lambda x: _hamiltonian(params, S, x), step))

    dS, dP = grads(h)
    if not richardson:
        return dS, dP
    dS2, dP2 = grads(h / 2)
    return (4 * dS2 - dS) / 3, (4 * dP2 - dP) / 3


def candidate_gradient(params, thetas):
    """
    Second time derivative of the angles along the flow,
        (lambda/N) sum_k cos(theta_k - theta_j) [theta_dot_k - theta_dot_j],
    the would-be gradient of a potential Phi
    """
    thetas = np.asarray(thetas, dtype=float)
    rates = kuramoto_rhs(params, PhaseState(thetas))
    cos = np.cos(thetas[None, :] - thetas[:, None])
    return params.coupling / params.n * np.sum(cos * (rates[None, :] - rates[:, None]), axis=1)


def _check_pair(thetas, j, q, caller):
    if j == q:
        raise SameIndex('%s: needs two different indices, got j = q = %d' % (caller, j))
    n = np.asarray(thetas).size
    if not (0 <= j < n and 0 <= q < n):
        raise IndexError('%s: indices (%d, %d) out of range for N = %d' % (caller, j, q, n))


def curl_mismatch_closed_form(params, thetas, j, q):
    """
    (lambda/N)^2 cos(theta_q - theta_j) sum_k [cos(theta_k - theta_j) - cos(theta_k - theta_q)]
    """
    _check_pair(thetas, j, q, 'curl_mismatch_closed_form')
    thetas = np.asarray(thetas, dtype=float)
    _check_n(params, thetas.size, 'curl_mismatch_closed_form')
    scale = (params.coupling / params.n) ** 2
    return float(scale * np.cos(thetas[q] - thetas[j]) *
                 np.sum(np.cos(thetas - thetas[j]) - np.cos(thetas - thetas[q])))


def curl_mismatch_numeric(params, thetas, j, q, h=1e-4):
    """
    d_q G_j - d_j G_q for G = candidate_gradient, by central differences with step h
    """
    _check_pair(thetas, j, q, 'curl_mismatch_numeric')
    if not 1e-6 <= h <= 1e-3:
        raise ValueError('curl_mismatch_numeric: step h must lie in [1e-6, 1e-3], got %g' % h)
    thetas = np.asarray(thetas, dtype=float)

    def partial(component, direction):
        up, down = thetas.copy(), thetas.copy()
        up[direction] += h
        down[direction] -= h
        return (candidate_gradient(params, up)[component] - candidate_gradient(params, down)[component]) / (2 * h)

    return float(partial(j, q) - partial(q, j))


def lambda3_cancellation(spins):
    """
    sum_j S_j . (e3 x S_j)
    """
    S = np.atleast_2d(np.asarray(spins, dtype=float))
    return float(np.sum(np.einsum('ij,ij->i', S, e3_cross(S))))
