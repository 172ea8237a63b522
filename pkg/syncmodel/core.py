"""
Core domain types - frequencies, phase & spin states, order parameter - and the complex bilinear algebra
"""

import numpy as np

from dataclasses import dataclass, field
from numpy import linalg as la
from typing import Optional

from .errors import NonPlanarInput
from .trajectory import Trajectory
from .utils import E3, wrap_angle

__all__ = ['FrequencySpec', 'PhaseState', 'SpinConfiguration', 'OrderParameter', 'Trajectory',
           'antisym_form', 'sym_form', 'planar_bracket', 'order_parameter', 'to_spin', 'to_phase',
           'relative_phases', 'PLANAR_TOL', 'ALGEBRA_TOL', 'INTEGRATION_TOL']

# Identities that hold in exact arithmetic vs. quantities that went through an integrator
ALGEBRA_TOL = 1e-12
INTEGRATION_TOL = 1e-9
PLANAR_TOL = 1e-9


def _frozen_array(values, dtype=float):
    arr = np.array(values, dtype=dtype)
    arr.setflags(write=False)
    return arr


@dataclass(frozen=True, eq=False)
class FrequencySpec:
    """
    Natural angular frequencies of the N oscillators
    """
    omegas: np.ndarray

    def __post_init__(self):
        omegas = _frozen_array(np.atleast_1d(self.omegas))
        if omegas.ndim != 1 or omegas.size < 1:
            raise ValueError('FrequencySpec: need a nonempty 1D list of frequencies, got shape %s' % (omegas.shape,))
        if not np.all(np.isfinite(omegas)):
            raise ValueError('FrequencySpec: all frequencies must be finite.')
        object.__setattr__(self, 'omegas', omegas)

    @property
    def n(self):
        return self.omegas.size

    def mean(self):
        """
        Omega = (1/N) sum omega_j
        """
        return float(np.mean(self.omegas))

    def variance(self):
        """
        Population variance (1/N) sum (omega_j - Omega)^2
        """
        return float(np.mean((self.omegas - self.mean()) ** 2))

    def centered(self):
        return self.omegas - self.mean()


@dataclass(frozen=True, eq=False)
class PhaseState:
    """
    N angles on the circle, stored unwrapped on the real line
    """
    thetas: np.ndarray

    def __post_init__(self):
        thetas = _frozen_array(np.atleast_1d(self.thetas))
        if thetas.ndim != 1 or thetas.size < 1:
            raise ValueError('PhaseState: need a nonempty 1D list of angles, got shape %s' % (thetas.shape,))
        object.__setattr__(self, 'thetas', thetas)

    @property
    def n(self):
        return self.thetas.size

    def as_complex(self):
        """
        z_j = exp(i theta_j)
        """
        return np.exp(1j * self.thetas)

    def wrapped(self):
        return wrap_angle(self.thetas)


@dataclass(frozen=True, eq=False)
class SpinConfiguration:
    """
    N classical spins S_j in R^3 and, optionally, their dual momenta P_j
    """
    spins: np.ndarray
    momenta: Optional[np.ndarray] = None

    def __post_init__(self):
        spins = _frozen_array(np.atleast_2d(self.spins))
        if spins.ndim != 2 or spins.shape[1] != 3 or spins.shape[0] < 1:
            raise ValueError('SpinConfiguration: spins must be an (N, 3) array, got shape %s' % (spins.shape,))
        object.__setattr__(self, 'spins', spins)
        if self.momenta is not None:
            momenta = _frozen_array(np.atleast_2d(self.momenta))
            if momenta.shape != spins.shape:
                raise ValueError('SpinConfiguration: momenta shape %s does not match spins %s' %
                                 (momenta.shape, spins.shape))
            object.__setattr__(self, 'momenta', momenta)

    @classmethod
    def with_dual_momenta(cls, spins):
        """
        Build a configuration whose momenta are constructed as P_j = S_j x e3
        """
        spins = np.atleast_2d(np.asarray(spins, dtype=float))
        return cls(spins, np.cross(spins, E3))

    @property
    def n(self):
        return self.spins.shape[0]

    def norms(self):
        return la.norm(self.spins, axis=1)

    def max_norm_drift(self):
        return float(np.max(np.abs(self.norms() - 1.)))

    def max_out_of_plane(self):
        return float(np.max(np.abs(self.spins[:, 2])))

    def is_planar(self, tol=PLANAR_TOL):
        return self.max_out_of_plane() < tol


@dataclass(frozen=True, eq=False)
class OrderParameter:
    """
    Complex order parameter r = |r| exp(i theta0) together with the mean field vector J
    """
    r_complex: complex
    J_vector: np.ndarray = field(repr=False)
    modulus: float
    theta0: float


def antisym_form(u, v):
    """
    [u, v] = (u conj(v) - v conj(u)) / 2i, real valued; vectorised over numpy inputs
    """
    u, v = np.asarray(u, dtype=complex), np.asarray(v, dtype=complex)
    return ((u * np.conj(v) - v * np.conj(u)) / 2j).real


def sym_form(u, v):
    """
    {u, v} = (u conj(v) + v conj(u)) / 2
    """
    u, v = np.asarray(u, dtype=complex), np.asarray(v, dtype=complex)
    return ((u * np.conj(v) + v * np.conj(u)) / 2).real


def planar_bracket(u, v):
    """
    e3 . (v x u) for the planar vector images of complex numbers u, v.
    Equals antisym_form(u, v) for unimodular inputs.
    """
    u, v = np.asarray(u, dtype=complex), np.asarray(v, dtype=complex)
    return v.real * u.imag - v.imag * u.real


def order_parameter(state):
    """
    Order parameter of a phase state (r = mean of exp(i theta)) or spin configuration (J = mean of S_j)
    :param state: PhaseState or SpinConfiguration
    :return: OrderParameter
    """
    if isinstance(state, PhaseState):
        r = complex(np.mean(state.as_complex()))
        J = np.array([r.real, r.imag, 0.])
        modulus = abs(r)
    elif isinstance(state, SpinConfiguration):
        J = state.spins.mean(axis=0)
        r = complex(J[0], J[1])
        modulus = float(la.norm(J))
    else:
        raise TypeError('order_parameter: state needs to be a PhaseState or SpinConfiguration, got %s' %
                        type(state).__name__)

    return OrderParameter(r_complex=r, J_vector=J, modulus=float(modulus), theta0=float(np.angle(r)))


def to_spin(state):
    """
    Planar embedding S_j = <cos theta_j, sin theta_j, 0>, with dual momenta P_j = S_j x e3
    :param state: PhaseState
    :return: SpinConfiguration
    """
    spins = np.column_stack([np.cos(state.thetas), np.sin(state.thetas), np.zeros(state.n)])
    return SpinConfiguration.with_dual_momenta(spins)


def to_phase(state, tol=PLANAR_TOL):
    """
    Inverse of to_spin for planar unit spins
    :param state: SpinConfiguration
    :param tol: planarity and norm tolerance
    :return: PhaseState with angles in (-pi, pi]
    """
    out_of_plane = np.abs(state.spins[:, 2])
    if np.any(out_of_plane >= tol):
        raise NonPlanarInput('to_phase: spins %s leave the plane (max |e3.S| = %g), use the 3D pipeline.' %
                             (list(np.flatnonzero(out_of_plane >= tol)), out_of_plane.max()))
    drift = np.abs(state.norms() - 1.)
    if np.any(drift >= tol):
        raise NonPlanarInput('to_phase: spins %s are not on the unit circle (max ||S|-1| = %g).' %
                             (list(np.flatnonzero(drift >= tol)), drift.max()))

    return PhaseState(np.arctan2(state.spins[:, 1], state.spins[:, 0]))


def relative_phases(state):
    """
    phi_j = theta_j - theta0, wrapped into (-pi, pi]
    """
    if isinstance(state, SpinConfiguration):
        thetas = np.arctan2(state.spins[:, 1], state.spins[:, 0])
    else:
        thetas = state.thetas
    return wrap_angle(thetas - order_parameter(state).theta0)
