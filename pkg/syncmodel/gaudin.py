"""
Perturbations around synchronization equilibria: the planar Heisenberg form, the spin 1/2 algebra and the
semiclassical Gaudin (Richardson pairing) Hamiltonian with its ground state search
"""

import itertools
import logging
import numpy as np

from dataclasses import dataclass

from .errors import DimensionMismatch
from .utils import normalize_rows, random_unit_vectors

__all__ = ['PSEUDO_SPIN_RADIUS', 'PseudoSpinConfig', 'RichardsonParams', 'heisenberg_perturbation',
           'dual_pseudo_spins', 'ferromagnetic_sigmas', 'pauli_matrices', 'pauli_structure_check',
           'commutator_identity_deviation', 'gaudin_h1', 'richardson_map', 'minimize_h1']

PSEUDO_SPIN_RADIUS = 0.5


@dataclass(frozen=True, eq=False)
class PseudoSpinConfig:
    """
    Ground state averages t_j of N spin 1/2 operators, |t_j| = 1/2
    """
    taus: np.ndarray

    def __post_init__(self):
        taus = np.atleast_2d(np.array(self.taus, dtype=float))
        if taus.ndim != 2 or taus.shape[1] != 3:
            raise ValueError('PseudoSpinConfig: taus must be (N, 3), got shape %s' % (taus.shape,))
        radii = np.linalg.norm(taus, axis=1)
        if np.any(np.abs(radii - PSEUDO_SPIN_RADIUS) > 1e-12):
            raise ValueError('PseudoSpinConfig: every |t_j| must equal 1/2, max deviation %g' %
                             np.max(np.abs(radii - PSEUDO_SPIN_RADIUS)))
        taus.setflags(write=False)
        object.__setattr__(self, 'taus', taus)

    @property
    def n(self):
        return self.taus.shape[0]

    def planar_sum(self):
        """
        J^- = sum_j (t_j^1, t_j^2, 0)
        """
        out = self.taus.sum(axis=0)
        out[2] = 0.
        return out


@dataclass(frozen=True, eq=False)
class RichardsonParams:
    """
    Single particle spectrum epsilon_j (centered) and pairing coupling g
    """
    epsilons: np.ndarray
    g: float

    def __post_init__(self):
        eps = np.atleast_1d(np.array(self.epsilons, dtype=float))
        if abs(eps.sum()) > 1e-12:
            raise ValueError('RichardsonParams: spectrum must be centered, sum epsilon_j = %g' % eps.sum())
        eps.setflags(write=False)
        object.__setattr__(self, 'epsilons', eps)

    @property
    def n(self):
        return self.epsilons.size


def _sigma_magnitudes(base, sigmas, caller):
    sigmas = np.atleast_1d(np.asarray(sigmas, dtype=float))
    if sigmas.size != base.n:
        raise DimensionMismatch('%s: %d perturbations for %d spins' % (caller, sigmas.size, base.n))
    return sigmas


def dual_pseudo_spins(base, sigmas):
    """
    sigma*_j = e3 x sigma_j for the planar perturbations sigma_j = |sigma_j| S_j^(0) x e3, i.e. |sigma_j| S_j^(0).
    The base state is taken in the frame where J points along e1.
    :param base: SyncSolution
    :param sigmas: signed perturbation magnitudes
    :return: (N, 3) array
    """
    sigmas = _sigma_magnitudes(base, sigmas, 'dual_pseudo_spins')
    spins = np.column_stack([np.cos(base.phis), np.sin(base.phis), np.zeros(base.n)])
    return sigmas[:, None] * spins


def heisenberg_perturbation(params, base, sigmas):
    """
    h = -lambda sum_j J . sigma*_j
    :param params: ModelParams
    :param base: SyncSolution
    :param sigmas: signed perturbation magnitudes
    :return: float
    """
    if base.n != params.n:
        raise DimensionMismatch('heisenberg_perturbation: base has %d spins, model has %d' % (base.n, params.n))
    J = np.array([base.J_mod, 0., 0.])
    return float(-params.coupling * np.sum(dual_pseudo_spins(base, sigmas) @ J))


def ferromagnetic_sigmas(base, magnitudes):
    """
    Signs that align every sigma*_j with J
    """
    magnitudes = np.abs(_sigma_magnitudes(base, magnitudes, 'ferromagnetic_sigmas'))
    return magnitudes * np.where(np.cos(base.phis) >= 0, 1., -1.)


def pauli_matrices():
    """
    Halved Pauli matrices sigma_alpha / 2
    """
    return 0.5 * np.array([[[0, 1], [1, 0]],
                           [[0, -1j], [1j, 0]],
                           [[1, 0], [0, -1]]], dtype=complex)


def _levi_civita(a, b, c):
    return (a - b) * (b - c) * (c - a) / 2


def pauli_structure_check():
    """
    Max elementwise deviation from
        s_a s_b = (1/4) delta_ab I + (i/2) eps_abc s_c   and   [s_a, s_b] = i eps_abc s_c
    """
    s = pauli_matrices()
    eye = np.eye(2)
    deviation = 0.
    for a, b in itertools.product(range(3), repeat=2):
        product = s[a] @ s[b]
        commutator = product - s[b] @ s[a]
        expected_commutator = sum(1j * _levi_civita(a, b, c) * s[c] for c in range(3))
        expected_product = 0.25 * (a == b) * eye + 0.5 * expected_commutator
        deviation = max(deviation, np.max(np.abs(product - expected_product)),
                        np.max(np.abs(commutator - expected_commutator)))
    return float(deviation)


def commutator_identity_deviation(a, b):
    """
    Max deviation of [a.s, b.s] = 2 (a.s)(b.s) - (1/2)(a.b) I for real 3-vectors a, b
    """
    s = pauli_matrices()
    a, b = np.asarray(a, dtype=float), np.asarray(b, dtype=float)
    A, B = np.tensordot(a, s, axes=1), np.tensordot(b, s, axes=1)
    return float(np.max(np.abs((A @ B - B @ A) - (2 * A @ B - 0.5 * (a @ b) * np.eye(2)))))


def gaudin_h1(rp, config):
    """
    H1 = sum_j 2 epsilon_j t_j^3 - g |J^-|^2
    :param rp: RichardsonParams
    :param config: PseudoSpinConfig
    :return: float
    """
    if rp.n != config.n:
        raise DimensionMismatch('gaudin_h1: %d energies for %d pseudo spins' % (rp.n, config.n))
    J_minus = config.planar_sum()
    return float(2. * rp.epsilons @ config.taus[:, 2] - rp.g * (J_minus @ J_minus))


def richardson_map(params):
    """
    epsilon_j = omega_j - Omega, g = lambda / N
    """
    eps = params.omegas - params.omegas.mean()
    # remove the rounding left by the mean
    eps = eps - eps.mean()
    return RichardsonParams(eps, params.coupling / params.n)


def _batch_energy(eps, g, taus):
    J_minus = taus[..., :2].sum(axis=-2)
    return 2. * taus[..., 2] @ eps - g * np.einsum('ri,ri->r', J_minus, J_minus)


def minimize_h1(rp, restarts=32, steps=1000, seed=0, step_size=None):
    """
    Projected gradient descent on the product of radius 1/2 spheres, all restarts advanced together
    :param rp: RichardsonParams
    :param restarts: number of random starts
    :param steps: descent steps per start
    :param seed: seed for the starting points
    :param step_size: defaults to 0.25 / (max |epsilon| + g N)
    :return: (PseudoSpinConfig, energy) of the best start
    """
    if restarts < 1 or steps < 1:
        raise ValueError('minimize_h1: restarts and steps must be >= 1')
    eps, g, n = rp.epsilons, rp.g, rp.n
    if step_size is None:
        scale = np.max(np.abs(eps)) + g * n
        step_size = 0.25 / scale if scale > 0 else 0.25

    rng = np.random.default_rng(seed)
    taus = random_unit_vectors(rng, restarts * n, PSEUDO_SPIN_RADIUS).reshape(restarts, n, 3)
    tilt = np.zeros((1, n, 3))
    tilt[0, :, 2] = 2. * eps

    for _ in range(steps):
        J_minus = taus[..., :2].sum(axis=1)
        grad = np.repeat(tilt, restarts, axis=0)
        grad[..., :2] -= 2. * g * J_minus[:, None, :]
        taus = normalize_rows(taus - step_size * grad, PSEUDO_SPIN_RADIUS)

    energies = _batch_energy(eps, g, taus)
    best = int(np.argmin(energies))
    logging.info('minimize_h1: best of %d restarts E = %.12g (spread %.3g)' %
                 (restarts, energies[best], np.ptp(energies)))
    return PseudoSpinConfig(normalize_rows(taus[best], PSEUDO_SPIN_RADIUS)), float(energies[best])
