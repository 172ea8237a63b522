"""
Synchronization analytics: locking detection, coupling bounds, the self-consistent order parameter and
classification of the long time behaviour
"""

import itertools
import logging
import numpy as np

from dataclasses import dataclass
from enum import Enum
from scipy.optimize import brentq
from sklearn import linear_model
from sklearn import metrics

from .core import FrequencySpec, PhaseState, SpinConfiguration, antisym_form, order_parameter, to_spin
from .dynamics import spin_rhs
from .errors import DegenerateDenominator, DimensionMismatch, InsufficientData, NoSolution, ZeroCoupling
from .trajectory import Trajectory
from .utils import wrap_angle

__all__ = ['CouplingBounds', 'SyncSolution', 'SyncState', 'ClassifierThresholds', 'coupling_bounds',
           'detect_locking', 'pair_lock_residual', 'triple_lock_residual', 'pair_locking_angle',
           'equal_frequency_locking_check', 'solve_self_consistent_J', 'asymptotic_J', 'equilibrium_state',
           'global_sync_residual', 'order_parameter_growth', 'classify', 'fit_decay_order']


@dataclass(frozen=True)
class CouplingBounds:
    """
    lambda_c: below it no pair can lock; lambda_s: above it every pair may lock
    """
    lambda_c: float
    lambda_s: float


@dataclass(frozen=True, eq=False)
class SyncSolution:
    """
    Equilibrium of the mean field system in the epsilon sector given by the signs of cos(phi_j)
    """
    J_mod: float
    epsilons: np.ndarray
    phis: np.ndarray

    @property
    def n(self):
        return self.phis.size

    @property
    def n_plus(self):
        return int(np.sum(self.epsilons > 0))

    @property
    def n_minus(self):
        return int(np.sum(self.epsilons < 0))


class SyncState(Enum):
    UNSYNCHRONIZED = 'unsynchronized'
    PARTIAL = 'partially_synchronized'
    FULL = 'fully_synchronized'
    NONSTATIONARY = 'nonstationary'


@dataclass(frozen=True)
class ClassifierThresholds:
    constancy_tol: float = 1e-5
    zero_tol: float = 1e-3
    one_tol: float = 1e-3
    # incoherent large systems keep finite size fluctuations of |r| ~ 1/sqrt(N)
    large_n: int = 100
    mean_cutoff: float = 0.2


def _freqs(freqs):
    return freqs if isinstance(freqs, FrequencySpec) else FrequencySpec(freqs)


def coupling_bounds(freqs):
    """
    Necessary conditions for pairwise locking:
        lambda_c = N / (2(N-1)) min_{j != l} |omega_j - omega_l|
        lambda_s = N / (2(N-1)) max_{j != l} |omega_j - omega_l|
    :param freqs: FrequencySpec
    :return: CouplingBounds, (0, 0) for N = 1 or identical frequencies
    """
    freqs = _freqs(freqs)
    n, omegas = freqs.n, freqs.omegas
    if n < 2 or np.ptp(omegas) == 0:
        return CouplingBounds(0., 0.)

    gaps = np.abs(omegas[:, None] - omegas[None, :])[np.triu_indices(n, k=1)]
    factor = n / (2. * (n - 1))
    return CouplingBounds(factor * float(gaps.min()), factor * float(gaps.max()))


def detect_locking(traj, window, tol=1e-6):
    """
    Pairs whose phase difference stays within a band of width tol over the trailing window
    :param traj: Trajectory
    :param window: window length in time units
    :param tol: allowed peak to peak variation
    :return: set of (j, k) tuples with j < k
    """
    deltas = traj.window(window).phase_differences()
    spread = deltas.max() - deltas.min()
    n = traj.phases().shape[1]
    return {(j, k) for j, k in itertools.combinations(range(n), 2)
            if spread['delta_{j}_{k}'.format(j=j, k=k)] < tol}


def _as_complex(z):
    if isinstance(z, PhaseState):
        return z.as_complex()
    return np.asarray(z, dtype=complex)


def pair_lock_residual(z, r, j, k, params):
    """
    [z_j - z_k, r] - (omega_j - omega_k) / lambda, zero on a phase locked pair
    :param z: complex state (array or PhaseState)
    :param r: order parameter, computed from z when None
    :param j: index
    :param k: index
    :param params: ModelParams
    :return: real residual
    """
    if params.coupling == 0:
        raise ZeroCoupling('pair_lock_residual: locking condition needs lambda > 0.')
    z = _as_complex(z)
    if z.size != params.n:
        raise DimensionMismatch('pair_lock_residual: state has %d entries, model has %d' % (z.size, params.n))
    if r is None:
        r = np.mean(z)
    omegas = params.omegas
    return float(antisym_form(z[j] - z[k], r) - (omegas[j] - omegas[k]) / params.coupling)


def triple_lock_residual(phis, omegas):
    """
    (w_k - w_l) sin phi_j + (w_l - w_j) sin phi_k + (w_j - w_k) sin phi_l for three mutually locked oscillators
    """
    s = np.sin(np.asarray(phis, dtype=float))
    w = np.asarray(omegas, dtype=float)
    if s.size != 3 or w.size != 3:
        raise DimensionMismatch('triple_lock_residual: needs exactly three phases and three frequencies.')
    return float((w[1] - w[2]) * s[0] + (w[2] - w[0]) * s[1] + (w[0] - w[1]) * s[2])


def pair_locking_angle(freqs, coupling):
    """
    Locked phase difference of a two oscillator system, sin(theta_1 - theta_2) = (omega_1 - omega_2) / lambda
    """
    freqs = _freqs(freqs)
    if freqs.n != 2:
        raise DimensionMismatch('pair_locking_angle: defined for N = 2 only, got N = %d' % freqs.n)
    if coupling <= 0:
        raise ZeroCoupling('pair_locking_angle: locking needs lambda > 0.')
    s = (freqs.omegas[0] - freqs.omegas[1]) / coupling
    if abs(s) > 1:
        raise NoSolution('pair_locking_angle: |omega_1 - omega_2| = %g exceeds lambda = %g, no locked state'
                         % (abs(freqs.omegas[0] - freqs.omegas[1]), coupling))
    return float(np.arcsin(s))


def equal_frequency_locking_check(z, r, j, k):
    """
    Im[(z_j - z_k) / r]; vanishes when z_j - z_k is parallel to the order parameter
    """
    z = _as_complex(z)
    if r is None:
        r = np.mean(z)
    if abs(r) < 1e-14:
        raise DegenerateDenominator('equal_frequency_locking_check: order parameter vanishes.')
    return float(np.imag((z[j] - z[k]) / r))


def _check_epsilons(epsilons, n):
    if epsilons is None:
        return np.ones(n, dtype=int)
    eps = np.asarray(epsilons)
    if eps.size != n:
        raise DimensionMismatch('solve_self_consistent_J: %d signs for %d oscillators' % (eps.size, n))
    if not np.all(np.isin(eps, (-1, 1))):
        raise ValueError('solve_self_consistent_J: epsilons must be +1 or -1.')
    return eps.astype(int)


def _phis_for(w, coupling, J, eps):
    s = np.clip(w / (coupling * J), -1., 1.)
    return wrap_angle(np.where(eps > 0, np.arcsin(s), np.pi - np.arcsin(s)))


def solve_self_consistent_J(freqs, coupling, epsilons=None, tol=1e-14, max_iter=10000, damping=0.5):
    """
    Largest root in (0, 1] of
        |J| = (1/N) sum_j eps_j sqrt(1 - (omega_j - Omega)^2 / (lambda |J|)^2)
    Damped fixed point iteration from |J|_0 = (N+ - N-)/N, with a bracketing scan plus brentq as fallback.
    :param freqs: FrequencySpec
    :param coupling: lambda > 0
    :param epsilons: signs of cos(phi_j), all +1 by default
    :return: SyncSolution
    """
    freqs = _freqs(freqs)
    if coupling <= 0:
        raise ZeroCoupling('solve_self_consistent_J: needs lambda > 0, got %r' % coupling)
    eps = _check_epsilons(epsilons, freqs.n)
    w = freqs.centered()
    J0 = float(np.mean(eps))

    w_max = float(np.max(np.abs(w)))
    if w_max == 0.:
        if J0 <= 0:
            raise NoSolution('solve_self_consistent_J: sector N+ = %d, N- = %d has no |J| > 0' %
                             (np.sum(eps > 0), np.sum(eps < 0)))
        return SyncSolution(J0, eps, _phis_for(w, coupling, J0, eps))

    # real square roots need lambda |J| >= max |omega_j - Omega|
    J_min = w_max / coupling
    if J_min > 1:
        raise NoSolution('solve_self_consistent_J: lambda = %g is below max |omega_j - Omega| = %g' %
                         (coupling, w_max))

    def rhs(J):
        return float(np.mean(eps * np.sqrt(np.clip(1. - (w / (coupling * J)) ** 2, 0., None))))

    def F(J):
        return J - rhs(J)

    J = None
    if J0 >= J_min:
        x = J0
        for it in range(max_iter):
            x_new = (1 - damping) * x + damping * rhs(x)
            if x_new < J_min:
                logging.debug('solve_self_consistent_J: fixed point left the feasible interval at iteration %d' % it)
                break
            if abs(x_new - x) < tol:
                J = x_new
                break
            x = x_new
        else:
            logging.debug('solve_self_consistent_J: fixed point did not converge in %d iterations' % max_iter)

    if J is None or abs(F(J)) > 1e-10:
        logging.debug('solve_self_consistent_J: bracketing fallback on [%g, 1]' % J_min)
        grid = np.linspace(1., J_min, 2001)
        values = np.array([F(x) for x in grid])
        if values[0] == 0.:
            J = 1.
        else:
            change = np.flatnonzero(values[:-1] * values[1:] <= 0)
            if change.size == 0:
                raise NoSolution('solve_self_consistent_J: no root in [%g, 1] for lambda = %g, N+ = %d, N- = %d'
                                 % (J_min, coupling, np.sum(eps > 0), np.sum(eps < 0)))
            i = change[0]
            lo, hi = grid[i + 1], grid[i]
            J = lo if values[i + 1] == 0 else brentq(F, lo, hi, xtol=1e-15)

    if J <= 0:
        raise NoSolution('solve_self_consistent_J: only |J| <= 0 satisfies the equation in this sector.')
    return SyncSolution(float(J), eps, _phis_for(w, coupling, J, eps))


def asymptotic_J(freqs, coupling, epsilons=None):
    """
    Large coupling expansion |J| ~ |J|_0 - E[eps_j (omega_j - Omega)^2] / (2 lambda^2 |J|_0^2)
    :return: float, nan when |J|_0 = (N+ - N-)/N <= 0
    """
    freqs = _freqs(freqs)
    eps = _check_epsilons(epsilons, freqs.n)
    J0 = float(np.mean(eps))
    if J0 <= 0:
        logging.warning('asymptotic_J: |J|_0 = %g, the expansion needs N+ > N-' % J0)
        return float('nan')
    return J0 - float(np.mean(eps * freqs.centered() ** 2)) / (2. * coupling ** 2 * J0 ** 2)


def equilibrium_state(freqs, solution, theta0=0.):
    """
    Phase state realising a SyncSolution, theta_j = theta0 + phi_j
    """
    freqs = _freqs(freqs)
    if solution.n != freqs.n:
        raise DimensionMismatch('equilibrium_state: solution has %d phases, frequencies %d' % (solution.n, freqs.n))
    return PhaseState(theta0 + solution.phis)


def _relative_phases_and_modulus(state):
    if isinstance(state, SyncSolution):
        return state.phis, state.J_mod
    op = order_parameter(state)
    if isinstance(state, SpinConfiguration):
        thetas = np.arctan2(state.spins[:, 1], state.spins[:, 0])
    else:
        thetas = state.thetas
    return thetas - op.theta0, op.modulus


def global_sync_residual(state, params):
    """
    lambda |J| - sum (omega_j - Omega) sin phi_j / sum sin^2 phi_j
    :param state: PhaseState, planar SpinConfiguration or SyncSolution
    :param params: ModelParams
    :return: float
    """
    phis, J = _relative_phases_and_modulus(state)
    if phis.size != params.n:
        raise DimensionMismatch('global_sync_residual: state has %d oscillators, model has %d' %
                                (phis.size, params.n))
    s = np.sin(phis)
    denominator = float(np.sum(s ** 2))
    if denominator < 1e-14:
        raise DegenerateDenominator('global_sync_residual: sum sin^2 phi_j = %g, state is fully aligned' %
                                    denominator)
    return params.coupling * J - float(np.sum(params.freqs.centered() * s)) / denominator


def order_parameter_growth(params, state):
    """
    d|J|/dt = J . J_dot / |J| along the spin flow
    """
    if isinstance(state, PhaseState):
        state = to_spin(state)
    if state.n != params.n:
        raise DimensionMismatch('order_parameter_growth: state has %d spins, model has %d' % (state.n, params.n))
    J = state.spins.mean(axis=0)
    modulus = float(np.linalg.norm(J))
    if modulus < 1e-14:
        raise DegenerateDenominator('order_parameter_growth: |J| vanishes.')
    J_dot = spin_rhs(params, state).mean(axis=0)
    return float(J @ J_dot) / modulus


def classify(series, thresholds=None, n_oscillators=None):
    """
    Classify the trailing behaviour of |r|:
        |r| ~ 0: unsynchronized, constant in (0, 1): partially synchronized, ~ 1: fully synchronized,
        anything else nonstationary
    :param series: |r| samples over a trailing window, or a Trajectory (uses its r_modulus observable)
    :param thresholds: ClassifierThresholds
    :param n_oscillators: system size, needed for the large N time average rule
    :return: SyncState
    """
    thresholds = thresholds or ClassifierThresholds()
    if isinstance(series, Trajectory):
        if n_oscillators is None:
            n_oscillators = series.final_state.n
        series = series.observable('r_modulus')
    r = np.abs(np.asarray(series, dtype=float))
    if r.size < 2:
        raise InsufficientData('classify: need at least 2 samples, got %d' % r.size)

    mean = float(r.mean())
    if r.max() < thresholds.zero_tol:
        return SyncState.UNSYNCHRONIZED
    if np.ptp(r) < thresholds.constancy_tol:
        return SyncState.FULL if mean > 1. - thresholds.one_tol else SyncState.PARTIAL
    if n_oscillators is not None and n_oscillators >= thresholds.large_n and mean < thresholds.mean_cutoff:
        return SyncState.UNSYNCHRONIZED
    return SyncState.NONSTATIONARY


def fit_decay_order(couplings, errors):
    """
    Fit errors ~ C lambda^(-p) by linear regression in log-log coordinates
    :param couplings: coupling values
    :param errors: absolute errors at those couplings
    :return: (p, r2 of the fit)
    """
    x = np.log(np.asarray(couplings, dtype=float)).reshape(-1, 1)
    y = np.log(np.abs(np.asarray(errors, dtype=float)))
    if x.shape[0] < 2:
        raise InsufficientData('fit_decay_order: need at least 2 points.')
    lm = linear_model.LinearRegression()
    lm.fit(x, y)
    r2 = metrics.r2_score(y, lm.predict(x))
    logging.debug('fit_decay_order: slope %g, r2 %g' % (lm.coef_[0], r2))
    return -float(lm.coef_[0]), float(r2)
