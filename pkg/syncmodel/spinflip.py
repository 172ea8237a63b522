"""
Spin flip (kink) dynamics of one or two tagged oscillators against a stationary, uniformly rotating background
"""

import logging
import numpy as np
import pandas as pd

from dataclasses import dataclass
from scipy.integrate import solve_ivp
from sklearn import linear_model

from .errors import ImaginaryRate, StepFailure
from .utils import wrap_angle

__all__ = ['KinkParams', 'TwoSpinParams', 'kink_rhs', 'relaxation_rate', 'kink_analytic', 'stable_equilibrium',
           'unstable_equilibrium', 'integrate_kink', 'fit_relaxation_rate', 'flip_phase', 'two_spin_rhs',
           'sigma_delta_rhs', 'integrate_two_spin', 'two_spin_asymptotic']


@dataclass(frozen=True)
class KinkParams:
    """
    :param omega: natural frequency of the flipping spin
    :param Omega: rotation frequency of the background
    :param lambdaJ: lambda |J| > 0
    """
    omega: float
    Omega: float
    lambdaJ: float

    def __post_init__(self):
        if not self.lambdaJ > 0:
            raise ValueError('KinkParams: lambdaJ must be > 0, got %r' % self.lambdaJ)

    @property
    def detuning(self):
        return self.omega - self.Omega


@dataclass(frozen=True)
class TwoSpinParams:
    """
    Two tagged spins on a background; J is the background magnitude already rescaled by (N - 2)/N
    """
    omega1: float
    omega2: float
    Omega: float
    coupling: float
    J: float
    n: int

    def __post_init__(self):
        if self.n < 3:
            raise ValueError('TwoSpinParams: needs N >= 3 (two tagged spins plus background), got %d' % self.n)
        if self.coupling < 0:
            raise ValueError('TwoSpinParams: coupling must be >= 0')

    @classmethod
    def from_background(cls, omega1, omega2, Omega, coupling, background_J, n):
        """
        :param background_J: magnitude of the mean of the other N - 2 spins
        """
        return cls(omega1, omega2, Omega, coupling, background_J * (n - 2) / n, n)

    @property
    def lambdaJ(self):
        return self.coupling * self.J


def _sample_times(t_end, dt):
    t = np.arange(0., t_end, dt)
    return np.append(t[t < t_end * (1 - 1e-12)], t_end)


def kink_rhs(p, phi):
    """
    phi_dot = omega - Omega - lambda |J| sin(phi)
    """
    return p.detuning - p.lambdaJ * np.sin(phi)


def relaxation_rate(p):
    """
    Lambda_omega = sqrt((lambda |J|)^2 - (omega - Omega)^2)
    """
    gap = p.lambdaJ ** 2 - p.detuning ** 2
    if gap < 0:
        raise ImaginaryRate('relaxation_rate: |omega - Omega| = %g exceeds lambda |J| = %g, no locked equilibrium'
                            % (abs(p.detuning), p.lambdaJ))
    return float(np.sqrt(gap))


def kink_analytic(p, delta0, t):
    """
    delta(t) = 2 arctan[tan(delta(0)/2) exp(-Lambda_omega t)], delta measured from the stable equilibrium
    :param p: KinkParams
    :param delta0: initial offset, |delta0| < pi
    :param t: time or array of times
    """
    if not abs(delta0) < np.pi:
        raise ValueError('kink_analytic: |delta0| must be < pi, got %g' % delta0)
    rate = relaxation_rate(p)
    return 2. * np.arctan(np.tan(delta0 / 2.) * np.exp(-rate * np.asarray(t, dtype=float)))


def _sine(p):
    s = p.detuning / p.lambdaJ
    if abs(s) > 1:
        raise ImaginaryRate('equilibrium: sin(phi) = %g is out of range' % s)
    return s


def stable_equilibrium(p):
    """
    phi_0 with sin(phi_0) = (omega - Omega) / lambda |J| and cos(phi_0) > 0
    """
    return float(np.arcsin(_sine(p)))


def unstable_equilibrium(p):
    """
    phi_* with the same sine and cos(phi_*) < 0
    """
    return float(wrap_angle(np.pi - np.arcsin(_sine(p))))


def integrate_kink(p, phi0, t_end, dt=0.01, rtol=1e-10, atol=1e-12):
    """
    Integrate the single spin equation
    :return: Series of phi indexed by time
    """
    t_eval = _sample_times(t_end, dt)
    sol = solve_ivp(lambda t, y: kink_rhs(p, y), (0., t_end), [phi0], method='RK45', t_eval=t_eval,
                    rtol=rtol, atol=atol)
    if not sol.success:
        raise StepFailure('integrate_kink: %s' % sol.message)
    return pd.Series(sol.y[0], index=pd.Index(sol.t, name='t'), name='phi')


def fit_relaxation_rate(times, deltas):
    """
    Decay rate from a log-linear fit of |delta(t)|
    :param times: sample times
    :param deltas: offsets from the stable equilibrium, nonzero
    :return: fitted rate
    """
    x = np.asarray(times, dtype=float).reshape(-1, 1)
    y = np.log(np.abs(np.asarray(deltas, dtype=float)))
    lm = linear_model.LinearRegression()
    lm.fit(x, y)
    return -float(lm.coef_[0])


def flip_phase(p, seed_offset=1e-6, t_end=None):
    """
    Total phase traversed while relaxing from just past the unstable equilibrium phi_* to the stable one.
    Equals pi + 2 arcsin((omega - Omega) / lambda |J|), pi when omega = Omega.
    """
    phi_star = unstable_equilibrium(p)
    rate = relaxation_rate(p)
    if rate == 0:
        raise ImaginaryRate('flip_phase: equilibria coincide, there is no flip.')
    if t_end is None:
        # tan((pi - seed_offset)/2) exp(-rate t) has to fall well below seed_offset
        t_end = (2 * np.log(2. / seed_offset) + 6.) / rate
    path = integrate_kink(p, phi_star + seed_offset, t_end, dt=t_end / 1000.)
    logging.debug('flip_phase: phi_* = %g, final phi = %g after t = %g' % (phi_star, path.iloc[-1], t_end))
    return float(path.iloc[-1] - phi_star)


def two_spin_rhs(params, phis):
    """
    phi_dot_1 = omega_1 - Omega - lambda J sin(phi_1) - (lambda/N) sin(phi_1 - phi_2), and symmetrically
    """
    phi1, phi2 = phis
    lam, lamJ, n = params.coupling, params.lambdaJ, params.n
    return (params.omega1 - params.Omega - lamJ * np.sin(phi1) - lam / n * np.sin(phi1 - phi2),
            params.omega2 - params.Omega - lamJ * np.sin(phi2) - lam / n * np.sin(phi2 - phi1))


def sigma_delta_rhs(params, sigma, delta):
    """
    Same system in sigma = (phi_1 + phi_2)/2, delta = (phi_1 - phi_2)/2:
        sigma_dot = ((omega_1 + omega_2)/2 - Omega) - lambda J cos(delta) sin(sigma)
        delta_dot = (omega_1 - omega_2)/2 - lambda J sin(delta) cos(sigma) - (lambda/N) sin(2 delta)
    """
    lam, lamJ, n = params.coupling, params.lambdaJ, params.n
    sigma_dot = (params.omega1 + params.omega2) / 2. - params.Omega - lamJ * np.cos(delta) * np.sin(sigma)
    delta_dot = (params.omega1 - params.omega2) / 2. - lamJ * np.sin(delta) * np.cos(sigma) - \
        lam / n * np.sin(2 * delta)
    return sigma_dot, delta_dot


def integrate_two_spin(params, phis0, t_end, dt=0.01, rtol=1e-10, atol=1e-12):
    """
    :return: DataFrame with phi1, phi2, sigma, delta indexed by time
    """
    t_eval = _sample_times(t_end, dt)
    sol = solve_ivp(lambda t, y: np.array(two_spin_rhs(params, y)), (0., t_end), list(phis0), method='RK45',
                    t_eval=t_eval, rtol=rtol, atol=atol)
    if not sol.success:
        raise StepFailure('integrate_two_spin: %s' % sol.message)
    phi1, phi2 = sol.y
    return pd.DataFrame({'phi1': phi1, 'phi2': phi2, 'sigma': (phi1 + phi2) / 2., 'delta': (phi1 - phi2) / 2.},
                        index=pd.Index(sol.t, name='t'))


def two_spin_asymptotic(params):
    """
    Linearized large N equilibrium
        sigma ~ (omega_1 + omega_2 - 2 Omega) / (2 lambda J)
        delta ~ (omega_1 - omega_2) / (2 sqrt((lambda J)^2 - [(omega_1 + omega_2)/2 - Omega]^2))
    :return: (sigma, delta)
    """
    lamJ = params.lambdaJ
    mean_detuning = (params.omega1 + params.omega2) / 2. - params.Omega
    gap = lamJ ** 2 - mean_detuning ** 2
    if gap <= 0:
        raise ImaginaryRate('two_spin_asymptotic: lambda J = %g does not exceed the mean detuning %g' %
                            (lamJ, abs(mean_detuning)))
    return mean_detuning / lamJ, (params.omega1 - params.omega2) / (2. * np.sqrt(gap))
