"""
Equations of motion - angular Kuramoto, complex form and the generalized spin system - and their time integration
"""

import logging
import numpy as np

from dataclasses import dataclass
from enum import Enum
from scipy.integrate import solve_ivp

from .core import FrequencySpec, PhaseState, SpinConfiguration, antisym_form, order_parameter, to_spin
from .errors import DimensionMismatch, InsufficientData, NonUnimodularInput, StepFailure
from .trajectory import Trajectory
from .utils import E3, e3_cross, normalize_rows

__all__ = ['ModelParams', 'IntegratorMethod', 'IntegratorConfig', 'Representation', 'kuramoto_rhs',
           'kuramoto_rhs_complex', 'spin_rhs', 'instantaneous_frequencies', 'integrate', 'detect_convergence',
           'relax']

# squared distance from the e3 axis below which a spin has no azimuth
POLE_TOL = 1e-24


@dataclass(frozen=True, eq=False)
class ModelParams:
    """
    Natural frequencies and the (attractive, nonnegative) mean-field coupling constant lambda
    """
    freqs: FrequencySpec
    coupling: float

    def __post_init__(self):
        if not isinstance(self.freqs, FrequencySpec):
            object.__setattr__(self, 'freqs', FrequencySpec(self.freqs))
        if not np.isfinite(self.coupling) or self.coupling < 0:
            raise ValueError('ModelParams: coupling constant must be finite and >= 0, got %r' % self.coupling)
        object.__setattr__(self, 'coupling', float(self.coupling))

    @property
    def n(self):
        return self.freqs.n

    @property
    def omegas(self):
        return self.freqs.omegas

    def with_coupling(self, coupling):
        return ModelParams(self.freqs, coupling)

    def co_rotating(self):
        """
        Same model seen from the frame turning at the mean frequency Omega
        """
        return ModelParams(FrequencySpec(self.freqs.centered()), self.coupling)


class IntegratorMethod(Enum):
    RK4 = 'rk4'
    RK45 = 'RK45'
    DOP853 = 'DOP853'


class Representation(Enum):
    ANGULAR = 'angular'
    COMPLEX = 'complex'
    SPIN = 'spin'


@dataclass(frozen=True)
class IntegratorConfig:
    """
    dt is the fixed step of RK4 and the sampling interval of the adaptive methods
    """
    dt: float = 0.01
    t_end: float = 10.
    method: IntegratorMethod = IntegratorMethod.RK45
    rtol: float = 1e-9
    atol: float = 1e-12
    renormalize: bool = False
    sample_every: int = 1

    def __post_init__(self):
        if isinstance(self.method, str):
            object.__setattr__(self, 'method', IntegratorMethod(self.method))
        if not self.dt > 0:
            raise ValueError('IntegratorConfig: dt must be > 0, got %r' % self.dt)
        if not self.t_end >= 0:
            raise ValueError('IntegratorConfig: t_end must be >= 0, got %r' % self.t_end)
        if not 0 < self.rtol <= 1e-3:
            raise ValueError('IntegratorConfig: rtol must lie in (0, 1e-3], got %r' % self.rtol)
        if self.sample_every < 1:
            raise ValueError('IntegratorConfig: sample_every must be >= 1')

    @property
    def adaptive(self):
        return self.method != IntegratorMethod.RK4


def _check_size(params, n, caller):
    if n != params.n:
        raise DimensionMismatch('%s: state has %d oscillators, frequencies have %d' % (caller, n, params.n))


def _angular_field(params, thetas):
    # (1/N) sum_k sin(theta_k - theta_j) = Im(r exp(-i theta_j))
    r = np.mean(np.exp(1j * thetas))
    return params.omegas + params.coupling * np.imag(r * np.exp(-1j * thetas))


def _complex_field(params, z):
    r = np.mean(z)
    return 1j * z * (params.omegas + params.coupling * antisym_form(r, z))


def _spin_field(params, spins):
    J = spins.mean(axis=0)
    norms2 = np.einsum('ij,ij->i', spins, spins)
    s_dot_j = spins @ J
    # S x (J x S) = J |S|^2 - S (S . J)
    return params.omegas[:, None] * e3_cross(spins) + \
        params.coupling * (norms2[:, None] * J[None, :] - s_dot_j[:, None] * spins)


def kuramoto_rhs(params, state):
    """
    theta_dot_j = omega_j + (lambda/N) sum_k sin(theta_k - theta_j)
    :param params: ModelParams
    :param state: PhaseState
    :return: array of N angular velocities
    """
    _check_size(params, state.n, 'kuramoto_rhs')
    return _angular_field(params, state.thetas)


def kuramoto_rhs_complex(params, z, tol=1e-9):
    """
    z_dot_j = i z_j (omega_j + lambda [r, z_j])
    :param params: ModelParams
    :param z: unimodular complex array
    :param tol: unimodularity tolerance
    :return: complex array
    """
    z = np.asarray(z, dtype=complex)
    _check_size(params, z.size, 'kuramoto_rhs_complex')
    if np.any(np.abs(np.abs(z) - 1.) > tol):
        raise NonUnimodularInput('kuramoto_rhs_complex: max ||z|-1| = %g exceeds %g' %
                                 (np.max(np.abs(np.abs(z) - 1.)), tol))
    return _complex_field(params, z)


def spin_rhs(params, state):
    """
    S_dot_j = omega_j e3 x S_j + lambda S_j x (J x S_j)
    :param params: ModelParams
    :param state: SpinConfiguration
    :return: (N, 3) array
    """
    _check_size(params, state.n, 'spin_rhs')
    return _spin_field(params, state.spins)


def instantaneous_frequencies(params, state):
    """
    Angular velocities theta_dot_j; for spins the azimuthal speed of the projected velocity,
    NaN for a spin on the pole where the azimuth is undefined
    """
    if isinstance(state, PhaseState):
        return kuramoto_rhs(params, state)
    spins = state.spins
    rates = spin_rhs(params, state)
    rho2 = spins[:, 0] ** 2 + spins[:, 1] ** 2
    speed = np.einsum('ij,ij->i', e3_cross(spins), rates)
    on_pole = rho2 < POLE_TOL
    return np.where(on_pole, np.nan, speed / np.where(on_pole, 1., rho2))


class _System:
    """
    Packs a state of a given representation into the flat real vector the integrators work on
    """
    def __init__(self, params, state, representation):
        self.params = params
        self.representation = representation
        if isinstance(state, SpinConfiguration) and representation != Representation.SPIN:
            raise ValueError('integrate: spin configurations can only be integrated in the spin representation.')
        if representation == Representation.SPIN and isinstance(state, PhaseState):
            state = to_spin(state)
        self.initial = state
        _check_size(params, state.n, 'integrate')

    def pack(self, state):
        if self.representation == Representation.ANGULAR:
            return np.array(state.thetas, dtype=float)
        elif self.representation == Representation.COMPLEX:
            z = state.as_complex()
            return np.concatenate([z.real, z.imag])
        return np.array(state.spins, dtype=float).ravel()

    def rhs(self, t, y):
        if self.representation == Representation.ANGULAR:
            return _angular_field(self.params, y)
        elif self.representation == Representation.COMPLEX:
            n = self.params.n
            zdot = _complex_field(self.params, y[:n] + 1j * y[n:])
            return np.concatenate([zdot.real, zdot.imag])
        return _spin_field(self.params, y.reshape(-1, 3)).ravel()

    def project(self, y):
        if self.representation == Representation.SPIN:
            return normalize_rows(y.reshape(-1, 3)).ravel()
        return y

    def unpack_all(self, ys):
        """
        :param ys: (T, dim) samples
        :return: list of states
        """
        if self.representation == Representation.ANGULAR:
            return [PhaseState(y) for y in ys]
        elif self.representation == Representation.COMPLEX:
            n = self.params.n
            angles = np.unwrap(np.angle(ys[:, :n] + 1j * ys[:, n:]), axis=0)
            # restore the winding of the initial angles
            offset = 2 * np.pi * np.round((self.initial.thetas - angles[0]) / (2 * np.pi))
            return [PhaseState(a) for a in angles + offset]
        return [SpinConfiguration.with_dual_momenta(y.reshape(-1, 3)) for y in ys]


def _rk4_step(f, t, y, dt):
    k1 = f(t, y)
    k2 = f(t + 0.5 * dt, y + 0.5 * dt * k1)
    k3 = f(t + 0.5 * dt, y + 0.5 * dt * k2)
    k4 = f(t + dt, y + dt * k3)
    return y + (dt / 6.0) * (k1 + 2 * k2 + 2 * k3 + k4)


def _run_fixed(system, y0, cfg):
    n_steps = int(np.ceil(cfg.t_end / cfg.dt - 1e-9)) if cfg.t_end > 0 else 0
    h = cfg.t_end / n_steps if n_steps else 0.
    times, ys = [0.], [y0]
    y = y0
    for step in range(1, n_steps + 1):
        y = _rk4_step(system.rhs, (step - 1) * h, y, h)
        if cfg.renormalize:
            y = system.project(y)
        if step % cfg.sample_every == 0 or step == n_steps:
            times.append(step * h)
            ys.append(y)
    return np.array(times), np.array(ys)


def _run_adaptive(system, y0, cfg):
    if cfg.t_end == 0:
        return np.array([0.]), y0[None, :]
    t_eval = np.arange(0., cfg.t_end, cfg.dt * cfg.sample_every)
    t_eval = np.append(t_eval[t_eval < cfg.t_end - 1e-12], cfg.t_end)

    if not cfg.renormalize or system.representation != Representation.SPIN:
        sol = solve_ivp(system.rhs, (0., cfg.t_end), y0, method=cfg.method.value, t_eval=t_eval,
                        rtol=cfg.rtol, atol=cfg.atol)
        if not sol.success:
            raise StepFailure('integrate: %s failed at t=%g - %s' % (cfg.method.value, sol.t[-1] if sol.t.size
                                                                     else 0., sol.message))
        return sol.t, sol.y.T

    # Renormalized spins: restart the solver at every sample after projecting back onto the sphere
    ys = [y0]
    y = y0
    for t0, t1 in zip(t_eval[:-1], t_eval[1:]):
        sol = solve_ivp(system.rhs, (t0, t1), y, method=cfg.method.value, rtol=cfg.rtol, atol=cfg.atol)
        if not sol.success:
            raise StepFailure('integrate: %s failed in [%g, %g] - %s' % (cfg.method.value, t0, t1, sol.message))
        y = system.project(sol.y[:, -1])
        ys.append(y)
    return t_eval, np.array(ys)


def integrate(params, state, cfg, observers=None, representation=None):
    """
    Integrate a phase state or spin configuration
    :param params: ModelParams
    :param state: initial PhaseState or SpinConfiguration
    :param cfg: IntegratorConfig
    :param observers: dict of name -> f(params, state) recorded at every sample
    :param representation: Representation, defaults to ANGULAR for phases and SPIN for spins
    :return: Trajectory with r_modulus, theta0 and the requested observables
    """
    if representation is None:
        representation = Representation.SPIN if isinstance(state, SpinConfiguration) else Representation.ANGULAR
    elif isinstance(representation, str):
        representation = Representation(representation)

    system = _System(params, state, representation)
    y0 = system.pack(system.initial)
    logging.debug('integrate: N=%d, lambda=%g, %s representation, %s to t=%g' %
                  (params.n, params.coupling, representation.value, cfg.method.value, cfg.t_end))

    if cfg.adaptive:
        times, ys = _run_adaptive(system, y0, cfg)
    else:
        times, ys = _run_fixed(system, y0, cfg)
    states = system.unpack_all(ys)

    order = [order_parameter(s) for s in states]
    traj = Trajectory(times, states, {'r_modulus': np.array([o.modulus for o in order]),
                                      'theta0': np.array([o.theta0 for o in order])})
    for name, observer in (observers or {}).items():
        traj.add_observable(name, np.array([observer(params, s) for s in states]))

    return traj


def detect_convergence(params, traj, window=10, tol=1e-8):
    """
    Equilibrium criterion: over the last `window` samples, every oscillator turns at the common mean speed,
    max_j |theta_dot_j - mean(theta_dot)| < tol
    :return: bool
    """
    if len(traj) < window:
        raise InsufficientData('detect_convergence: %d samples, window needs %d' % (len(traj), window))
    for state in traj.states[-window:]:
        rates = instantaneous_frequencies(params, state)
        # NaN rates (spins on the pole) never count as converged
        if not np.all(np.abs(rates - rates.mean()) < tol):
            return False
    return True


def relax(params, state, cfg, window=10, tol=1e-8, max_chunks=20, observers=None, representation=None):
    """
    Integrate in chunks of cfg.t_end until detect_convergence holds or max_chunks chunks have run
    :return: (Trajectory, converged bool)
    """
    traj = integrate(params, state, cfg, observers, representation)
    chunks = 1
    converged = detect_convergence(params, traj, window, tol)
    while not converged and chunks < max_chunks:
        more = integrate(params, traj.final_state, cfg, observers, representation)
        traj = Trajectory(np.concatenate([traj.times, traj.times[-1] + more.times[1:]]),
                          traj.states + more.states[1:],
                          {k: np.concatenate([v, more.observables[k][1:]]) for k, v in traj.observables.items()})
        chunks += 1
        converged = detect_convergence(params, traj, window, tol)

    if not converged:
        logging.warning('relax: no convergence after %d chunks (t=%g)' % (chunks, traj.times[-1]))
    return traj, converged
