from types import SimpleNamespace

import numpy as np

from pytest import approx, mark, raises

from syncmodel import dynamics
from syncmodel.core import PhaseState, SpinConfiguration, to_spin
from syncmodel.dynamics import (IntegratorConfig, IntegratorMethod, ModelParams, Representation,
                                detect_convergence, instantaneous_frequencies, integrate, kuramoto_rhs,
                                kuramoto_rhs_complex, relax, spin_rhs)
from syncmodel.errors import DimensionMismatch, NonUnimodularInput, StepFailure
from syncmodel.observables import observers
from syncmodel.utils import E3, random_unit_vectors, wrap_angle


def test_kuramoto_rhs_examples():
    assert kuramoto_rhs(ModelParams([2.], 1.), PhaseState([0.7])) == approx([2.])
    assert kuramoto_rhs(ModelParams([0., 0.], 2.), PhaseState([0., np.pi / 2])) == approx([1., -1.])
    omegas = [0.3, -1.2, 2.]
    assert kuramoto_rhs(ModelParams(omegas, 5.), PhaseState([1.1, 1.1, 1.1])) == approx(omegas)


def test_kuramoto_rhs_dimension_mismatch():
    with raises(DimensionMismatch):
        kuramoto_rhs(ModelParams([0., 1.], 1.), PhaseState([0., 1., 2.]))


def test_complex_rhs_matches_angular_rhs(rng):
    params = ModelParams(rng.uniform(-1, 1, 5), 1.7)
    state = PhaseState(rng.uniform(0, 2 * np.pi, 5))
    z = state.as_complex()
    expected = 1j * z * kuramoto_rhs(params, state)
    assert np.max(np.abs(kuramoto_rhs_complex(params, z) - expected)) < 1e-10


def test_complex_rhs_without_coupling():
    params = ModelParams([0.5, -2.], 0.)
    z = np.exp(1j * np.array([0.3, 1.9]))
    assert kuramoto_rhs_complex(params, z) == approx(1j * params.omegas * z)


def test_complex_rhs_rejects_non_unimodular_input():
    with raises(NonUnimodularInput):
        kuramoto_rhs_complex(ModelParams([0., 0.], 1.), np.array([2., 1.]))


def test_spin_rhs_vanishes_at_the_pole():
    spins = np.tile(E3, (4, 1))
    assert np.max(np.abs(spin_rhs(ModelParams([0.1, 0.2, 0.3, 0.4], 3.), SpinConfiguration(spins)))) == 0.


def test_spin_rhs_is_tangent(rng):
    params = ModelParams(rng.uniform(-1, 1, 6), 2.5)
    spins = random_unit_vectors(rng, 6)
    rates = spin_rhs(params, SpinConfiguration(spins))
    assert np.max(np.abs(np.einsum('ij,ij->i', spins, rates))) < 1e-12


def test_spin_rhs_keeps_planar_states_planar(rng):
    params = ModelParams(rng.uniform(-1, 1, 5), 1.)
    rates = spin_rhs(params, to_spin(PhaseState(rng.uniform(0, 2 * np.pi, 5))))
    assert rates[:, 2] == approx(np.zeros(5), abs=1e-15)


def test_spin_angular_speeds_match_kuramoto():
    params = ModelParams([0., 0.], 2.)
    rates = instantaneous_frequencies(params, to_spin(PhaseState([0., np.pi / 2])))
    assert rates == approx([1., -1.])


def test_integrator_config_validation():
    assert IntegratorConfig(method='rk4').method == IntegratorMethod.RK4
    assert not IntegratorConfig(method='rk4').adaptive
    with raises(ValueError):
        IntegratorConfig(dt=0.)
    with raises(ValueError):
        IntegratorConfig(rtol=0.1)
    with raises(ValueError):
        IntegratorConfig(sample_every=0)


def test_free_rotation_is_exact():
    params = ModelParams([0.5, -0.2, 1.3], 0.)
    thetas = np.array([0.1, 2., -1.])
    traj = integrate(params, PhaseState(thetas), IntegratorConfig(dt=0.1, t_end=5., method='rk4'))
    assert traj.times[-1] == approx(5.)
    assert traj.final_state.thetas == approx(thetas + 5. * params.omegas, abs=1e-10)


def test_sampling_follows_sample_every():
    traj = integrate(ModelParams([0.], 0.), PhaseState([0.]), IntegratorConfig(dt=0.1, t_end=1., method='rk4',
                                                                              sample_every=5))
    assert traj.times == approx([0., 0.5, 1.])


def test_two_oscillators_lock_at_arcsin_half(n2_params):
    traj = integrate(n2_params, PhaseState([0., 0.]), IntegratorConfig(dt=0.01, t_end=40., method='rk4'))
    theta = traj.final_state.thetas
    assert theta[0] - theta[1] == approx(np.pi / 6, abs=1e-6)


def test_adaptive_integration_locks_too(n2_params):
    traj = integrate(n2_params, PhaseState([0., 0.]), IntegratorConfig(dt=0.1, t_end=60.))
    theta = traj.final_state.thetas
    assert theta[0] - theta[1] == approx(np.pi / 6, abs=1e-6)


def test_representations_agree(rng):
    params = ModelParams(rng.uniform(-1, 1, 4), 1.2)
    state = PhaseState(rng.uniform(0, 2 * np.pi, 4))
    cfg = IntegratorConfig(dt=0.1, t_end=10., method=IntegratorMethod.DOP853, rtol=1e-11, atol=1e-13)
    finals = [wrap_angle(integrate(params, state, cfg, representation=r).phases()[-1]) for r in Representation]
    for other in finals[1:]:
        assert np.max(np.abs(wrap_angle(other - finals[0]))) < 1e-6


def test_spin_representation_stays_planar_and_normalized(rng):
    params = ModelParams(rng.uniform(-1, 1, 4), 2.)
    cfg = IntegratorConfig(dt=0.1, t_end=20., method=IntegratorMethod.DOP853, rtol=1e-11, atol=1e-13)
    traj = integrate(params, PhaseState(rng.uniform(0, 2 * np.pi, 4)), cfg, observers(['planarity', 'norm_drift']),
                     representation='spin')
    assert isinstance(traj.final_state, SpinConfiguration)
    assert np.max(traj.observable('planarity')) < 1e-8
    assert np.max(traj.observable('norm_drift')) < 1e-8


def test_renormalized_fixed_step_spins_stay_on_the_sphere(rng):
    params = ModelParams(rng.uniform(-1, 1, 3), 1.)
    spins = SpinConfiguration.with_dual_momenta(random_unit_vectors(rng, 3))
    traj = integrate(params, spins, IntegratorConfig(dt=0.05, t_end=5., method='rk4', renormalize=True),
                     observers(['norm_drift']))
    assert np.max(traj.observable('norm_drift')) < 1e-14


def test_spin_states_cannot_use_the_angular_representation(rng):
    spins = SpinConfiguration.with_dual_momenta(random_unit_vectors(rng, 2))
    with raises(ValueError):
        integrate(ModelParams([0., 1.], 1.), spins, IntegratorConfig(), representation=Representation.ANGULAR)


def test_integrate_checks_dimensions():
    with raises(DimensionMismatch):
        integrate(ModelParams([0., 1.], 1.), PhaseState([0.]), IntegratorConfig())


def test_equal_frequencies_order_parameter_never_decreases(rng):
    params = ModelParams(np.full(5, 0.3), 1.)
    traj = integrate(params, PhaseState(rng.uniform(0, 2 * np.pi, 5)), IntegratorConfig(dt=0.05, t_end=30.))
    assert np.min(np.diff(traj.observable('r_modulus'))) > -1e-8


def test_detect_convergence_and_relax(n2_params):
    cfg = IntegratorConfig(dt=0.01, t_end=10., method='rk4')
    short = integrate(n2_params, PhaseState([0., 0.]), IntegratorConfig(dt=0.01, t_end=0.5, method='rk4'))
    assert not detect_convergence(n2_params, short)
    traj, converged = relax(n2_params, PhaseState([0., 0.]), cfg)
    assert converged
    assert detect_convergence(n2_params, traj)
    assert np.all(np.diff(traj.times) > 0)



def test_renormalized_adaptive_spins_stay_on_the_sphere(rng):
    params = ModelParams(rng.uniform(-1, 1, 4), 1.5)
    spins = SpinConfiguration.with_dual_momenta(random_unit_vectors(rng, 4))
    cfg = IntegratorConfig(dt=0.1, t_end=20., method=IntegratorMethod.RK45, renormalize=True)
    traj = integrate(params, spins, cfg, observers(['norm_drift']))
    assert np.max(traj.observable('norm_drift')) < 1e-14
    assert traj.times[-1] == 20.
    assert np.all(np.diff(traj.times) > 0)


@mark.parametrize('renormalize', [False, True])
def test_solver_failure_raises_step_failure(rng, monkeypatch, renormalize):
    def failing(fun, t_span, y0, **kwargs):
        return SimpleNamespace(success=False, status=-1, t=np.array([t_span[0]]), y=np.array(y0)[:, None],
                               message='Required step size is less than spacing between numbers.')
    monkeypatch.setattr(dynamics, 'solve_ivp', failing)
    spins = SpinConfiguration.with_dual_momenta(random_unit_vectors(rng, 3))
    cfg = IntegratorConfig(dt=0.1, t_end=1., method=IntegratorMethod.DOP853, renormalize=renormalize)
    with raises(StepFailure):
        integrate(ModelParams([0., 0.5, 1.], 1.), spins, cfg)


def test_pole_spins_have_no_frequency_and_never_converge():
    params = ModelParams([0., 1.], 0.)
    spins = SpinConfiguration.with_dual_momenta(np.array([[0., 0., 1.], [1., 0., 0.]]))
    rates = instantaneous_frequencies(params, spins)
    assert np.isnan(rates[0])
    assert rates[1] == approx(1.)
    traj = integrate(params, spins, IntegratorConfig(dt=0.01, t_end=1., method='rk4'))
    assert not detect_convergence(params, traj)
