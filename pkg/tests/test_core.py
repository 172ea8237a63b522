import numpy as np

from hypothesis import given, settings
from hypothesis.strategies import complex_numbers, floats, lists
from pytest import approx, raises

from syncmodel.core import (FrequencySpec, PhaseState, SpinConfiguration, antisym_form, order_parameter,
                            planar_bracket, relative_phases, sym_form, to_phase, to_spin)
from syncmodel.errors import NonPlanarInput

bounded_complex = complex_numbers(max_magnitude=10, allow_nan=False, allow_infinity=False)
angles = floats(min_value=-20, max_value=20, allow_nan=False)


def test_antisym_form_examples():
    assert antisym_form(1 + 2j, 1 + 2j) == approx(0., abs=1e-15)
    assert antisym_form(1j, 1) == approx(1.)
    assert antisym_form(1, 1j) == approx(-1.)


def test_sym_form_examples():
    assert sym_form(1, 1) == approx(1.)
    assert sym_form(1, 1j) == approx(0., abs=1e-15)
    assert sym_form(np.exp(1j * np.pi / 3), 1) == approx(0.5)


@given(bounded_complex, bounded_complex)
def test_antisym_form_is_antisymmetric(u, v):
    assert antisym_form(u, v) == approx(-antisym_form(v, u), abs=1e-12)


@given(bounded_complex, bounded_complex, bounded_complex)
def test_jacobi_identity(u, v, w):
    total = antisym_form(u, antisym_form(v, w)) + antisym_form(w, antisym_form(u, v)) + \
        antisym_form(v, antisym_form(w, u))
    assert total == approx(0., abs=1e-9)


@given(bounded_complex, bounded_complex, floats(min_value=-10, max_value=10))
def test_homogeneity(u, v, alpha):
    assert antisym_form(alpha * u, v) == approx(alpha * antisym_form(u, v), abs=1e-10)
    # an imaginary factor turns the antisymmetric form into the symmetric one
    assert antisym_form(1j * alpha * u, v) == approx(alpha * sym_form(u, v), abs=1e-10)


@given(angles, angles)
def test_planar_bracket_matches_antisym_form_on_unit_circle(a, b):
    u, v = np.exp(1j * a), np.exp(1j * b)
    assert planar_bracket(u, v) == approx(antisym_form(u, v), abs=1e-12)
    assert antisym_form(u, v) == approx(np.sin(a - b), abs=1e-12)


def test_order_parameter_examples():
    assert order_parameter(PhaseState([0., np.pi])).modulus == approx(0., abs=1e-15)
    assert order_parameter(PhaseState([0., 0., 0.])).modulus == approx(1.)
    op = order_parameter(PhaseState([0., np.pi / 2]))
    assert op.r_complex == approx((1 + 1j) / 2)
    assert op.modulus == approx(0.70710678)
    assert op.theta0 == approx(np.pi / 4)


@settings(deadline=None)
@given(lists(angles, min_size=1, max_size=8))
def test_order_parameter_ignores_full_turns(thetas):
    thetas = np.array(thetas)
    shifted = thetas + 2 * np.pi * np.arange(thetas.size)
    assert order_parameter(PhaseState(shifted)).r_complex == approx(order_parameter(PhaseState(thetas)).r_complex,
                                                                    abs=1e-12)


def test_order_parameter_of_spins_is_mean_vector():
    spins = np.array([[1., 0., 0.], [0., 0., 1.]])
    op = order_parameter(SpinConfiguration(spins))
    assert op.J_vector == approx([0.5, 0., 0.5])
    assert op.modulus == approx(np.sqrt(0.5))


def test_order_parameter_rejects_other_types():
    with raises(TypeError):
        order_parameter([0., 1.])


def test_to_spin_examples():
    spins = to_spin(PhaseState([0., np.pi / 2])).spins
    assert spins[0] == approx([1., 0., 0.])
    assert spins[1] == approx([0., 1., 0.], abs=1e-15)


def test_to_spin_builds_dual_momenta():
    config = to_spin(PhaseState([0.]))
    # P = S x e3
    assert config.momenta[0] == approx([0., -1., 0.])


def test_to_phase_rejects_the_pole():
    with raises(NonPlanarInput):
        to_phase(SpinConfiguration([[0., 0., 1.]]))


def test_to_phase_rejects_off_circle_spins():
    with raises(NonPlanarInput):
        to_phase(SpinConfiguration([[2., 0., 0.]]))


@given(lists(angles, min_size=1, max_size=8))
def test_phase_spin_round_trip_up_to_winding(thetas):
    thetas = np.array(thetas)
    back = to_phase(to_spin(PhaseState(thetas))).thetas
    assert np.all(np.abs(np.angle(np.exp(1j * (back - thetas)))) < 1e-12)


def test_relative_phases_are_measured_from_theta0():
    state = PhaseState([0.1, 0.1 + np.pi / 2, 0.1 - np.pi / 2])
    assert relative_phases(state) == approx([0., np.pi / 2, -np.pi / 2])


def test_frequency_spec_validation():
    with raises(ValueError):
        FrequencySpec([])
    with raises(ValueError):
        FrequencySpec([0., np.nan])
    freqs = FrequencySpec([1., 2., 3.])
    assert freqs.mean() == approx(2.)
    assert freqs.variance() == approx(2. / 3)
    assert freqs.centered() == approx([-1., 0., 1.])


def test_states_are_read_only():
    state = PhaseState([0., 1.])
    with raises(ValueError):
        state.thetas[0] = 3.


def test_spin_configuration_checks_shapes():
    with raises(ValueError):
        SpinConfiguration(np.zeros((2, 2)))
    with raises(ValueError):
        SpinConfiguration(np.ones((2, 3)), np.ones((3, 3)))


def test_planarity_diagnostics():
    config = SpinConfiguration([[0.6, 0., 0.8], [1., 0., 0.]])
    assert config.max_out_of_plane() == approx(0.8)
    assert not config.is_planar()
    assert config.max_norm_drift() == approx(0., abs=1e-15)
