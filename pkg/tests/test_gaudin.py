import numpy as np

from hypothesis import given
from hypothesis.strategies import floats, integers
from pytest import approx, raises

from syncmodel.analysis import solve_self_consistent_J
from syncmodel.dynamics import ModelParams
from syncmodel.errors import DimensionMismatch
from syncmodel.gaudin import (PSEUDO_SPIN_RADIUS, PseudoSpinConfig, RichardsonParams, commutator_identity_deviation,
                              dual_pseudo_spins, ferromagnetic_sigmas, gaudin_h1, heisenberg_perturbation,
                              minimize_h1, pauli_matrices, pauli_structure_check, richardson_map)
from syncmodel.utils import random_unit_vectors


def _uniform(n, vector):
    return PseudoSpinConfig(np.tile(vector, (n, 1)))


def test_pseudo_spin_radius_is_checked():
    with raises(ValueError):
        PseudoSpinConfig([[1., 0., 0.]])
    assert PseudoSpinConfig([[0., 0.5, 0.]]).n == 1


def test_richardson_params_need_centered_spectrum():
    with raises(ValueError):
        RichardsonParams([1., 2.], 1.)


def test_gaudin_h1_examples():
    rp = RichardsonParams([-1., 0., 1.], 0.7)
    assert gaudin_h1(rp, _uniform(3, [0., 0., 0.5])) == approx(0.)
    # |J^-| = N/2 for aligned planar pseudo spins
    assert gaudin_h1(RichardsonParams(np.zeros(4), 0.25), _uniform(4, [0.5, 0., 0.])) == approx(-1.)
    taus = PseudoSpinConfig([[0., 0., -0.5], [0., 0., 0.5], [0., 0., 0.5]])
    assert gaudin_h1(RichardsonParams([-1., 0.5, 0.5], 3.), taus) == approx(2.)


def test_gaudin_h1_checks_sizes():
    with raises(DimensionMismatch):
        gaudin_h1(RichardsonParams([-1., 1.], 1.), _uniform(3, [0., 0., 0.5]))


@given(floats(min_value=0, max_value=2 * np.pi), integers(min_value=0, max_value=10000))
def test_gaudin_h1_is_invariant_under_planar_rotation(angle, seed):
    rng = np.random.default_rng(seed)
    n = int(rng.integers(2, 9))
    eps = rng.normal(size=n)
    rp = RichardsonParams(eps - eps.mean(), float(rng.uniform(0, 2)))
    taus = random_unit_vectors(rng, n, PSEUDO_SPIN_RADIUS)
    c, s = np.cos(angle), np.sin(angle)
    rotated = taus @ np.array([[c, s, 0.], [-s, c, 0.], [0., 0., 1.]])
    assert gaudin_h1(rp, PseudoSpinConfig(rotated)) == approx(gaudin_h1(rp, PseudoSpinConfig(taus)), abs=1e-12)


def test_gaudin_h1_decreases_with_g(rng):
    config = PseudoSpinConfig(random_unit_vectors(rng, 4, PSEUDO_SPIN_RADIUS))
    eps = np.array([-0.5, -0.1, 0.2, 0.4])
    J_minus = config.planar_sum()
    low, high = gaudin_h1(RichardsonParams(eps, 1.), config), gaudin_h1(RichardsonParams(eps, 1.5), config)
    assert high - low == approx(-0.5 * (J_minus @ J_minus))


def test_richardson_map():
    rp = richardson_map(ModelParams([1., 2., 3.], 3.))
    assert rp.epsilons == approx([-1., 0., 1.])
    assert rp.g == approx(1.)
    assert richardson_map(ModelParams([0.3, 0.3], 1.)).epsilons == approx([0., 0.])
    shifted = richardson_map(ModelParams([1.7, 2.7, 3.7], 3.))
    assert shifted.epsilons == approx(rp.epsilons)


def test_pauli_structure():
    s = pauli_matrices()
    assert s[0] @ s[0] == approx(0.25 * np.eye(2))
    assert s[0] @ s[1] - s[1] @ s[0] == approx(1j * s[2])
    assert pauli_structure_check() <= 1e-15


def test_commutator_identity(rng):
    for a, b in zip(rng.normal(size=(100, 3)), rng.normal(size=(100, 3))):
        assert commutator_identity_deviation(a, b) < 1e-12


def test_minimize_h1_without_pairing():
    eps = np.array([-1.5, -0.5, 0.25, 0.75, 1.])
    config, energy = minimize_h1(RichardsonParams(eps, 0.), seed=3)
    assert energy == approx(-np.abs(eps).sum(), abs=1e-12)
    assert config.taus[:, 2] == approx(-0.5 * np.sign(eps), abs=1e-6)


def test_minimize_h1_two_levels_matches_grid_scan():
    e, g = 0.3, 1.
    config, energy = minimize_h1(RichardsonParams([-e, e], g), seed=5)
    assert energy == approx(-g - e ** 2 / g, abs=1e-6)

    # brute force over both polar angles; aligned azimuths minimise the pairing term
    theta = np.linspace(0., np.pi, 801)
    t1, t2 = np.meshgrid(theta, theta)
    grid = -e * np.cos(t1) + e * np.cos(t2) - 0.25 * g * (np.sin(t1) + np.sin(t2)) ** 2
    assert energy <= grid.min() + 1e-6
    assert energy == approx(grid.min(), abs=1e-4)
    assert np.linalg.norm(config.taus, axis=1) == approx([0.5, 0.5])


def test_minimize_h1_strong_pairing():
    eps = np.array([-0.02, -0.01, 0.01, 0.02])
    g, n = 10., 4
    _, energy = minimize_h1(RichardsonParams(eps, g), seed=1)
    assert energy <= -g * n ** 2 / 4 + 1e-9
    assert energy >= -g * n ** 2 / 4 - np.abs(eps).sum()


def test_minimize_h1_validates_restarts_and_steps():
    with raises(ValueError):
        minimize_h1(RichardsonParams([0.], 1.), restarts=0)


def test_heisenberg_perturbation():
    freqs = [0.3, -0.1, -0.2]
    params = ModelParams(freqs, 2.)
    base = solve_self_consistent_J(freqs, 2.)
    assert heisenberg_perturbation(params, base, np.zeros(3)) == 0.
    single = heisenberg_perturbation(params, base, [0., 0.4, 0.])
    assert single == approx(-2. * base.J_mod * 0.4 * np.cos(base.phis[1]))
    assert dual_pseudo_spins(base, [0., 0.4, 0.])[1] == approx(0.4 * np.array([np.cos(base.phis[1]),
                                                                                np.sin(base.phis[1]), 0.]))


def test_ferromagnetic_configuration_is_lowest():
    freqs = [0.3, -0.1, -0.2, 0.]
    params = ModelParams(freqs, 1.5)
    base = solve_self_consistent_J(freqs, 1.5, [1, 1, 1, -1])
    sigmas = ferromagnetic_sigmas(base, [0.2, 0.5, 0.1, 0.3])
    ground = heisenberg_perturbation(params, base, sigmas)
    for j in range(4):
        flipped = sigmas.copy()
        flipped[j] *= -1
        assert heisenberg_perturbation(params, base, flipped) > ground


def test_heisenberg_perturbation_checks_sizes():
    base = solve_self_consistent_J([0.1, -0.1], 1.)
    with raises(DimensionMismatch):
        heisenberg_perturbation(ModelParams([0.1, -0.1], 1.), base, [0.1, 0.2, 0.3])
