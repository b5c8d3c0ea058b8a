import numpy as np
import pytest
import sympy
from hypothesis import given, settings, strategies as st
from scipy.integrate import quad

from susyqm.errors import ParameterError
from susyqm import models


def test_box_energies_for_pi_length():
    levels = models.box_levels(np.pi, 4)
    np.testing.assert_allclose([s.energy for s in levels], [0.5, 2.0, 4.5, 8.0],
                               rtol=1e-14)


def test_box_ground_state_at_origin():
    ground = models.box_levels(np.pi, 1)[0]
    assert ground.evaluate(0.0) == 1.0


def test_box_parities_alternate():
    levels = models.box_levels(2.0, 5)
    assert [s.parity for s in levels] == ["even", "odd", "even", "odd", "even"]


def test_partner_lowest_two_energies():
    levels = models.sec_squared_partner_levels(np.pi, 3)
    np.testing.assert_allclose([s.energy for s in levels], [2.0, 4.5], rtol=1e-14)
    assert levels[0].parity == "even"
    assert levels[1].parity == "odd"


@pytest.mark.parametrize("n", [2, 3])
def test_partner_states_solve_schrodinger_symbolically(n):
    # independent oracle: differentiate the closed forms with sympy and
    # evaluate the Schrodinger residual pointwise away from the walls
    length = np.pi
    x = sympy.symbols("x")
    a = sympy.pi / length
    psi_expr = sympy.cos(a * x) ** 2 if n == 2 else sympy.cos(a * x) ** 2 * sympy.sin(a * x)
    v_expr = a ** 2 / sympy.cos(a * x) ** 2
    energy = models.box_energy(length, n)
    resid_expr = -sympy.Rational(1, 2) * sympy.diff(psi_expr, x, 2) + v_expr * psi_expr \
        - energy * psi_expr
    resid = sympy.lambdify(x, resid_expr, "numpy")
    xs = np.linspace(-length / 2 * 0.98, length / 2 * 0.98, 301)
    assert np.max(np.abs(resid(xs))) < 1e-8


@pytest.mark.parametrize("state,potential,h", [
    (models.box_levels(np.pi, 3)[2], lambda x: 0.0, 1e-3),
    (models.sec_squared_partner_levels(np.pi, 2)[0],
     models.sec_squared_potential(np.pi), 1e-3),
])
def test_catalog_states_have_small_fd_residual(state, potential, h):
    xs = np.linspace(-np.pi / 2 * 0.9, np.pi / 2 * 0.9, 101)
    psi = state.evaluate
    lap = (psi(xs + h) - 2 * psi(xs) + psi(xs - h)) / h ** 2
    v = np.array([potential(xi) for xi in xs])
    resid = -0.5 * lap + v * psi(xs) - state.energy * psi(xs)
    assert np.max(np.abs(resid)) / abs(state.energy) < 1e-6


def test_delta_bound_state_values():
    bound = models.delta_well_bound_state(1.0)
    assert bound.energy == pytest.approx(-0.5)
    assert bound.evaluate(0.0) == pytest.approx(1.0)
    assert bound.parity == "even"


def test_delta_bound_state_fd_residual_away_from_kink():
    bound = models.delta_well_bound_state(1.3)
    xs = np.linspace(0.5, 4.0, 50)
    h = 1e-4
    psi = bound.evaluate
    lap = (psi(xs + h) - 2 * psi(xs) + psi(xs - h)) / h ** 2
    resid = -0.5 * lap - bound.energy * psi(xs)
    assert np.max(np.abs(resid)) < 1e-6


def test_even_continuum_reduces_to_cos_as_coupling_vanishes():
    k = 1.7
    xs = np.linspace(-5, 5, 101)
    state = models.delta_well_even_continuum(1e-14, k)
    np.testing.assert_allclose(state.evaluate(xs), np.cos(k * xs), atol=1e-12)


def test_even_continuum_vanishes_linearly_at_small_k():
    # on a fixed window the amplitude scales linearly with k
    xs = np.linspace(-1, 1, 201)
    amp = [np.max(np.abs(models.delta_well_even_continuum(1.0, k).evaluate(xs)))
           for k in (1e-3, 5e-4)]
    assert amp[0] <= 2e-3
    assert amp[1] / amp[0] == pytest.approx(0.5, rel=1e-2)


@pytest.mark.parametrize("lam,k", [(1.0, 1.0), (0.5, 2.3), (3.0, 0.1), (1e-3, 7.0)])
def test_jump_condition_residual_is_exactly_zero(lam, k):
    assert models.jump_condition_residual(lam, k) == 0.0


def test_jump_condition_zero_coupling():
    assert models.jump_condition_residual(0.0, 2.0) == 0.0


def test_even_continuum_orthogonal_to_bound_state():
    lam, k = 1.0, 1.4
    bound = models.delta_well_bound_state(lam)
    cont = models.delta_well_even_continuum(lam, k)

    def overlap(cut):
        val, _ = quad(lambda x: bound.evaluate(x) * cont.evaluate(x), -cut, cut, limit=200)
        return abs(val)

    vals = [overlap(c) for c in (5.0, 10.0, 20.0)]
    assert vals[1] < vals[0]
    assert vals[2] < 1e-6


def test_delta_well_states_counts():
    bound, even, odd = models.delta_well_states(1.0, [0.0, 1.0, 2.0])
    assert len(even) == 2 and len(odd) == 2  # k = 0 absent in both sectors
    assert bound.energy < 0


def test_free_particle_standing_k0_single_even_state():
    states = models.free_particle_states(10.0, "standing", [0.0])
    assert len(states) == 1
    assert states[0].parity == "even"


def test_free_particle_traveling_k0_single_state():
    assert len(models.free_particle_states(10.0, "traveling", [0.0])) == 1


def test_free_particle_positive_k_pairs():
    states = models.free_particle_states(10.0, "standing", [1.0])
    assert len(states) == 2
    assert {s.parity for s in states} == {"even", "odd"}
    assert all(s.energy == pytest.approx(0.5) for s in states)


def test_rotor_state_energies():
    states = models.rotor_states(1.0, 1)
    np.testing.assert_allclose(sorted(s.energy for s in states), [0.0, 0.5, 0.5])


def test_rotor_unique_zero_energy_state():
    states = models.rotor_states(2.0, 5)
    zero = [s for s in states if s.energy == 0.0]
    assert len(zero) == 1
    assert zero[0].label == "rotor m=0"


def test_rotor_energy_symmetric_in_m():
    states = {s.label: s.energy for s in models.rotor_states(1.5, 4)}
    for m in range(1, 5):
        assert states[f"rotor m={m}"] == states[f"rotor m={-m}"]


@settings(deadline=None, max_examples=25)
@given(st.floats(min_value=0.05, max_value=8.0), st.integers(min_value=1, max_value=6))
def test_parity_labels_match_samples(x, n):
    for state in models.box_levels(np.pi, n) + [models.delta_well_bound_state(1.0)]:
        if state.parity == "even":
            assert state.evaluate(-x) == pytest.approx(state.evaluate(x), abs=1e-12)
        elif state.parity == "odd":
            assert state.evaluate(-x) == pytest.approx(-state.evaluate(x), abs=1e-12)


def test_negative_wavenumber_rejected():
    with pytest.raises(ParameterError):
        models.free_particle_states(1.0, "standing", [-1.0])
    with pytest.raises(ParameterError):
        models.delta_well_states(1.0, [-0.5])
