import cmath

import pytest

import jmscatter as jm


def test_free_particle_has_unit_s_matrix():
    ch = jm.Channel(2)
    res = jm.s_matrix(ch, jm.InteractionMatrix([0.0]), 3.0)
    assert abs(res.s_value - 1.0) < 1e-12


def test_closed_form_matches_linear_solve():
    ch = jm.Channel(1)
    omega = jm.InteractionMatrix([3.0, 1.0, -2.0], [-2.0, 1.0])
    a = jm.s_matrix(ch, omega, 4.2, method="closed").s_value
    b = jm.s_matrix(ch, omega, 4.2, method="linear").s_value
    assert abs(a - b) < 1e-10
    assert abs(abs(b) - 1.0) < 1e-12
    assert abs(cmath.exp(2j * jm.s_matrix(ch, omega, 4.2).delta) - b) < 1e-12


def test_table1_resonance():
    ch = jm.Channel(1)
    peaks = [p for p in jm.find_resonances(ch, jm.InteractionMatrix([3.0])) if p.resonant]
    assert len(peaks) == 1
    assert peaks[0].energy_over_lambda2 == pytest.approx(2.840800, rel=1e-4)


def test_table3_bound_states():
    ch = jm.Channel(0)
    states = jm.find_bound_states(ch, jm.InteractionMatrix([3.0, 1.0], [2.0]))
    energies = sorted(-s.energy_over_lambda2 for s in states)
    assert energies == pytest.approx([0.2062083314, 1.7447577960], rel=1e-9)


def test_census_and_sampling_are_reproducible():
    a = jm.random_interactions(2, 5, 11)
    b = jm.random_interactions(2, 5, 11)
    assert [m.diag for m in a] == [m.diag for m in b]
    rows = jm.conjecture_census(jm.Channel(0), a, -40.0, 500)
    assert rows[0].rank == 2 and rows[0].samples == 5


def test_errors_are_translated():
    with pytest.raises(jm.DomainError):
        jm.InteractionMatrix([1.0, 2.0], [])
    with pytest.raises(jm.DomainError):
        jm.Channel(0, eta=0.7)
    with pytest.raises(jm.JmsError):
        jm.s_matrix(jm.Channel(0), jm.InteractionMatrix([1.0]), -1.0)
