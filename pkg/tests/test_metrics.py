import math
from fractions import Fraction

import numpy as np
import pytest

from conftest import random_density, random_pure, u_matrix_distance
from eqclone.cloning import OPTIMAL_LAMBDA, clone
from eqclone.errors import DimensionError, DomainError, NotPSDError
from eqclone.metrics import (
    MetricKind,
    bures_fidelity,
    closed_form,
    d_a_closed,
    d_ab_closed,
    f1_closed,
    f2_closed,
    hs_distance,
    input_densities,
    numeric_metric,
    pure_fidelity,
)
from eqclone.states import EquatorialInput, EquatorPlane, equatorial_inputs, state_vector, to_density

R2 = math.sqrt(2)


def exact_closed_forms(lam: Fraction):
    """The four closed forms in exact rational arithmetic (fidelities squared)."""
    d = 3 - 2 * lam + 3 * lam**2
    return (
        (1 - 2 * lam + 5 * lam**2) ** 2 / (2 * d**2),
        2 * (1 - 4 * lam + 12 * lam**2 - 8 * lam**3 + 7 * lam**4) / d**2,
        (5 - 2 * lam + lam**2) / (2 * d),
        2 / d,
    )


def test_hs_basic():
    rho = to_density([0.6, 0.8])
    assert hs_distance(rho, rho) == 0
    assert hs_distance(np.diag([1, 0]), np.diag([0, 1])) == pytest.approx(2)


def test_hs_symmetric_and_matches_trace_definition(rng):
    a, b = random_density(rng, 4), random_density(rng, 4)
    d = a - b
    assert hs_distance(a, b) == pytest.approx(np.trace(d @ d).real, abs=1e-14)
    assert hs_distance(a, b) == pytest.approx(hs_distance(b, a), abs=1e-15)


def test_hs_dimension_mismatch():
    with pytest.raises(DimensionError):
        hs_distance(np.eye(2) / 2, np.eye(4) / 4)


def test_bures_identical(rng):
    for n in (2, 4):
        rho = random_density(rng, n)
        assert bures_fidelity(rho, rho) == pytest.approx(1, abs=1e-10)
    p = to_density(random_pure(rng, 4))
    assert bures_fidelity(p, p) == pytest.approx(1, abs=1e-10)


def test_bures_range_and_symmetry(rng):
    for n in (2, 4, 8):
        for rank in (1, 2, n):
            a, b = random_density(rng, n, rank), random_density(rng, n)
            f = bures_fidelity(a, b)
            assert 0 <= f <= 1 + 1e-10
            assert f == pytest.approx(bures_fidelity(b, a), abs=1e-9)


def test_bures_orthogonal_pure_states():
    assert bures_fidelity(np.diag([1, 0]), np.diag([0, 1])) == pytest.approx(0, abs=1e-12)


def test_bures_commuting_case():
    # commuting operators: F = sum sqrt(p_i q_i)
    p, q = np.array([0.7, 0.3]), np.array([0.2, 0.8])
    assert bures_fidelity(np.diag(p), np.diag(q)) == pytest.approx(np.sum(np.sqrt(p * q)), abs=1e-14)


def test_bures_rejects_non_psd():
    with pytest.raises(NotPSDError):
        bures_fidelity(np.diag([1.2, -0.2]), np.eye(2) / 2)


def test_pure_fidelity_examples():
    assert pure_fidelity([1, 0], np.diag([1, 0])) == pytest.approx(1)
    assert pure_fidelity([1, 0], np.eye(2) / 2) == pytest.approx(1 / R2, abs=1e-15)


@pytest.mark.parametrize("n", [2, 4])
def test_pure_fidelity_equals_general_definition(rng, n):
    for _ in range(20):
        psi, rho = random_pure(rng, n), random_density(rng, n)
        assert pure_fidelity(psi, rho) == pytest.approx(bures_fidelity(to_density(psi), rho), abs=1e-10)


def test_closed_universal_values():
    assert d_a_closed(0) == pytest.approx(1 / 18, abs=1e-15)
    assert d_ab_closed(0) == pytest.approx(2 / 9, abs=1e-15)
    assert f1_closed(0) == pytest.approx(math.sqrt(5 / 6), abs=1e-15)
    assert f1_closed(0) == pytest.approx(0.912871, abs=1e-6)
    assert f2_closed(0) == pytest.approx(math.sqrt(2 / 3), abs=1e-15)
    assert f2_closed(0) == pytest.approx(0.816497, abs=1e-6)


def test_closed_optimal_values():
    lam = OPTIMAL_LAMBDA
    assert d_a_closed(lam) == pytest.approx((99 - 70 * R2) / (68 - 48 * R2), abs=1e-12)
    assert d_a_closed(lam) == pytest.approx(0.043, abs=5e-4)
    assert d_ab_closed(lam) == pytest.approx((215 - 152 * R2) / (8 * (3 - 2 * R2) ** 2), abs=1e-12)
    assert d_ab_closed(lam) == pytest.approx(0.17, abs=5e-3)
    assert f1_closed(lam) == pytest.approx(math.sqrt((2 - R2) / (12 - 8 * R2)), abs=1e-14)
    assert f1_closed(lam) == pytest.approx(0.92388, abs=1e-5)
    assert f2_closed(lam) == pytest.approx(math.sqrt(1 / (24 - 16 * R2)), abs=1e-14)
    assert f2_closed(lam) == pytest.approx(0.853553, abs=1e-6)


@pytest.mark.parametrize("lam", [Fraction(1, 10), Fraction(1, 5), Fraction(1, 2), Fraction(1, 3), Fraction(-2, 5)])
def test_closed_forms_against_exact_arithmetic(lam):
    d_a, d_ab, f1_sq, f2_sq = exact_closed_forms(lam)
    x = float(lam)
    assert d_a_closed(x) == pytest.approx(float(d_a), abs=1e-15)
    assert d_ab_closed(x) == pytest.approx(float(d_ab), abs=1e-15)
    assert f1_closed(x) == pytest.approx(math.sqrt(f1_sq), abs=1e-15)
    assert f2_closed(x) == pytest.approx(math.sqrt(f2_sq), abs=1e-15)


def test_closed_hand_values():
    assert d_a_closed(0.1) == pytest.approx(0.85**2 / (2 * 2.83**2), abs=1e-15)
    assert d_a_closed(0.1) == pytest.approx(0.0451061, abs=1e-7)
    assert exact_closed_forms(Fraction(1, 5))[1] == Fraction(49, 289)
    assert d_ab_closed(0.2) == pytest.approx(49 / 289, abs=1e-15)
    assert f1_closed(0.5) == pytest.approx(math.sqrt(4.25 / 5.5), abs=1e-15)
    assert f1_closed(0.5) == pytest.approx(0.879049, abs=1e-6)
    assert f2_closed(1 / 3) == pytest.approx(math.sqrt(3) / 2, abs=1e-15)


def test_closed_form_domain():
    with pytest.raises(DomainError):
        d_a_closed(1.0)
    with pytest.raises(DomainError):
        closed_form("bures-two", -1.0)


def test_metric_kind_parse():
    assert MetricKind.parse("HS_ONE") is MetricKind.HS_ONE
    assert MetricKind.parse("bures-two") is MetricKind.BURES_TWO
    assert MetricKind.HS_TWO.natural_direction == "minimize"


@pytest.mark.parametrize("plane", list(EquatorPlane))
def test_numeric_equals_closed_on_grid(plane):
    for lam in np.linspace(-0.5, 0.9, 33):
        for inp in equatorial_inputs(plane, 32):
            out = clone(inp, lam)
            for kind, tol in [
                (MetricKind.HS_ONE, 1e-10),
                (MetricKind.HS_TWO, 1e-10),
                (MetricKind.BURES_ONE, 1e-9),
                (MetricKind.BURES_TWO, 1e-9),
            ]:
                assert numeric_metric(kind, out) == pytest.approx(closed_form(kind, lam), abs=tol)


@pytest.mark.parametrize("plane", list(EquatorPlane))
@pytest.mark.parametrize("lam", [0.0, 0.3, OPTIMAL_LAMBDA, -0.7])
def test_pure_shortcut_matches_bures_on_clones(plane, lam):
    for inp in equatorial_inputs(plane, 8):
        out = clone(inp, lam)
        rho_in, rho_in2 = input_densities(out)
        psi = state_vector(inp)
        assert pure_fidelity(psi, out.rho_a) == pytest.approx(bures_fidelity(rho_in, out.rho_a), abs=1e-10)
        assert pure_fidelity(np.kron(psi, psi), out.rho_ab) == pytest.approx(
            bures_fidelity(rho_in2, out.rho_ab), abs=1e-10
        )


@pytest.mark.parametrize("lam", [0.0, 0.2, OPTIMAL_LAMBDA])
def test_u_matrix_expansion_equals_numeric(lam):
    for theta in np.linspace(0, math.pi / 2, 9):
        out = clone(EquatorialInput(EquatorPlane.XZ, theta), lam)
        expected = u_matrix_distance(math.cos(theta), lam)
        assert numeric_metric(MetricKind.HS_TWO, out) == pytest.approx(expected, abs=1e-10)


def test_d_a_monotone_around_optimum():
    left = [d_a_closed(x) for x in np.linspace(0, OPTIMAL_LAMBDA, 200)]
    right = [d_a_closed(x) for x in np.linspace(OPTIMAL_LAMBDA, 1 / 3, 200)]
    assert np.all(np.diff(left) < 0)
    assert np.all(np.diff(right) > 0)
