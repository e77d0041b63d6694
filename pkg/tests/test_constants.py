"""Physical constants and the dimensionless unit system."""

import numpy as np
import pytest

import eitsoliton as es
from eitsoliton.errors import DomainError

from conftest import LAMBDA_P, reference_params


def test_constants_consistency():
    c = es.CONSTANTS
    assert abs(c.eps0 * c.mu0 * c.c ** 2 - 1.0) < 1e-9


def test_lb_identity(params10, units, k_p):
    assert units.Lb == pytest.approx(2.0 * k_p * units.La ** 2, rel=1e-15)


def test_frozen_scales(units):
    # independently evaluated from the defining formulas and frozen
    assert units.E0 == pytest.approx(105.45718, rel=1e-6)
    assert units.La == pytest.approx(7.1033291e-08, rel=1e-6)
    assert units.Lb == pytest.approx(7.9258117e-08, rel=1e-6)


def test_positivity_errors_name_field(params10):
    with pytest.raises(DomainError, match="lambda_p"):
        es.derive_units(params10, -1.0)
    with pytest.raises(DomainError, match="E0"):
        es.NormalizationUnits(E0=0.0, La=1.0, Lb=1.0)
    with pytest.raises(DomainError, match="La"):
        es.NormalizationUnits(E0=1.0, La=-1.0, Lb=1.0)


def test_field_round_trip(units):
    values = np.array([1.0, -2.5, 3e4, 1e-9]) + 1j * np.array([0.0, 4.0, -1.0, 2.0])
    back = units.field_to_si(units.field_to_dimensionless(values))
    assert np.allclose(back, values, rtol=1e-12, atol=0.0)


def test_derivation_is_pure(params10):
    a = es.derive_units(params10, LAMBDA_P)
    b = es.derive_units(params10, LAMBDA_P)
    assert (a.E0, a.La, a.Lb) == (b.E0, b.La, b.Lb)


def test_gamma_is_plain_rate():
    # doubling gamma3 doubles E0 and scales La by sqrt(2): no hidden 2*pi
    p1 = reference_params()
    p2 = es.AtomicParams(
        n=p1.n, mu13=p1.mu13, mu24=p1.mu24, mu23=p1.mu23,
        gamma2=p1.gamma2, gamma3=2 * p1.gamma3, gamma4=p1.gamma4,
        delta24=p1.delta24,
    )
    u1 = es.derive_units(p1, LAMBDA_P)
    u2 = es.derive_units(p2, LAMBDA_P)
    assert u2.E0 == pytest.approx(2 * u1.E0, rel=1e-12)
    assert u2.La == pytest.approx(np.sqrt(2) * u1.La, rel=1e-12)
