import math

import numpy as np
import pytest

from extreme_ball.algebra.circle_poly import CirclePolynomial, wrap_angle
from extreme_ball.config import ContactConfig
from extreme_ball.errors import ContactIndeterminateError, MuExceedsNError, UnimodularModulusError
from extreme_ball.finite.contact import contact_set


ROOT2 = math.sqrt(2.0)


def _p_star() -> CirclePolynomial:
    return CirclePolynomial(np.array([(1 + ROOT2) / 4, 0.5, (1 - ROOT2) / 4]))


def test_half_sum_has_one_simple_contact():
    contacts = contact_set(CirclePolynomial(np.array([0.5, 0.5])), 1)

    assert len(contacts.points) == 1
    assert abs(contacts.points[0].t) < 1e-9
    assert contacts.points[0].mu == 1
    assert contacts.gamma == 0.5


def test_gapped_half_sum_touches_at_two_points():
    contacts = contact_set(CirclePolynomial(np.array([0.5, 0.0, 0.5])), 2)

    assert [point.mu for point in contacts.points] == [1, 1]
    assert sorted(abs(point.t) for point in contacts.points) == pytest.approx([0.0, math.pi], abs=1e-9)
    assert contacts.mu == 2


def test_p_star_contact_has_multiplicity_two():
    contacts = contact_set(_p_star(), 2)

    assert len(contacts.points) == 1
    assert contacts.points[0].mu == 2
    assert abs(contacts.points[0].t) < 1e-9
    assert contacts.gamma == 1


def test_contacts_rotate_with_the_polynomial():
    sigma = complex(math.cos(0.7), math.sin(0.7))
    contacts = contact_set(_p_star().rotated(sigma), 2)

    assert contacts.points[0].mu == 2
    assert abs(wrap_angle(contacts.points[0].t + 0.7)) < 1e-9


def test_unimodular_polynomial_is_rejected():
    with pytest.raises(UnimodularModulusError, match="unimodular modulus"):
        contact_set(CirclePolynomial.monomial(2), 2)


def test_mu_exceeding_degree_bound():
    # p* lives in degree 2, so N = 1 cannot hold a contact of multiplicity 2
    with pytest.raises(MuExceedsNError, match="mu exceeds N"):
        contact_set(_p_star(), 1)


def test_derivative_in_dead_band_is_indeterminate():
    # τ = sin²(t/2): τ''(0) = 1/2 equals its own tolerance when the factor is 1
    config = ContactConfig(derivative_tol=1.0)

    with pytest.raises(ContactIndeterminateError, match="dead band"):
        contact_set(CirclePolynomial(np.array([0.5, 0.5])), 1, config)
