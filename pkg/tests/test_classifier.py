import cmath
import math

import numpy as np
import pytest

from extreme_ball.algebra.circle_poly import CirclePolynomial, sup_norm, wrap_angle
from extreme_ball.algebra.spectrum import SpectrumSet
from extreme_ball.errors import CertificateError, FullRankError, SpectrumViolationError, ZeroPolynomialError
from extreme_ball.finite.classifier import classify, classify_members, kernel_vector, numeric_rank, verify_witness
from extreme_ball.finite.verdict import VerdictKind
from extreme_ball.oracle.search import midpoint_check


ROOT2 = math.sqrt(2.0)


def _p_star() -> CirclePolynomial:
    return CirclePolynomial(np.array([(1 + ROOT2) / 4, 0.5, (1 - ROOT2) / 4]))


def _unimodular(rng: np.random.Generator) -> complex:
    return cmath.exp(1j * rng.uniform(-math.pi, math.pi))


def test_monomials_are_extreme():
    rng = np.random.default_rng(1)
    for _ in range(50):
        k = int(rng.integers(0, 6))
        n_max = k + int(rng.integers(1, 4))
        p = CirclePolynomial.monomial(k, _unimodular(rng))

        verdict = classify(p, SpectrumSet.full(n_max))

        assert verdict.kind is VerdictKind.MONOMIAL
        assert verdict.is_extreme


def test_half_sum_splits_into_monomials():
    p = CirclePolynomial(np.array([0.5, 0.5]))
    verdict = classify(p, SpectrumSet.full(1))

    assert verdict.kind is VerdictKind.NON_EXTREME
    q = verdict.witness
    assert sup_norm(p + q).value == pytest.approx(1.0, abs=1e-10)
    assert sup_norm(p - q).value == pytest.approx(1.0, abs=1e-10)
    for half in (p + q, p - q):
        support = half.support(1e-10)
        assert len(support) == 1
        assert abs(half.coefficient(support[0])) == pytest.approx(1.0, abs=1e-10)
    assert {(p + q).support(1e-10), (p - q).support(1e-10)} == {(0,), (1,)}


def test_half_sum_witness_and_kernel():
    verdict = classify(CirclePolynomial(np.array([0.5, 0.5])), SpectrumSet.full(1))

    assert verdict.certificate["kernel_vector"] == pytest.approx([0.0, 1.0])
    assert verdict.epsilon == pytest.approx(0.5, abs=1e-6)
    assert verdict.witness.allclose(CirclePolynomial(np.array([-0.5, 0.5])), atol=1e-9)


def test_gapped_half_sum_is_not_extreme():
    p = CirclePolynomial(np.array([0.5, 0.0, 0.5]))
    verdict = classify(p, SpectrumSet.finite(2, [1]))

    assert verdict.kind is VerdictKind.NON_EXTREME
    assert abs(verdict.witness.coefficient(1)) <= 1e-12
    assert verdict.epsilon == pytest.approx(0.5, abs=1e-6)
    assert verdict.witness.allclose(CirclePolynomial(np.array([0.5, 0.0, -0.5])), atol=1e-6)


def test_p_star_is_extreme():
    verdict = classify(_p_star(), SpectrumSet.full(2))

    assert verdict.kind is VerdictKind.EXTREME
    assert verdict.witness is None
    assert verdict.matrix["rank"] == 2
    assert verdict.matrix["sigma"] == pytest.approx([1.0, ROOT2 / 2], abs=1e-9)
    assert verdict.contacts["mu"] == 2


def test_half_sum_squared_uses_projection_tie_break():
    p = CirclePolynomial(np.array([0.25, 0.5, 0.25]))
    verdict = classify(p, SpectrumSet.full(2))

    assert verdict.kind is VerdictKind.NON_EXTREME
    assert verdict.certificate["kernel_vector"] == pytest.approx([1 / ROOT2, -1 / ROOT2, 0.0, 0.0])
    # q = i(1 - z)^2 / sqrt(2) before scaling
    direction = verdict.witness / verdict.epsilon
    assert direction.allclose(CirclePolynomial(np.array([1j, -2j, 1j]) / ROOT2), atol=1e-9)
    assert midpoint_check(p, verdict.witness)


def test_random_binomials_are_never_extreme():
    rng = np.random.default_rng(5)
    for _ in range(200):
        coeffs = rng.standard_normal(2) + 1j * rng.standard_normal(2)
        verdict = classify(CirclePolynomial(coeffs), SpectrumSet.full(1))

        assert verdict.kind is VerdictKind.NON_EXTREME
        assert verdict.matrix["rows"] == 1
        assert verdict.matrix["cols"] == 2


def test_verdict_is_invariant_under_rotation_and_phase():
    rng = np.random.default_rng(11)
    base = classify(_p_star(), SpectrumSet.full(2))
    for _ in range(100):
        c = _unimodular(rng)
        sigma = _unimodular(rng)
        p = _p_star().rotated(sigma) * c

        verdict = classify(p, SpectrumSet.full(2))

        assert verdict.kind is base.kind
        angle = verdict.contacts["points"][0]["t"]
        assert abs(wrap_angle(angle + cmath.phase(sigma))) < 1e-9


def test_consistency_checks_are_recorded():
    verdict = classify(CirclePolynomial(np.array([0.5, 0.0, 0.5])), SpectrumSet.finite(2, [1]))
    checks = verdict.diagnostics["consistency"]

    assert checks["mu_le_n"]
    assert checks["lambda_modulus_error"] < 1e-12
    assert checks["dimensions"] == checks["expected_dimensions"] == [4, 2]


def test_input_is_normalised_first():
    verdict = classify(CirclePolynomial(np.array([3.0, 3.0])), SpectrumSet.full(1))

    assert verdict.scale == pytest.approx(1 / 6)
    assert verdict.p.allclose(CirclePolynomial(np.array([0.5, 0.5])))


def test_coefficient_at_a_gap_is_rejected():
    with pytest.raises(SpectrumViolationError, match="spectrum violation"):
        classify(CirclePolynomial(np.array([0.5, 0.25, 0.25])), SpectrumSet.finite(2, [1]))


def test_zero_polynomial_is_rejected():
    with pytest.raises(ZeroPolynomialError, match="zero polynomial"):
        classify(CirclePolynomial(np.zeros(2)), SpectrumSet.full(1))


def test_members_are_shifted_and_restored():
    p = CirclePolynomial(np.array([0.0, 0.0, 0.5, 0.5]))
    verdict = classify_members(p, [2, 3])

    assert verdict.kind is VerdictKind.NON_EXTREME
    assert verdict.shift == 2
    assert verdict.witness.coefficient(0) == 0
    assert verdict.witness.coefficient(1) == 0
    assert midpoint_check(verdict.p, verdict.witness)


def test_numeric_rank_of_zero_matrix():
    info = numeric_rank(np.zeros((1, 2)))

    assert info.rank == 0
    assert math.isinf(info.confidence)
    assert kernel_vector(np.zeros((1, 2))) == pytest.approx([1.0, 0.0])


def test_kernel_vector_of_full_rank_matrix():
    with pytest.raises(FullRankError, match="full rank"):
        kernel_vector(np.eye(2))


def test_borderline_singular_value_is_indeterminate():
    info = numeric_rank(np.diag([1.0, 1e-9]))

    assert info.borderline


def test_verify_witness_rejects_oversized_perturbation():
    p = CirclePolynomial(np.array([0.5, 0.5]))
    q = CirclePolynomial(np.array([-1.0, 1.0]))

    with pytest.raises(CertificateError, match="certificate failure"):
        verify_witness(p, q, SpectrumSet.full(1))


def test_every_witness_passes_the_midpoint_check():
    rng = np.random.default_rng(3)
    for _ in range(40):
        coeffs = rng.standard_normal(3) + 1j * rng.standard_normal(3)
        verdict = classify(CirclePolynomial(coeffs), SpectrumSet.full(2))
        if verdict.kind is VerdictKind.NON_EXTREME:
            assert midpoint_check(verdict.p, verdict.witness)
