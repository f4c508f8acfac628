import math

import numpy as np
import pytest

from extreme_ball.algebra.circle_poly import CirclePolynomial, normalize_to_unit
from extreme_ball.algebra.spectrum import SpectrumSet, normalize_finite
from extreme_ball.config import SearchConfig
from extreme_ball.finite.classifier import classify
from extreme_ball.finite.verdict import VerdictKind
from extreme_ball.oracle.search import grid_midpoint_check, midpoint_check, perturbation_search, quadratic_slack


ROOT2 = math.sqrt(2.0)
HALF_SUM = CirclePolynomial(np.array([0.5, 0.5]))


def _random_instance(rng: np.random.Generator):
    n_max = int(rng.integers(1, 5))
    size = int(rng.integers(2, min(4, n_max + 1) + 1))
    interior = rng.permutation(np.arange(1, n_max))[: size - 2]
    members = sorted({0, n_max, *map(int, interior)})
    spectrum, _ = normalize_finite(members)
    coeffs = np.zeros(n_max + 1, dtype=np.complex128)
    coeffs[members] = rng.standard_normal(len(members)) + 1j * rng.standard_normal(len(members))
    return normalize_to_unit(CirclePolynomial(coeffs)), spectrum


def test_midpoint_check_on_monomial_split():
    check = midpoint_check(HALF_SUM, CirclePolynomial(np.array([-0.5, 0.5])))

    assert check
    assert check.norm_plus == pytest.approx(1.0, abs=1e-12)
    assert check.norm_minus == pytest.approx(1.0, abs=1e-12)


def test_midpoint_check_rejects_overshoot():
    check = midpoint_check(CirclePolynomial.monomial(1), CirclePolynomial(np.array([0.1])))

    assert not check
    assert check.norm_plus == pytest.approx(1.1)


def test_midpoint_check_flags_null_perturbation():
    check = midpoint_check(CirclePolynomial.monomial(1), CirclePolynomial(np.zeros(1)))

    assert check
    assert check.null


def test_quadratic_slack_examples():
    assert quadratic_slack(HALF_SUM, CirclePolynomial(np.array([-0.5, 0.5]))) == pytest.approx(0.0, abs=1e-12)
    assert quadratic_slack(CirclePolynomial.monomial(1), CirclePolynomial(np.zeros(1))) == pytest.approx(
        0.0, abs=1e-12
    )
    assert quadratic_slack(HALF_SUM, CirclePolynomial(np.array([0.25]))) > 0.0


def test_search_finds_perturbation_of_half_sum():
    result = perturbation_search(HALF_SUM, SpectrumSet.full(1), SearchConfig(seed=0, trials=20000))

    assert result.found
    assert result.scale > 1e-6
    assert midpoint_check(HALF_SUM, result.witness)
    assert len(result.transcript) == result.trials_run


def test_search_finds_nothing_for_p_star():
    p = CirclePolynomial(np.array([(1 + ROOT2) / 4, 0.5, (1 - ROOT2) / 4]))
    result = perturbation_search(p, SpectrumSet.full(2), SearchConfig(seed=0, trials=2000))

    assert not result.found
    assert result.trials_run == 2000


def test_search_finds_nothing_for_monomial():
    result = perturbation_search(CirclePolynomial.monomial(2), SpectrumSet.full(2), SearchConfig(seed=3, trials=500))

    assert not result.found


def test_search_is_deterministic():
    config = SearchConfig(seed=42, trials=50)
    p = CirclePolynomial(np.array([0.25, 0.5, 0.25]))

    first = perturbation_search(p, SpectrumSet.full(2), config)
    second = perturbation_search(p, SpectrumSet.full(2), config)

    assert first.transcript_jsonl() == second.transcript_jsonl()
    assert first.transcript_jsonl().count("\n") == first.trials_run


def test_oracle_agrees_with_classifier():
    rng = np.random.default_rng(2024)
    config = SearchConfig(seed=0, trials=25)
    for _ in range(200):
        p, spectrum = _random_instance(rng)
        verdict = classify(p, spectrum)
        result = perturbation_search(p, spectrum, config)

        assert not (result.found and verdict.is_extreme)
        pairs = []
        if verdict.kind is VerdictKind.NON_EXTREME:
            assert midpoint_check(verdict.p, verdict.witness)
            pairs.append((verdict.p, verdict.witness))
        if result.found:
            pairs.append((p, result.witness))
        direction = CirclePolynomial(rng.standard_normal(p.coeffs.size) * 0.05)
        pairs.append((p, direction))
        for left, right in pairs:
            slack = quadratic_slack(left, right)
            if abs(slack - 1e-9) > 1e-12:
                assert (slack <= 1e-9) == grid_midpoint_check(left, right, slack=1e-9)
