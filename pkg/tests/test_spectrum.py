import pytest

from extreme_ball.algebra.spectrum import SpectrumKind, SpectrumSet, gap_list, normalize_finite
from extreme_ball.errors import EmptySpectrumError, ProblemFileError


def test_normalize_finite_shifts_to_zero():
    spectrum, shift = normalize_finite([2, 3, 5])

    assert shift == 2
    assert spectrum.n_max == 3
    assert gap_list(spectrum) == [2]
    assert spectrum.members() == (0, 1, 3)


def test_normalize_finite_single_member_is_monomial_space():
    spectrum, shift = normalize_finite([7])

    assert shift == 7
    assert spectrum.kind is SpectrumKind.MONOMIAL
    assert spectrum.is_monomial_space
    assert spectrum.members() == (0,)


def test_normalize_finite_rejects_empty_set():
    with pytest.raises(EmptySpectrumError, match="empty spectrum"):
        normalize_finite([])


def test_finite_gaps_must_be_interior():
    with pytest.raises(ValueError):
        SpectrumSet.finite(3, [3])
    with pytest.raises(ValueError):
        SpectrumSet.finite(3, [0])


def test_membership():
    finite = SpectrumSet.finite(4, [1, 3])
    cofinite = SpectrumSet.cofinite([3])

    assert [k for k in range(6) if k in finite] == [0, 2, 4]
    assert 3 not in cofinite
    assert 1000 in cofinite
    assert -1 not in cofinite


def test_cofinite_has_no_member_list():
    with pytest.raises(ValueError):
        SpectrumSet.cofinite([1]).members()


def test_json_form_round_trip():
    finite = SpectrumSet.finite(5, [2, 3])
    cofinite = SpectrumSet.cofinite([3])

    assert SpectrumSet.from_dict(finite.to_dict()) == finite
    assert SpectrumSet.from_dict(cofinite.to_dict()) == cofinite
    assert SpectrumSet.from_dict({"kind": "finite", "n": 0}).is_monomial_space


def test_from_dict_reports_bad_input():
    with pytest.raises(ProblemFileError):
        SpectrumSet.from_dict({"kind": "annulus"})
    with pytest.raises(ProblemFileError):
        SpectrumSet.from_dict({"kind": "finite", "n": 2, "gaps": [5]})
