import io
import math

import numpy as np
import pandas as pd
import pytest

from extreme_ball.algebra.circle_poly import CirclePolynomial
from extreme_ball.algebra.spectrum import SpectrumSet
from extreme_ball.finite.contact import ContactPoint, ContactSet
from extreme_ball.finite.extremal_matrix import assemble, gap_block, restriction_poly


ROOT2 = math.sqrt(2.0)


def _p_star() -> CirclePolynomial:
    return CirclePolynomial(np.array([(1 + ROOT2) / 4, 0.5, (1 - ROOT2) / 4]))


def test_restriction_polynomial_for_antipodal_contacts():
    contacts = ContactSet(points=(ContactPoint(t=0.0, mu=1), ContactPoint(t=math.pi, mu=1)))
    restriction = restriction_poly(contacts)

    assert restriction.r.allclose(CirclePolynomial(np.array([-1.0, 0.0, 1.0])), atol=1e-15)
    assert restriction.lam == pytest.approx(-1j)
    assert abs(abs(restriction.lam) - 1.0) < 1e-12
    assert restriction.factorization_residual < 1e-12


def test_restriction_polynomial_for_double_contact():
    restriction = restriction_poly(ContactSet(points=(ContactPoint(t=0.0, mu=2),)))

    assert restriction.r.allclose(CirclePolynomial(np.array([1.0, -2.0, 1.0])))
    assert restriction.lam == pytest.approx(-1.0)


def test_gap_block_reads_restriction_coefficients():
    restriction = restriction_poly(ContactSet(points=(ContactPoint(t=0.0, mu=1),)))
    block = gap_block(restriction, [2], n_max=3, mu=1)

    # r = z - 1; entries r̂(2 - l) for l = 0, 1, 2
    assert np.allclose(block, [[0.0, 1.0, -1.0]])


def test_p_star_matrix_entries():
    matrix = assemble(_p_star(), SpectrumSet.full(2))

    assert matrix.assembled.shape == (2, 2)
    assert np.allclose(matrix.assembled, [[1.0, 0.0], [0.0, -ROOT2 / 2]], atol=1e-9)
    sigma = np.linalg.svd(matrix.assembled, compute_uv=False)
    assert sigma == pytest.approx([1.0, ROOT2 / 2], abs=1e-9)
    assert matrix.row_labels == ("W1:s=0", "W1:s=1")


def test_half_sum_squared_matrix_is_one_row():
    p = CirclePolynomial(np.array([0.25, 0.5, 0.25]))
    matrix = assemble(p, SpectrumSet.full(2))

    assert matrix.assembled.shape == (1, 4)
    assert np.allclose(matrix.assembled, [[1.0, 1.0, 0.0, 0.0]], atol=1e-9)


def test_gapped_half_sum_dimensions():
    p = CirclePolynomial(np.array([0.5, 0.0, 0.5]))
    matrix = assemble(p, SpectrumSet.finite(2, [1]))

    # 2M + μ rows and 2(N - μ + 1) columns
    assert (matrix.rows, matrix.cols) == (4, 2)
    assert np.allclose(matrix.a, 0.0)
    assert np.allclose(matrix.b, 0.0)
    assert matrix.half_width == 1


def test_matrix_csv_has_block_column():
    matrix = assemble(_p_star(), SpectrumSet.full(2))
    frame = pd.read_csv(io.StringIO(matrix.to_csv()))

    assert list(frame.columns) == ["block", "alpha_0", "beta_0"]
    assert frame["block"].tolist() == ["W1:s=0", "W1:s=1"]
    assert frame.loc[1, "beta_0"] == pytest.approx(-ROOT2 / 2)


def test_assemble_rejects_cofinite_spectrum():
    with pytest.raises(ValueError):
        assemble(CirclePolynomial(np.array([0.5, 0.5])), SpectrumSet.cofinite([3]))
