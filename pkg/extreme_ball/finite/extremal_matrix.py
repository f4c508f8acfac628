"""Restriction polynomial, Wronski-type blocks, gap matrix and the stacked matrix 𝓜."""

from __future__ import annotations

import io
import math
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path
from typing import Any, Dict, List, Sequence, TextIO, Tuple

import numpy as np
import pandas as pd

from ..algebra.circle_poly import CirclePolynomial, evaluate, weighted_derivative
from ..algebra.spectrum import SpectrumSet
from ..config import ContactConfig, NormConfig
from ..utils.logging import configure_logging
from .contact import ContactSet, contact_set


logger = configure_logging()

FACTORIZATION_SAMPLES = 64
FACTORIZATION_TOL = 1e-9


@dataclass(frozen=True, eq=False)
class RestrictionData:
    """r(z) = Π (z - ζ_j)^{μ_j} together with the unimodular constant λ."""

    r: CirclePolynomial
    lam: complex
    factorization_residual: float = 0.0

    def to_dict(self) -> Dict[str, Any]:
        return {
            "r": self.r.to_pairs(),
            "lambda": [self.lam.real, self.lam.imag],
            "factorization_residual": self.factorization_residual,
        }


@dataclass(frozen=True, eq=False)
class ExtremalityMatrix:
    """Real block matrix [A -B; B A; U_1 V_1; ...; U_n V_n]."""

    a: np.ndarray
    b: np.ndarray
    u_blocks: Tuple[np.ndarray, ...]
    v_blocks: Tuple[np.ndarray, ...]
    assembled: np.ndarray
    row_labels: Tuple[str, ...]
    contacts: ContactSet
    restriction: RestrictionData
    n_max: int
    gaps: Tuple[int, ...] = field(default=())

    @property
    def rows(self) -> int:
        return int(self.assembled.shape[0])

    @property
    def cols(self) -> int:
        return int(self.assembled.shape[1])

    @property
    def half_width(self) -> int:
        """N - μ + 1, the number of complex unknowns."""

        return self.cols // 2

    def to_dict(self) -> Dict[str, Any]:
        return {
            "rows": self.rows,
            "cols": self.cols,
            "blocks": list(self.row_labels),
            "entries": self.assembled.tolist(),
        }

    def to_frame(self) -> pd.DataFrame:
        """Row-major table with the originating block of each row."""

        columns = [f"alpha_{l}" for l in range(self.half_width)]
        columns += [f"beta_{l}" for l in range(self.half_width)]
        frame = pd.DataFrame(self.assembled, columns=columns)
        frame.insert(0, "block", list(self.row_labels))
        return frame

    def to_csv(self, target: str | Path | TextIO | None = None) -> str:
        """Dump the matrix as CSV; returns the text when no target is given."""

        buffer = io.StringIO()
        self.to_frame().to_csv(buffer, index=False, float_format="%.17g")
        text = buffer.getvalue()
        if isinstance(target, (str, Path)):
            Path(target).write_text(text)
        elif target is not None:
            target.write(text)
        return text


def _unit(t: float) -> complex:
    return complex(math.cos(t), math.sin(t))


def restriction_poly(contacts: ContactSet) -> RestrictionData:
    """Expand r by convolution in contact-angle order and compute λ."""

    if not contacts.points:
        raise ValueError("restriction polynomial needs at least one contact point")

    coeffs = np.ones(1, dtype=np.complex128)
    for point in contacts.points:
        factor = np.array([-_unit(point.t), 1.0], dtype=np.complex128)
        for _ in range(point.mu):
            coeffs = np.convolve(coeffs, factor)
    r = CirclePolynomial(coeffs)

    lam = 1j**contacts.mu
    for point in contacts.points:
        lam *= _unit(point.t * point.mu / 2.0)

    t = np.linspace(-math.pi, math.pi, FACTORIZATION_SAMPLES, endpoint=False) + 0.5 / FACTORIZATION_SAMPLES
    expected = lam * np.exp(0.5j * contacts.mu * t)
    for point in contacts.points:
        expected = expected * (2.0 * np.sin((t - point.t) / 2.0)) ** point.mu
    residual = float(np.max(np.abs(np.asarray(evaluate(r, t)) - expected)))
    if residual > FACTORIZATION_TOL * 2.0**contacts.mu:
        logger.warning("restriction polynomial factorization residual %.3e", residual)

    return RestrictionData(r=r, lam=complex(lam), factorization_residual=residual)


def wronski_block(
    p: CirclePolynomial,
    t_j: float,
    mu_j: int,
    gamma: Fraction | float,
    n_max: int,
    mu: int,
) -> np.ndarray:
    """Entry (s, ℓ) is d^s/dt^s [e^{-i(γ+ℓ)t} p(e^{it})] at ``t_j``."""

    width = n_max - mu + 1
    block = np.empty((mu_j, width), dtype=np.complex128)
    for s in range(mu_j):
        for ell in range(width):
            block[s, ell] = weighted_derivative(p, Fraction(gamma) + ell, t_j, s)
    return block


def gap_block(
    restriction: RestrictionData,
    gaps: Sequence[int],
    n_max: int,
    mu: int,
) -> np.ndarray:
    """Entry (ν, l) is r̂(k_ν - l); zero outside 0..μ."""

    width = n_max - mu + 1
    block = np.zeros((len(gaps), width), dtype=np.complex128)
    for nu, k in enumerate(gaps):
        for ell in range(width):
            block[nu, ell] = restriction.r.coefficient(k - ell)
    return block


def assemble(
    p: CirclePolynomial,
    spectrum: SpectrumSet,
    contacts: ContactSet | None = None,
    contact_config: ContactConfig | None = None,
    norm_config: NormConfig | None = None,
) -> ExtremalityMatrix:
    """Stack the real blocks of a unit-norm, non-monomial ``p``."""

    if not spectrum.is_finite or spectrum.n_max is None:
        raise ValueError("the extremality matrix is defined for finite spectra only")
    n_max = spectrum.n_max
    gaps = tuple(spectrum.gaps)
    if contacts is None:
        contacts = contact_set(p, n_max, contact_config, norm_config)
    mu = contacts.mu
    width = n_max - mu + 1

    restriction = restriction_poly(contacts)
    gap_matrix = gap_block(restriction, gaps, n_max, mu)
    a = gap_matrix.real.copy()
    b = gap_matrix.imag.copy()

    rows: List[np.ndarray] = [np.hstack([a, -b]), np.hstack([b, a])]
    labels: List[str] = [f"A:{k}" for k in gaps] + [f"B:{k}" for k in gaps]
    u_blocks: List[np.ndarray] = []
    v_blocks: List[np.ndarray] = []
    for j, point in enumerate(contacts.points, start=1):
        w = wronski_block(p, point.t, point.mu, contacts.gamma, n_max, mu)
        u_blocks.append(w.real.copy())
        v_blocks.append(w.imag.copy())
        rows.append(np.hstack([w.real, w.imag]))
        labels.extend(f"W{j}:s={s}" for s in range(point.mu))

    assembled = np.vstack(rows) if rows else np.zeros((0, 2 * width))
    expected = (2 * len(gaps) + mu, 2 * width)
    if assembled.shape != expected:
        raise RuntimeError(f"matrix has shape {assembled.shape}, expected {expected}")
    if not np.all(np.isfinite(assembled)):
        raise RuntimeError("extremality matrix has non-finite entries")

    logger.debug("assembled %dx%d extremality matrix", *assembled.shape)
    return ExtremalityMatrix(
        a=a,
        b=b,
        u_blocks=tuple(u_blocks),
        v_blocks=tuple(v_blocks),
        assembled=assembled,
        row_labels=tuple(labels),
        contacts=contacts,
        restriction=restriction,
        n_max=n_max,
        gaps=gaps,
    )
