"""Polynomial arithmetic on the unit circle.

A :class:`CirclePolynomial` holds the Fourier coefficients p̂(0..D) of an
analytic polynomial as a dense complex array.  Points of the circle are
addressed by their angle ``t`` (``z = e^{it}``) and every derivative is taken
with respect to ``t`` in closed form from the coefficients.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, Iterable, Mapping, Sequence, Tuple

import numpy as np
from numpy.polynomial import polynomial as npoly

from ..config import NormConfig
from ..errors import ZeroPolynomialError
from ..utils.logging import configure_logging


logger = configure_logging()

Angle = float | np.ndarray


def wrap_angle(t: float) -> float:
    """Map ``t`` to the principal branch ``(-pi, pi]``."""

    wrapped = math.remainder(float(t), 2.0 * math.pi)
    if wrapped <= -math.pi:
        wrapped += 2.0 * math.pi
    return wrapped


@dataclass(frozen=True, eq=False)
class CirclePolynomial:
    """Analytic polynomial ``sum_k coeffs[k] z^k``."""

    coeffs: np.ndarray

    def __post_init__(self) -> None:
        arr = np.atleast_1d(np.asarray(self.coeffs, dtype=np.complex128)).copy()
        if arr.ndim != 1:
            raise ValueError("coefficients must be one-dimensional")
        if arr.size == 0:
            arr = np.zeros(1, dtype=np.complex128)
        nz = np.flatnonzero(arr)
        arr = arr[: nz[-1] + 1] if nz.size else arr[:1]
        arr.setflags(write=False)
        object.__setattr__(self, "coeffs", arr)

    # ------------------------------------------------------------------
    # Constructors
    # ------------------------------------------------------------------
    @classmethod
    def from_mapping(cls, mapping: Mapping[int, complex]) -> "CirclePolynomial":
        if not mapping:
            return cls(np.zeros(1))
        degree = max(mapping)
        if min(mapping) < 0:
            raise ValueError("analytic polynomials have no negative degrees")
        arr = np.zeros(degree + 1, dtype=np.complex128)
        for k, value in mapping.items():
            arr[k] = value
        return cls(arr)

    @classmethod
    def monomial(cls, k: int, c: complex = 1.0) -> "CirclePolynomial":
        arr = np.zeros(k + 1, dtype=np.complex128)
        arr[k] = c
        return cls(arr)

    @classmethod
    def from_pairs(cls, pairs: Sequence[Sequence[float]]) -> "CirclePolynomial":
        """Parse ``[[re, im], ...]`` indexed by ascending degree."""

        values = []
        for pair in pairs:
            if len(pair) != 2:
                raise ValueError(f"coefficient must be a [re, im] pair, got {pair!r}")
            values.append(complex(float(pair[0]), float(pair[1])))
        return cls(np.array(values, dtype=np.complex128))

    def to_pairs(self) -> list[list[float]]:
        return [[float(c.real), float(c.imag)] for c in self.coeffs]

    # ------------------------------------------------------------------
    # Structure
    # ------------------------------------------------------------------
    @property
    def degree(self) -> int:
        return int(self.coeffs.size - 1)

    def is_zero(self) -> bool:
        return not np.any(self.coeffs)

    def support(self, rel_tol: float = 0.0) -> Tuple[int, ...]:
        """Degrees of nonzero coefficients, optionally ignoring coefficients below ``rel_tol * max|p̂|``."""

        mags = np.abs(self.coeffs)
        top = mags.max(initial=0.0)
        if top == 0.0:
            return ()
        return tuple(int(k) for k in np.flatnonzero(mags > rel_tol * top))

    def cleanup(self, rel_tol: float = 1e-14) -> "CirclePolynomial":
        """Explicitly prune coefficients below ``rel_tol * max|p̂|`` to zero."""

        mags = np.abs(self.coeffs)
        arr = self.coeffs.copy()
        arr[mags <= rel_tol * mags.max(initial=0.0)] = 0.0
        return CirclePolynomial(arr)

    def coefficient(self, k: int) -> complex:
        if 0 <= k <= self.degree:
            return complex(self.coeffs[k])
        return 0j

    # ------------------------------------------------------------------
    # Arithmetic
    # ------------------------------------------------------------------
    def _padded(self, other: "CirclePolynomial") -> Tuple[np.ndarray, np.ndarray]:
        size = max(self.coeffs.size, other.coeffs.size)
        a = np.zeros(size, dtype=np.complex128)
        b = np.zeros(size, dtype=np.complex128)
        a[: self.coeffs.size] = self.coeffs
        b[: other.coeffs.size] = other.coeffs
        return a, b

    def __add__(self, other: "CirclePolynomial") -> "CirclePolynomial":
        a, b = self._padded(other)
        return CirclePolynomial(a + b)

    def __sub__(self, other: "CirclePolynomial") -> "CirclePolynomial":
        a, b = self._padded(other)
        return CirclePolynomial(a - b)

    def __neg__(self) -> "CirclePolynomial":
        return CirclePolynomial(-self.coeffs)

    def __mul__(self, other: "CirclePolynomial | complex | float") -> "CirclePolynomial":
        if isinstance(other, CirclePolynomial):
            return CirclePolynomial(np.convolve(self.coeffs, other.coeffs))
        return CirclePolynomial(self.coeffs * complex(other))

    __rmul__ = __mul__

    def __truediv__(self, scalar: complex | float) -> "CirclePolynomial":
        return CirclePolynomial(self.coeffs / complex(scalar))

    def shifted(self, d: int) -> "CirclePolynomial":
        """z^d · p."""

        if d < 0:
            raise ValueError("shift must be nonnegative")
        return CirclePolynomial(np.concatenate([np.zeros(d, dtype=np.complex128), self.coeffs]))

    def rotated(self, sigma: complex) -> "CirclePolynomial":
        """p(σz)."""

        return CirclePolynomial(self.coeffs * np.power(complex(sigma), np.arange(self.coeffs.size)))

    def allclose(self, other: "CirclePolynomial", atol: float = 1e-12) -> bool:
        a, b = self._padded(other)
        return bool(np.allclose(a, b, rtol=0.0, atol=atol))

    def __call__(self, t: Angle) -> complex | np.ndarray:
        return evaluate(self, t)

    def __repr__(self) -> str:  # pragma: no cover - debugging aid
        return f"CirclePolynomial({np.array2string(self.coeffs, precision=6)})"


@dataclass(frozen=True, eq=False)
class Autocorrelation:
    """Coefficients c_k, k = -D..D, of |p(e^{it})|^2 = sum_k c_k e^{ikt}."""

    c: np.ndarray
    degree: int
    frequencies: np.ndarray = field(init=False, repr=False)

    def __post_init__(self) -> None:
        object.__setattr__(self, "frequencies", np.arange(-self.degree, self.degree + 1))

    def coefficient(self, k: int) -> complex:
        if abs(k) > self.degree:
            return 0j
        return complex(self.c[k + self.degree])

    def modulus_squared(self, t: Angle) -> float | np.ndarray:
        phases = np.exp(1j * np.multiply.outer(np.asarray(t, dtype=float), self.frequencies))
        return np.real(phases @ self.c)

    def tau(self, t: Angle) -> float | np.ndarray:
        """τ(t) = 1 - |p(e^{it})|^2."""

        return 1.0 - self.modulus_squared(t)

    def derivative_scale(self, s: int) -> float:
        """sum_k |c_k| |k|^s, the natural magnitude of τ^{(s)}."""

        weights = np.abs(self.frequencies).astype(float) ** s
        if s == 0:
            weights = np.ones_like(weights)
        return float(np.sum(np.abs(self.c) * weights))


# ----------------------------------------------------------------------
# Operations
# ----------------------------------------------------------------------
def evaluate(p: CirclePolynomial, t: Angle) -> complex | np.ndarray:
    """p(e^{it}) by Horner's scheme."""

    w = np.exp(1j * np.asarray(t, dtype=float))
    value = npoly.polyval(w, p.coeffs)
    return complex(value) if np.ndim(value) == 0 else value


def autocorrelation(p: CirclePolynomial) -> Autocorrelation:
    """c_k = sum_j p̂(j+k) conj(p̂(j)), Hermitian-symmetrised."""

    coeffs = p.coeffs
    nz = np.flatnonzero(coeffs)
    trimmed = coeffs[nz[0] : nz[-1] + 1] if nz.size else coeffs[:1]
    # np.correlate conjugates its second argument; output index i is k = i - D
    c = np.correlate(trimmed, trimmed, mode="full")
    c = 0.5 * (c + np.conj(c[::-1]))
    degree = trimmed.size - 1
    return Autocorrelation(c=c, degree=degree)


def tau_derivative(ac: Autocorrelation, t: float, s: int) -> float:
    """d^s/dt^s [1 - sum_k c_k e^{ikt}] at ``t``."""

    if s < 0:
        raise ValueError("derivative order must be nonnegative")
    if s > 2 * ac.degree + 2:
        raise ValueError(f"derivative order {s} exceeds 2D+2 = {2 * ac.degree + 2}")
    k = ac.frequencies
    terms = ac.c * np.exp(1j * k * t)
    if s == 0:
        value = 1.0 - np.sum(terms)
    else:
        value = -np.sum((1j * k) ** s * terms)
    scale = max(ac.derivative_scale(s), 1.0)
    if abs(value.imag) > 1e-10 * scale:
        logger.warning("tau derivative of order %d has imaginary residue %.3e", s, value.imag)
    return float(value.real)


def weighted_derivative(
    p: CirclePolynomial,
    alpha: float | Fraction,
    t: float,
    s: int,
) -> complex:
    """d^s/dt^s { e^{-iαt} p(e^{it}) } = sum_k p̂(k) (i(k-α))^s e^{i(k-α)t}.

    ``alpha`` may be a half-integer; evaluation stays in the t-domain so no
    branch choice is involved beyond ``t`` itself.
    """

    shifted = np.arange(p.coeffs.size) - float(alpha)
    terms = p.coeffs * np.exp(1j * shifted * t)
    if s:
        terms = terms * (1j * shifted) ** s
    return complex(np.sum(terms))


@dataclass(frozen=True)
class SupNorm:
    """Certified maximum of |p| on the circle."""

    value: float
    argmax: Tuple[float, ...]
    flat: bool = False
    """|p| is constant on the circle; every angle is a maximiser."""

    low_confidence: bool = False
    """Root-based and grid-based maxima disagreed by more than the threshold."""


def _critical_newton(ac: Autocorrelation, t: float, config: NormConfig) -> float:
    """Damped Newton on (|p|^2)' = sum ik c_k e^{ikt}."""

    k = ac.frequencies
    scale = max(ac.derivative_scale(1), 1e-300)
    for _ in range(config.newton_max_iter):
        phases = ac.c * np.exp(1j * k * t)
        f = float(np.real(np.sum(1j * k * phases)))
        if abs(f) <= config.newton_tol * scale:
            break
        fp = float(np.real(np.sum(-(k**2) * phases)))
        if fp == 0.0:
            break
        step = f / fp
        if abs(step) > 0.1:
            step = math.copysign(0.1, step)
        t -= step
        if abs(step) < 1e-16:
            break
    return t


def _root_candidates(ac: Autocorrelation, config: NormConfig) -> list[float]:
    """Unit-modulus roots of w^D · (|p|^2)'(w)."""

    k = ac.frequencies
    ascending = 1j * k * ac.c
    nz = np.flatnonzero(np.abs(ascending) > 0)
    if nz.size == 0:
        return []
    ascending = ascending[nz[0] : nz[-1] + 1]
    if ascending.size < 2:
        return []
    roots = np.roots(ascending[::-1])
    distance = np.abs(np.abs(roots) - 1.0)
    accepted = distance < config.root_radius_tol
    # a root of multiplicity m splits into m roots about eps^(1/m) apart
    loose = np.flatnonzero(~accepted & (distance < config.cluster_radius_tol))
    for i in loose:
        neighbours = np.abs(roots - roots[i]) < config.cluster_radius_tol
        if np.count_nonzero(neighbours) > 1:
            accepted[i] = True
    return [float(np.angle(w)) for w in roots[accepted]]


def _grid_candidates(p: CirclePolynomial, ac: Autocorrelation, config: NormConfig) -> list[float]:
    n = max(256, config.grid_factor * max(ac.degree, 1))
    t = 2.0 * np.pi * np.arange(n) / n
    values = np.abs(evaluate(p, t)) ** 2
    left = np.roll(values, 1)
    right = np.roll(values, -1)
    peaks = np.flatnonzero((values >= left) & (values >= right))
    return [float(t[i]) for i in peaks]


def sup_norm(p: CirclePolynomial, config: NormConfig | None = None) -> SupNorm:
    """max_t |p(e^{it})| with every maximising angle.

    Critical points come from the companion-matrix roots of the derivative of
    |p|^2 and, independently, from a dense grid scan; both sets are polished
    by Newton's method and the larger maximum wins.
    """

    config = config or NormConfig()
    if p.is_zero():
        raise ZeroPolynomialError()

    ac = autocorrelation(p)
    c0 = float(ac.coefficient(0).real)
    derivative_mass = ac.derivative_scale(1)
    if ac.degree == 0 or derivative_mass <= config.flat_tol * c0:
        return SupNorm(value=math.sqrt(c0), argmax=(), flat=True)

    low_confidence = False
    try:
        root_ts = [_critical_newton(ac, t, config) for t in _root_candidates(ac, config)]
    except np.linalg.LinAlgError:
        logger.warning("companion eigenvalue solve failed; using grid scan only")
        root_ts = []
        low_confidence = True
    grid_ts = [_critical_newton(ac, t, config) for t in _grid_candidates(p, ac, config)]

    def _best(ts: list[float]) -> float:
        if not ts:
            return -math.inf
        return float(np.max(np.abs(evaluate(p, np.array(ts)))))

    root_max = _best(root_ts)
    grid_max = _best(grid_ts)
    if root_ts and abs(root_max - grid_max) > config.low_confidence_gap:
        logger.warning(
            "low-confidence norm: root-based %.16g vs grid-based %.16g", root_max, grid_max
        )
        low_confidence = True

    candidates = np.array([wrap_angle(t) for t in root_ts + grid_ts])
    moduli = np.abs(evaluate(p, candidates))
    value = float(moduli.max())
    winners = sorted(
        (float(t), float(m))
        for t, m in zip(candidates, moduli)
        if m >= value - config.argmax_window
    )

    merged: list[Tuple[float, float]] = []
    for t, m in winners:
        if merged and abs(t - merged[-1][0]) < 1e-9:
            if m > merged[-1][1]:
                merged[-1] = (t, m)
            continue
        merged.append((t, m))
    if len(merged) > 1 and abs(merged[0][0] + 2.0 * math.pi - merged[-1][0]) < 1e-9:
        merged.pop(0)

    return SupNorm(
        value=value,
        argmax=tuple(t for t, _ in merged),
        low_confidence=low_confidence,
    )


def normalize_to_unit(p: CirclePolynomial, config: NormConfig | None = None) -> CirclePolynomial:
    """p / ||p||_∞."""

    return p / sup_norm(p, config).value


def as_polynomial(value: "CirclePolynomial | Iterable[complex] | Dict[int, complex]") -> CirclePolynomial:
    """Coerce arrays, mappings and polynomials alike."""

    if isinstance(value, CirclePolynomial):
        return value
    if isinstance(value, Mapping):
        return CirclePolynomial.from_mapping(value)
    return CirclePolynomial(np.asarray(list(value), dtype=np.complex128))


def coefficient_norm(p: CirclePolynomial) -> float:
    """Euclidean norm of the coefficient vector."""

    return float(np.linalg.norm(p.coeffs))


def grid_values(p: CirclePolynomial, n: int, offset: float = 0.0) -> np.ndarray:
    """p on the uniform grid t_m = 2π(m + offset)/n."""

    t = 2.0 * np.pi * (np.arange(n) + offset) / n
    return np.asarray(evaluate(p, t))
