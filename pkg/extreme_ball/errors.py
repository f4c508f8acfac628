"""Exception hierarchy.

Every error raised by the library derives from :class:`ExtremalityError` and
from the builtin it specialises, so ``except ValueError`` keeps working for
callers that do not care about the finer classes.
"""

from __future__ import annotations

from typing import Any, Dict, Optional


class ExtremalityError(Exception):
    """Base class for all library errors."""

    def __init__(self, message: str, diagnostics: Optional[Dict[str, Any]] = None) -> None:
        super().__init__(message)
        self.diagnostics: Dict[str, Any] = dict(diagnostics or {})


class EmptySpectrumError(ExtremalityError, ValueError):
    def __init__(self) -> None:
        super().__init__("empty spectrum")


class ZeroPolynomialError(ExtremalityError, ValueError):
    def __init__(self) -> None:
        super().__init__("zero polynomial")


class SpectrumViolationError(ExtremalityError, ValueError):
    """A coefficient is supported outside the admissible spectrum."""

    def __init__(self, degrees: list[int]) -> None:
        super().__init__(
            f"spectrum violation: nonzero coefficients at degrees {degrees}",
            {"degrees": list(degrees)},
        )


class OddOrderVanishingError(ExtremalityError, ValueError):
    def __init__(self, t: float, order: int) -> None:
        super().__init__(
            f"odd-order vanishing: tau has a zero of order {order} at t={t:.15g}",
            {"t": t, "order": order},
        )


class MuExceedsNError(ExtremalityError, ValueError):
    def __init__(self, mu: int, n_max: int) -> None:
        super().__init__(f"mu exceeds N: mu={mu} > N={n_max}", {"mu": mu, "n": n_max})


class UnimodularModulusError(ExtremalityError, ValueError):
    """|p| is constant on the circle, so p is c·z^k up to rounding."""

    def __init__(self) -> None:
        super().__init__("unimodular modulus")


class ContactIndeterminateError(ExtremalityError, RuntimeError):
    """Contact analysis cannot decide multiplicities honestly."""


class FullRankError(ExtremalityError, ValueError):
    def __init__(self) -> None:
        super().__init__("full rank")


class VanishingEpsilonError(ExtremalityError, RuntimeError):
    def __init__(self, epsilon: float) -> None:
        super().__init__(f"vanishing epsilon: {epsilon:.3e}", {"epsilon": epsilon})


class CertificateError(ExtremalityError, RuntimeError):
    """A witness failed one of the certificate inequalities."""

    def __init__(self, inequality: str, value: float, bound: float) -> None:
        super().__init__(
            f"certificate failure: {inequality} = {value:.6e} exceeds {bound:.3e}",
            {"inequality": inequality, "value": value, "bound": bound},
        )


class NormError(ExtremalityError, ValueError):
    def __init__(self, norm: float) -> None:
        super().__init__(f"norm != 1: sup norm is {norm:.15g}", {"norm": norm})


class ModulusCheckError(ExtremalityError, RuntimeError):
    def __init__(self, error: float, bound: float) -> None:
        super().__init__(
            f"modulus check failed: relative error {error:.3e} exceeds {bound:.3e}",
            {"error": error, "bound": bound},
        )


class KernelResidualError(ExtremalityError, RuntimeError):
    def __init__(self, residual: float, bound: float) -> None:
        super().__init__(
            f"kernel residual too large: {residual:.3e} exceeds {bound:.3e}",
            {"residual": residual, "bound": bound},
        )


class DivergentLogIntegralError(ExtremalityError, ValueError):
    """No witness exists: the log-integral diverges, so f is extreme."""

    def __init__(self) -> None:
        super().__init__("log-integral diverges: function is extreme, no witness exists")


class ProblemFileError(ExtremalityError, ValueError):
    """Malformed or schema-invalid problem input."""

    def __init__(self, message: str, line: int | None = None, column: int | None = None) -> None:
        location = f" (line {line}, column {column})" if line is not None else ""
        super().__init__(f"{message}{location}", {"line": line, "column": column})
        self.line = line
        self.column = column


class OuterFunctionError(ExtremalityError, RuntimeError):
    """The log-modulus samples cannot carry an outer function."""


class UndecidedLogIntegralError(ExtremalityError, ValueError):
    def __init__(self, estimate: float | None) -> None:
        super().__init__(
            "log-integrability of sampled input is unknown; pass override to proceed",
            {"estimate": estimate},
        )
