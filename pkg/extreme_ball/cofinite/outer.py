"""Outer function with prescribed boundary modulus.

Given u = log|g| on a uniform grid, the analytic completion h = u + iũ is
obtained by folding the discrete spectrum of u onto nonnegative frequencies
(Herglotz kernel), and g = exp(h).  This is the cepstral construction used
for minimum-phase spectral factorisation.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Any, Dict, Optional

import numpy as np

from ..config import CofiniteConfig
from ..errors import ModulusCheckError, OuterFunctionError
from ..utils.logging import configure_logging


logger = configure_logging()


@dataclass(frozen=True, eq=False)
class OuterFunction:
    g_hat: np.ndarray
    """Analytic coefficients ĝ(0..n/2)."""

    grid_values: np.ndarray
    """Σ_k ĝ(k) e^{ikt} on the grid."""

    modulus_error: float
    tail_energy: float
    geometric_mean_error: float
    clamped: int

    @property
    def grid_size(self) -> int:
        return int(self.grid_values.size)

    def continuity_jump(self) -> float:
        """Largest change of |g| between neighbouring grid points."""

        modulus = np.abs(self.grid_values)
        return float(np.max(np.abs(np.diff(np.append(modulus, modulus[0])))))

    def diagnostics(self) -> Dict[str, Any]:
        return {
            "modulus_error": self.modulus_error,
            "tail_energy": self.tail_energy,
            "geometric_mean_error": self.geometric_mean_error,
            "clamped": self.clamped,
            "grid_size": self.grid_size,
        }


def analytic_grid(coeffs: np.ndarray, n: int, offset: float = 0.0) -> np.ndarray:
    """Σ_k c_k e^{2πik(m + offset)/n} for m = 0..n-1, coefficients folded mod n."""

    coeffs = np.asarray(coeffs, dtype=np.complex128)
    if offset:
        coeffs = coeffs * np.exp(2j * np.pi * np.arange(coeffs.size) * offset / n)
    padded = np.zeros(n, dtype=np.complex128)
    for start in range(0, coeffs.size, n):
        chunk = coeffs[start : start + n]
        padded[: chunk.size] += chunk
    return n * np.fft.ifft(padded)


def outer_function(
    modulus_log: np.ndarray,
    config: CofiniteConfig | None = None,
    clamped: Optional[np.ndarray] = None,
    offset: float = 0.0,
) -> OuterFunction:
    """Outer function g with log|g| = ``modulus_log`` on the grid t_m = 2π(m + offset)/n.

    Clamped samples are replaced by periodic linear interpolation of their
    unclamped neighbours before the transform and are left out of the
    modulus check.
    """

    config = config or CofiniteConfig()
    u = np.asarray(modulus_log, dtype=float)
    n = u.size
    if n < 4 or n & (n - 1):
        raise OuterFunctionError("outer function needs a power-of-two grid", {"grid_size": n})
    if not np.all(np.isfinite(u)):
        raise OuterFunctionError("log-modulus samples must be finite")
    clamped = np.zeros(n, dtype=bool) if clamped is None else np.asarray(clamped, dtype=bool)
    if np.all(clamped):
        raise OuterFunctionError("every sample of the modulus is clamped", {"clamped": n})

    keep = ~clamped
    regular = u.copy()
    if np.any(clamped):
        index = np.arange(n)
        regular[clamped] = np.interp(index[clamped], index[keep], u[keep], period=n)

    u_hat = np.fft.fft(regular) / n
    h_hat = np.zeros(n, dtype=np.complex128)
    h_hat[0] = u_hat[0]
    h_hat[1 : n // 2] = 2.0 * u_hat[1 : n // 2]
    h_hat[n // 2] = u_hat[n // 2]
    h = n * np.fft.ifft(h_hat)
    g_full = np.fft.fft(np.exp(h)) / n
    # the transform sees g(t + 2π·offset/n); undo the phase to get ĝ
    k = np.arange(n // 2 + 1)
    g_hat = g_full[: n // 2 + 1] * np.exp(-2j * np.pi * k * offset / n)

    values = analytic_grid(g_hat, n, offset)
    target = np.exp(u)
    # relative to the sup of the prescribed modulus, so zeros of 1 - |f| do not blow it up
    modulus_error = float(np.max(np.abs(np.abs(values[keep]) - target[keep]))) / float(np.max(target))
    energy = float(np.sum(np.abs(g_hat) ** 2))
    tail_energy = float(np.sum(np.abs(g_hat[n // 4 :]) ** 2)) / energy if energy else 0.0
    with np.errstate(divide="ignore"):
        log_values = np.log(np.abs(values[keep]))
    geometric_mean_error = abs(np.exp(np.mean(log_values)) - np.exp(np.mean(u[keep])))

    logger.debug(
        "outer function on %d points: modulus error %.3e, tail energy %.3e",
        n,
        modulus_error,
        tail_energy,
    )
    if modulus_error > config.modulus_tol:
        raise ModulusCheckError(modulus_error, config.modulus_tol)
    if tail_energy > config.tail_energy_tol:
        logger.warning("outer function tail energy %.3e exceeds %.1e", tail_energy, config.tail_energy_tol)

    return OuterFunction(
        g_hat=g_hat,
        grid_values=values,
        modulus_error=modulus_error,
        tail_energy=tail_energy,
        geometric_mean_error=float(geometric_mean_error),
        clamped=int(np.sum(clamped)),
    )
