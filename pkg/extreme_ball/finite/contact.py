"""Contact set {t : |p(e^{it})| = 1} of a unit-norm polynomial, with multiplicities."""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Any, Dict, List, Tuple

from ..algebra.circle_poly import (
    Autocorrelation,
    CirclePolynomial,
    autocorrelation,
    sup_norm,
    tau_derivative,
    wrap_angle,
)
from ..config import ContactConfig, NormConfig
from ..errors import (
    ContactIndeterminateError,
    MuExceedsNError,
    OddOrderVanishingError,
    UnimodularModulusError,
)
from ..utils.logging import configure_logging


logger = configure_logging()


@dataclass(frozen=True, slots=True)
class ContactPoint:
    t: float
    """Angle in (-pi, pi]."""

    mu: int
    """Half the vanishing order of τ at ``t``."""


@dataclass(frozen=True)
class ContactSet:
    points: Tuple[ContactPoint, ...]

    @property
    def mu(self) -> int:
        return sum(point.mu for point in self.points)

    @property
    def gamma(self) -> Fraction:
        return Fraction(self.mu, 2)

    def to_dict(self) -> Dict[str, Any]:
        return {
            "points": [{"t": point.t, "mu": point.mu} for point in self.points],
            "mu": self.mu,
            "gamma": float(self.gamma),
        }


def _tolerance(ac: Autocorrelation, s: int, config: ContactConfig) -> float:
    return config.derivative_tol * ac.derivative_scale(s)


def _newton_on_derivative(ac: Autocorrelation, t: float, order: int, iterations: int = 40) -> float:
    """Solve τ^{(order)}(t) = 0 near ``t`` using τ^{(order+1)} as slope."""

    for _ in range(iterations):
        f = tau_derivative(ac, t, order)
        fp = tau_derivative(ac, t, order + 1)
        if fp == 0.0:
            break
        step = f / fp
        if abs(step) > 1e-2:
            step = math.copysign(1e-2, step)
        t -= step
        if abs(step) < 1e-16:
            break
    return t


def _polish(ac: Autocorrelation, t: float, config: ContactConfig) -> float:
    """Move ``t`` onto the zero of τ it approximates.

    A zero of order 2m is a simple zero of τ^{(2m-1)}; orders are tried from
    the bottom up and a step is kept only once τ^{(2m)} stays clearly nonzero.
    """

    for m in range(1, ac.degree + 1):
        order = 2 * m
        tol = _tolerance(ac, order, config)
        if abs(tau_derivative(ac, t, order)) <= tol:
            continue
        t = _newton_on_derivative(ac, t, order - 1)
        if abs(tau_derivative(ac, t, order)) > tol:
            break
    return wrap_angle(t)


def _vanishing_order(ac: Autocorrelation, t: float, config: ContactConfig) -> int:
    """Smallest s >= 1 with |τ^{(s)}(t)| above its tolerance."""

    for s in range(1, 2 * ac.degree + 1):
        tol = _tolerance(ac, s, config)
        value = abs(tau_derivative(ac, t, s))
        if config.dead_band_low * tol <= value <= config.dead_band_high * tol:
            raise ContactIndeterminateError(
                f"derivative of order {s} at t={t:.15g} lies in the dead band",
                {"t": t, "order": s, "value": value, "tolerance": tol},
            )
        if value > tol:
            return s
    raise UnimodularModulusError()


def contact_set(
    p: CirclePolynomial,
    n_max: int,
    config: ContactConfig | None = None,
    norm_config: NormConfig | None = None,
) -> ContactSet:
    """Contact points of a unit-norm, non-monomial ``p`` with multiplicities."""

    config = config or ContactConfig()
    norm = sup_norm(p, norm_config)
    if norm.flat:
        raise UnimodularModulusError()
    if abs(norm.value - 1.0) > 1e-10:
        logger.warning("contact analysis on a polynomial of norm %.16g", norm.value)

    ac = autocorrelation(p)
    found: List[ContactPoint] = []
    for candidate in norm.argmax:
        t = _polish(ac, candidate, config)
        tau_value = float(ac.tau(t))
        if tau_value >= config.tau_tol:
            logger.debug("discarding candidate t=%.15g with tau=%.3e", t, tau_value)
            continue
        order = _vanishing_order(ac, t, config)
        if order % 2:
            raise OddOrderVanishingError(t, order)
        found.append(ContactPoint(t=t, mu=order // 2))

    if not found:
        raise ContactIndeterminateError(
            "no contact point survived refinement", {"argmax": list(norm.argmax)}
        )

    found.sort(key=lambda point: point.t)
    merged: List[ContactPoint] = []
    for point in found:
        if merged and abs(point.t - merged[-1].t) < config.merge_radius:
            if point.mu != merged[-1].mu:
                raise ContactIndeterminateError(
                    "coincident contact candidates disagree on multiplicity",
                    {"t": point.t, "mu": [merged[-1].mu, point.mu]},
                )
            continue
        merged.append(point)
    if len(merged) > 1 and merged[0].t + 2.0 * math.pi - merged[-1].t < config.merge_radius:
        merged.pop(0)

    separations = [b.t - a.t for a, b in zip(merged, merged[1:])]
    if len(merged) > 1:
        separations.append(merged[0].t + 2.0 * math.pi - merged[-1].t)
    if separations and min(separations) <= config.min_separation:
        raise ContactIndeterminateError(
            "contact points are clustered",
            {"points": [point.t for point in merged], "min_separation": min(separations)},
        )

    contacts = ContactSet(points=tuple(merged))
    if contacts.mu > n_max:
        raise MuExceedsNError(contacts.mu, n_max)
    logger.debug("contact set %s", contacts.to_dict())
    return contacts
