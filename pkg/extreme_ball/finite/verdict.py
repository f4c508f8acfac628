"""Verdict types shared by the finite and cofinite pipelines."""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from typing import Any, Dict, Optional

from ..algebra.circle_poly import CirclePolynomial
from ..algebra.spectrum import SpectrumSet


class VerdictKind(str, enum.Enum):
    EXTREME = "extreme"
    NON_EXTREME = "non_extreme"
    MONOMIAL = "monomial"
    INDETERMINATE = "indeterminate"

    @property
    def is_definite(self) -> bool:
        return self is not VerdictKind.INDETERMINATE

    @property
    def is_extreme(self) -> bool:
        return self in (VerdictKind.EXTREME, VerdictKind.MONOMIAL)


@dataclass
class Verdict:
    kind: VerdictKind
    spectrum: SpectrumSet
    p: CirclePolynomial
    """The analysed, unit-norm polynomial (in raw coordinates)."""

    scale: float = 1.0
    """Factor applied to the input to reach unit norm."""

    shift: int = 0
    witness: Optional[CirclePolynomial] = None
    epsilon: Optional[float] = None
    certificate: Dict[str, Any] = field(default_factory=dict)
    matrix: Dict[str, Any] = field(default_factory=dict)
    contacts: Optional[Dict[str, Any]] = None
    diagnostics: Dict[str, Any] = field(default_factory=dict)

    @property
    def is_extreme(self) -> bool:
        return self.kind.is_extreme

    def to_dict(self) -> Dict[str, Any]:
        payload: Dict[str, Any] = {
            "verdict": self.kind.value,
            "lambda": self.spectrum.to_dict(),
            "p": {"coeffs": self.p.to_pairs()},
            "scale": self.scale,
            "shift": self.shift,
        }
        if self.witness is not None:
            payload["witness"] = {"coeffs": self.witness.to_pairs()}
            payload["epsilon"] = self.epsilon
        if self.certificate:
            payload["certificate"] = self.certificate
        if self.matrix:
            payload["matrix"] = self.matrix
        if self.contacts is not None:
            payload["contacts"] = self.contacts
        if self.diagnostics:
            payload["diagnostics"] = self.diagnostics
        return payload
