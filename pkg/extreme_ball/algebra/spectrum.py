"""Spectrum sets: finite sets {0..N} minus gaps, and cofinite sets Z+ minus gaps."""

from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Any, Dict, Iterable, Tuple

from ..errors import EmptySpectrumError, ProblemFileError


class SpectrumKind(str, enum.Enum):
    FINITE = "finite"
    COFINITE = "cofinite"
    MONOMIAL = "monomial"
    """Single-element spectrum after shifting, i.e. {0}."""


@dataclass(frozen=True, slots=True)
class SpectrumSet:
    """Normalized spectrum.

    For ``FINITE`` the set is ``{0, ..., n_max} \\ gaps`` with ``0`` and
    ``n_max`` members; for ``COFINITE`` it is ``Z+ \\ gaps``; ``MONOMIAL``
    stands for ``{0}``.
    """

    kind: SpectrumKind
    gaps: Tuple[int, ...] = ()
    n_max: int | None = None

    def __post_init__(self) -> None:
        gaps = tuple(self.gaps)
        if list(gaps) != sorted(set(gaps)):
            raise ValueError(f"gaps must be sorted and duplicate-free, got {list(gaps)}")
        if self.kind is SpectrumKind.FINITE:
            if self.n_max is None or self.n_max < 1:
                raise ValueError("finite spectrum needs n_max >= 1")
            if any(k <= 0 or k >= self.n_max for k in gaps):
                raise ValueError(f"finite gaps must lie strictly between 0 and N={self.n_max}")
        elif self.kind is SpectrumKind.COFINITE:
            if any(k < 0 for k in gaps):
                raise ValueError("cofinite gaps must be nonnegative")
        elif gaps or self.n_max not in (None, 0):
            raise ValueError("monomial spectrum carries no gaps")

    # ------------------------------------------------------------------
    # Constructors
    # ------------------------------------------------------------------
    @classmethod
    def finite(cls, n_max: int, gaps: Iterable[int] = ()) -> "SpectrumSet":
        return cls(SpectrumKind.FINITE, tuple(sorted(gaps)), int(n_max))

    @classmethod
    def full(cls, n_max: int) -> "SpectrumSet":
        """The gapless set {0, 1, ..., N}."""

        return cls.finite(n_max)

    @classmethod
    def cofinite(cls, gaps: Iterable[int] = ()) -> "SpectrumSet":
        return cls(SpectrumKind.COFINITE, tuple(sorted(set(gaps))))

    @classmethod
    def monomial(cls) -> "SpectrumSet":
        return cls(SpectrumKind.MONOMIAL, (), 0)

    # ------------------------------------------------------------------
    # Queries
    # ------------------------------------------------------------------
    @property
    def is_finite(self) -> bool:
        return self.kind is not SpectrumKind.COFINITE

    @property
    def is_monomial_space(self) -> bool:
        return self.kind is SpectrumKind.MONOMIAL

    @property
    def gap_count(self) -> int:
        """M in the finite case, m in the cofinite case."""

        return len(self.gaps)

    def __contains__(self, k: object) -> bool:
        if not isinstance(k, int) or k < 0:
            return False
        if self.kind is SpectrumKind.MONOMIAL:
            return k == 0
        if self.kind is SpectrumKind.FINITE and k > (self.n_max or 0):
            return False
        return k not in self.gaps

    def members(self) -> Tuple[int, ...]:
        """All members of a finite (or monomial) spectrum, ascending."""

        if self.kind is SpectrumKind.COFINITE:
            raise ValueError("a cofinite spectrum has infinitely many members")
        if self.kind is SpectrumKind.MONOMIAL:
            return (0,)
        gaps = set(self.gaps)
        return tuple(k for k in range(self.n_max + 1) if k not in gaps)

    def to_dict(self) -> Dict[str, Any]:
        if self.kind is SpectrumKind.COFINITE:
            return {"kind": "cofinite", "gaps": list(self.gaps)}
        return {"kind": "finite", "n": self.n_max or 0, "gaps": list(self.gaps)}

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> "SpectrumSet":
        """Parse ``{"kind": "finite", "n": 3, "gaps": [2]}`` or the cofinite form."""

        kind = data.get("kind")
        gaps = [int(k) for k in data.get("gaps", [])]
        try:
            if kind == "finite":
                n_max = int(data["n"])
                if n_max == 0 and not gaps:
                    return cls.monomial()
                return cls.finite(n_max, gaps)
            if kind == "cofinite":
                if len(set(gaps)) != len(gaps):
                    raise ValueError("cofinite gaps must be duplicate-free")
                return cls.cofinite(gaps)
        except (KeyError, ValueError) as exc:
            raise ProblemFileError(f"invalid spectrum: {exc}") from exc
        raise ProblemFileError(f"unknown spectrum kind: {kind!r}")


def normalize_finite(raw_members: Iterable[int]) -> Tuple[SpectrumSet, int]:
    """Shift a finite spectrum so that it contains 0.

    Multiplying by ``z^d`` is an isometry between the two polynomial spaces,
    so verdicts computed for the shifted set transfer back unchanged.  A
    single-element spectrum yields the monomial-space marker.
    """

    members = sorted({int(k) for k in raw_members})
    if not members:
        raise EmptySpectrumError()
    if members[0] < 0:
        raise ValueError("spectrum members must be nonnegative")

    shift = members[0]
    if len(members) == 1:
        return SpectrumSet.monomial(), shift

    shifted = {k - shift for k in members}
    n_max = members[-1] - shift
    gaps = [k for k in range(1, n_max) if k not in shifted]
    return SpectrumSet.finite(n_max, gaps), shift


def gap_list(spectrum: SpectrumSet) -> list[int]:
    """k_1 < ... < k_M (finite) or k_1 < ... < k_m (cofinite)."""

    return list(spectrum.gaps)
