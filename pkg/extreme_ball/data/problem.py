"""Problem files.

A problem file names a spectrum and a function::

    {"lambda": {"kind": "finite", "n": 2, "gaps": []},
     "function": [[0.25, 0.0], [0.5, 0.0], [0.25, 0.0]],
     "options": {"tol_rank": 1e-9}}

``function`` is either a bare coefficient list or one of the structured
inputs ``{"type": "polynomial" | "blaschke" | "grid", ...}``.  Finite spectra
may also be given as ``{"kind": "finite", "members": [2, 3, 5]}``.
"""

from __future__ import annotations

import json
from pathlib import Path
from typing import Annotated, Any, Dict, List, Literal, Optional, Tuple, Union

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, ValidationError, model_validator

from ..algebra.circle_poly import CirclePolynomial
from ..algebra.spectrum import SpectrumSet, normalize_finite
from ..cofinite.boundary import BoundaryFunction
from ..config import ExtremalityConfig, apply_config_update
from ..errors import ProblemFileError


Pair = Tuple[float, float]


class SpectrumModel(BaseModel):
    model_config = ConfigDict(extra="forbid")

    kind: Literal["finite", "cofinite"]
    n: Optional[int] = Field(default=None, ge=0)
    gaps: List[int] = Field(default_factory=list)
    members: Optional[List[int]] = None

    @model_validator(mode="after")
    def _check_shape(self) -> "SpectrumModel":
        if self.kind == "finite" and self.n is None and self.members is None:
            raise ValueError("finite spectrum needs 'n' or 'members'")
        if self.members is not None and (self.kind != "finite" or self.n is not None or self.gaps):
            raise ValueError("'members' replaces 'n' and 'gaps' for finite spectra")
        return self


class PolynomialModel(BaseModel):
    model_config = ConfigDict(extra="forbid")

    type: Literal["polynomial"]
    coeffs: List[Pair]


class BlaschkeModel(BaseModel):
    model_config = ConfigDict(extra="forbid")

    type: Literal["blaschke"]
    zeros: List[Pair] = Field(default_factory=list)
    constant: Pair = (1.0, 0.0)


class GridModel(BaseModel):
    model_config = ConfigDict(extra="forbid")

    type: Literal["grid"]
    samples: List[Pair]


StructuredFunction = Annotated[
    Union[PolynomialModel, BlaschkeModel, GridModel],
    Field(discriminator="type"),
]


class OptionsModel(BaseModel):
    """Per-problem overrides; sections follow :class:`ExtremalityConfig`."""

    model_config = ConfigDict(extra="forbid")

    norm: Optional[Dict[str, Any]] = None
    contact: Optional[Dict[str, Any]] = None
    rank: Optional[Dict[str, Any]] = None
    witness: Optional[Dict[str, Any]] = None
    cofinite: Optional[Dict[str, Any]] = None
    search: Optional[Dict[str, Any]] = None

    tol_rank: Optional[float] = Field(default=None, gt=0)
    tol_contact: Optional[float] = Field(default=None, gt=0)
    grid_log2: Optional[int] = Field(default=None, ge=4, le=22)
    slack: Optional[float] = Field(default=None, ge=0)
    seed: Optional[int] = None
    trials: Optional[int] = Field(default=None, ge=1)
    override: bool = False

    def as_update(self) -> Dict[str, Any]:
        update = self.model_dump(
            include={"norm", "contact", "rank", "witness", "cofinite", "search"},
            exclude_none=True,
        )
        return merge_shortcuts(
            update,
            tol_rank=self.tol_rank,
            tol_contact=self.tol_contact,
            grid_log2=self.grid_log2,
            slack=self.slack,
            seed=self.seed,
            trials=self.trials,
        )


_SHORTCUTS = {
    "tol_rank": ("rank", "tol_rank"),
    "tol_contact": ("contact", "tau_tol"),
    "grid_log2": ("cofinite", "grid_log2"),
    "slack": ("search", "slack"),
    "seed": ("search", "seed"),
    "trials": ("search", "trials"),
}


def merge_shortcuts(update: Dict[str, Any], **values: Any) -> Dict[str, Any]:
    """Fold flat tolerance shortcuts into their configuration sections."""

    merged = {key: dict(value) for key, value in update.items()}
    for name, value in values.items():
        if value is None:
            continue
        section, key = _SHORTCUTS[name]
        merged.setdefault(section, {})[key] = value
    return merged


class ProblemFile(BaseModel):
    model_config = ConfigDict(extra="forbid", populate_by_name=True)

    spectrum: SpectrumModel = Field(alias="lambda")
    function: Union[List[Pair], StructuredFunction]
    options: OptionsModel = Field(default_factory=OptionsModel)
    grid_log2: Optional[int] = Field(default=None, ge=4, le=22)

    # ------------------------------------------------------------------
    # Domain objects
    # ------------------------------------------------------------------
    def spectrum_set(self) -> SpectrumSet:
        model = self.spectrum
        try:
            if model.members is not None:
                return normalize_finite(model.members)[0]
            if model.kind == "finite":
                return SpectrumSet.from_dict({"kind": "finite", "n": model.n, "gaps": model.gaps})
            return SpectrumSet.from_dict({"kind": "cofinite", "gaps": model.gaps})
        except ValueError as exc:
            if isinstance(exc, ProblemFileError):
                raise
            raise ProblemFileError(f"invalid spectrum: {exc}") from exc

    @property
    def members(self) -> Optional[List[int]]:
        return self.spectrum.members

    @property
    def is_cofinite(self) -> bool:
        return self.spectrum.kind == "cofinite"

    def polynomial(self) -> CirclePolynomial:
        if isinstance(self.function, list):
            return CirclePolynomial.from_pairs(self.function)
        if isinstance(self.function, PolynomialModel):
            return CirclePolynomial.from_pairs(self.function.coeffs)
        raise ProblemFileError(f"a {self.function.type} input is not a polynomial")

    def boundary(self, grid_log2: int) -> BoundaryFunction:
        function = self.function
        try:
            if isinstance(function, GridModel):
                return BoundaryFunction.from_samples(np.array([complex(*pair) for pair in function.samples]))
            if isinstance(function, BlaschkeModel):
                return BoundaryFunction.blaschke(
                    [complex(*pair) for pair in function.zeros],
                    complex(*function.constant),
                    grid_log2,
                )
        except ValueError as exc:
            raise ProblemFileError(str(exc)) from exc
        return BoundaryFunction.from_polynomial(self.polynomial(), grid_log2)

    def config(self, base: ExtremalityConfig) -> ExtremalityConfig:
        update = self.options.as_update()
        if self.grid_log2 is not None:
            update.setdefault("cofinite", {})["grid_log2"] = self.grid_log2
        try:
            return apply_config_update(base, update)
        except TypeError as exc:
            raise ProblemFileError(f"invalid options: {exc}") from exc


def parse_problem(text: str) -> ProblemFile:
    """Parse and validate a problem document; errors carry line/column."""

    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ProblemFileError(f"malformed JSON: {exc.msg}", exc.lineno, exc.colno) from exc
    return problem_from_dict(data)


def problem_from_dict(data: Any) -> ProblemFile:
    try:
        return ProblemFile.model_validate(data)
    except ValidationError as exc:
        details = "; ".join(
            f"{'.'.join(str(part) for part in error['loc'])}: {error['msg']}" for error in exc.errors()
        )
        raise ProblemFileError(f"invalid problem file: {details}") from exc


def load_problem(path: str | Path) -> ProblemFile:
    return parse_problem(Path(path).read_text())


def polynomial_from_json(data: Any) -> CirclePolynomial:
    """Accept ``[[re, im], ...]`` or ``{"coeffs": [[re, im], ...]}``."""

    if isinstance(data, dict):
        data = data.get("coeffs")
    if not isinstance(data, list):
        raise ProblemFileError("expected a coefficient list")
    try:
        return CirclePolynomial.from_pairs(data)
    except (TypeError, ValueError) as exc:
        raise ProblemFileError(f"invalid coefficients: {exc}") from exc
