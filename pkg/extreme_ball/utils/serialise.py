"""JSON-safe conversion of results."""

from __future__ import annotations

import datetime as dt
import enum
import json
import math
from dataclasses import fields, is_dataclass
from fractions import Fraction
from typing import Any, Dict

import numpy as np
import pandas as pd


def to_jsonable(value: Any) -> Any:
    """Recursively convert dataclasses, numpy and pandas values for ``json``.

    Complex numbers become ``[re, im]`` pairs and non-finite floats become the
    strings ``"inf"``, ``"-inf"`` and ``"nan"``.
    """

    if hasattr(value, "to_dict") and not isinstance(value, (pd.DataFrame, pd.Series)):
        return to_jsonable(value.to_dict())

    if is_dataclass(value) and not isinstance(value, type):
        result: Dict[str, Any] = {}
        for field_info in fields(value):
            result[field_info.name] = to_jsonable(getattr(value, field_info.name))
        return result

    if isinstance(value, dict):
        return {str(key): to_jsonable(val) for key, val in value.items()}

    if isinstance(value, (list, tuple, set)):
        return [to_jsonable(item) for item in value]

    if isinstance(value, enum.Enum):
        return value.value

    if isinstance(value, (dt.datetime, dt.date)):
        return value.isoformat()

    if isinstance(value, Fraction):
        return float(value)

    if isinstance(value, pd.DataFrame):
        return [
            {key: to_jsonable(val) for key, val in record.items()}
            for record in value.to_dict(orient="records")
        ]
    if isinstance(value, pd.Series):
        return {str(key): to_jsonable(val) for key, val in value.to_dict().items()}

    if isinstance(value, np.ndarray):
        return [to_jsonable(item) for item in value.tolist()]
    if isinstance(value, np.generic):
        return to_jsonable(value.item())

    if isinstance(value, complex):
        return [to_jsonable(value.real), to_jsonable(value.imag)]

    if isinstance(value, float) and not math.isfinite(value):
        if math.isnan(value):
            return "nan"
        return "inf" if value > 0 else "-inf"

    return value


def dumps(value: Any, indent: int | None = 2) -> str:
    return json.dumps(to_jsonable(value), indent=indent, ensure_ascii=False)
