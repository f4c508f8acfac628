"""Certified extreme-point tests for unit balls of spectrally constrained H^∞ spaces."""

from __future__ import annotations

from importlib.metadata import PackageNotFoundError, version


try:
    __version__ = version("extreme-ball")
except PackageNotFoundError:  # pragma: no cover - during local development
    __version__ = "0.1.0"

SCHEMA_VERSION = 1

__all__ = ["__version__", "SCHEMA_VERSION"]
