"""Golden problems for quick experimentation."""

from .golden import GOLDEN, run_demo

__all__ = ["GOLDEN", "run_demo"]
