"""Batch scans over directories of problem files."""

from .runner import BatchResult, BatchRunner

__all__ = ["BatchResult", "BatchRunner"]
