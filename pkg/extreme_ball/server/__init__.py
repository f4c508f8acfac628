"""Service façade and FastAPI app for extremality runs."""

from .service import ExtremalityService

__all__ = ["ExtremalityService"]
