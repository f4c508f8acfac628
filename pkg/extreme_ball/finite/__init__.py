"""Finite spectra: contact analysis, the extremality matrix and the rank test."""

from .classifier import (
    RankInfo,
    build_witness,
    classify,
    classify_members,
    kernel_vector,
    numeric_rank,
    verify_witness,
)
from .contact import ContactPoint, ContactSet, contact_set
from .extremal_matrix import (
    ExtremalityMatrix,
    RestrictionData,
    assemble,
    gap_block,
    restriction_poly,
    wronski_block,
)
from .verdict import Verdict, VerdictKind

__all__ = [
    "ContactPoint",
    "ContactSet",
    "ExtremalityMatrix",
    "RankInfo",
    "RestrictionData",
    "Verdict",
    "VerdictKind",
    "assemble",
    "build_witness",
    "classify",
    "classify_members",
    "contact_set",
    "gap_block",
    "kernel_vector",
    "numeric_rank",
    "restriction_poly",
    "verify_witness",
    "wronski_block",
]
