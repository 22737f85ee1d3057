"""
Domain layer for cyclotower.

Exact field arithmetic, the tower, norms and Phi, the criterion, the
polynomial builder and the Frobenius fingerprint. Nothing here does I/O.
"""

from .cyclotomic import CycAut, CycNum
from .models import (
    CriterionVerdict,
    EPolyReport,
    Group,
    GroupFingerprint,
    PrimeClass,
    SubfieldTag,
    Tower,
    Variant,
)

__all__ = [
    "CycAut",
    "CycNum",
    "CriterionVerdict",
    "EPolyReport",
    "Group",
    "GroupFingerprint",
    "PrimeClass",
    "SubfieldTag",
    "Tower",
    "Variant",
]
