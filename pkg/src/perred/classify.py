"""Liminf proportion of periodic points, case by case.

A number field K enters only through ``m_K``, the largest m such that K
contains a primitive m-th root of unity (``m_K = 2`` for Q).
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from .conjugacy import ConjugacyOutcome, RationalPoly, detect_chebyshev_conjugacy
from .numtheory import factorize, radical, valuation

ZERO, QUARTER, HALF, ONE = Fraction(0), Fraction(1, 4), Fraction(1, 2), Fraction(1)

CASE_VALUES = {
    1: ZERO,
    2: ONE,
    3: ZERO,
    5: ZERO,
    6: HALF,
    7: QUARTER,
    8: ZERO,
    9: HALF,
    10: QUARTER,
}


@dataclass(frozen=True)
class ClassificationOutcome:
    case_id: int
    value: Fraction
    d: int
    m_K: int
    via: Optional[int] = None
    detection: Optional[ConjugacyOutcome] = None

    def __post_init__(self):
        if CASE_VALUES.get(self.case_id) != self.value:
            raise ValueError(f"case {self.case_id} cannot have value {self.value}")

    def to_dict(self) -> dict:
        out = {"case_id": self.case_id, "value": str(self.value), "d": self.d, "m_K": self.m_K}
        if self.via is not None:
            out["via"] = self.via
        if self.detection is not None:
            out["detection"] = self.detection.to_dict()
        return out


def chebyshev_case(d: int, m_K: int) -> int:
    if d < 2:
        raise ValueError("d must be at least 2; use perinf_polynomial for d <= 1")
    if m_K < 1 or m_K % 2:
        raise ValueError(f"m_K must be a positive even integer, got {m_K}")
    if len(factorize(d)) == 1:
        return 10 if d % 2 == 0 else 9
    if radical(m_K) % radical(d):
        return 5
    if d % 2:
        return 6
    return 7 if valuation(m_K, 2) >= 2 else 8


def perinf_chebyshev(d: int, m_K: int) -> ClassificationOutcome:
    """Liminf of the periodic proportion of ``T_d`` over a field with this ``m_K``.

    >>> perinf_chebyshev(6, 12).value
    Fraction(1, 4)
    """
    case = chebyshev_case(d, m_K)
    return ClassificationOutcome(case, CASE_VALUES[case], d, m_K)


def perinf_polynomial(f: RationalPoly) -> ClassificationOutcome:
    """Classification for ``f`` with rational coefficients (so ``m_K = 2``)."""
    d = f.degree
    if d == 0:
        return ClassificationOutcome(1, ZERO, 0, 2)
    if d == 1:
        return ClassificationOutcome(2, ONE, 1, 2)
    det = detect_chebyshev_conjugacy(f)
    if not det.conjugate:
        return ClassificationOutcome(3, ZERO, d, 2, detection=det)
    inner = perinf_chebyshev(d, 2)
    return ClassificationOutcome(inner.case_id, inner.value, d, 2, via=4, detection=det)
