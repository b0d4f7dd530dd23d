"""Heuristic estimates of a longest cycle's mean from the optimum cycle means.

``lambda_avg`` is exact; ``lambda_geo`` uses a double-precision square root,
so it is accurate to about 1e-15 relative and reported to two decimals.
Undefined quantities are ``None``, never NaN.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Union

__all__ = ["EstimateReport", "estimate", "heuristic_error"]

Number = Union[int, Fraction]


@dataclass(frozen=True)
class EstimateReport:
    lambda_min: Fraction
    lambda_max: Fraction
    lambda_avg: Fraction
    lambda_geo: Optional[float]
    delta: Optional[Fraction]
    abs_error_bound_avg: Fraction
    rel_error_bound_avg: Optional[Fraction]
    abs_error_bound_geo: Optional[Fraction]
    rel_error_bound_geo: Optional[float]


def estimate(lambda_min: Number, lambda_max: Number) -> EstimateReport:
    """Arithmetic/geometric estimators, the dispersion, and their error bounds.

    The geometric mean and its bounds need ``lambda_min > 0``; the dispersion
    ``(lambda_max - lambda_min) / |lambda_max + lambda_min|`` needs a nonzero
    denominator.
    """
    lo, hi = Fraction(lambda_min), Fraction(lambda_max)
    if lo > hi:
        raise ValueError(f"lambda_min {lo} exceeds lambda_max {hi}")
    width = hi - lo
    avg = (lo + hi) / 2
    delta = width / abs(hi + lo) if hi + lo != 0 else None
    if lo > 0:
        geo: Optional[float] = _sqrt_product(lo, hi)
        abs_geo: Optional[Fraction] = width
        rel_geo: Optional[float] = float(width) / geo
    else:
        geo = abs_geo = rel_geo = None
    return EstimateReport(lo, hi, avg, geo, delta, width / 2, delta, abs_geo, rel_geo)


def _sqrt_product(a: Fraction, b: Fraction) -> float:
    if a == b:
        return float(a)
    return math.sqrt(a * b)


def heuristic_error(
    lambda_true: Number,
    estimate_value: Union[Number, float],
    denominator: str = "true_mean",
    lambda_max: Optional[Number] = None,
) -> Optional[float]:
    """Relative error ``|lambda_true - estimate| / |denominator|`` in percent.

    ``denominator`` is ``"true_mean"`` (divide by ``lambda_true``) or
    ``"lambda_max"`` (divide by ``lambda_max``).  ``None`` when the
    denominator is zero or the estimate is undefined.
    """
    if estimate_value is None:
        return None
    if denominator == "true_mean":
        denom = lambda_true
    elif denominator == "lambda_max":
        if lambda_max is None:
            raise ValueError("lambda_max convention needs lambda_max")
        denom = lambda_max
    else:
        raise ValueError(f"unknown denominator convention {denominator!r}")
    if denom == 0:
        return None
    if isinstance(estimate_value, float):
        return abs(float(lambda_true) - estimate_value) / abs(float(denom)) * 100.0
    return float(abs(Fraction(lambda_true) - Fraction(estimate_value)) / abs(Fraction(denom)) * 100)
