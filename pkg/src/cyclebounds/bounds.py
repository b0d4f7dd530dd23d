"""Strict bounds on extremal simple cycles derived from optimum cycle means.

Every function here is pure arithmetic on ``lambda_min``, ``lambda_max`` and
summary statistics of the collected critical cycles; nothing is enumerated.
Length bounds are integers: lower bounds are rounded up and upper bounds
down.  Bounds computed from a truncated critical set stay valid, only
possibly looser.  ``Interval.lo_tight``/``hi_tight`` mark ends that are met
with equality by construction (the zero-mean cases).
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Optional, Union

from .graph import Cycle, Weight

__all__ = [
    "BoundReport",
    "CriticalStats",
    "Interval",
    "PathBounds",
    "bound_violations",
    "evaluate_bounds",
    "gap_ratio",
    "max_length_bounds",
    "max_weight_bounds",
    "min_length_bounds",
    "min_weight_bounds",
    "path_bounds",
    "sign_condition",
]

Number = Union[int, Fraction]

SIGN_CLASSES = ("positive", "negative", "zero", "nonneg", "indeterminate")


@dataclass(frozen=True)
class Interval:
    """Closed interval with optional infinite ends (``None``)."""

    lo: Optional[Number] = None
    hi: Optional[Number] = None
    lo_tight: bool = False
    hi_tight: bool = False

    def __post_init__(self) -> None:
        if self.lo is not None and self.hi is not None and self.lo > self.hi:
            raise ValueError(f"empty interval [{self.lo}, {self.hi}]")

    @classmethod
    def point(cls, value: Number, tight: bool = True) -> Interval:
        return cls(value, value, tight, tight)

    def contains(self, value: Number) -> bool:
        return (self.lo is None or self.lo <= value) and (self.hi is None or value <= self.hi)

    @property
    def unbounded(self) -> bool:
        return self.lo is None and self.hi is None


@dataclass(frozen=True)
class CriticalStats:
    """What the bounds need from a set of critical cycles."""

    count: int
    min_length: int
    max_length: int
    min_weight: Number
    max_weight: Number
    truncated: bool = False

    @classmethod
    def of(cls, cycles: Iterable[Cycle], truncated: bool = False) -> CriticalStats:
        cycles = list(cycles)
        if not cycles:
            raise ValueError("critical cycle set is empty")
        lengths = [c.length for c in cycles]
        weights = [c.weight for c in cycles]
        return cls(len(cycles), min(lengths), max(lengths), min(weights), max(weights), truncated)


def _stats(critical: Union[CriticalStats, Iterable[Cycle]]) -> CriticalStats:
    return critical if isinstance(critical, CriticalStats) else CriticalStats.of(critical)


def _tightest_multiple(lam: Number, cs: CriticalStats, upper: bool) -> Number:
    """Tightest of ``|C| * lam`` over the critical set.

    Each bound holds for every critical cycle separately, so a lower bound
    takes the largest multiple and an upper bound the smallest; which length
    achieves it depends on the sign of ``lam``.
    """
    pick_long = (lam >= 0) != upper
    return (cs.max_length if pick_long else cs.min_length) * lam


def _check_order(lambda_min: Number, lambda_max: Number) -> None:
    if lambda_min > lambda_max:
        raise ValueError(f"lambda_min {lambda_min} exceeds lambda_max {lambda_max}")


def sign_condition(lambda_min: Number, lambda_max: Number) -> str:
    """Sign of the weight of a longest cycle implied by the mean interval.

    ``zero`` (lambda_max = 0) is claimed for both longest cycles but only
    follows for the max-weight one; a max-length cycle can be negative.
    """
    _check_order(lambda_min, lambda_max)
    if lambda_min > 0:
        return "positive"
    if lambda_max < 0:
        return "negative"
    if lambda_max == 0:
        return "zero"
    if lambda_min == 0:
        return "nonneg"
    return "indeterminate"


def max_weight_bounds(
    lambda_min: Number, lambda_max: Number, critical_max: Union[CriticalStats, Iterable[Cycle]]
) -> tuple[Interval, Interval]:
    """(|L_w| interval, w(L_w) interval) from the max-critical cycles."""
    _check_order(lambda_min, lambda_max)
    cs = _stats(critical_max)
    if lambda_max > 0:
        return Interval(lo=cs.max_length), Interval(lo=_tightest_multiple(lambda_min, cs, upper=False))
    if lambda_max < 0:
        return Interval(hi=cs.min_length), Interval(hi=_tightest_multiple(lambda_max, cs, upper=True))
    return Interval(), Interval.point(0)


def max_length_bounds(
    lambda_min: Number, lambda_max: Number, critical_min: Union[CriticalStats, Iterable[Cycle]]
) -> tuple[Interval, Interval]:
    """(w(L_l) interval, |L_l| interval) from the min-critical cycles.

    With ``lambda_min < 0`` only the parametric form
    ``|L| lambda_min <= w(L) <= |L| lambda_max`` applies, so both intervals
    are unbounded.
    """
    _check_order(lambda_min, lambda_max)
    cs = _stats(critical_min)
    if lambda_min > 0:
        return Interval(lo=cs.max_weight), Interval(lo=math.ceil(Fraction(cs.max_weight) / lambda_max))
    if lambda_min == 0:
        return Interval(lo=0), Interval()
    return Interval(), Interval()


def min_weight_bounds(
    lambda_min: Number, lambda_max: Number, critical_min: Union[CriticalStats, Iterable[Cycle]]
) -> tuple[Interval, Interval]:
    """(|S_w| interval, w(S_w) interval) from the min-critical cycles."""
    _check_order(lambda_min, lambda_max)
    cs = _stats(critical_min)
    if lambda_min > 0:
        return Interval(hi=cs.min_length), Interval(hi=_tightest_multiple(lambda_max, cs, upper=True))
    if lambda_min < 0:
        return Interval(lo=cs.max_length), Interval(hi=_tightest_multiple(lambda_max, cs, upper=True))
    return Interval(), Interval.point(0)


def min_length_bounds(
    lambda_min: Number, lambda_max: Number, critical_max: Union[CriticalStats, Iterable[Cycle]]
) -> tuple[Interval, Interval]:
    """(w(S_l) interval, |S_l| interval) from the max-critical cycles.

    Length bounds are skipped when ``lambda_min = 0`` (division by zero).
    """
    _check_order(lambda_min, lambda_max)
    cs = _stats(critical_max)
    w_hi = cs.min_weight
    if lambda_min > 0:
        return Interval(hi=w_hi), Interval(hi=math.floor(Fraction(w_hi) / lambda_min))
    if lambda_min < 0:
        # max over C of w(C)/lambda_min is reached at the smallest w(C)
        return Interval(hi=w_hi), Interval(lo=math.ceil(Fraction(w_hi) / lambda_min))
    return Interval(lo=0, hi=w_hi), Interval()


@dataclass(frozen=True)
class PathBounds:
    """Lower bounds on the longest simple path (arc count and weight)."""

    length_lo: int
    weight_lo: Optional[Number]
    vacuous: bool


def path_bounds(
    lambda_min: Number,
    lambda_max: Number,
    w_max: Number,
    critical_max: Union[CriticalStats, Iterable[Cycle]],
    *,
    max_cycle_length: Optional[int] = None,
    max_cycle_weight: Optional[Number] = None,
) -> PathBounds:
    """Path bounds from a longest cycle with one arc removed.

    Pass the true ``|L_l|`` / ``w(L_w)`` when known; otherwise the bounds
    fall back to the max-critical cycles (the weight form needs
    ``lambda_max > 0``).  A negative weight bound is reported as vacuous.
    """
    cs = _stats(critical_max)
    length_lo = (max_cycle_length if max_cycle_length is not None else cs.max_length) - 1
    if max_cycle_weight is not None:
        weight_lo: Optional[Number] = max_cycle_weight - w_max
    elif lambda_max > 0:
        weight_lo = _tightest_multiple(lambda_min, cs, upper=False) - w_max
    else:
        weight_lo = None
    return PathBounds(length_lo, weight_lo, weight_lo is not None and weight_lo < 0)


def gap_ratio(lambda_min: Number, lambda_max: Number) -> Optional[Fraction]:
    """``(lambda_max - lambda_min) / |lambda_max|``; ``None`` when lambda_max = 0."""
    if lambda_max == 0:
        return None
    return Fraction(lambda_max - lambda_min) / abs(lambda_max)


@dataclass(frozen=True)
class BoundReport:
    lambda_min: Fraction
    lambda_max: Fraction
    w_max: Number
    critical_min: CriticalStats
    critical_max: CriticalStats
    sign: str
    lw_length: Interval
    lw_weight: Interval
    ll_weight: Interval
    ll_length: Interval
    sw_length: Interval
    sw_weight: Interval
    sl_weight: Interval
    sl_length: Interval
    path: PathBounds
    rho: Optional[Fraction]
    notes: tuple[str, ...] = field(default=())

    @property
    def mean_interval(self) -> Interval:
        """Bounds on the mean of any cycle."""
        return Interval(self.lambda_min, self.lambda_max)

    def weight_interval_for_length(self, length: int) -> Interval:
        """Weight bounds for a cycle of a hypothesized length."""
        return Interval(length * self.lambda_min, length * self.lambda_max)


def evaluate_bounds(
    lambda_min: Number,
    lambda_max: Number,
    w_max: Number,
    critical_min: Union[CriticalStats, Iterable[Cycle]],
    critical_max: Union[CriticalStats, Iterable[Cycle]],
) -> BoundReport:
    lambda_min, lambda_max = Fraction(lambda_min), Fraction(lambda_max)
    cmin, cmax = _stats(critical_min), _stats(critical_max)
    lw_length, lw_weight = max_weight_bounds(lambda_min, lambda_max, cmax)
    ll_weight, ll_length = max_length_bounds(lambda_min, lambda_max, cmin)
    sw_length, sw_weight = min_weight_bounds(lambda_min, lambda_max, cmin)
    sl_weight, sl_length = min_length_bounds(lambda_min, lambda_max, cmax)
    notes = []
    if cmin.truncated or cmax.truncated:
        notes.append("critical set truncated: bounds valid but possibly not tight")
    if lambda_max < 0:
        notes.append("lambda_max < 0: the max-weight upper bound and the min-length bounds can fail in this regime")
    return BoundReport(
        lambda_min=lambda_min,
        lambda_max=lambda_max,
        w_max=w_max,
        critical_min=cmin,
        critical_max=cmax,
        sign=sign_condition(lambda_min, lambda_max),
        lw_length=lw_length,
        lw_weight=lw_weight,
        ll_weight=ll_weight,
        ll_length=ll_length,
        sw_length=sw_length,
        sw_weight=sw_weight,
        sl_weight=sl_weight,
        sl_length=sl_length,
        path=path_bounds(lambda_min, lambda_max, w_max, cmax),
        rho=gap_ratio(lambda_min, lambda_max),
        notes=tuple(notes),
    )


def bound_violations(report: BoundReport, extremes) -> list[str]:
    """Every bound of ``report`` that the true extremal cycles break.

    ``extremes`` is an :class:`~cyclebounds.enumeration.ExtremalCycles`
    from a complete enumeration.  Returns human-readable findings; an
    empty list means every bound brackets its true value.
    """
    found = []
    targets = [
        ("|L_w|", extremes.max_weight.length, report.lw_length, "max-weight bounds"),
        ("w(L_w)", extremes.max_weight.weight, report.lw_weight, "max-weight bounds"),
        ("w(L_l)", extremes.max_length.weight, report.ll_weight, "max-length bounds"),
        ("|L_l|", extremes.max_length.length, report.ll_length, "max-length length bound"),
        ("|S_w|", extremes.min_weight.length, report.sw_length, "min-weight bounds"),
        ("w(S_w)", extremes.min_weight.weight, report.sw_weight, "min-weight bounds"),
        ("w(S_l)", extremes.min_length.weight, report.sl_weight, "min-length bounds"),
        ("|S_l|", extremes.min_length.length, report.sl_length, "min-length bounds"),
    ]
    for name, value, interval, source in targets:
        if not interval.contains(value):
            found.append(
                f"{name}={value} outside [{_fmt(interval.lo, '-inf')}, {_fmt(interval.hi, '+inf')}] "
                f"({source}, lambda_min={report.lambda_min}, lambda_max={report.lambda_max})"
            )
    for label, c in (("L_w", extremes.max_weight), ("L_l", extremes.max_length),
                     ("S_w", extremes.min_weight), ("S_l", extremes.min_length)):
        if not report.mean_interval.contains(c.mean):
            found.append(f"mean of {label}={c.mean} outside [{report.lambda_min}, {report.lambda_max}]")
    for label, c in (("L_w", extremes.max_weight), ("L_l", extremes.max_length)):
        if not _sign_holds(report.sign, c.weight):
            found.append(f"sign condition '{report.sign}' fails for w({label})={c.weight}")
    return found


def _sign_holds(sign: str, weight: Weight) -> bool:
    return {
        "positive": weight > 0,
        "negative": weight < 0,
        "zero": weight == 0,
        "nonneg": weight >= 0,
        "indeterminate": True,
    }[sign]


def _fmt(x: Optional[Number], infinity: str) -> str:
    return infinity if x is None else str(x)
