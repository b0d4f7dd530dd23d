"""Seeded integer weight assignment: uniform and log-normal over [w_lo, w_hi].

The log-normal case maps ``[ln w_lo, ln w_hi]`` onto ``mu +/- 3 sigma`` of
the underlying normal, rounds each draw to the nearest integer (ties to
even) and clamps it into the range.  Draws come from numpy's PCG64 seeded
with ``WeightSpec.seed``, one draw per arc in arc order, so a (topology,
spec) pair always yields the same weights.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .graph import WeightedDigraph

__all__ = ["GENERATOR", "WeightSpec", "assign_weights", "lognormal_params", "raw_samples"]

GENERATOR = "numpy.random.PCG64"
DISTRIBUTIONS = ("uniform", "lognormal")


@dataclass(frozen=True)
class WeightSpec:
    distribution: str
    w_lo: int = 1
    w_hi: int = 3000
    seed: int = 0

    def __post_init__(self) -> None:
        if self.distribution not in DISTRIBUTIONS:
            raise ValueError(f"distribution must be one of {DISTRIBUTIONS}, got {self.distribution!r}")
        if not (1 <= self.w_lo < self.w_hi):
            raise ValueError(f"need 1 <= w_lo < w_hi, got [{self.w_lo}, {self.w_hi}]")
        if not (0 <= self.seed < 2**64):
            raise ValueError("seed must be a 64-bit unsigned integer")


def lognormal_params(w_lo: int, w_hi: int) -> tuple[float, float]:
    """(mu, sigma) of the underlying normal so that [w_lo, w_hi] is mu +/- 3 sigma."""
    a, b = math.log(w_lo), math.log(w_hi)
    return (a + b) / 2, (b - a) / 6


def raw_samples(spec: WeightSpec, size: int) -> np.ndarray:
    """Unrounded, unclamped draws (floats) for ``spec``."""
    rng = np.random.Generator(np.random.PCG64(spec.seed))
    if spec.distribution == "uniform":
        return rng.integers(spec.w_lo, spec.w_hi, size=size, endpoint=True).astype(float)
    mu, sigma = lognormal_params(spec.w_lo, spec.w_hi)
    return np.exp(rng.normal(mu, sigma, size=size))


def assign_weights(topology: WeightedDigraph, spec: WeightSpec) -> WeightedDigraph:
    raw = raw_samples(spec, topology.arc_count)
    ints = np.clip(np.rint(raw), spec.w_lo, spec.w_hi).astype(np.int64)
    return topology.with_weights([int(w) for w in ints])
