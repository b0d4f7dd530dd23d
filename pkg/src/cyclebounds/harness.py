"""End-to-end analysis: SCCs -> cycle means -> critical cycles -> bounds ->
estimates -> optional ground-truth enumeration -> error metrics."""
from __future__ import annotations

import logging
import time
import zlib
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path
from typing import Optional, Union

import numpy as np

from .bounds import BoundReport, CriticalStats, bound_violations, evaluate_bounds
from .cyclemean import critical_subgraph, max_cycle_mean, min_cycle_mean
from .enumeration import DEFAULT_CYCLE_CAP, extremal_cycles
from .estimators import EstimateReport, estimate, heuristic_error
from .graph import Component, Cycle, WeightedDigraph, decompose_sccs, parse_edge_list
from .weightgen import GENERATOR, WeightSpec, assign_weights

__all__ = [
    "AnalysisOptions",
    "BoundErrors",
    "ComponentRecord",
    "CycleSummary",
    "Extremes",
    "HeuristicErrors",
    "analyze",
    "bench",
    "bench_seed",
    "bound_errors",
    "heuristic_errors",
    "largest_components",
]

log = logging.getLogger(__name__)

Number = Union[int, Fraction]


@dataclass
class AnalysisOptions:
    ground_truth: bool = False
    max_cycles: int = DEFAULT_CYCLE_CAP
    timeout: Optional[float] = None  # seconds per component enumeration
    critical_cap: int = DEFAULT_CYCLE_CAP


@dataclass(frozen=True)
class CycleSummary:
    """A cycle in report form: 1-based node ids and 1-based arc ordinals."""

    nodes: tuple[int, ...]
    arcs: tuple[int, ...]
    weight: Number
    length: int

    @classmethod
    def of(cls, c: Cycle) -> CycleSummary:
        return cls(tuple(v + 1 for v in c.nodes), tuple(a + 1 for a in c.arcs), c.weight, c.length)

    @property
    def mean(self) -> Fraction:
        return Fraction(self.weight) / self.length


@dataclass(frozen=True)
class Extremes:
    max_weight: CycleSummary
    max_length: CycleSummary
    min_weight: CycleSummary
    min_length: CycleSummary
    cycle_count: int
    status: str


@dataclass(frozen=True)
class BoundErrors:
    """Looseness ``(true - bound) / true`` of the lower bounds, in percent."""

    w_lw: Optional[float]
    len_lw: Optional[float]
    w_ll: Optional[float]
    len_ll: Optional[float]


@dataclass(frozen=True)
class HeuristicErrors:
    """``|lambda(L) - estimate| / |lambda(L)|`` in percent."""

    avg_lw: Optional[float]
    geo_lw: Optional[float]
    avg_ll: Optional[float]
    geo_ll: Optional[float]


@dataclass
class ComponentRecord:
    graph: str
    component: int
    n: int
    m: int
    seed: Optional[int] = None
    w_min: Optional[Number] = None
    w_max: Optional[Number] = None
    w_avg: Optional[Fraction] = None
    lambda_min: Optional[Fraction] = None
    lambda_max: Optional[Fraction] = None
    witness_min: Optional[CycleSummary] = None
    witness_max: Optional[CycleSummary] = None
    potentials_min: Optional[tuple[Fraction, ...]] = None
    potentials_max: Optional[tuple[Fraction, ...]] = None
    bounds: Optional[BoundReport] = None
    estimates: Optional[EstimateReport] = None
    # Errors against lambda_max instead of a true cycle mean; needs no enumeration.
    eps_avg_lmax: Optional[float] = None
    eps_geo_lmax: Optional[float] = None
    enumeration: str = "skipped"
    extremes: Optional[Extremes] = None
    bound_errors: Optional[BoundErrors] = None
    heuristic_errors: Optional[HeuristicErrors] = None
    violations: tuple[str, ...] = ()
    error: Optional[str] = None
    timings: dict = field(default_factory=dict, compare=False)

    @property
    def has_metrics(self) -> bool:
        return self.enumeration == "complete"


def _pct(x: Fraction) -> float:
    return float(x * 100)


def bound_errors(record: ComponentRecord) -> BoundErrors:
    """Relative error of the max-weight/max-length lower bounds.

    Defined for complete enumerations with ``lambda_min > 0``; each entry is
    ``None`` when its true value is zero.
    """
    if record.extremes is None or record.enumeration != "complete":
        raise ValueError("bound errors need a complete enumeration")
    b, ext = record.bounds, record.extremes
    if b.lambda_min <= 0:
        return BoundErrors(None, None, None, None)
    cmin, cmax = b.critical_min, b.critical_max
    lw, ll = ext.max_weight, ext.max_length

    def rel(true: Number, bound: Number) -> Optional[float]:
        return None if true == 0 else _pct((Fraction(true) - Fraction(bound)) / Fraction(true))

    return BoundErrors(
        w_lw=rel(lw.weight, cmax.max_length * b.lambda_min),
        len_lw=rel(lw.length, cmax.max_length),
        w_ll=rel(ll.weight, cmin.max_weight),
        len_ll=rel(ll.length, Fraction(cmin.max_weight) / b.lambda_max),
    )


def heuristic_errors(record: ComponentRecord) -> HeuristicErrors:
    if record.extremes is None or record.enumeration != "complete":
        raise ValueError("heuristic errors need a complete enumeration")
    est, ext = record.estimates, record.extremes
    lw, ll = ext.max_weight.mean, ext.max_length.mean
    return HeuristicErrors(
        avg_lw=heuristic_error(lw, est.lambda_avg),
        geo_lw=heuristic_error(lw, est.lambda_geo),
        avg_ll=heuristic_error(ll, est.lambda_avg),
        geo_ll=heuristic_error(ll, est.lambda_geo),
    )


def _analyze_component(
    comp: Component, options: AnalysisOptions, name: str, seed: Optional[int]
) -> ComponentRecord:
    g = comp.graph
    rec = ComponentRecord(name, comp.index + 1, g.node_count, g.arc_count, seed=seed)
    clock = time.perf_counter
    try:
        t0 = clock()
        rec.w_min, rec.w_max, rec.w_avg = g.w_min, g.w_max, g.w_avg
        cert_min, cert_max = min_cycle_mean(g), max_cycle_mean(g)
        rec.lambda_min, rec.lambda_max = cert_min.value, cert_max.value
        rec.witness_min = CycleSummary.of(comp.lift(cert_min.witness))
        rec.witness_max = CycleSummary.of(comp.lift(cert_max.witness))
        rec.potentials_min, rec.potentials_max = cert_min.potentials, cert_max.potentials
        t1 = clock()
        crit_min = critical_subgraph(g, cert_min, options.critical_cap)
        crit_max = critical_subgraph(g, cert_max, options.critical_cap)
        t2 = clock()
        rec.bounds = evaluate_bounds(
            rec.lambda_min,
            rec.lambda_max,
            rec.w_max,
            CriticalStats.of(crit_min.cycles, crit_min.truncated),
            CriticalStats.of(crit_max.cycles, crit_max.truncated),
        )
        rec.estimates = est = estimate(rec.lambda_min, rec.lambda_max)
        rec.eps_avg_lmax = heuristic_error(rec.lambda_max, est.lambda_avg, "lambda_max", rec.lambda_max)
        rec.eps_geo_lmax = heuristic_error(rec.lambda_max, est.lambda_geo, "lambda_max", rec.lambda_max)
        rec.timings.update(cycle_means=t1 - t0, critical=t2 - t1, bounds=clock() - t2)
        if options.ground_truth:
            t3 = clock()
            ext = extremal_cycles(g, options.max_cycles, options.timeout)
            rec.timings["enumeration"] = clock() - t3
            rec.enumeration = ext.status
            rec.extremes = Extremes(
                *(CycleSummary.of(comp.lift(c)) for c in
                  (ext.max_weight, ext.max_length, ext.min_weight, ext.min_length)),
                cycle_count=ext.total_cycle_count,
                status=ext.status,
            )
            if ext.complete:
                rec.bound_errors = bound_errors(rec)
                rec.heuristic_errors = heuristic_errors(rec)
                rec.violations = tuple(bound_violations(rec.bounds, ext))
                for v in rec.violations:
                    log.warning("%s scc%d: bound violation: %s", name, rec.component, v)
    except Exception as exc:  # recorded in-band; one bad component must not sink the run
        log.exception("%s scc%d failed", name, rec.component)
        rec.error = f"{type(exc).__name__}: {exc}"
    return rec


def analyze(
    g: WeightedDigraph,
    options: Optional[AnalysisOptions] = None,
    name: str = "",
    seed: Optional[int] = None,
) -> list[ComponentRecord]:
    """One record per non-trivial SCC, ordered by component id.

    Trivial SCCs (one node, no self-loop) have no cycle and are skipped.
    """
    options = options or AnalysisOptions()
    decomposition = decompose_sccs(g)
    return [_analyze_component(c, options, name, seed) for c in decomposition.nontrivial]


def bench_seed(seed: int, name: str) -> int:
    """64-bit weight seed for one topology file, stable under adding files."""
    ss = np.random.SeedSequence([seed, zlib.crc32(name.encode("utf-8"))])
    return int(ss.generate_state(1, np.uint64)[0])


def bench(
    directory: Union[str, Path],
    distribution: str,
    seed: int,
    options: Optional[AnalysisOptions] = None,
    w_lo: int = 1,
    w_hi: int = 3000,
) -> tuple[list[ComponentRecord], dict]:
    """Weight every topology in ``directory`` and analyze it with ground truth.

    Files are processed in name order; weights of each file depend only on
    ``seed`` and the file name.
    """
    options = options or AnalysisOptions(ground_truth=True)
    paths = sorted(p for p in Path(directory).iterdir() if p.is_file() and p.suffix == ".graph")
    records: list[ComponentRecord] = []
    for path in paths:
        topology = parse_edge_list(path.read_bytes())
        file_seed = bench_seed(seed, path.name)
        g = assign_weights(topology, WeightSpec(distribution, w_lo, w_hi, file_seed))
        records.extend(analyze(g, options, name=path.stem, seed=file_seed))
    meta = {
        "distribution": distribution,
        "w_lo": w_lo,
        "w_hi": w_hi,
        "seed": seed,
        "generator": GENERATOR,
        "rounding": "nearest (ties to even), then clamp to [w_lo, w_hi]",
        "max_cycles": options.max_cycles,
        "graphs": len(paths),
    }
    return records, meta


def largest_components(records: list[ComponentRecord]) -> list[ComponentRecord]:
    """The largest SCC (most nodes, then lowest id) of each (graph, seed) run,
    in first-appearance order: one row per weighted graph."""
    best: dict[tuple, ComponentRecord] = {}
    for r in records:
        key = (r.graph, r.seed)
        cur = best.get(key)
        if cur is None or (r.n, -r.component) > (cur.n, -cur.component):
            best[key] = r
    return list(best.values())
