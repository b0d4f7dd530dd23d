import json
import statistics
from fractions import Fraction

import numpy as np
import pytest

from cyclebounds import (
    AnalysisOptions,
    WeightedDigraph,
    analyze,
    bench,
    bound_errors,
    emit_report,
    estimate,
    heuristic_error,
    load_report,
)
from cyclebounds import harness
from cyclebounds.generators import random_strongly_connected
from cyclebounds.harness import bench_seed, heuristic_errors, largest_components
from cyclebounds.report import COLUMNS, aggregate_rows, table_rows

from conftest import FIXTURES

# n, m, w_min, w_max, w_avg, lambda_min, lambda_max, lambda_avg, lambda_geo, eps_avg, eps_geo
GOLDEN_ROWS = [
    (1, 1, 1208, 1208, 1208.00, 1208.00, 1208.00, 1208.00, 1208.00, 0.0, 0.0),
    (2, 2, 2366, 4472, 3419.00, 3419.00, 3419.00, 3419.00, 3419.00, 0.0, 0.0),
    (5, 7, 1439, 7879, 5096.14, 3436.00, 6510.00, 4973.00, 4729.52, 23.6, 27.3),
    (4, 8, 887, 8136, 4555.75, 887.00, 6647.33, 3767.17, 2428.21, 43.3, 63.5),
    (5, 6, 1155, 6769, 3646.50, 3227.33, 5111.33, 4169.33, 4061.52, 18.4, 20.5),
    (1, 1, 951, 951, 951.00, 951.00, 951.00, 951.00, 951.00, 0.0, 0.0),
]


@pytest.fixture(scope="module")
def example_records(example):
    return analyze(example, AnalysisOptions(ground_truth=True), name="example")


def test_example_records_match_golden_rows(example_records):
    assert [r.component for r in example_records] == [1, 2, 3, 4, 5, 6]
    for r, row in zip(example_records, GOLDEN_ROWS):
        n, m, wmin, wmax, wavg, lmin, lmax, lavg, lgeo, eavg, egeo = row
        assert (r.n, r.m, r.w_min, r.w_max) == (n, m, wmin, wmax)
        assert abs(float(r.lambda_min) - lmin) <= 0.005
        assert abs(float(r.lambda_max) - lmax) <= 0.005
        assert abs(float(r.estimates.lambda_avg) - lavg) <= 0.005
        assert abs(r.estimates.lambda_geo - lgeo) <= 0.005
        assert abs(r.eps_avg_lmax - eavg) <= 0.05 and abs(r.eps_geo_lmax - egeo) <= 0.05
        if r.component != 5:
            assert abs(float(r.w_avg) - wavg) <= 0.005


def test_example_scc5_average_weight_follows_its_cycles(example_records):
    # Its two disjoint 3-cycles weigh 15334 and 9682 and cover all six arcs,
    # so the arc average is fixed at 25016/6 whatever the split.
    assert example_records[4].w_avg == Fraction(15334 + 9682, 6)


def test_example_no_violations_and_complete(example_records):
    for r in example_records:
        assert r.enumeration == "complete" and r.violations == () and r.error is None


def test_acyclic_graph_has_no_records():
    assert analyze(WeightedDigraph(3, [(0, 1, 1), (1, 2, 1)])) == []


def test_certificates_are_lifted_to_original_ids(example_records):
    r = example_records[3]
    assert r.witness_max.nodes == (9, 11, 10) and r.witness_min.nodes == (11,)
    assert r.extremes.max_length.nodes == (9, 12, 11, 10)


def test_bound_errors_scc3(scc3):
    (r,) = analyze(scc3, AnalysisOptions(ground_truth=True))
    be = bound_errors(r)
    assert round(be.w_lw, 1) == 84.2
    assert be.w_lw == pytest.approx((21718 - 3436) / 21718 * 100)
    assert be.len_lw == pytest.approx(80.0)


def test_bound_errors_scc4_tight_length(scc4):
    (r,) = analyze(scc4, AnalysisOptions(ground_truth=True))
    assert bound_errors(r).len_lw == 0.0


def test_bound_errors_need_complete_enumeration(scc4):
    (r,) = analyze(scc4, AnalysisOptions(ground_truth=False))
    assert r.enumeration == "skipped" and r.bound_errors is None
    with pytest.raises(ValueError):
        bound_errors(r)
    with pytest.raises(ValueError):
        heuristic_errors(r)


def test_bound_errors_undefined_for_nonpositive_lambda_min():
    (r,) = analyze(WeightedDigraph(2, [(0, 1, -1), (1, 0, 3), (0, 0, -2)]), AnalysisOptions(ground_truth=True))
    assert bound_errors(r) == harness.BoundErrors(None, None, None, None)


def test_truncated_enumeration_has_no_metric_block():
    g = WeightedDigraph(4, [(u, v, 1 + u + v) for u in range(4) for v in range(4)])
    (r,) = analyze(g, AnalysisOptions(ground_truth=True, max_cycles=3))
    assert r.enumeration == "truncated" and r.extremes.status == "truncated"
    assert r.bound_errors is None and r.heuristic_errors is None and r.violations == ()


def test_metric_block_replays_from_raw_fields():
    rng = np.random.default_rng(10)
    for _ in range(25):
        g = random_strongly_connected(rng, 10, 12, 1, 3000)
        (r,) = analyze(g, AnalysisOptions(ground_truth=True))
        lmin, lmax = r.lambda_min, r.lambda_max
        lw, ll = r.extremes.max_weight, r.extremes.max_length
        cmin, cmax = r.bounds.critical_min, r.bounds.critical_max
        assert r.bounds.lambda_min == r.estimates.lambda_min == lmin
        assert r.bounds.lambda_max == r.estimates.lambda_max == lmax
        assert r.bound_errors.w_lw == float((lw.weight - cmax.max_length * lmin) / Fraction(lw.weight) * 100)
        assert r.bound_errors.len_lw == float(Fraction(lw.length - cmax.max_length, lw.length) * 100)
        assert r.bound_errors.w_ll == float(Fraction(ll.weight - cmin.max_weight, ll.weight) * 100)
        assert r.bound_errors.len_ll == float((ll.length - cmin.max_weight / lmax) / ll.length * 100)
        geo = (lmin * lmax) ** 0.5 if lmin != lmax else float(lmin)
        assert r.heuristic_errors.avg_ll == heuristic_error(ll.mean, (lmin + lmax) / 2)
        assert r.heuristic_errors.geo_lw == pytest.approx(abs(float(lw.mean) - geo) / float(lw.mean) * 100)
        assert r.bounds.rho == (lmax - lmin) / lmax
        assert r.estimates == estimate(lmin, lmax)


def test_component_failure_is_recorded(monkeypatch, scc4):
    def boom(g, max_iterations=None):
        raise RuntimeError("solver exploded")

    monkeypatch.setattr(harness, "min_cycle_mean", boom)
    (r,) = analyze(scc4)
    assert r.error == "RuntimeError: solver exploded"
    assert r.bounds is None
    assert b"solver exploded" in emit_report([r], "csv")


@pytest.mark.parametrize("fmt", ["csv", "markdown", "md"])
def test_empty_report_is_header_only(fmt):
    lines = emit_report([], fmt).decode().splitlines()
    assert len(lines) == (1 if fmt == "csv" else 2)
    assert "lambda_min" in lines[0]


def test_empty_json_report():
    assert load_report(emit_report([], "json")) == ([], {})


def test_unknown_format_rejected():
    with pytest.raises(ValueError):
        emit_report([], "xlsx")


def test_scc4_markdown_row(scc4):
    records = analyze(scc4, AnalysisOptions(ground_truth=True), name="scc4")
    lines = emit_report(records, "markdown").decode().splitlines()
    header = [c.strip() for c in lines[0].strip("|").split(" | ")]
    row = [c.strip() for c in lines[2].strip("|").split(" | ")]
    cells = dict(zip(header, row))
    assert cells["lambda_min"] == "887.00" and cells["lambda_max"] == "6647.33"
    assert cells["lambda_avg"] == "3767.17" and cells["lambda_geo"] == "2428.21"
    assert cells["eps_avg@lmax"] == "43.3%" and cells["eps_geo@lmax"] == "63.5%"
    assert cells["\\|C_max\\|"] == "3" and cells["cycles"] == "6"
    assert [line.split(" | ")[0] for line in lines[3:]] == ["| Average", "| Median", "| StDev"]


def test_json_round_trip(example_records):
    meta = {"seed": 3, "generator": "x"}
    data = emit_report(example_records, "json", meta)
    records, back_meta = load_report(data)
    assert records == example_records and back_meta == meta
    assert emit_report(records, "json", meta) == data
    assert "timings" not in json.loads(data)["records"][0]


def test_json_round_trip_with_fractional_weights(scc4):
    from cyclebounds import transform_weights

    g = transform_weights(scc4, "scale", Fraction(1, 3))
    recs = analyze(g, AnalysisOptions(ground_truth=True))
    assert isinstance(recs[0].w_min, Fraction)
    assert load_report(emit_report(recs, "json"))[0] == recs


def test_aggregates_match_independent_pass(example_records):
    rows = table_rows(example_records)
    avg, med, sd = rows[-3], rows[-2], rows[-1]
    names = [c.name for c in COLUMNS]
    for name in ("n", "lambda_min", "lambda_max", "rho"):
        i = names.index(name)
        vals = np.array([float(COLUMNS[i].get(r)) for r in example_records])
        digits = 3 if name == "rho" else 2
        assert avg[i] == f"{vals.mean():.{digits}f}"
        assert med[i] == f"{np.median(vals):.{digits}f}"
        assert sd[i] == f"{vals.std(ddof=0):.{digits}f}"
    raw = dict(zip(names, zip(*[v for _, v in aggregate_rows(example_records)])))
    assert raw["n"] == (3.0, 3.0, statistics.pstdev([1, 2, 5, 4, 5, 1]))


def test_reports_are_deterministic(example):
    opts = AnalysisOptions(ground_truth=True)
    for fmt in ("csv", "markdown", "json"):
        assert emit_report(analyze(example, opts), fmt) == emit_report(analyze(example, opts), fmt)


def test_bench_seeds_and_meta(tmp_path):
    for name in ("scc3.graph", "scc4.graph"):
        (tmp_path / name).write_bytes((FIXTURES / name).read_bytes())
    (tmp_path / "notes.txt").write_text("ignored")
    records, meta = bench(tmp_path, "lognormal", 7)
    assert [r.graph for r in records] == ["scc3", "scc4"]
    assert records[0].seed == bench_seed(7, "scc3.graph") != bench_seed(8, "scc3.graph")
    assert meta["generator"] == "numpy.random.PCG64" and meta["seed"] == 7 and meta["graphs"] == 2
    again, _ = bench(tmp_path, "lognormal", 7)
    assert emit_report(records, "csv", meta) == emit_report(again, "csv", meta)
    assert all(1 <= r.w_min and r.w_max <= 3000 for r in records)


def test_largest_components(example_records):
    (big,) = largest_components(example_records)
    assert big.component == 3  # first of the two 5-node components
