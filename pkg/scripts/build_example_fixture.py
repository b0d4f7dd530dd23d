#!/usr/bin/env python3
"""Rebuild tests/fixtures/{example,scc3,scc4}.graph.

Only cycle-level data of the 18-node example graph is known: per-SCC
n, m, w_min, w_max and the weight of every simple cycle.  Individual arc
weights are unknowns constrained by one linear equation per cycle:

  scc1  w(1,1) = 1208
  scc2  w(2,3) + w(3,2) = 6838
  scc3  w(4,4) = 6510
        w(4,6) + w(6,7) + w(7,8) + w(8,5) + w(5,4) = 21718
        w(4,7) + w(7,8) + w(8,5) + w(5,4) = 13744
  scc4  w(9,11) + w(11,10) + w(10,9) = 19942
        w(9,9) = 6640
        w(9,11) + w(11,9) = 10036
        w(9,12) + w(12,11) + w(11,10) + w(10,9) = 18883
        w(9,12) + w(12,11) + w(11,9) = 8977
        w(11,11) = 887
  scc5  w(13,15) + w(15,14) + w(14,13) = 15334
        w(15,16) + w(16,17) + w(17,15) = 9682
  scc6  w(18,18) = 951

The system is consistent and underdetermined.  Free parameters were fixed
so that each SCC's w_min and w_max appear on some arc, and scc2's two arcs
hit its w_min and w_max exactly:

  scc3  w(4,6)=7879 (w_max), w(7,8)=1439 (w_min), w(8,5)=2500, w(5,4)=2360
  scc4  w(9,11)=8136 (w_max), w(11,10)=5903, w(9,12)=3500
  scc5  w(13,15)=6769 (w_max), w(15,14)=4565, w(15,16)=1155 (w_min),
        w(16,17)=4263

Any solution reproduces every cycle-level quantity.  The seven arcs
between SCCs carry weight 1000 and lie on no cycle.

scc3.graph and scc4.graph are the single components relabelled to 1..n in
increasing original id order.
"""
from __future__ import annotations

import sys
from pathlib import Path

from cyclebounds import WeightedDigraph, collect_cycles, serialize_edge_list

FIXTURES = Path(__file__).resolve().parent.parent / "tests" / "fixtures"

SCC_ARCS = {
    "scc1": [(1, 1, 1208)],
    "scc2": [(2, 3, 2366), (3, 2, 4472)],
    "scc3": [(4, 4, 6510), (4, 6, 7879), (6, 7, 7540), (7, 8, 1439), (8, 5, 2500), (5, 4, 2360), (4, 7, 7445)],
    "scc4": [(9, 11, 8136), (11, 10, 5903), (10, 9, 5903), (9, 9, 6640), (11, 9, 1900), (9, 12, 3500),
             (12, 11, 3577), (11, 11, 887)],
    "scc5": [(13, 15, 6769), (15, 14, 4565), (14, 13, 4000), (15, 16, 1155), (16, 17, 4263), (17, 15, 4264)],
    "scc6": [(18, 18, 951)],
}
BRIDGES = [(1, 2, 1000), (2, 5, 1000), (3, 4, 1000), (8, 9, 1000), (5, 13, 1000), (12, 13, 1000), (17, 18, 1000)]

# (node sequence, weight) for every known cycle, 1-based ids
CYCLES = {
    "scc1": [((1,), 1208)],
    "scc2": [((2, 3), 6838)],
    "scc3": [((4,), 6510), ((4, 6, 7, 8, 5), 21718), ((4, 7, 8, 5), 13744)],
    "scc4": [((9, 11, 10), 19942), ((9,), 6640), ((9, 11), 10036), ((9, 12, 11, 10), 18883),
             ((9, 12, 11), 8977), ((11,), 887)],
    "scc5": [((13, 15, 14), 15334), ((15, 16, 17), 9682)],
    "scc6": [((18,), 951)],
}


def full_graph() -> WeightedDigraph:
    arcs = [a for group in SCC_ARCS.values() for a in group] + BRIDGES
    return WeightedDigraph(18, [(t - 1, h - 1, w) for t, h, w in arcs])


def component_graph(name: str) -> WeightedDigraph:
    arcs = SCC_ARCS[name]
    nodes = sorted({v for t, h, _ in arcs for v in (t, h)})
    index = {v: i for i, v in enumerate(nodes)}
    return WeightedDigraph(len(nodes), [(index[t], index[h], w) for t, h, w in arcs])


def check() -> None:
    g = full_graph()
    assert g.node_count == 18 and g.arc_count == 32
    cycles, status = collect_cycles(g)
    assert status.complete
    found = {(tuple(v + 1 for v in c.nodes), c.weight) for c in cycles}
    expected = {c for group in CYCLES.values() for c in group}
    if found != expected:
        raise SystemExit(f"cycle mismatch:\n  extra {found - expected}\n  missing {expected - found}")
    for name, arcs in SCC_ARCS.items():
        ws = [w for *_, w in arcs]
        print(f"{name}: m={len(ws)} w_min={min(ws)} w_max={max(ws)} sum={sum(ws)}")


def main() -> int:
    check()
    FIXTURES.mkdir(parents=True, exist_ok=True)
    header = "# reconstructed example graph; see scripts/build_example_fixture.py\n"
    (FIXTURES / "example.graph").write_text(header + serialize_edge_list(full_graph()))
    for name in ("scc3", "scc4"):
        (FIXTURES / f"{name}.graph").write_text(header + serialize_edge_list(component_graph(name)))
    print(f"wrote fixtures to {FIXTURES}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
