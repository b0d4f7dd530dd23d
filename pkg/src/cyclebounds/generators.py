"""Seeded random instances: small strongly connected multigraphs and
circuit-like cyclic topologies."""
from __future__ import annotations

import numpy as np

from .enumeration import enumerate_simple_cycles
from .graph import WeightedDigraph, decompose_sccs

__all__ = ["random_cyclic_topology", "random_strongly_connected"]


def random_strongly_connected(
    rng: np.random.Generator,
    n: int,
    extra_arcs: int,
    w_lo: int = -50,
    w_hi: int = 50,
) -> WeightedDigraph:
    """A Hamiltonian cycle on a random node order plus ``extra_arcs`` random
    arcs (self-loops and parallel arcs included), shuffled."""
    perm = rng.permutation(n)
    pairs = [(int(perm[i]), int(perm[(i + 1) % n])) for i in range(n)]
    pairs += [(int(rng.integers(n)), int(rng.integers(n))) for _ in range(extra_arcs)]
    order = rng.permutation(len(pairs))
    weights = rng.integers(w_lo, w_hi, size=len(pairs), endpoint=True)
    return WeightedDigraph(n, ((*pairs[k], int(w)) for k, w in zip(order, weights)))


def random_cyclic_topology(
    rng: np.random.Generator,
    n: int = 100,
    m: int = 200,
    feedback: int = 16,
    span: int = 6,
    max_cycles: int = 100_000,
    max_tries: int = 1000,
) -> WeightedDigraph:
    """Unit-weight circuit-like digraph: a local forward DAG plus feedback arcs.

    Nodes are laid out in a hidden order; every node after the first gets a
    fan-in from one of the ``span`` preceding nodes, more forward arcs are
    added up to ``m - feedback``, and ``feedback`` arcs jump back at most
    ``4 * span`` positions.  Draws are repeated until the graph has at least
    one cycle and at most ``max_cycles`` simple cycles.
    """
    if m < n - 1 + feedback:
        raise ValueError("m too small for a connected forward skeleton plus feedback arcs")
    for _ in range(max_tries):
        pairs = []
        for j in range(1, n):
            pairs.append((int(rng.integers(max(0, j - span), j)), j))
        while len(pairs) < m - feedback:
            j = int(rng.integers(1, n))
            pairs.append((int(rng.integers(max(0, j - span), j)), j))
        for _ in range(feedback):
            j = int(rng.integers(1, n))
            pairs.append((j, int(rng.integers(max(0, j - 4 * span), j))))
        perm = rng.permutation(n)
        order = rng.permutation(len(pairs))
        g = WeightedDigraph(n, ((int(perm[pairs[k][0]]), int(perm[pairs[k][1]]), 1) for k in order))
        if not decompose_sccs(g).nontrivial:
            continue
        if enumerate_simple_cycles(g, cap=max_cycles).complete:
            return g
    raise RuntimeError(f"no topology with <= {max_cycles} cycles in {max_tries} draws")
