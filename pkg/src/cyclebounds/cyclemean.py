"""Minimum and maximum cycle means with optimality certificates.

:func:`min_cycle_mean` runs Howard's policy iteration in exact rational
arithmetic and returns the optimum, a witness cycle and node potentials
``d`` with ``d(v) - d(u) <= w(u, v) - lambda`` on every arc.
:func:`karp_cycle_mean` is Karp's walk-length recurrence; it shares no
code with the policy iteration and serves as an oracle for it.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from .enumeration import DEFAULT_CYCLE_CAP, _scc_of, collect_cycles
from .graph import Cycle, WeightedDigraph

__all__ = [
    "CycleMeanCertificate",
    "CriticalSubgraph",
    "NoCycleError",
    "SolverError",
    "certificate_violations",
    "critical_subgraph",
    "karp_cycle_mean",
    "max_cycle_mean",
    "min_cycle_mean",
]


class NoCycleError(ValueError):
    """The graph (component) has no cycle, so its cycle means are undefined."""


class SolverError(RuntimeError):
    """Policy iteration failed to converge within its iteration limit."""


@dataclass(frozen=True)
class CycleMeanCertificate:
    """Optimum cycle mean with a witness and feasible node potentials."""

    value: Fraction
    witness: Cycle
    potentials: tuple[Fraction, ...]
    direction: str  # "min" or "max"


@dataclass(frozen=True)
class CriticalSubgraph:
    arcs: tuple[int, ...]
    direction: str
    cycles: tuple[Cycle, ...]
    truncated: bool


def _check_cyclic(g: WeightedDigraph) -> None:
    if g.arc_count == 0:
        raise NoCycleError("graph has no arcs")
    if not all(_scc_of(g, 0)):
        raise ValueError("graph must be strongly connected; analyze each SCC separately")


def _evaluate(
    g: WeightedDigraph, policy: list[int]
) -> tuple[list[Fraction], list[Fraction], list[list[int]]]:
    """Cycle mean reached from each node, relative values, and policy cycles.

    Each policy cycle is anchored at its smallest node (value 0).
    """
    n = g.node_count
    heads, weights = g.heads, g.weights
    state = [0] * n  # 0 new, 1 on current walk, 2 done
    cycles: list[list[int]] = []
    for start in range(n):
        if state[start]:
            continue
        walk = []
        v = start
        while state[v] == 0:
            state[v] = 1
            walk.append(v)
            v = heads[policy[v]]
        if state[v] == 1:
            cyc = walk[walk.index(v):]
            k = cyc.index(min(cyc))
            cycles.append(cyc[k:] + cyc[:k])
        for u in walk:
            state[u] = 2

    eta: list[Optional[Fraction]] = [None] * n
    x: list[Optional[Fraction]] = [None] * n
    for cyc in cycles:
        total = sum(weights[policy[u]] for u in cyc)
        mean = Fraction(total) / len(cyc)
        x[cyc[0]] = Fraction(0)
        eta[cyc[0]] = mean
        # walk backwards from the anchor: x(u) = w(u, pi(u)) - mean + x(pi(u))
        for u in reversed(cyc[1:]):
            nxt = heads[policy[u]]
            x[u] = weights[policy[u]] - mean + x[nxt]
            eta[u] = mean

    children: list[list[int]] = [[] for _ in range(n)]
    for u in range(n):
        children[heads[policy[u]]].append(u)
    todo = [u for cyc in cycles for u in cyc]
    while todo:
        v = todo.pop()
        for u in children[v]:
            if x[u] is None:
                eta[u] = eta[v]
                x[u] = weights[policy[u]] - eta[v] + x[v]
                todo.append(u)
    return eta, x, cycles  # type: ignore[return-value]


def _policy_iteration(g: WeightedDigraph, max_iterations: Optional[int]) -> CycleMeanCertificate:
    _check_cyclic(g)
    n = g.node_count
    heads, weights = g.heads, g.weights
    policy = [min(g.out_arcs(v), key=lambda a: (weights[a], a)) for v in range(n)]
    limit = max_iterations if max_iterations is not None else 100 + 10 * (n + g.arc_count)
    for _ in range(limit):
        eta, x, cycles = _evaluate(g, policy)
        changed = False
        for u in range(n):
            cur = policy[u]
            best, best_eta = cur, eta[u]
            for a in g.out_arcs(u):
                e = eta[heads[a]]
                if e < best_eta:
                    best, best_eta = a, e
            if best == cur:
                best_val = x[u]
                for a in g.out_arcs(u):
                    v = heads[a]
                    if eta[v] == eta[u]:
                        val = weights[a] - eta[u] + x[v]
                        if val < best_val:
                            best, best_val = a, val
            if best != cur:
                policy[u] = best
                changed = True
        if not changed:
            break
    else:
        raise SolverError(f"policy iteration did not converge in {limit} iterations")

    lam = eta[0]
    witness_nodes = min(cycles, key=lambda c: c[0])
    witness = Cycle.from_arcs(g, [policy[u] for u in witness_nodes])
    # x(u) <= w(u,v) - lam + x(v) at convergence, so d = -x is feasible; the
    # witness anchor already has x = 0.
    potentials = tuple(-xv for xv in x)
    return CycleMeanCertificate(lam, witness, potentials, "min")


def min_cycle_mean(g: WeightedDigraph, max_iterations: Optional[int] = None) -> CycleMeanCertificate:
    """Minimum cycle mean of a strongly connected graph with a certificate.

    Potentials are zero at the smallest node of the witness cycle.
    """
    return _policy_iteration(g, max_iterations)


def max_cycle_mean(g: WeightedDigraph, max_iterations: Optional[int] = None) -> CycleMeanCertificate:
    neg = _policy_iteration(g.negated(), max_iterations)
    witness = Cycle(neg.witness.arcs, neg.witness.nodes, -neg.witness.weight)
    return CycleMeanCertificate(-neg.value, witness, tuple(-d for d in neg.potentials), "max")


def karp_cycle_mean(g: WeightedDigraph, direction: str = "min") -> Fraction:
    """Karp's O(nm) recurrence over walks of exactly k arcs from node 0.

    The graph must be strongly connected.  Works on the integer stored
    weights and divides by the denominator at the end.
    """
    if direction not in ("min", "max"):
        raise ValueError(f"direction must be 'min' or 'max', got {direction!r}")
    _check_cyclic(g)
    n = g.node_count
    sign = 1 if direction == "min" else -1
    w = [sign * x for x in g.raw_weights]
    # dist[k][v]: minimum weight of a walk with exactly k arcs from node 0 to v
    dist: list[list[Optional[int]]] = [[None] * n for _ in range(n + 1)]
    dist[0][0] = 0
    for k in range(1, n + 1):
        prev, cur = dist[k - 1], dist[k]
        for a, (t, h) in enumerate(zip(g.tails, g.heads)):
            if prev[t] is not None:
                cand = prev[t] + w[a]
                if cur[h] is None or cand < cur[h]:
                    cur[h] = cand
    best: Optional[Fraction] = None
    for v in range(n):
        dn = dist[n][v]
        if dn is None:
            continue
        worst = max(
            Fraction(dn - dist[k][v], n - k) for k in range(n) if dist[k][v] is not None
        )
        if best is None or worst < best:
            best = worst
    if best is None:
        raise NoCycleError("no walk of length n from node 0")
    return sign * best / g.denominator


def certificate_violations(g: WeightedDigraph, cert: CycleMeanCertificate) -> list[str]:
    """Arcs breaking the potential inequality, and witness arcs that are not tight."""
    d, lam = cert.potentials, cert.value
    problems = []
    for a, (u, v, w) in enumerate(g.arcs()):
        slack = w - lam - (d[v] - d[u])
        if (cert.direction == "min" and slack < 0) or (cert.direction == "max" and slack > 0):
            problems.append(f"arc {a} ({u}->{v}) violates the potential inequality by {slack}")
    for a in cert.witness.arcs:
        u, v, w = g.arc(a)
        if d[v] - d[u] != w - lam:
            problems.append(f"witness arc {a} ({u}->{v}) is not tight")
    if cert.witness.mean != lam:
        problems.append(f"witness mean {cert.witness.mean} != {lam}")
    return problems


def critical_subgraph(
    g: WeightedDigraph, cert: CycleMeanCertificate, cycle_cap: int = DEFAULT_CYCLE_CAP
) -> CriticalSubgraph:
    """Tight arcs of ``cert`` and the simple cycles they form.

    Falls back to the witness alone (``truncated``) when the tight subgraph
    has more than ``cycle_cap`` cycles.
    """
    d, lam = cert.potentials, cert.value
    tight = tuple(a for a, (u, v, w) in enumerate(g.arcs()) if d[v] - d[u] == w - lam)
    sub = g.arc_subgraph(tight)
    found, status = collect_cycles(sub, cap=cycle_cap)
    if status.complete:
        cycles = tuple(
            Cycle(tuple(tight[a] for a in c.arcs), c.nodes, c.weight) for c in found
        )
        truncated = False
    else:
        cycles, truncated = (cert.witness,), True
    for c in cycles:
        if c.mean != lam:
            raise AssertionError(f"critical cycle {c.nodes} has mean {c.mean}, expected {lam}")
    return CriticalSubgraph(tight, cert.direction, cycles, truncated)
