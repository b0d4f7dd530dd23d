"""Exhaustive simple-cycle enumeration and extremal cycles.

Johnson's circuit search with blocked sets, walking arc indices instead of
neighbour nodes so that parallel arcs give distinct cycles.  Every cycle is
reported once, starting at its smallest node.
"""
from __future__ import annotations

import time
from dataclasses import dataclass
from typing import Callable, Optional, Sequence

from .graph import Cycle, Weight, WeightedDigraph

__all__ = [
    "DEFAULT_CYCLE_CAP",
    "EnumerationStatus",
    "ExtremalCycles",
    "collect_cycles",
    "dump_cycles",
    "enumerate_simple_cycles",
    "extremal_cycles",
]

DEFAULT_CYCLE_CAP = 1_000_000

# visitor(arcs, weight): ``arcs`` is a live list, copy it to keep it.
Visitor = Callable[[Sequence[int], Weight], None]


@dataclass(frozen=True)
class EnumerationStatus:
    count: int
    complete: bool
    timed_out: bool = False

    @property
    def label(self) -> str:
        if self.complete:
            return "complete"
        return "timeout" if self.timed_out else "truncated"


class _Stop(Exception):
    pass


def _scc_of(g: WeightedDigraph, s: int) -> list[bool]:
    """Membership mask of the SCC of ``s`` in the subgraph induced by nodes >= s."""
    n = g.node_count
    fwd = [False] * n
    fwd[s] = True
    todo = [s]
    while todo:
        v = todo.pop()
        for a in g.out_arcs(v):
            h = g.heads[a]
            if h >= s and not fwd[h]:
                fwd[h] = True
                todo.append(h)
    both = [False] * n
    both[s] = True
    todo = [s]
    while todo:
        v = todo.pop()
        for a in g.in_arcs(v):
            t = g.tails[a]
            if fwd[t] and not both[t]:
                both[t] = True
                todo.append(t)
    return both


def enumerate_simple_cycles(
    g: WeightedDigraph,
    visitor: Optional[Visitor] = None,
    cap: int = DEFAULT_CYCLE_CAP,
    timeout: Optional[float] = None,
) -> EnumerationStatus:
    """Call ``visitor`` once per simple cycle of ``g``.

    Stops without visiting the ``cap + 1``-th cycle, or when ``timeout``
    seconds have elapsed; ``complete`` is False in both cases.
    """
    heads = g.heads
    weights = g.weights
    deadline = None if timeout is None else time.monotonic() + timeout
    count = 0
    ticks = 0
    try:
        for s in range(g.node_count):
            member = _scc_of(g, s)
            out = [
                [a for a in g.out_arcs(v) if member[heads[a]] and (heads[a] != v or v == s)]
                if member[v]
                else []
                for v in range(g.node_count)
            ]
            if not out[s]:
                continue
            blocked = [False] * g.node_count
            bsets: list[set[int]] = [set() for _ in range(g.node_count)]
            blocked[s] = True
            path: list[int] = []
            prefix: list[Weight] = [0]
            stack = [(s, iter(out[s]))]
            found = [False]
            while stack:
                v, it = stack[-1]
                for a in it:
                    h = heads[a]
                    if h == s:
                        if count >= cap:
                            raise _Stop(False)
                        count += 1
                        found[-1] = True
                        if visitor is not None:
                            path.append(a)
                            visitor(path, prefix[-1] + weights[a])
                            path.pop()
                    elif not blocked[h]:
                        path.append(a)
                        prefix.append(prefix[-1] + weights[a])
                        blocked[h] = True
                        stack.append((h, iter(out[h])))
                        found.append(False)
                        break
                else:
                    stack.pop()
                    closed = found.pop()
                    if closed:
                        _unblock(v, blocked, bsets)
                    else:
                        for a in out[v]:
                            bsets[heads[a]].add(v)
                    if stack:
                        path.pop()
                        prefix.pop()
                        if closed:
                            found[-1] = True
                ticks += 1
                if deadline is not None and ticks & 0xFFF == 0 and time.monotonic() > deadline:
                    raise _Stop(True)
    except _Stop as stop:
        return EnumerationStatus(count, complete=False, timed_out=stop.args[0])
    return EnumerationStatus(count, complete=True)


def _unblock(u: int, blocked: list[bool], bsets: list[set[int]]) -> None:
    todo = [u]
    while todo:
        x = todo.pop()
        if blocked[x]:
            blocked[x] = False
            todo.extend(bsets[x])
            bsets[x].clear()


def collect_cycles(
    g: WeightedDigraph, cap: int = DEFAULT_CYCLE_CAP, timeout: Optional[float] = None
) -> tuple[list[Cycle], EnumerationStatus]:
    """Materialize every simple cycle (small graphs only)."""
    cycles: list[Cycle] = []
    tails = g.tails

    def keep(arcs: Sequence[int], weight: Weight) -> None:
        cycles.append(Cycle(tuple(arcs), tuple(tails[a] for a in arcs), weight))

    status = enumerate_simple_cycles(g, keep, cap, timeout)
    return cycles, status


def dump_cycles(g: WeightedDigraph, cycles: Sequence[Cycle]) -> str:
    """One ``c <w> <len> <v1> ... <v1>`` line per cycle, 1-based ids."""
    lines = []
    for c in cycles:
        nodes = " ".join(str(v + 1) for v in c.nodes + c.nodes[:1])
        lines.append(f"c {c.weight} {c.length} {nodes}")
    return "".join(line + "\n" for line in lines)


@dataclass(frozen=True)
class ExtremalCycles:
    """L_w, L_l, S_w, S_l of a component plus the enumeration outcome.

    Ties are broken by shorter arc sequence, then the lexicographically
    smaller node sequence, then the smaller arc sequence.
    """

    max_weight: Cycle
    max_length: Cycle
    min_weight: Cycle
    min_length: Cycle
    total_cycle_count: int
    complete: bool
    timed_out: bool = False

    @property
    def status(self) -> str:
        return EnumerationStatus(self.total_cycle_count, self.complete, self.timed_out).label


class _Best:
    """Running extreme under a sort key; smallest key wins."""

    __slots__ = ("key", "arcs", "weight")

    def __init__(self) -> None:
        self.key: tuple | None = None
        self.arcs: tuple[int, ...] = ()
        self.weight: Weight = 0


def extremal_cycles(
    g: WeightedDigraph, cap: int = DEFAULT_CYCLE_CAP, timeout: Optional[float] = None
) -> ExtremalCycles:
    """Track the four extremes in a single enumeration pass."""
    tails = g.tails
    lw, ll, sw, sl = _Best(), _Best(), _Best(), _Best()

    def offer(best: _Best, primary: tuple, arcs: Sequence[int], weight: Weight) -> None:
        # Cheap primary comparison first; node sequences only on ties.
        if best.key is not None and primary > best.key[: len(primary)]:
            return
        nodes = tuple(tails[a] for a in arcs)
        key = primary + (nodes, tuple(arcs))
        if best.key is None or key < best.key:
            best.key = key
            best.arcs = tuple(arcs)
            best.weight = weight

    def visit(arcs: Sequence[int], weight: Weight) -> None:
        length = len(arcs)
        offer(lw, (-weight, length), arcs, weight)
        offer(ll, (-length,), arcs, weight)
        offer(sw, (weight, length), arcs, weight)
        offer(sl, (length,), arcs, weight)

    status = enumerate_simple_cycles(g, visit, cap, timeout)
    if lw.key is None:
        raise ValueError("graph has no cycle")

    def cycle(best: _Best) -> Cycle:
        return Cycle(best.arcs, tuple(tails[a] for a in best.arcs), best.weight)

    return ExtremalCycles(
        cycle(lw), cycle(ll), cycle(sw), cycle(sl),
        status.count, status.complete, status.timed_out,
    )
