"""Weighted directed multigraphs, the edge-list format, SCCs and cycle arithmetic.

Node ids are 1-based in files and 0-based everywhere in memory; the
conversion happens in :func:`parse_edge_list` and :func:`serialize_edge_list`
only.

Arc weights are integers.  Transformed graphs (shift or scale by a rational)
keep integer *stored* weights plus a common ``denominator``; the effective
weight of arc ``i`` is ``raw_weights[i] / denominator``.  Effective weights
are plain ``int`` when the denominator is 1 and ``Fraction`` otherwise, so
every cycle mean stays exact.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Iterator, Sequence, Union

Weight = Union[int, Fraction]

__all__ = [
    "Component",
    "Cycle",
    "GraphError",
    "ParseError",
    "SccDecomposition",
    "WeightedDigraph",
    "cycle_mean",
    "decompose_sccs",
    "parse_edge_list",
    "serialize_edge_list",
    "transform_weights",
]


class GraphError(ValueError):
    """Invalid graph construction or cycle."""


class ParseError(GraphError):
    def __init__(self, message: str, line: int | None = None):
        self.line = line
        super().__init__(f"line {line}: {message}" if line is not None else message)


class WeightedDigraph:
    """Immutable directed multigraph with integer arc weights.

    Parallel arcs and self-loops are allowed.  Arc order is the order in
    which arcs were given and is never changed.
    """

    def __init__(
        self,
        node_count: int,
        arcs: Iterable[tuple[int, int, int]],
        denominator: int = 1,
    ) -> None:
        if node_count < 1:
            raise GraphError(f"node_count must be positive, got {node_count}")
        if denominator < 1:
            raise GraphError(f"denominator must be positive, got {denominator}")
        tails, heads, raw = [], [], []
        for tail, head, weight in arcs:
            if not (0 <= tail < node_count and 0 <= head < node_count):
                raise GraphError(f"arc ({tail}, {head}) has an endpoint outside 0..{node_count - 1}")
            if isinstance(weight, bool) or not isinstance(weight, int):
                raise GraphError(f"arc weight must be an integer, got {weight!r}")
            tails.append(tail)
            heads.append(head)
            raw.append(weight)
        self.node_count = node_count
        self.tails: tuple[int, ...] = tuple(tails)
        self.heads: tuple[int, ...] = tuple(heads)
        self.raw_weights: tuple[int, ...] = tuple(raw)
        self.denominator = denominator
        if denominator == 1:
            self.weights: tuple[Weight, ...] = self.raw_weights
        else:
            self.weights = tuple(Fraction(w, denominator) for w in raw)
        out: list[list[int]] = [[] for _ in range(node_count)]
        inc: list[list[int]] = [[] for _ in range(node_count)]
        for i, (t, h) in enumerate(zip(tails, heads)):
            out[t].append(i)
            inc[h].append(i)
        self._out = tuple(tuple(a) for a in out)
        self._in = tuple(tuple(a) for a in inc)

    @property
    def arc_count(self) -> int:
        return len(self.tails)

    def arc(self, index: int) -> tuple[int, int, Weight]:
        return self.tails[index], self.heads[index], self.weights[index]

    def arcs(self) -> Iterator[tuple[int, int, Weight]]:
        return zip(self.tails, self.heads, self.weights)

    def out_arcs(self, node: int) -> tuple[int, ...]:
        """Indices of arcs leaving ``node``, ascending."""
        return self._out[node]

    def in_arcs(self, node: int) -> tuple[int, ...]:
        return self._in[node]

    @property
    def w_min(self) -> Weight:
        return min(self.weights)

    @property
    def w_max(self) -> Weight:
        return max(self.weights)

    @property
    def w_avg(self) -> Fraction:
        return Fraction(sum(self.raw_weights), self.arc_count * self.denominator)

    @property
    def is_integral(self) -> bool:
        return self.denominator == 1

    def negated(self) -> WeightedDigraph:
        return WeightedDigraph(
            self.node_count,
            zip(self.tails, self.heads, (-w for w in self.raw_weights)),
            self.denominator,
        )

    def with_weights(self, weights: Sequence[int]) -> WeightedDigraph:
        """Same topology, new integer weights (arc order preserved)."""
        if len(weights) != self.arc_count:
            raise GraphError(f"expected {self.arc_count} weights, got {len(weights)}")
        return WeightedDigraph(self.node_count, zip(self.tails, self.heads, weights))

    def arc_subgraph(self, arc_indices: Iterable[int]) -> WeightedDigraph:
        """Same node set, only the given arcs (renumbered in the given order)."""
        idx = list(arc_indices)
        return WeightedDigraph(
            self.node_count,
            ((self.tails[i], self.heads[i], self.raw_weights[i]) for i in idx),
            self.denominator,
        )

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, WeightedDigraph):
            return NotImplemented
        return (
            self.node_count == other.node_count
            and self.tails == other.tails
            and self.heads == other.heads
            and self.weights == other.weights
        )

    def __hash__(self) -> int:
        return hash((self.node_count, self.tails, self.heads, self.weights))

    def __repr__(self) -> str:
        return f"WeightedDigraph(n={self.node_count}, m={self.arc_count})"


@dataclass(frozen=True)
class Cycle:
    """A simple cycle given as arc indices into its parent graph.

    ``nodes[i]`` is the tail of ``arcs[i]``.  Cycles built through
    :meth:`from_arcs` are rotated to start at their smallest node id.
    """

    arcs: tuple[int, ...]
    nodes: tuple[int, ...]
    weight: Weight

    @property
    def length(self) -> int:
        return len(self.arcs)

    @property
    def mean(self) -> Fraction:
        return Fraction(self.weight) / len(self.arcs)

    @classmethod
    def from_arcs(cls, g: WeightedDigraph, arcs: Sequence[int]) -> Cycle:
        if not arcs:
            raise GraphError("a cycle needs at least one arc")
        nodes = [g.tails[a] for a in arcs]
        for k, a in enumerate(arcs):
            nxt = arcs[(k + 1) % len(arcs)]
            if g.heads[a] != g.tails[nxt]:
                raise GraphError(f"arcs {a} and {nxt} are not head-to-tail adjacent")
        if len(set(nodes)) != len(nodes):
            raise GraphError("cycle visits a node twice")
        start = nodes.index(min(nodes))
        arcs = tuple(arcs[start:]) + tuple(arcs[:start])
        nodes = tuple(nodes[start:]) + tuple(nodes[:start])
        return cls(arcs, nodes, sum(g.weights[a] for a in arcs))


def cycle_mean(c: Cycle) -> Fraction:
    """Exact mean arc weight ``w(C) / |C|``."""
    return c.mean


# ---- edge-list format -------------------------------------------------------


def parse_edge_list(text: str | bytes) -> WeightedDigraph:
    """Parse ``p <n> <m>`` / ``a <tail> <head> <weight>`` text.

    Lines starting with ``#`` and blank lines are ignored.
    """
    if isinstance(text, bytes):
        text = text.decode("utf-8")
    header: tuple[int, int] | None = None
    arcs: list[tuple[int, int, int]] = []
    for lineno, line in enumerate(text.splitlines(), start=1):
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        fields = line.split()
        tag = fields[0]
        if tag == "p":
            if header is not None:
                raise ParseError("duplicate header", lineno)
            if len(fields) != 3:
                raise ParseError(f"malformed header {line!r}", lineno)
            n, m = _ints(fields[1:], lineno)
            if n < 1 or m < 0:
                raise ParseError(f"invalid sizes n={n} m={m}", lineno)
            header = (n, m)
        elif tag == "a":
            if header is None:
                raise ParseError("arc line before header", lineno)
            if len(fields) != 4:
                raise ParseError(f"malformed arc line {line!r}", lineno)
            tail, head, weight = _ints(fields[1:], lineno)
            n = header[0]
            if not (1 <= tail <= n and 1 <= head <= n):
                raise ParseError(f"node id out of range 1..{n}", lineno)
            arcs.append((tail - 1, head - 1, weight))
        else:
            raise ParseError(f"unknown line type {tag!r}", lineno)
    if header is None:
        raise ParseError("missing 'p <n> <m>' header")
    if len(arcs) != header[1]:
        raise ParseError(f"header declares {header[1]} arcs, found {len(arcs)}")
    return WeightedDigraph(header[0], arcs)


def _ints(fields: Sequence[str], lineno: int) -> list[int]:
    try:
        return [int(f) for f in fields]
    except ValueError:
        raise ParseError(f"expected integers, got {' '.join(fields)!r}", lineno) from None


def serialize_edge_list(g: WeightedDigraph) -> str:
    if not g.is_integral:
        raise GraphError("only integer-weight graphs can be serialized")
    lines = [f"p {g.node_count} {g.arc_count}"]
    lines.extend(f"a {t + 1} {h + 1} {w}" for t, h, w in g.arcs())
    return "\n".join(lines) + "\n"


# ---- strongly connected components -------------------------------------------


@dataclass(frozen=True)
class Component:
    """One SCC: sorted original node ids, original arc ids, and a local copy.

    ``graph`` relabels ``nodes`` to 0..k-1 preserving order, and its arc
    ``i`` is original arc ``arcs[i]``.
    """

    index: int
    nodes: tuple[int, ...]
    arcs: tuple[int, ...]
    trivial: bool
    graph: WeightedDigraph

    def lift(self, c: Cycle) -> Cycle:
        """Map a cycle of ``graph`` back to the parent graph's ids."""
        return Cycle(
            tuple(self.arcs[a] for a in c.arcs),
            tuple(self.nodes[v] for v in c.nodes),
            c.weight,
        )


@dataclass(frozen=True)
class SccDecomposition:
    component_of: tuple[int, ...]
    components: tuple[Component, ...]

    @property
    def nontrivial(self) -> tuple[Component, ...]:
        return tuple(c for c in self.components if not c.trivial)


def decompose_sccs(g: WeightedDigraph) -> SccDecomposition:
    """Tarjan's algorithm (iterative); components are numbered by smallest node."""
    n = g.node_count
    index = [-1] * n
    low = [0] * n
    on_stack = [False] * n
    stack: list[int] = []
    raw_components: list[list[int]] = []
    counter = 0
    for root in range(n):
        if index[root] != -1:
            continue
        work = [(root, 0)]
        index[root] = low[root] = counter
        counter += 1
        stack.append(root)
        on_stack[root] = True
        while work:
            v, pos = work[-1]
            out = g.out_arcs(v)
            if pos < len(out):
                work[-1] = (v, pos + 1)
                w = g.heads[out[pos]]
                if index[w] == -1:
                    index[w] = low[w] = counter
                    counter += 1
                    stack.append(w)
                    on_stack[w] = True
                    work.append((w, 0))
                elif on_stack[w]:
                    low[v] = min(low[v], index[w])
                continue
            work.pop()
            if work:
                parent = work[-1][0]
                low[parent] = min(low[parent], low[v])
            if low[v] == index[v]:
                members = []
                while True:
                    w = stack.pop()
                    on_stack[w] = False
                    members.append(w)
                    if w == v:
                        break
                raw_components.append(members)

    raw_components.sort(key=min)
    component_of = [0] * n
    for cid, members in enumerate(raw_components):
        for v in members:
            component_of[v] = cid
    comp_arcs: list[list[int]] = [[] for _ in raw_components]
    for i, (t, h) in enumerate(zip(g.tails, g.heads)):
        if component_of[t] == component_of[h]:
            comp_arcs[component_of[t]].append(i)

    components = []
    for cid, members in enumerate(raw_components):
        nodes = tuple(sorted(members))
        local = {v: k for k, v in enumerate(nodes)}
        arcs = tuple(comp_arcs[cid])
        sub = WeightedDigraph(
            len(nodes),
            ((local[g.tails[a]], local[g.heads[a]], g.raw_weights[a]) for a in arcs),
            g.denominator,
        )
        components.append(Component(cid, nodes, arcs, trivial=not arcs, graph=sub))
    return SccDecomposition(tuple(component_of), tuple(components))


# ---- weight transforms ---------------------------------------------------------


def transform_weights(
    g: WeightedDigraph, mode: str, c: int | Fraction | None = None
) -> WeightedDigraph:
    """Return a copy of ``g`` with every arc weight transformed.

    ``shift`` adds ``c``, ``negate`` multiplies by -1, ``scale`` multiplies by
    ``c > 0``.  Rational ``c`` is lifted to a common denominator.
    """
    if mode == "negate":
        return g.negated()
    if c is None:
        raise GraphError(f"mode {mode!r} needs a constant")
    c = Fraction(c)
    d = g.denominator
    if mode == "shift":
        den = math.lcm(d, c.denominator)
        raw = [w * (den // d) + c.numerator * (den // c.denominator) for w in g.raw_weights]
    elif mode == "scale":
        if c <= 0:
            raise GraphError(f"scale factor must be positive, got {c}")
        den = d * c.denominator
        raw = [w * c.numerator for w in g.raw_weights]
    else:
        raise GraphError(f"unknown transform mode {mode!r}")
    common = math.gcd(den, *raw)
    return WeightedDigraph(
        g.node_count,
        zip(g.tails, g.heads, (w // common for w in raw)),
        den // common,
    )
