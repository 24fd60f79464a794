"""Ordered-edge labeled DAGs.

A :class:`Dag` is a labeled multigraph in which every vertex carries an
ordered sequence of incoming and an ordered sequence of outgoing edges.
Instances are treated as immutable; every operation returns a new graph.
"""
from __future__ import annotations

import heapq
from collections import deque
from dataclasses import dataclass
from typing import Hashable, Iterable, NamedTuple


class Pos(NamedTuple):
    """Vertex named by a picture position (row, col)."""

    row: int
    col: int

    def __str__(self):
        return f"{self.row},{self.col}"


class Free(NamedTuple):
    """Vertex with an opaque integer name."""

    key: int

    def __str__(self):
        return f"v{self.key}"


VertexId = Hashable
EdgeId = Hashable


def vertex_key(v):
    """Total sort key over mixed vertex ids (positions first)."""
    if isinstance(v, Pos):
        return (0, v.row, v.col, "")
    if isinstance(v, Free):
        return (1, v.key, 0, "")
    return (2, 0, 0, str(v))


def parse_vertex(text: str):
    """Inverse of ``str`` on :class:`Pos` and :class:`Free`."""
    if text.startswith("v") and text[1:].lstrip("-").isdigit():
        return Free(int(text[1:]))
    parts = text.split(",")
    if len(parts) == 2:
        try:
            return Pos(int(parts[0]), int(parts[1]))
        except ValueError:
            pass
    raise ValueError(f"bad vertex id {text!r}")


class NotIndependent(ValueError):
    pass


@dataclass(frozen=True)
class Violation:
    kind: str  # cycle | dangling | inconsistent | duplicate | self-loop | unlabeled
    detail: str


@dataclass(frozen=True)
class Dag:
    labels: dict
    src: dict
    tar: dict
    ins: dict
    outs: dict

    @property
    def vertices(self):
        return self.labels.keys()

    @property
    def edges(self):
        return self.src.keys()

    def __len__(self):
        return len(self.labels)

    @classmethod
    def from_edges(cls, labels, pairs: Iterable[tuple] = ()):
        """Build a DAG from ``(u, v)`` pairs; edge ``k`` is the k-th pair.

        In/out sequences follow the order of ``pairs``.
        """
        labels = dict(labels)
        src, tar = {}, {}
        ins = {v: [] for v in labels}
        outs = {v: [] for v in labels}
        for k, (u, v) in enumerate(pairs):
            src[k], tar[k] = u, v
            outs.setdefault(u, []).append(k)
            ins.setdefault(v, []).append(k)
        return cls(labels, src, tar,
                   {v: tuple(es) for v, es in ins.items()},
                   {v: tuple(es) for v, es in outs.items()})

    def sorted_vertices(self):
        return sorted(self.labels, key=vertex_key)

    def successors(self, v):
        return [self.tar[e] for e in self.outs.get(v, ())]

    def topological_order(self):
        """Kahn's algorithm, smallest vertex first; ``None`` on a cycle."""
        indeg = {v: 0 for v in self.labels}
        for e, v in self.tar.items():
            if v in indeg:
                indeg[v] += 1
        heap = [(vertex_key(v), v) for v, k in indeg.items() if k == 0]
        heapq.heapify(heap)
        order = []
        while heap:
            _, v = heapq.heappop(heap)
            order.append(v)
            for w in self.successors(v):
                if w not in indeg:
                    continue
                indeg[w] -= 1
                if indeg[w] == 0:
                    heapq.heappush(heap, (vertex_key(w), w))
        return order if len(order) == len(self.labels) else None

    def reachable(self, start):
        """Vertices reachable from ``start`` (including itself)."""
        seen = {start}
        todo = [start]
        while todo:
            for w in self.successors(todo.pop()):
                if w not in seen:
                    seen.add(w)
                    todo.append(w)
        return seen

    def roots(self):
        return [v for v in self.sorted_vertices() if not self.ins.get(v)]

    def leaves(self):
        return [v for v in self.sorted_vertices() if not self.outs.get(v)]

    def signature(self):
        """Structure up to edge ids: labels plus port-to-port wiring."""
        return frozenset(
            (v, self.labels[v],
             tuple((self.tar[e], self.ins[self.tar[e]].index(e))
                   for e in self.outs.get(v, ())),
             len(self.ins.get(v, ())))
            for v in self.labels)


EMPTY = Dag({}, {}, {}, {}, {})


def validate(d: Dag) -> list[Violation]:
    """Every violated DAG invariant; empty iff ``d`` is well formed."""
    found = []
    vs = d.labels
    for e in d.src:
        if e not in d.tar:
            found.append(Violation("dangling", f"edge {e!r} has no target"))
    for e in d.tar:
        if e not in d.src:
            found.append(Violation("dangling", f"edge {e!r} has no source"))
    for e, v in list(d.src.items()) + list(d.tar.items()):
        if v not in vs:
            found.append(Violation("dangling", f"edge {e!r} touches unknown vertex {v!r}"))
    for e in d.src:
        if e in d.tar and d.src[e] == d.tar[e]:
            found.append(Violation("self-loop", f"edge {e!r} at {d.src[e]!r}"))
    for v in set(d.ins) | set(d.outs):
        if v not in vs:
            found.append(Violation("unlabeled", f"vertex {v!r} has edges but no label"))

    for seqs, ends, what in ((d.outs, d.src, "out"), (d.ins, d.tar, "in")):
        seen = {}
        for v, es in seqs.items():
            for e in es:
                seen[e] = seen.get(e, 0) + 1
                if ends.get(e) != v:
                    found.append(Violation(
                        "inconsistent", f"edge {e!r} listed in {what}({v!r}) but attached to {ends.get(e)!r}"))
        for e, k in seen.items():
            if k > 1:
                found.append(Violation("duplicate", f"edge {e!r} occurs {k} times in {what} sequences"))
        for e in ends:
            if e not in seen:
                found.append(Violation("inconsistent", f"edge {e!r} missing from {what}({ends[e]!r})"))

    if not found and d.topological_order() is None:
        found.append(Violation("cycle", "graph contains a directed cycle"))
    elif found:
        # cycle check on whatever is consistent
        try:
            if d.topological_order() is None:
                found.append(Violation("cycle", "graph contains a directed cycle"))
        except (KeyError, TypeError):
            pass
    return found


def string_dag(w) -> Dag:
    """Encode ``w`` as a simple directed path ``v0 -> v1 -> ...``."""
    labels = {Free(i): s for i, s in enumerate(w)}
    return Dag.from_edges(labels, [(Free(i), Free(i + 1)) for i in range(len(w) - 1)])


def independent(d: Dag, e0, e1) -> bool:
    for e in (e0, e1):
        if e not in d.src:
            raise KeyError(f"unknown edge {e!r}")
    if e0 == e1:
        raise ValueError("edges must differ")
    return (d.src[e1] not in d.reachable(d.tar[e0])
            and d.src[e0] not in d.reachable(d.tar[e1]))


def edge_swap(d: Dag, e0, e1) -> Dag:
    """Exchange the targets of two independent edges.

    Each edge keeps its source and its position in the source's out
    sequence; in the target in-sequences the two edges trade places.
    """
    if not independent(d, e0, e1):
        raise NotIndependent(f"edges {e0!r} and {e1!r} are not independent")
    h = {e0: e1, e1: e0}
    ins = {v: tuple(h.get(e, e) for e in es) for v, es in d.ins.items()}
    tar = dict(d.tar)
    tar[e0], tar[e1] = d.tar[e1], d.tar[e0]
    return Dag(dict(d.labels), dict(d.src), tar, ins, dict(d.outs))


def connected_components(d: Dag) -> list[frozenset]:
    """Weakly connected components, ordered by their smallest vertex."""
    adj = {v: set() for v in d.labels}
    for e in d.src:
        u, v = d.src[e], d.tar[e]
        adj[u].add(v)
        adj[v].add(u)
    seen = set()
    comps = []
    for v in d.sorted_vertices():
        if v in seen:
            continue
        comp = {v}
        queue = deque([v])
        while queue:
            for w in adj[queue.popleft()]:
                if w not in comp:
                    comp.add(w)
                    queue.append(w)
        seen |= comp
        comps.append(frozenset(comp))
    return comps


def is_connected(d: Dag) -> bool:
    """At most one component; the empty graph counts as connected."""
    return len(connected_components(d)) <= 1


def _record_escape(s: str) -> str:
    out = []
    for ch in str(s):
        if ch in '{}|<>" ':
            out.append("\\" + ch)
        else:
            out.append(ch)
    return "".join(out)


def to_dot(d: Dag, run: dict | None = None, name: str = "dag") -> str:
    """Graphviz source with ordered ports.

    Ingoing edges attach to ports along the top of each node and outgoing
    edges along the bottom, left to right in sequence order.  ``run``
    optionally labels the edges with states.
    """
    lines = [f"digraph {name} {{", "  node [shape=record];"]
    for v in d.sorted_vertices():
        ins = d.ins.get(v, ())
        outs = d.outs.get(v, ())
        parts = []
        if ins:
            parts.append("{" + "|".join(f"<i{k}>" for k in range(len(ins))) + "}")
        parts.append(_record_escape(d.labels[v]))
        if outs:
            parts.append("{" + "|".join(f"<o{k}>" for k in range(len(outs))) + "}")
        lines.append(f'  "{v}" [label="{{{"|".join(parts)}}}"];')
    for v in d.sorted_vertices():
        for k, e in enumerate(d.outs.get(v, ())):
            w = d.tar[e]
            j = d.ins[w].index(e)
            attr = ""
            if run is not None and e in run:
                attr = f' [label="{run[e]}"]'
            lines.append(f'  "{v}":o{k}:s -> "{w}":i{j}:n{attr};')
    lines.append("}")
    return "\n".join(lines) + "\n"
