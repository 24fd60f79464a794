"""Picture-to-DAG encodings.

Input-agnostic encodings (:class:`EncodingKind`) fix the edge set from the
picture dimensions alone.  Input-driven encodings add edges whose number
per vertex is dictated by a doubly ranked alphabet; the wiring is any
acyclic bijection between driven out-slots and driven in-slots.
"""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field

from .graph import Dag, Pos, validate
from .picture import BoundaryPicture, Picture


class EncodingKind(enum.Enum):
    LINL = "linl"
    LINR = "linr"
    LIN = "lin"
    RFA = "rfa"
    BFA = "bfa"
    COO = "coo"
    DIA = "dia"

    @classmethod
    def parse(cls, name):
        try:
            return cls(name.lower())
        except ValueError:
            raise ValueError(f"unknown encoding {name!r}; expected one of "
                             + ", ".join(k.value for k in cls)) from None


def bfa_path(m, n):
    """Boustrophedon Hamiltonian path over the framed ``(m+2) x (n+2)`` grid.

    Even rows run left to right, odd rows right to left; each row is left
    through its last cell straight down.
    """
    path = []
    for i in range(m + 2):
        cols = range(n + 2) if i % 2 == 0 else range(n + 1, -1, -1)
        path.extend(Pos(i, j) for j in cols)
    return path


def rfa_path(m, n):
    return [Pos(i, j) for i in range(m + 2) for j in range(n + 2)]


def _edge_pairs(kind, m, n):
    """Edge pairs of ``kind`` over the full framed grid, before clipping."""
    rows, cols = range(m + 2), range(n + 2)
    down_left = [(Pos(i, 0), Pos(i + 1, 0)) for i in range(m + 1)]
    down_right = [(Pos(i, n + 1), Pos(i + 1, n + 1)) for i in range(m + 1)]
    horizontal = [(Pos(i, j), Pos(i, j + 1)) for i in rows for j in range(n + 1)]
    vertical = [(Pos(i, j), Pos(i + 1, j)) for i in range(m + 1) for j in cols]
    if kind is EncodingKind.LINL:
        return down_left + horizontal
    if kind is EncodingKind.LINR:
        return horizontal + down_right
    if kind is EncodingKind.LIN:
        return down_left + horizontal + down_right
    if kind is EncodingKind.RFA:
        path = rfa_path(m, n)
        return list(zip(path, path[1:]))
    if kind is EncodingKind.BFA:
        path = bfa_path(m, n)
        return list(zip(path, path[1:]))
    if kind is EncodingKind.COO:
        return horizontal + vertical
    if kind is EncodingKind.DIA:
        return [(Pos(i, j), Pos(i + 1, j + 1)) for i in range(m + 1) for j in range(n + 1)]
    raise ValueError(kind)


def _in_angle(u, v):
    # direction from v back to its source; left-to-right along the upper arc
    a = math.atan2(u.row - v.row, u.col - v.col)
    return -math.pi if a == math.pi else a


def _out_angle(u, v):
    # direction to the target; left-to-right along the lower arc
    return -math.atan2(v.row - u.row, v.col - u.col)


def _grid_dag(labels, pairs):
    """Assemble a position DAG whose port order keeps edges from crossing."""
    pairs = [(u, v) for u, v in pairs if u in labels and v in labels]
    src, tar = {}, {}
    ins = {v: [] for v in labels}
    outs = {v: [] for v in labels}
    for k, (u, v) in enumerate(pairs):
        src[k], tar[k] = u, v
        outs[u].append(k)
        ins[v].append(k)
    ins = {v: tuple(sorted(es, key=lambda e: _in_angle(src[e], v))) for v, es in ins.items()}
    outs = {u: tuple(sorted(es, key=lambda e: _out_angle(u, tar[e]))) for u, es in outs.items()}
    return Dag(dict(labels), src, tar, ins, outs)


def position_labels(p):
    """Vertex labels of the (edgeless) picture DAG of a picture or boundary picture."""
    if isinstance(p, BoundaryPicture):
        return {Pos(i, j): p[i, j] for i in range(p.rows) for j in range(p.cols)}
    if isinstance(p, Picture):
        return {Pos(i, j): p[i, j] for i in range(1, p.rows + 1) for j in range(1, p.cols + 1)}
    raise TypeError(f"expected a picture, got {type(p).__name__}")


def picture_dag(p) -> Dag:
    """Edgeless picture DAG: one vertex per position, no edges."""
    return _grid_dag(position_labels(p), [])


def encode(p, kind: EncodingKind) -> Dag:
    """Input-agnostic encoding of a picture or boundary picture.

    Edges incident to frame positions are dropped when ``p`` has no frame.
    """
    labels = position_labels(p)
    inner = p.inner if isinstance(p, BoundaryPicture) else p
    return _grid_dag(labels, _edge_pairs(kind, inner.rows, inner.cols))


def grid_shape(d: Dag):
    """``(m, n, framed)`` for a DAG whose vertices form a full position grid."""
    vs = list(d.labels)
    if not vs:
        return 0, 0, False
    if not all(isinstance(v, Pos) for v in vs):
        raise ValueError("vertex set contains non-position vertices")
    r0 = min(v.row for v in vs)
    c0 = min(v.col for v in vs)
    r1 = max(v.row for v in vs)
    c1 = max(v.col for v in vs)
    if (r0, c0) not in ((0, 0), (1, 1)):
        raise ValueError("grid must start at (0,0) or (1,1)")
    if len(vs) != (r1 - r0 + 1) * (c1 - c0 + 1):
        raise ValueError("vertex set is not a full rectangle")
    framed = r0 == 0
    if framed:
        return r1 - 1, c1 - 1, True
    return r1, c1, False


def reencode(d: Dag, kind: EncodingKind) -> Dag:
    """Replace the edges of a position DAG by those of ``kind``."""
    m, n, framed = grid_shape(d)
    if not d.labels:
        return Dag({}, {}, {}, {}, {})
    return _grid_dag(dict(d.labels), _edge_pairs(kind, m, n))


@dataclass(frozen=True)
class RankedAlphabet:
    """Symbols with an (in-rank, out-rank) pair each."""

    ranks: dict = field(default_factory=dict)

    def __post_init__(self):
        for s, r in self.ranks.items():
            if len(r) != 2 or min(r) < 0:
                raise ValueError(f"bad rank for {s!r}: {r!r}")
        object.__setattr__(self, "ranks", {s: (int(r[0]), int(r[1])) for s, r in self.ranks.items()})

    @property
    def alphabet(self):
        return frozenset(self.ranks)

    def rank(self, symbol):
        try:
            return self.ranks[symbol]
        except KeyError:
            raise KeyError(f"symbol {symbol!r} has no rank") from None

    def balance(self, labels):
        """(total in-rank, total out-rank) over a multiset of labels."""
        tot_in = tot_out = 0
        for s in labels:
            i, o = self.rank(s)
            tot_in += i
            tot_out += o
        return tot_in, tot_out


def driven_slots(base: Dag, ranks: RankedAlphabet):
    out_slots = []
    in_slots = []
    for v in base.sorted_vertices():
        rin, rout = ranks.rank(base.labels[v])
        out_slots += [(v, k) for k in range(rout)]
        in_slots += [(v, k) for k in range(rin)]
    return out_slots, in_slots


def next_edge_ids(d: Dag, count):
    ids = list(d.src)
    if all(isinstance(e, int) for e in ids):
        start = max(ids, default=-1) + 1
        return list(range(start, start + count))
    return [f"d{k}" for k in range(count)]


def attach_driven(base: Dag, wiring):
    """Append driven edges ``(u, out_index, v, in_index)`` to ``base``.

    Driven edges follow the base edges in every in/out sequence, ordered
    by slot index.
    """
    ids = next_edge_ids(base, len(wiring))
    src, tar = dict(base.src), dict(base.tar)
    extra_in, extra_out = {}, {}
    for e, (u, ko, v, ki) in zip(ids, wiring):
        src[e], tar[e] = u, v
        extra_out.setdefault(u, {})[ko] = e
        extra_in.setdefault(v, {})[ki] = e
    ins = {v: tuple(base.ins.get(v, ())) + tuple(e for _, e in sorted(extra_in.get(v, {}).items()))
           for v in base.labels}
    outs = {v: tuple(base.outs.get(v, ())) + tuple(e for _, e in sorted(extra_out.get(v, {}).items()))
            for v in base.labels}
    return Dag(dict(base.labels), src, tar, ins, outs), ids


def driven_instances(base: Dag, ranks: RankedAlphabet):
    """Every DAG obtained by an acyclic bijective wiring of driven slots.

    Yields nothing when the ranks are unbalanced or every wiring closes a
    cycle.  Distinct slot bijections give distinct DAGs, so nothing is
    deduplicated.
    """
    if validate(base):
        raise ValueError("base is not a well-formed DAG")
    out_slots, in_slots = driven_slots(base, ranks)
    if len(out_slots) != len(in_slots):
        return
    succ = {v: set(base.successors(v)) for v in base.labels}

    def reaches(a, b):
        seen, todo = {a}, [a]
        while todo:
            x = todo.pop()
            if x == b:
                return True
            for y in succ[x]:
                if y not in seen:
                    seen.add(y)
                    todo.append(y)
        return False

    used = [False] * len(in_slots)
    chosen = []

    def rec(k):
        if k == len(out_slots):
            yield attach_driven(base, list(chosen))[0]
            return
        u, ko = out_slots[k]
        for idx, (v, ki) in enumerate(in_slots):
            if used[idx] or v == u or reaches(v, u):
                continue
            used[idx] = True
            fresh = v not in succ[u]
            succ[u].add(v)
            chosen.append((u, ko, v, ki))
            yield from rec(k + 1)
            chosen.pop()
            if fresh:
                succ[u].discard(v)
            used[idx] = False

    yield from rec(0)
