"""Classical machines: NFAs, RFA/BFA scanning, online tessellation automata."""
from __future__ import annotations

import enum
from dataclasses import dataclass

from .encodings import bfa_path, rfa_path
from .graph import Pos
from .picture import BORDER, BoundaryPicture, Picture, boundary


@dataclass(frozen=True)
class Nfa:
    states: frozenset
    alphabet: frozenset
    delta: frozenset  # (state, symbol, state)
    start: frozenset
    finals: frozenset

    @classmethod
    def make(cls, delta, start, finals, states=(), alphabet=()):
        delta = frozenset(tuple(t) for t in delta)
        st = set(states) | set(start) | set(finals)
        al = set(alphabet)
        for p, a, q in delta:
            st |= {p, q}
            al.add(a)
        return cls(frozenset(st), frozenset(al), delta, frozenset(start), frozenset(finals))

    @property
    def deterministic(self) -> bool:
        seen = set()
        for p, a, _ in self.delta:
            if (p, a) in seen:
                return False
            seen.add((p, a))
        return len(self.start) == 1

    def step(self, current, symbol):
        return frozenset(q for p, a, q in self.delta if p in current and a == symbol)


def nfa_accepts(a: Nfa, w, strict: bool = False) -> bool:
    """Subset simulation; unknown symbols reject, or raise when ``strict``."""
    current = a.start
    for s in w:
        if s not in a.alphabet:
            if strict:
                raise ValueError(f"symbol {s!r} not in alphabet")
            return False
        current = a.step(current, s)
        if not current:
            return False
    return bool(current & a.finals)


class Strategy(enum.Enum):
    RFA_ROWS = "rfa"
    BFA_ROWS = "bfa"
    RFA_DIAG_SE = "diag"
    RFA_DIAG_ANTI = "antidiag"


def scan_order(m, n, strategy: Strategy):
    """Positions of the framed ``(m+2) x (n+2)`` grid in scanning order."""
    if strategy is Strategy.RFA_ROWS:
        return rfa_path(m, n)
    if strategy is Strategy.BFA_ROWS:
        return bfa_path(m, n)
    if strategy is Strategy.RFA_DIAG_SE:
        # southeast diagonals, the top-right one first; each read downward
        cells = [Pos(i, j) for i in range(m + 2) for j in range(n + 2)]
        return sorted(cells, key=lambda p: (p.row - p.col, p.col))
    if strategy is Strategy.RFA_DIAG_ANTI:
        # anti-diagonals from the top-left corner; each read downward
        cells = [Pos(i, j) for i in range(m + 2) for j in range(n + 2)]
        return sorted(cells, key=lambda p: (p.row + p.col, p.row))
    raise ValueError(strategy)


def squeeze(seq):
    """Collapse runs of consecutive border symbols to a single one."""
    out = []
    for s in seq:
        if s == BORDER and out and out[-1] == BORDER:
            continue
        out.append(s)
    return out


def serialize(bp: BoundaryPicture, strategy: Strategy, squeezed: bool = False):
    m, n = bp.inner.dims
    seq = [bp[p.row, p.col] for p in scan_order(m, n, strategy)]
    return squeeze(seq) if squeezed else seq


def scan_accepts(a: Nfa, p: Picture, strategy: Strategy = Strategy.RFA_ROWS, squeezed=False) -> bool:
    return nfa_accepts(a, serialize(boundary(p), strategy, squeezed))


def rfa_accepts(a: Nfa, p: Picture, strategy: Strategy = Strategy.RFA_ROWS, squeezed=False) -> bool:
    return scan_accepts(a, p, strategy, squeezed)


def bfa_accepts(a: Nfa, p: Picture, squeezed=False) -> bool:
    return scan_accepts(a, p, Strategy.BFA_ROWS, squeezed)


@dataclass(frozen=True)
class Ota:
    """Two-dimensional online tessellation automaton.

    ``delta`` maps ``(up, left, symbol)`` to a frozenset of states.
    """

    alphabet: frozenset
    states: frozenset
    start: object
    finals: frozenset
    delta: dict

    @classmethod
    def make(cls, delta, start, finals, states=(), alphabet=()):
        table = {}
        st = set(states) | {start} | set(finals)
        al = set(alphabet)
        for (u, l, s), qs in delta.items():
            # tuples are single (composite) states; sets and lists are alternatives
            qs = frozenset(qs) if isinstance(qs, (set, frozenset, list)) else frozenset([qs])
            table[u, l, s] = qs
            st |= {u, l} | qs
            al.add(s)
        return cls(frozenset(al), frozenset(st), start, frozenset(finals), table)

    @property
    def deterministic(self) -> bool:
        return all(len(qs) <= 1 for qs in self.delta.values())

    def next(self, up, left, symbol):
        return self.delta.get((up, left, symbol), frozenset())


def ota_accepts(m: Ota, p: Picture) -> bool:
    """Row-by-row DP over the set of reachable state rows."""
    rows, cols = p.dims
    if rows == 0:
        return m.start in m.finals
    frontier = {(m.start,) * cols}
    for i in range(1, rows + 1):
        nxt = set()
        for above in frontier:
            partial = {()}
            for j in range(1, cols + 1):
                grown = set()
                for row in partial:
                    left = row[-1] if row else m.start
                    for q in m.next(above[j - 1], left, p[i, j]):
                        grown.add(row + (q,))
                partial = grown
                if not partial:
                    break
            nxt |= partial
        frontier = nxt
        if not frontier:
            return False
    return any(row[-1] in m.finals for row in frontier)
