"""Exhaustive (or sampled) equivalence sweeps over pictures and strings."""
from __future__ import annotations

import itertools
import random
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Callable

from .automaton import DagAutomaton, accepts, accepts_driven
from .encodings import EncodingKind, RankedAlphabet, encode, picture_dag
from .graph import string_dag
from .machines import Nfa, Ota, Strategy, ota_accepts, scan_accepts
from .picture import BORDER, EMPTY_PICTURE, Picture, boundary, render_picture, shapes


class AlphabetMismatch(ValueError):
    pass


@dataclass(frozen=True)
class SweepConfig:
    """Bounds and scheduling for an equivalence sweep."""

    max_rows: int = 3
    max_cols: int = 3
    max_len: int = 8
    min_len: int = 0
    sample: int | None = None
    seed: int = 0
    jobs: int = 1


@dataclass
class EquivReport:
    checked: int
    agreements: int
    first_counterexample: object = None
    elapsed: float = field(default=0.0, compare=False)
    first_index: int | None = None

    @property
    def ok(self) -> bool:
        return self.agreements == self.checked

    def summary(self) -> str:
        status = "PASS" if self.ok else "FAIL"
        line = f"{status} checked={self.checked} agreements={self.agreements}"
        if not self.ok:
            line += f" first_counterexample={_show(self.first_counterexample)}"
        return line


def _show(x):
    if isinstance(x, Picture):
        return "[" + render_picture(x).strip().replace("\n", " / ") + "]"
    return '"' + "".join(x) + '"'


# -- index space -------------------------------------------------------------

class PictureSpace:
    """Pictures within bounds, addressable by their enumeration index."""

    def __init__(self, alphabet, max_rows, max_cols):
        self.sigma = sorted(set(alphabet))
        self.blocks = []  # (first index, m, n, count)
        total = 0
        for m, n in shapes(max_rows, max_cols):
            count = 1 if m == 0 else len(self.sigma) ** (m * n)
            self.blocks.append((total, m, n, count))
            total += count
        self.size = total

    def __getitem__(self, index):
        for first, m, n, count in self.blocks:
            if index < first + count:
                if m == 0:
                    return EMPTY_PICTURE
                k = len(self.sigma)
                offset = index - first
                flat = []
                for _ in range(m * n):
                    offset, digit = divmod(offset, k)
                    flat.append(self.sigma[digit])
                flat.reverse()
                return Picture(tuple(tuple(flat[i * n:(i + 1) * n]) for i in range(m)))
        raise IndexError(index)


class StringSpace:
    """Strings of length ``min_len..max_len`` in length-then-lex order."""

    def __init__(self, alphabet, max_len, min_len=0):
        self.sigma = sorted(set(alphabet))
        self.blocks = []
        total = 0
        for n in range(min_len, max_len + 1):
            count = len(self.sigma) ** n
            self.blocks.append((total, n, count))
            total += count
        self.size = total

    def __getitem__(self, index):
        for first, n, count in self.blocks:
            if index < first + count:
                offset, k, out = index - first, len(self.sigma), []
                for _ in range(n):
                    offset, digit = divmod(offset, k)
                    out.append(self.sigma[digit])
                return tuple(reversed(out))
        raise IndexError(index)


# -- sides -------------------------------------------------------------------

@dataclass(frozen=True)
class DagSide:
    automaton: DagAutomaton
    kind: EncodingKind | None
    framed: bool
    require_connected: bool
    ranks: RankedAlphabet | None = None

    def __call__(self, p):
        src = boundary(p) if self.framed else p
        d = picture_dag(src) if self.kind is None else encode(src, self.kind)
        if self.ranks is not None:
            return accepts_driven(self.automaton, d, self.ranks, self.require_connected)
        return accepts(self.automaton, d, self.require_connected)


@dataclass(frozen=True)
class OtaSide:
    machine: Ota

    def __call__(self, p):
        return ota_accepts(self.machine, p)


@dataclass(frozen=True)
class ScanSide:
    machine: Nfa
    strategy: Strategy

    def __call__(self, p):
        return scan_accepts(self.machine, p, self.strategy)


def picture_side(other) -> tuple[Callable, frozenset | None]:
    """Normalize ``other`` to a predicate plus its declared picture alphabet."""
    if isinstance(other, Ota):
        return OtaSide(other), frozenset(other.alphabet)
    if isinstance(other, tuple) and len(other) == 2 and isinstance(other[0], Nfa):
        nfa, strategy = other
        return ScanSide(nfa, Strategy(strategy)), frozenset(nfa.alphabet - {BORDER})
    if callable(other):
        return other, None
    raise TypeError(f"cannot compare against {type(other).__name__}")


# -- sweeps ------------------------------------------------------------------

def _batch(left, right, space, indices):
    agree, first = 0, None
    for i in indices:
        x = space[i]
        if left(x) == right(x):
            agree += 1
        elif first is None:
            first = i
    return agree, first


def sweep(left, right, space, sample=None, seed=0, jobs=1) -> EquivReport:
    """Compare two predicates over ``space``; the counterexample is the lowest index."""
    t0 = time.perf_counter()
    if sample is not None and sample < space.size:
        indices = sorted(random.Random(seed).sample(range(space.size), sample))
    else:
        indices = range(space.size)
    indices = list(indices)
    if jobs > 1 and len(indices) > 1:
        size = -(-len(indices) // (4 * jobs))
        chunks = [indices[k:k + size] for k in range(0, len(indices), size)]
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            parts = list(pool.map(_batch, itertools.repeat(left), itertools.repeat(right),
                                  itertools.repeat(space), chunks))
    else:
        parts = [_batch(left, right, space, indices)]
    agreements = sum(a for a, _ in parts)
    firsts = [f for _, f in parts if f is not None]
    first = min(firsts) if firsts else None
    return EquivReport(len(indices), agreements, None if first is None else space[first],
                       time.perf_counter() - t0, first)


def check_equiv(nda: DagAutomaton, other, kind: EncodingKind = EncodingKind.COO,
                boundary: bool = True, alphabet=None, max_rows: int = 3, max_cols: int = 3,
                require_connected: bool = True, ranks: RankedAlphabet | None = None,
                sample: int | None = None, seed: int = 0, jobs: int = 1) -> EquivReport:
    """Compare ``nda`` under ``kind`` with a picture automaton on every bounded picture."""
    right, other_sigma = picture_side(other)
    nda_sigma = frozenset(nda.alphabet - {BORDER})
    if other_sigma is not None and nda_sigma and other_sigma and nda_sigma != other_sigma:
        raise AlphabetMismatch(f"alphabets differ: {sorted(nda_sigma)} vs {sorted(other_sigma)}")
    if alphabet is None:
        alphabet = nda_sigma | (other_sigma or frozenset())
    if not alphabet:
        raise ValueError("no picture alphabet given or declared")
    left = DagSide(nda, kind, boundary, require_connected, ranks)
    return sweep(left, right, PictureSpace(alphabet, max_rows, max_cols), sample, seed, jobs)


@dataclass(frozen=True)
class _StringDagSide:
    automaton: DagAutomaton
    require_connected: bool

    def __call__(self, w):
        return accepts(self.automaton, string_dag(w), self.require_connected)


def check_string_equiv(nda: DagAutomaton, predicate, alphabet, max_len: int, min_len: int = 0,
                       require_connected: bool = True) -> EquivReport:
    return sweep(_StringDagSide(nda, require_connected), predicate,
                 StringSpace(alphabet, max_len, min_len))


@dataclass(frozen=True)
class _EntrySide:
    entry: object

    def __call__(self, x):
        return self.entry.accepts(x)


def check_gallery(entry, config: SweepConfig = SweepConfig()) -> EquivReport:
    """Sweep a gallery entry against its oracle over its natural domain."""
    if entry.domain == "string":
        space = StringSpace(entry.alphabet, config.max_len, config.min_len)
    else:
        space = PictureSpace(entry.alphabet, config.max_rows, config.max_cols)
    return sweep(_EntrySide(entry), entry.oracle, space, config.sample, config.seed, config.jobs)
