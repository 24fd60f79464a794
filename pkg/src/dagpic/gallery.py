"""Example automata, each paired with a brute-force membership oracle.

Rule sets that needed completing to match their languages:

* ``anbn``: the first ``a`` has an outgoing string edge and a driven edge,
  so its rule is ``(λ→a→a p)``.
* ``anbncn``: ``(b q→c→λ)`` covers ``n = 1``, where the only ``c`` is
  entered from a ``b``.
* ``dia``: length-one diagonals run straight from frame to frame, so the
  frame sinks accept any colour ``(σ→#→λ)`` and interior vertices always
  pass their own colour on.  The two frame corners that lie on no
  diagonal need ``(λ→#→λ)``.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

from .automaton import DagAutomaton, accepts, accepts_driven, rule
from .encodings import EncodingKind, RankedAlphabet, encode, picture_dag
from .graph import string_dag
from .machines import Nfa, Ota
from .picture import BORDER, Picture, boundary


@dataclass(frozen=True)
class GalleryEntry:
    name: str
    automaton: DagAutomaton
    oracle: Callable
    domain: str  # "string" or "picture"
    alphabet: tuple
    kind: EncodingKind | None = None
    framed: bool = False
    ranks: RankedAlphabet | None = None
    require_connected: bool = False

    @property
    def driven(self):
        return self.ranks is not None

    def base(self, x):
        if self.domain == "string":
            return string_dag(tuple(x))
        p = boundary(x) if self.framed else x
        return encode(p, self.kind) if self.kind is not None else picture_dag(p)

    def accepts(self, x) -> bool:
        d = self.base(x)
        if self.driven:
            return accepts_driven(self.automaton, d, self.ranks, self.require_connected)
        return accepts(self.automaton, d, self.require_connected)


def _is_anbn(w):
    n = len(w) // 2
    return n >= 1 and tuple(w) == ("a",) * n + ("b",) * n


def _is_anbncn(w):
    n = len(w) // 3
    return n >= 1 and len(w) == 3 * n and tuple(w) == ("a",) * n + ("b",) * n + ("c",) * n


def diagonals_constant(p: Picture) -> bool:
    m, n = p.dims
    for i in range(1, m + 1):
        for j in range(1, n + 1):
            k = 1
            while i + k <= m and j + k <= n:
                if p[i, j] != p[i + k, j + k]:
                    return False
                k += 1
    return True


def balanced(p: Picture) -> bool:
    s = p.symbols()
    return p.rows >= 1 and s.count("a") == s.count("b") and len(s) == s.count("a") + s.count("b")


def ballot_extension_exists(p: Picture) -> bool:
    """Some row/column-monotone reading of ``p`` keeps #a >= #b on every prefix, ending equal.

    The empty picture qualifies vacuously.
    """
    if p.rows == 0:
        return True
    if not balanced(p):
        return False
    m, n = p.dims

    def rec(heights, excess):
        # heights[j]: cells already read in column j (a staircase)
        if all(h == m for h in heights):
            return excess == 0
        for j in range(n):
            h = heights[j]
            if h < m and (j == 0 or heights[j - 1] > h):
                step = 1 if p[h + 1, j + 1] == "a" else -1
                if excess + step >= 0:
                    nxt = heights[:j] + (h + 1,) + heights[j + 1:]
                    if rec(nxt, excess + step):
                        return True
        return False

    return rec((0,) * n, 0)


def _anbn():
    rules = [rule("", "a", "a p"), rule("a", "a", "a p"), rule("a p", "b", "b"),
             rule("b p", "b", "b"), rule("a p", "b", ""), rule("b p", "b", "")]
    return GalleryEntry("anbn", DagAutomaton.make(rules), _is_anbn, "string", ("a", "b"),
                        ranks=RankedAlphabet({"a": (0, 1), "b": (1, 0)}))


def _anbncn():
    rules = [rule("", "a", "a p"), rule("a", "a", "a p"), rule("a p", "b", "b q"),
             rule("b p", "b", "b q"), rule("b q", "c", "c"), rule("c q", "c", "c"),
             rule("c q", "c", ""), rule("b q", "c", "")]
    return GalleryEntry("anbncn", DagAutomaton.make(rules), _is_anbncn, "string", ("a", "b", "c"),
                        ranks=RankedAlphabet({"a": (0, 1), "b": (1, 1), "c": (1, 0)}))


def dia_automaton(alphabet=("a", "b")):
    rules = [rule("", BORDER, BORDER), rule(BORDER, BORDER, ""), rule("", BORDER, "")]
    for s in alphabet:
        rules += [rule(BORDER, s, s), rule(s, s, s), rule(s, BORDER, "")]
    return DagAutomaton.make(rules)


def literal_dia_automaton(alphabet=("a", "b")):
    """The diagonal rules exactly as first stated, kept for comparison."""
    rules = [rule("", BORDER, BORDER), rule(BORDER, BORDER, "")]
    for s in alphabet:
        rules += [rule(BORDER, s, s), rule(s, s, s), rule(s, s, BORDER)]
    return DagAutomaton.make(rules)


def _dia():
    return GalleryEntry("dia", dia_automaton(), diagonals_constant, "picture", ("a", "b"),
                        kind=EncodingKind.DIA, framed=True)


def _balance():
    rules = [rule("", "a", "p"), rule("p", "b", "")]
    return GalleryEntry("balance", DagAutomaton.make(rules), balanced, "picture", ("a", "b"),
                        ranks=RankedAlphabet({"a": (0, 1), "b": (1, 0)}))


def _balance_coo():
    rules = [rule("", BORDER, "z z"), rule("z", BORDER, "z z"), rule("z", BORDER, "z"),
             rule("z z", BORDER, "z"), rule("z z", BORDER, ""),
             rule("z z", "a", "z z p"), rule("z z p", "b", "z z"),
             # inert under fixed ranks: b never has a driven out-slot
             rule("", "b", "p'"), rule("p'", "a", "")]
    ranks = RankedAlphabet({"a": (0, 1), "b": (1, 0), BORDER: (0, 0)})
    return GalleryEntry("balance-coo", DagAutomaton.make(rules), ballot_extension_exists, "picture",
                        ("a", "b"), kind=EncodingKind.COO, framed=True, ranks=ranks)


# -- tessellation and string-machine fixtures --------------------------------

def ota_universal(alphabet=("a", "b")) -> Ota:
    return Ota.make({("q", "q", s): "q" for s in alphabet}, "q", {"q"}, alphabet=alphabet)


def ota_contains_b(alphabet=("a", "b")) -> Ota:
    delta = {}
    for up in ("n", "y"):
        for left in ("n", "y"):
            for s in alphabet:
                delta[up, left, s] = "y" if "y" in (up, left) or s == "b" else "n"
    return Ota.make(delta, "n", {"y"}, alphabet=alphabet)


def ota_corners_equal(alphabet=("a", "b")) -> Ota:
    """Each cell state is (top-left symbol, own symbol); final when they match."""
    start = "q0"
    inner = [(t, c) for t in alphabet for c in alphabet]
    delta = {}
    for s in alphabet:
        delta[start, start, s] = (s, s)
        for q in inner:
            delta[start, q, s] = (q[0], s)
            delta[q, start, s] = (q[0], s)
            for r in inner:
                if q[0] == r[0]:
                    delta[q, r, s] = (q[0], s)
    return Ota.make(delta, start, {(t, t) for t in alphabet}, alphabet=alphabet)


OTA_FIXTURES = {"universal": ota_universal, "contains-b": ota_contains_b,
                "corners-equal": ota_corners_equal}


def contains_b(p: Picture) -> bool:
    return "b" in p.symbols()


def corners_equal(p: Picture) -> bool:
    return p.rows >= 1 and p[1, 1] == p[p.rows, p.cols]


OTA_ORACLES = {"universal": lambda p: True, "contains-b": contains_b,
               "corners-equal": corners_equal}


def dfa_fixtures() -> dict:
    """Small complete DFAs over {a, b}."""
    even_a = Nfa.make([("e", "a", "o"), ("o", "a", "e"), ("e", "b", "e"), ("o", "b", "o")],
                      {"e"}, {"e"})
    ends_b = Nfa.make([("x", "a", "x"), ("x", "b", "y"), ("y", "a", "x"), ("y", "b", "y")],
                      {"x"}, {"y"})
    has_ab = Nfa.make([("s", "a", "t"), ("s", "b", "s"), ("t", "a", "t"), ("t", "b", "u"),
                       ("u", "a", "u"), ("u", "b", "u")], {"s"}, {"u"})
    return {"even-a": even_a, "ends-b": ends_b, "has-ab": has_ab}


_BUILDERS = {"anbn": _anbn, "anbncn": _anbncn, "dia": _dia, "balance": _balance,
             "balance-coo": _balance_coo}

NAMES = tuple(_BUILDERS)
CORE = ("anbn", "anbncn", "dia", "balance")


def gallery(name: str) -> GalleryEntry:
    try:
        return _BUILDERS[name]()
    except KeyError:
        raise KeyError(f"unknown gallery entry {name!r}; known: {', '.join(NAMES)}") from None
