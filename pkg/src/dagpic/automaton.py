"""DAG automata: rules, runs, acceptance, determinism and rule cycles.

A run labels every edge with a state so that at each vertex ``v`` the
triple (labels of in(v), label of v, labels of out(v)) is a rule.
"""
from __future__ import annotations

import sys
from collections import Counter, defaultdict, deque
from dataclasses import dataclass
from functools import cached_property
from typing import NamedTuple

from .encodings import RankedAlphabet, attach_driven, driven_instances
from .graph import Dag, is_connected

LAMBDA = ()


class Rule(NamedTuple):
    head: tuple
    label: str
    tail: tuple

    def __str__(self):
        h = " ".join(self.head) or "_"
        t = " ".join(self.tail) or "_"
        return f"{h} -> {self.label} -> {t}"


def rule(head, label, tail) -> Rule:
    """``rule("a p", "b", "")`` or with tuples; ``""``/``"_"`` is λ."""
    def seq(x):
        if isinstance(x, str):
            return tuple(t for t in x.split() if t != "_")
        return tuple(x)
    return Rule(seq(head), label, seq(tail))


def rule_key(r: Rule):
    """Total order on rules whose states may mix strings and tuples."""
    return (tuple(map(repr, r.head)), r.label, tuple(map(repr, r.tail)))


class DeterminismViolated(ValueError):
    pass


@dataclass(frozen=True)
class DagAutomaton:
    states: frozenset
    alphabet: frozenset
    rules: frozenset
    accepts_empty_graph: bool = False

    def __post_init__(self):
        for r in self.rules:
            missing = (set(r.head) | set(r.tail)) - self.states
            if missing:
                raise ValueError(f"rule {r} uses unknown states {sorted(missing)}")
            if r.label not in self.alphabet:
                raise ValueError(f"rule {r} uses unknown symbol {r.label!r}")

    @classmethod
    def make(cls, rules, accepts_empty_graph=False, states=(), alphabet=()):
        rules = frozenset(rules)
        st = set(states)
        al = set(alphabet)
        for r in rules:
            st |= set(r.head) | set(r.tail)
            al.add(r.label)
        return cls(frozenset(st), frozenset(al), rules, accepts_empty_graph)

    @cached_property
    def _tails(self):
        idx = defaultdict(list)
        for r in sorted(self.rules, key=rule_key):
            idx[r.label, r.head, len(r.tail)].append(r.tail)
        return idx

    @cached_property
    def _by_shape(self):
        idx = defaultdict(list)
        for r in sorted(self.rules, key=rule_key):
            idx[r.label, len(r.head), len(r.tail)].append(r)
        return idx

    def tails(self, label, head, out_degree):
        return self._tails.get((label, tuple(head), out_degree), ())

    def rules_of_shape(self, label, in_degree, out_degree):
        return self._by_shape.get((label, in_degree, out_degree), ())

    def sorted_rules(self):
        return sorted(self.rules, key=rule_key)


def check_run(a: DagAutomaton, d: Dag, run) -> bool:
    """Independent verification that ``run`` is a run of ``a`` on ``d``."""
    if not d.labels:
        return a.accepts_empty_graph
    if set(run) != set(d.src):
        return False
    for v, s in d.labels.items():
        r = Rule(tuple(run[e] for e in d.ins.get(v, ())), s,
                 tuple(run[e] for e in d.outs.get(v, ())))
        if r not in a.rules:
            return False
    return True


def _ensure_depth(n):
    need = 4 * n + 200
    if sys.getrecursionlimit() < need:
        sys.setrecursionlimit(need)


def find_run(a: DagAutomaton, d: Dag):
    """A run of ``a`` on ``d`` or ``None``.

    Vertices are visited in topological order; at each step the labels of
    the edges crossing the cut summarize everything the rest of the search
    can see, so failed (step, cut labels) pairs are memoized.
    """
    if not d.labels:
        return {} if a.accepts_empty_graph else None
    order = d.topological_order()
    if order is None:
        raise ValueError("input graph has a cycle")
    cuts = []
    cut = []
    for v in order:
        cuts.append(tuple(cut))
        gone = set(d.ins.get(v, ()))
        cut = [e for e in cut if e not in gone] + list(d.outs.get(v, ()))
    labeling = {}
    failed = set()
    _ensure_depth(len(order))

    def rec(i):
        if i == len(order):
            return True
        key = (i, tuple(labeling[e] for e in cuts[i]))
        if key in failed:
            return False
        v = order[i]
        head = tuple(labeling[e] for e in d.ins.get(v, ()))
        outs = d.outs.get(v, ())
        for tail in a.tails(d.labels[v], head, len(outs)):
            for e, q in zip(outs, tail):
                labeling[e] = q
            if rec(i + 1):
                return True
        for e in outs:
            labeling.pop(e, None)
        failed.add(key)
        return False

    return dict(labeling) if rec(0) else None


def accepts(a: DagAutomaton, d: Dag, require_connected: bool = True) -> bool:
    if require_connected and not is_connected(d):
        return False
    return find_run(a, d) is not None


def is_top_down_deterministic(a: DagAutomaton) -> bool:
    return all(len(ts) <= 1 for ts in a._tails.values())


def find_run_deterministic(a: DagAutomaton, d: Dag):
    """Root-to-leaf run construction for top-down deterministic automata."""
    if not is_top_down_deterministic(a):
        raise DeterminismViolated("automaton is not top-down deterministic")
    if not d.labels:
        return {} if a.accepts_empty_graph else None
    order = d.topological_order()
    if order is None:
        raise ValueError("input graph has a cycle")
    labeling = {}
    for v in order:
        outs = d.outs.get(v, ())
        tails = a.tails(d.labels[v], tuple(labeling[e] for e in d.ins.get(v, ())), len(outs))
        if not tails:
            return None
        for e, q in zip(outs, tails[0]):
            labeling[e] = q
    return labeling


def find_driven_run(a: DagAutomaton, base: Dag, ranks: RankedAlphabet):
    """Jointly search a driven wiring and a run; ``(dag, run)`` or ``None``.

    The search builds a topological order of the final DAG.  A vertex's
    driven in-slots consume state tokens produced by the driven out-slots
    of vertices placed earlier, so every wiring it finds is acyclic, and
    every acyclic wiring with a run is reachable this way.  Vertices with
    no driven in-slots are placed as soon as they are ready, which never
    loses a solution.
    """
    if not base.labels:
        return (base, {}) if a.accepts_empty_graph else None
    rank = {v: ranks.rank(s) for v, s in base.labels.items()}
    if sum(r[0] for r in rank.values()) != sum(r[1] for r in rank.values()):
        return None
    vertices = base.sorted_vertices()
    preds = {v: {base.src[e] for e in base.ins.get(v, ())} for v in vertices}
    labeling = {}
    tokens = Counter()
    done = set()
    trail = []  # (vertex, rule) in placement order
    failed = set()
    _ensure_depth(len(vertices))

    def cut_key():
        return tuple(sorted(((e, q) for e, q in labeling.items()
                             if base.tar[e] not in done), key=lambda x: repr(x[0])))

    def ready():
        return [v for v in vertices if v not in done and preds[v] <= done]

    def place(v, r):
        nb_out = len(base.outs.get(v, ()))
        nb_in = len(base.ins.get(v, ()))
        for e, q in zip(base.outs.get(v, ()), r.tail[:nb_out]):
            labeling[e] = q
        tokens.subtract(r.head[nb_in:])
        tokens.update(r.tail[nb_out:])
        done.add(v)
        trail.append((v, r))

    def unplace(v, r):
        nb_out = len(base.outs.get(v, ()))
        nb_in = len(base.ins.get(v, ()))
        for e in base.outs.get(v, ()):
            labeling.pop(e, None)
        tokens.subtract(r.tail[nb_out:])
        tokens.update(r.head[nb_in:])
        done.discard(v)
        trail.pop()

    def options(v):
        head = tuple(labeling[e] for e in base.ins.get(v, ()))
        rin, rout = rank[v]
        nb_out = len(base.outs.get(v, ()))
        for r in a.rules_of_shape(base.labels[v], len(head) + rin, nb_out + rout):
            if r.head[:len(head)] != head:
                continue
            need = Counter(r.head[len(head):])
            if all(tokens[q] >= k for q, k in need.items()):
                yield r

    def rec():
        if len(done) == len(vertices):
            return True
        key = (frozenset(done), tuple(sorted((q, k) for q, k in tokens.items() if k)), cut_key())
        if key in failed:
            return False
        cand = ready()
        free = [v for v in cand if rank[v][0] == 0]
        for v in (free[:1] or cand):
            for r in list(options(v)):
                place(v, r)
                if rec():
                    return True
                unplace(v, r)
        failed.add(key)
        return False

    if not rec():
        return None
    # turn the placement order into an explicit wiring
    pending = defaultdict(deque)
    wiring = []
    for v, r in trail:
        nb_in = len(base.ins.get(v, ()))
        nb_out = len(base.outs.get(v, ()))
        for ki, q in enumerate(r.head[nb_in:]):
            u, ko = pending[q].popleft()
            wiring.append((u, ko, v, ki))
        for ko, q in enumerate(r.tail[nb_out:]):
            pending[q].append((v, ko))
    dag, ids = attach_driven(base, wiring)
    run = dict(labeling)
    rule_of = dict(trail)
    for e, (u, ko, v, ki) in zip(ids, wiring):
        run[e] = rule_of[u].tail[len(base.outs.get(u, ())) + ko]
    return dag, run


def accepts_driven(a: DagAutomaton, base: Dag, ranks: RankedAlphabet,
                   require_connected: bool = False) -> bool:
    found = find_driven_run(a, base, ranks)
    if found is None:
        return False
    if require_connected:
        # connectivity depends on the wiring; fall back to enumeration
        return any(is_connected(d) and find_run(a, d) is not None
                   for d in driven_instances(base, ranks))
    return True


def rule_cycles(a: DagAutomaton):
    """Elementary rings of rules.

    Rule ``r`` links to rule ``s`` when a state occurs in the tail of ``r``
    and in the head of ``s``; a ring is a simple cycle of such links.
    Each ring is returned once, rotated to start at its smallest rule.
    """
    rules = a.sorted_rules()
    n = len(rules)
    links = [[j for j in range(n) if set(rules[i].tail) & set(rules[j].head)] for i in range(n)]
    rings = []
    for s in range(n):
        # cycles whose smallest index is s
        path = [s]
        on_path = {s}

        def dfs(x):
            for y in links[x]:
                if y == s:
                    rings.append([rules[k] for k in path])
                elif y > s and y not in on_path:
                    path.append(y)
                    on_path.add(y)
                    dfs(y)
                    on_path.discard(y)
                    path.pop()

        dfs(s)
    return rings
