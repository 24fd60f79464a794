"""Constructive translations between string/picture machines and DAG automata."""
from __future__ import annotations

from dataclasses import dataclass

from .automaton import DagAutomaton, Rule, find_run, rule_key
from .encodings import EncodingKind, encode
from .machines import Nfa, Ota
from .picture import BORDER, EMPTY_PICTURE, boundary


def fresh(name, taken):
    while name in taken:
        name += "'"
    return name


def nfa_to_dag(a: Nfa, bare: bool = False) -> DagAutomaton:
    """DAG automaton accepting the string DAG of ``w`` iff ``a`` accepts ``w``.

    Each edge of the string DAG carries the NFA state reached after its
    source symbol.  Unless ``bare``, single-vertex strings get
    ``(λ→σ→λ)`` rules and the empty string is handled by the empty-graph
    rule.
    """
    rules = set()
    for p, s, q in a.delta:
        rules.add(Rule((p,), s, (q,)))
        if p in a.start:
            rules.add(Rule((), s, (q,)))
        if q in a.finals:
            rules.add(Rule((p,), s, ()))
            if not bare and p in a.start:
                rules.add(Rule((), s, ()))
    empty = bool(a.start & a.finals) and not bare
    return DagAutomaton.make(rules, accepts_empty_graph=empty,
                             states=a.states, alphabet=a.alphabet)


def dag_to_nfa(a: DagAutomaton, bare: bool = False) -> Nfa:
    """NFA accepting ``w`` iff ``a`` has a run on the string DAG of ``w``."""
    q0 = fresh("q0", a.states)
    qf = fresh("qf", a.states | {q0})
    delta = set()
    for r in a.rules:
        h, t = len(r.head), len(r.tail)
        if h == 1 and t == 1:
            delta.add((r.head[0], r.label, r.tail[0]))
        elif h == 0 and t == 1:
            delta.add((q0, r.label, r.tail[0]))
        elif h == 1 and t == 0:
            delta.add((r.head[0], r.label, qf))
        elif h == 0 and t == 0 and not bare:
            delta.add((q0, r.label, qf))
    finals = {qf}
    if a.accepts_empty_graph and not bare:
        finals.add(q0)
    return Nfa.make(delta, {q0}, finals, states=a.states | {q0, qf},
                    alphabet=a.alphabet)


class NotInNormalForm(ValueError):
    def __init__(self, offending=(), missing=(), reason=None):
        self.offending = list(offending)
        self.missing = list(missing)
        self.reason = reason
        parts = [reason] if reason else []
        if self.offending:
            parts.append("offending: " + "; ".join(map(str, self.offending)))
        if self.missing:
            parts.append("missing: " + "; ".join(map(str, self.missing)))
        super().__init__("not in boundary normal form (" + ", ".join(parts) + ")")


@dataclass(frozen=True)
class BoundaryNormalForm:
    """Border states: ``qz`` on the top/left frame, ``qf`` on the bottom/right."""

    qz: str
    qf: str | None = None

    def frame_rules(self):
        z = self.qz
        return {Rule((), BORDER, (z, z)), Rule((z,), BORDER, (z, z))}

    def strict_rules(self):
        z, f = self.qz, self.qf if self.qf is not None else self.qz
        return {
            Rule((), BORDER, (z, z)), Rule((z,), BORDER, (z, z)), Rule((z,), BORDER, (z,)),
            Rule((z, f), BORDER, (f,)), Rule((f, z), BORDER, (f,)),
            Rule((f, f), BORDER, (f,)), Rule((f, f), BORDER, ()),
        }


def normal_form_violations(a: DagAutomaton, nf: BoundaryNormalForm, strict: bool = False):
    """``(offending, missing)`` border rules with respect to ``nf``.

    The default check asks only that the top and left frame be labeled
    uniformly by ``qz``: the border rules with two outgoing edges are
    exactly ``(λ→#→qz qz)`` and ``(qz→#→qz qz)``.  ``strict`` additionally
    restricts every border rule to the fixed ``qz``/``qf`` set.
    """
    border = [r for r in a.sorted_rules() if r.label == BORDER]
    required = nf.frame_rules()
    if strict:
        allowed = nf.strict_rules()
        offending = [r for r in border if r not in allowed]
    else:
        offending = [r for r in border
                     if (len(r.tail) == 2 and r not in required) or len(r.tail) > 2 or len(r.head) > 2]
    missing = sorted(required - set(border), key=rule_key)
    return offending, missing


def infer_normal_form(a: DagAutomaton) -> BoundaryNormalForm:
    roots = [r for r in a.rules if r.label == BORDER and not r.head and len(r.tail) == 2
             and r.tail[0] == r.tail[1]]
    if len(roots) != 1:
        raise NotInNormalForm(offending=roots, reason=f"expected one root rule (λ→{BORDER}→q q), "
                                                      f"found {len(roots)}")
    return BoundaryNormalForm(roots[0].tail[0])


def nda_to_ota(a: DagAutomaton, nf: BoundaryNormalForm | None = None, strict: bool = False,
               start_name="init") -> Ota:
    """Online tessellation automaton equivalent to ``a`` under the grid encoding.

    A cell state ``(d, r, rc, bc)`` stores the labels ``d`` and ``r`` of
    the cell's down and right edges.  The successor reads only the down
    label of the cell above and the right label of the cell to the left.
    ``rc`` is the label the right frame would carry below this row if this
    column were the last one, and ``bc`` the label the bottom frame would
    carry after this column if this row were the last; ``None`` marks an
    impossible frame.  A final cell has a corner rule for ``(bc, rc)``.
    """
    nf = nf or infer_normal_form(a)
    offending, missing = normal_form_violations(a, nf, strict)
    if offending or missing:
        raise NotInNormalForm(offending, missing)
    z = nf.qz
    sigma = sorted(a.alphabet - {BORDER})
    corner = sorted({r.tail[0] for r in a.rules
                     if r.label == BORDER and r.head == (z,) and len(r.tail) == 1})
    absorb = {}
    for r in a.rules:
        if r.label == BORDER and len(r.head) == 2 and len(r.tail) == 1:
            absorb.setdefault(r.head, set()).add(r.tail[0])
    leaf = {r.head for r in a.rules if r.label == BORDER and len(r.head) == 2 and not r.tail}

    def frame_step(left, up):
        if left is None or up is None:
            return [None]
        outs = absorb.get((left, up))
        return sorted(outs) if outs else [None]

    start = start_name
    while any(start == q for q in a.states):
        start += "'"

    def successors(up, left, s):
        if up == start:
            up_d, rc_up = z, corner or [None]
        else:
            up_d, rc_up = up[0], [up[2]]
        if left == start:
            left_r, bc_left = z, corner or [None]
        else:
            left_r, bc_left = left[1], [left[3]]
        out = set()
        for r in a.rules_of_shape(s, 2, 2):
            if r.head != (left_r, up_d):
                continue
            d, rr = r.tail
            for x in rc_up:
                for rc in frame_step(rr, x):
                    for y in bc_left:
                        for bc in frame_step(y, d):
                            out.add((d, rr, rc, bc))
        return frozenset(out)

    states = {start}
    delta = {}
    todo = [start]
    seen_pairs = set()
    while todo:
        todo = []
        for u in sorted(states, key=repr):
            for l in sorted(states, key=repr):
                if (u, l) in seen_pairs:
                    continue
                seen_pairs.add((u, l))
                for s in sigma:
                    qs = successors(u, l, s)
                    if qs:
                        delta[u, l, s] = qs
                        for q in qs:
                            if q not in states:
                                todo.append(q)
        states |= set(todo)
    finals = {q for q in states if q != start and q[2] is not None and q[3] is not None
              and (q[3], q[2]) in leaf}
    if find_run(a, encode(boundary(EMPTY_PICTURE), EncodingKind.COO)) is not None:
        finals.add(start)
    return Ota(frozenset(sigma), frozenset(states), start, frozenset(finals), delta)


def ota_to_nda(m: Ota) -> DagAutomaton:
    """DAG automaton equivalent to ``m`` under the grid encoding of framed pictures.

    Every picture edge carries the tessellation state of its source.  The
    cell that holds the final state guesses it is the bottom-right corner
    and emits ``qf`` on both edges; ``qf`` may only flow along the frame
    into the corner.  Other right/bottom frame edges carry ``qy``, kept
    apart from the start state so the empty-picture corner rule cannot
    fire on a nonempty picture.
    """
    z = m.start
    f = fresh("qf", m.states)
    y = fresh("qy", m.states | {f})
    rules = {
        Rule((), BORDER, (z, z)),
        Rule((z,), BORDER, (z, z)),
        Rule((z,), BORDER, (z,)),
        Rule((f, f), BORDER, ()),
    }
    for (up, left, s), qs in m.delta.items():
        for q in qs:
            rules.add(Rule((left, up), s, (q, q)))
            if q in m.finals:
                rules.add(Rule((left, up), s, (f, f)))
    for q in m.states:
        for above in (z, y):
            rules.add(Rule((q, above), BORDER, (y,)))   # right column
            rules.add(Rule((above, q), BORDER, (y,)))   # bottom row
    for before in (z, y):
        rules.add(Rule((f, before), BORDER, (f,)))
        rules.add(Rule((before, f), BORDER, (f,)))
    if z in m.finals:
        rules.add(Rule((z, z), BORDER, ()))
    return DagAutomaton.make(rules, states=set(m.states) | {f, y},
                             alphabet=set(m.alphabet) | {BORDER})
