"""Text formats for automata, machines and DAGs.

Automaton file::

    // comment
    alphabet a b          (optional; symbols used only by the alphabet)
    rule _ -> a -> a p    (``_`` is the empty sequence)
    rank a 0 1            (optional; makes the file input-driven)
    empty                 (optional; accept the empty graph)

NFA file: ``start: q0``, ``final: q1 q2`` and transition lines ``q a q'``.
OTA file: ``start: q0``, ``final: ...`` and lines ``up left a -> q``.
Composite states are written ``[x|y]`` (nesting allowed) with ``-`` for
a missing component.  DAGs are JSON objects with ``vertices`` and ``edges``.
"""
from __future__ import annotations

import json

from .automaton import DagAutomaton, Rule
from .encodings import RankedAlphabet
from .graph import Dag, parse_vertex
from .machines import Nfa, Ota


class FormatError(ValueError):
    def __init__(self, message, line=None, token=None, source="<text>"):
        self.line = line
        self.token = token
        self.source = source
        where = source if line is None else f"{source}:{line}"
        if token is not None:
            message = f"{message} (token {token!r})"
        super().__init__(f"{where}: {message}")


def _lines(text):
    for k, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("//", 1)[0].strip()
        if line:
            yield k, line


def state_to_text(q) -> str:
    """Composite states nest as ``[x|y]``; ``-`` is a missing component."""
    if q is None:
        return "-"
    if isinstance(q, tuple):
        return "[" + "|".join(map(state_to_text, q)) + "]"
    return str(q)


def state_from_text(tok: str):
    if not tok.startswith("["):
        return None if tok == "-" else tok
    stack = [[]]
    word = ""
    for ch in tok:
        if ch == "[":
            stack.append([])
        elif ch in "|]":
            if word:
                stack[-1].append(None if word == "-" else word)
                word = ""
            if ch == "]":
                if len(stack) < 2:
                    raise ValueError(f"unbalanced brackets in state {tok!r}")
                done = tuple(stack.pop())
                stack[-1].append(done)
        else:
            word += ch
    if len(stack) != 1 or len(stack[0]) != 1 or word:
        raise ValueError(f"malformed state {tok!r}")
    return stack[0][0]


def _seq(tokens):
    return () if tokens == ["_"] else tuple(map(state_from_text, tokens))


def parse_automaton(text: str, source="<text>"):
    """``(automaton, ranks)``; ``ranks`` is ``None`` without ``rank`` lines."""
    rules, alphabet, states = [], set(), set()
    ranks = {}
    empty = False
    for k, line in _lines(text):
        toks = line.split()
        kw = toks[0]
        if kw == "rule":
            body = toks[1:]
            arrows = [i for i, t in enumerate(body) if t == "->"]
            if len(arrows) != 2 or arrows[1] != arrows[0] + 2:
                raise FormatError("expected 'rule <head|_> -> <symbol> -> <tail|_>'", k, line, source)
            head, sym, tail = body[:arrows[0]], body[arrows[0] + 1], body[arrows[1] + 1:]
            if not head or not tail:
                raise FormatError("empty side; write '_' for the empty sequence", k, line, source)
            for part in (head, tail):
                if "_" in part and part != ["_"]:
                    raise FormatError("'_' must stand alone", k, "_", source)
            try:
                rules.append(Rule(_seq(head), sym, _seq(tail)))
            except ValueError as exc:
                raise FormatError(str(exc), k, line, source) from None
        elif kw == "empty":
            if len(toks) != 1:
                raise FormatError("'empty' takes no arguments", k, toks[1], source)
            empty = True
        elif kw == "rank":
            if len(toks) != 4:
                raise FormatError("expected 'rank <symbol> <in> <out>'", k, line, source)
            try:
                r = (int(toks[2]), int(toks[3]))
            except ValueError:
                raise FormatError("rank must be integers", k, toks[2] + " " + toks[3], source) from None
            if min(r) < 0:
                raise FormatError("rank must be non-negative", k, line, source)
            ranks[toks[1]] = r
        elif kw == "alphabet":
            alphabet |= set(toks[1:])
        elif kw == "states":
            states |= set(toks[1:])
        else:
            raise FormatError("unknown directive", k, kw, source)
    a = DagAutomaton.make(rules, accepts_empty_graph=empty, states=states, alphabet=alphabet)
    return a, (RankedAlphabet(ranks) if ranks else None)


def render_automaton(a: DagAutomaton, ranks: RankedAlphabet | None = None) -> str:
    used = {r.label for r in a.rules}
    lines = []
    extra = sorted(a.alphabet - used)
    if extra:
        lines.append("alphabet " + " ".join(extra))
    for r in a.sorted_rules():
        h = " ".join(map(state_to_text, r.head)) or "_"
        t = " ".join(map(state_to_text, r.tail)) or "_"
        lines.append(f"rule {h} -> {r.label} -> {t}")
    if ranks is not None:
        for s in sorted(ranks.ranks):
            i, o = ranks.ranks[s]
            lines.append(f"rank {s} {i} {o}")
    if a.accepts_empty_graph:
        lines.append("empty")
    return "\n".join(lines) + "\n"


def _header(line, key):
    return line.split(":", 1)[1].split() if line.startswith(key + ":") else None


def parse_nfa(text: str, source="<text>") -> Nfa:
    start, finals, delta = None, set(), []
    for k, line in _lines(text):
        if (got := _header(line, "start")) is not None:
            if not got:
                raise FormatError("start line names no state", k, line, source)
            start = set(got)
        elif (got := _header(line, "final")) is not None:
            finals |= set(got)
        else:
            toks = line.split()
            if len(toks) != 3:
                raise FormatError("expected 'q symbol q2'", k, line, source)
            delta.append(tuple(toks))
    if start is None:
        raise FormatError("missing 'start:' line", source=source)
    return Nfa.make(delta, start, finals)


def render_nfa(a: Nfa) -> str:
    lines = ["start: " + " ".join(sorted(a.start)), "final: " + " ".join(sorted(a.finals))]
    lines += [f"{p} {s} {q}" for p, s, q in sorted(a.delta)]
    return "\n".join(lines) + "\n"


def parse_ota(text: str, source="<text>") -> Ota:
    start, finals, delta = None, set(), {}
    for k, line in _lines(text):
        if (got := _header(line, "start")) is not None:
            if len(got) != 1:
                raise FormatError("start line needs exactly one state", k, line, source)
            start = state_from_text(got[0])
        elif (got := _header(line, "final")) is not None:
            finals |= {state_from_text(t) for t in got}
        else:
            toks = line.split()
            if len(toks) != 5 or toks[3] != "->":
                raise FormatError("expected 'up left symbol -> q'", k, line, source)
            try:
                up, left, q = map(state_from_text, (toks[0], toks[1], toks[4]))
            except ValueError as exc:
                raise FormatError(str(exc), k, line, source) from None
            sym = toks[2]
            delta.setdefault((up, left, sym), set()).add(q)
    if start is None:
        raise FormatError("missing 'start:' line", source=source)
    return Ota.make(delta, start, finals)


def render_ota(m: Ota) -> str:
    lines = ["start: " + state_to_text(m.start),
             "final: " + " ".join(sorted(map(state_to_text, m.finals)))]
    for (u, l, s), qs in sorted(m.delta.items(), key=lambda kv: repr(kv[0])):
        for q in sorted(qs, key=repr):
            lines.append(f"{state_to_text(u)} {state_to_text(l)} {s} -> {state_to_text(q)}")
    return "\n".join(lines) + "\n"


def dag_to_json(d: Dag) -> str:
    verts = [{"id": str(v), "label": d.labels[v], "in": list(d.ins.get(v, ())),
              "out": list(d.outs.get(v, ()))} for v in d.sorted_vertices()]
    edges = [{"id": e, "src": str(d.src[e]), "tar": str(d.tar[e])}
             for e in sorted(d.src, key=repr)]
    return json.dumps({"vertices": verts, "edges": edges}, indent=1) + "\n"


def _vertex(tok):
    try:
        return parse_vertex(tok)
    except ValueError:
        return tok


def dag_from_json(text: str, source="<text>") -> Dag:
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise FormatError(exc.msg, exc.lineno, source=source) from None
    try:
        labels, ins, outs = {}, {}, {}
        for rec in obj["vertices"]:
            v = _vertex(rec["id"])
            labels[v] = rec["label"]
            ins[v] = tuple(rec.get("in", ()))
            outs[v] = tuple(rec.get("out", ()))
        src = {e["id"]: _vertex(e["src"]) for e in obj["edges"]}
        tar = {e["id"]: _vertex(e["tar"]) for e in obj["edges"]}
    except (KeyError, TypeError) as exc:
        raise FormatError(f"malformed DAG record: missing {exc}", source=source) from None
    return Dag(labels, src, tar, ins, outs)
