import itertools
import random

import pytest
from hypothesis import assume, event, given, settings
from hypothesis import strategies as st

from dagpic.automaton import (DagAutomaton, DeterminismViolated, Rule, accepts, accepts_driven,
                              check_run, find_driven_run, find_run, find_run_deterministic,
                              is_top_down_deterministic, rule, rule_cycles)
from dagpic.encodings import EncodingKind, RankedAlphabet, driven_instances, encode, picture_dag
from dagpic.graph import EMPTY, Dag, Free, string_dag
from dagpic.picture import Picture, enumerate_pictures

from oracles import brute_rule_cycles, brute_run_exists
from strategies import automata, dags, pictures, shaped_automata


def test_rule_text_and_builder():
    r = rule("a p", "b", "_")
    assert r == Rule(("a", "p"), "b", ())
    assert str(r) == "a p -> b -> _"


def test_unknown_state_is_rejected():
    with pytest.raises(ValueError):
        DagAutomaton(frozenset({"p"}), frozenset({"a"}), frozenset({rule("q", "a", "")}))


def test_empty_graph_rule():
    yes = DagAutomaton.make([], accepts_empty_graph=True)
    no = DagAutomaton.make([rule("", "a", "")])
    assert find_run(yes, EMPTY) == {} and accepts(yes, EMPTY)
    assert find_run(no, EMPTY) is None


def test_single_vertex_needs_an_isolated_rule():
    a = DagAutomaton.make([rule("", "a", "")])
    assert accepts(a, string_dag("a"))
    assert not accepts(a, string_dag("aa"))


def test_connectivity_requirement():
    a = DagAutomaton.make([rule("", "a", "")])
    two = Dag({Free(0): "a", Free(1): "a"}, {}, {}, {}, {})
    assert not accepts(a, two)
    assert accepts(a, two, require_connected=False)


def test_cyclic_input_raises():
    u, v = Free(0), Free(1)
    d = Dag({u: "a", v: "a"}, {0: u, 1: v}, {0: v, 1: u}, {u: (1,), v: (0,)}, {u: (0,), v: (1,)})
    with pytest.raises(ValueError):
        find_run(DagAutomaton.make([]), d)


@settings(max_examples=300, deadline=None)
@given(automata(), dags(max_vertices=5, max_edges=5))
def test_find_run_matches_brute_force(a, d):
    run = find_run(a, d)
    assert (run is not None) == brute_run_exists(a, d)
    if run is not None:
        assert check_run(a, d, run)


@settings(max_examples=200, deadline=None)
@given(automata(), dags(max_vertices=5, max_edges=5))
def test_deterministic_search_agrees(a, d):
    if is_top_down_deterministic(a):
        got = find_run_deterministic(a, d)
        assert (got is not None) == (find_run(a, d) is not None)
        if got is not None:
            assert check_run(a, d, got)
    else:
        with pytest.raises(DeterminismViolated):
            find_run_deterministic(a, d)


def test_check_run_rejects_wrong_runs():
    a = DagAutomaton.make([rule("", "a", "p"), rule("p", "b", "")])
    d = string_dag("ab")
    assert check_run(a, d, {0: "p"})
    assert not check_run(a, d, {0: "q"})
    assert not check_run(a, d, {})


def test_determinism_checks():
    det = DagAutomaton.make([rule("", "a", "p"), rule("", "a", "p q"), rule("p", "b", "")])
    assert is_top_down_deterministic(det)
    nondet = DagAutomaton.make([rule("", "a", "p"), rule("", "a", "q")])
    assert not is_top_down_deterministic(nondet)


ANBN = RankedAlphabet({"a": (0, 1), "b": (1, 0)})
ABC = RankedAlphabet({"a": (0, 1), "b": (1, 1), "c": (1, 0)})


def enumerated_driven(a, base, ranks):
    return any(find_run(a, d) is not None for d in driven_instances(base, ranks))


@settings(max_examples=300, deadline=None)
@given(shaped_automata(ABC),
       pictures(alphabet=("a", "b", "c"), max_rows=2, max_cols=3, allow_empty=False),
       st.sampled_from([None, EncodingKind.RFA, EncodingKind.LINL]))
def test_driven_search_matches_enumeration(a, p, kind):
    symbols = p.symbols()
    assume(symbols.count("a") == symbols.count("c"))
    base = picture_dag(p) if kind is None else encode(p, kind)
    found = find_driven_run(a, base, ABC)
    assert (found is not None) == enumerated_driven(a, base, ABC)
    if found is not None:
        d, run = found
        assert check_run(a, d, run)
        assert d.signature() in {x.signature() for x in driven_instances(base, ABC)}
    event("accepted" if found else "rejected")


def random_shaped(rng, ranks, states=("p", "q"), keep=0.5):
    rules = []
    for sym, (rin, rout) in sorted(ranks.ranks.items()):
        for bin_, bout in ((0, 0), (0, 1), (1, 0), (1, 1)):
            for h in itertools.product(states, repeat=bin_ + rin):
                for t in itertools.product(states, repeat=bout + rout):
                    if rng.random() < keep:
                        rules.append(Rule(h, sym, t))
    return DagAutomaton.make(rules, states=states, alphabet=tuple(ranks.ranks))


def test_driven_search_matches_enumeration_exhaustively():
    rng = random.Random(11)
    pics = [p for p in enumerate_pictures("abc", 2, 3)
            if p.rows and p.symbols().count("a") == p.symbols().count("c")]
    outcomes = set()
    for _ in range(12):
        a = random_shaped(rng, ABC, keep=rng.choice([0.2, 0.35, 0.5]))
        for p in pics:
            for base in (picture_dag(p), encode(p, EncodingKind.RFA)):
                found = find_driven_run(a, base, ABC) is not None
                assert found == enumerated_driven(a, base, ABC), (a, p)
                outcomes.add(found)
    assert outcomes == {True, False}


def test_driven_unbalanced_is_rejected():
    a = DagAutomaton.make([rule("", "a", "p"), rule("p", "b", "")])
    assert not accepts_driven(a, picture_dag(Picture.from_string("aab")), ANBN)


def test_driven_connectivity_option():
    a = DagAutomaton.make([rule("", "a", "p"), rule("p", "b", "")])
    p = Picture.from_string("ab/ba")
    assert accepts_driven(a, picture_dag(p), ANBN)
    # two disjoint a->b pairs can never be connected without grid edges
    assert not accepts_driven(a, picture_dag(p), ANBN, require_connected=True)


def test_rule_cycles_small():
    a = DagAutomaton.make([rule("", "a", "p"), rule("p", "a", "p"), rule("p", "b", "")])
    rings = rule_cycles(a)
    assert rings == [[rule("p", "a", "p")]]


@settings(max_examples=150, deadline=None)
@given(automata(max_rules=6))
def test_rule_cycles_match_brute_force(a):
    got = {tuple(r) for r in rule_cycles(a)}
    assert got == brute_rule_cycles(a)
    assert len(got) == len(rule_cycles(a))
