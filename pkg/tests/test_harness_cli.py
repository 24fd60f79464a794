import shutil
import subprocess

import pytest
from hypothesis import given, settings

from dagpic.automaton import DagAutomaton
from dagpic.cli import main
from dagpic.encodings import EncodingKind, encode
from dagpic.formats import (FormatError, dag_from_json, dag_to_json, parse_automaton, parse_nfa,
                            parse_ota, render_automaton, render_nfa, render_ota,
                            state_from_text, state_to_text)
from dagpic.gallery import OTA_FIXTURES, gallery
from dagpic.graph import string_dag
from dagpic.harness import (AlphabetMismatch, PictureSpace, StringSpace, SweepConfig, check_equiv,
                            check_gallery)
from dagpic.machines import Nfa, Ota, Strategy
from dagpic.picture import Picture, boundary, enumerate_pictures
from dagpic.translations import nda_to_ota, ota_to_nda

from strategies import automata, dags, nfas, otas


# -- harness -------------------------------------------------------------------

def test_picture_space_matches_enumeration():
    space = PictureSpace("ab", 2, 3)
    assert [space[i] for i in range(space.size)] == list(enumerate_pictures("ab", 2, 3))


def test_string_space_order():
    space = StringSpace("ab", 2, min_len=1)
    assert [space[i] for i in range(space.size)] == [
        ("a",), ("b",), ("a", "a"), ("a", "b"), ("b", "a"), ("b", "b")]


def test_identity_comparison_has_no_counterexample():
    m = OTA_FIXTURES["contains-b"]()
    a = ota_to_nda(m)
    report = check_equiv(a, m, max_rows=2, max_cols=2)
    assert report.ok and report.first_counterexample is None
    assert report.checked == report.agreements == 1 + 2 + 4 + 4 + 16


def test_empty_automaton_against_empty_language():
    nothing = DagAutomaton.make([], alphabet={"a", "b", "#"})
    never = Ota.make({}, "q", set(), alphabet="ab")
    assert check_equiv(nothing, never, max_rows=2, max_cols=2).ok


def test_alphabet_mismatch():
    a = ota_to_nda(OTA_FIXTURES["universal"]())
    other = OTA_FIXTURES["universal"](alphabet=("a", "c"))
    with pytest.raises(AlphabetMismatch):
        check_equiv(a, other)


def test_corrupted_rule_gives_minimal_counterexample():
    m = OTA_FIXTURES["contains-b"]()
    a = ota_to_nda(m)
    victim = sorted(r for r in a.rules if r.label == "b" and r.tail[0] == "qf")[0]
    broken = DagAutomaton.make(a.rules - {victim}, states=a.states, alphabet=a.alphabet)
    report = check_equiv(broken, m, max_rows=2, max_cols=2)
    assert not report.ok
    space = PictureSpace("ab", 2, 2)
    from dagpic.harness import DagSide, OtaSide
    left, right = DagSide(broken, EncodingKind.COO, True, True), OtaSide(m)
    first = next(i for i in range(space.size) if left(space[i]) != right(space[i]))
    assert report.first_index == first
    assert report.first_counterexample == space[first]


def test_parallel_and_serial_reports_agree():
    m = OTA_FIXTURES["corners-equal"]()
    a = ota_to_nda(m)
    broken = DagAutomaton.make({r for r in a.rules if r.label != "a" or r.tail != ("qf", "qf")})
    serial = check_equiv(broken, m, max_rows=2, max_cols=3, alphabet="ab")
    parallel = check_equiv(broken, m, max_rows=2, max_cols=3, alphabet="ab", jobs=3)
    assert serial == parallel
    assert not serial.ok


def test_sampling_is_reproducible():
    entry = gallery("dia")
    one = check_gallery(entry, SweepConfig(3, 4, sample=200, seed=5))
    two = check_gallery(entry, SweepConfig(3, 4, sample=200, seed=5))
    assert one == two and one.checked == 200


def test_scan_side_comparison():
    # the string automaton of "contains b" under the rfa scan equals the 2OTA
    delta = [(q, s, q) for q in "ny" for s in "#a"] + [("n", "b", "y"), ("y", "b", "y")]
    nfa = Nfa.make(delta, {"n"}, {"y"})
    a = ota_to_nda(OTA_FIXTURES["contains-b"]())
    assert check_equiv(a, (nfa, Strategy.RFA_ROWS), max_rows=2, max_cols=2).ok


def test_report_invariants():
    report = check_gallery(gallery("anbn"), SweepConfig(max_len=4))
    assert report.agreements <= report.checked
    assert (report.first_counterexample is None) == report.ok


# -- formats -------------------------------------------------------------------

@settings(max_examples=60, deadline=None)
@given(automata())
def test_automaton_format_round_trip(a):
    back, ranks = parse_automaton(render_automaton(a))
    assert ranks is None
    assert back.rules == a.rules and back.accepts_empty_graph == a.accepts_empty_graph


def test_automaton_format_with_ranks():
    entry = gallery("anbn")
    back, ranks = parse_automaton(render_automaton(entry.automaton, entry.ranks))
    assert ranks == entry.ranks and back.rules == entry.automaton.rules


@pytest.mark.parametrize("text, line, token", [
    ("rule a -> b\n", 1, "rule a -> b"),
    ("// ok\nfrobnicate\n", 2, "frobnicate"),
    ("rank a x 1\n", 1, "x 1"),
    ("rule _ p -> a -> _\n", 1, "_"),
])
def test_automaton_format_errors(text, line, token):
    with pytest.raises(FormatError) as info:
        parse_automaton(text, source="a.nda")
    assert (info.value.line, info.value.token) == (line, token)
    assert str(info.value).startswith(f"a.nda:{line}")


@settings(max_examples=60)
@given(nfas())
def test_nfa_format_round_trip(a):
    assert parse_nfa(render_nfa(a)) == Nfa.make(a.delta, a.start, a.finals)


@settings(max_examples=40, deadline=None)
@given(otas())
def test_ota_format_round_trip(m):
    back = parse_ota(render_ota(m))
    assert back.delta == m.delta and back.start == m.start and back.finals == m.finals


def test_ota_format_keeps_tuple_states():
    m = nda_to_ota(ota_to_nda(OTA_FIXTURES["corners-equal"]()))
    back = parse_ota(render_ota(m))
    assert back.delta == m.delta and back.finals == m.finals and back.start == m.start
    a = ota_to_nda(OTA_FIXTURES["corners-equal"]())
    assert parse_automaton(render_automaton(a))[0].rules == a.rules


def test_state_text_round_trip():
    for q in ["x", ("a", None), (("a", "b"), "qy", None, "z"), ((("x",),),)]:
        assert state_from_text(state_to_text(q)) == q
    with pytest.raises(ValueError):
        state_from_text("[a|b")


@settings(max_examples=60)
@given(dags())
def test_dag_json_round_trip(d):
    assert dag_from_json(dag_to_json(d)) == d


def test_dag_json_of_grid():
    d = encode(boundary(Picture.from_string("ab")), EncodingKind.COO)
    assert dag_from_json(dag_to_json(d)) == d


# -- command line --------------------------------------------------------------

@pytest.fixture
def files(tmp_path):
    def put(name, text):
        path = tmp_path / name
        path.write_text(text)
        return str(path)
    return put


def test_encode_then_accept(files, tmp_path, capsys):
    pic = files("p.pic", "2 2\na b\nb a\n")
    auto = files("a.nda", render_automaton(ota_to_nda(OTA_FIXTURES["contains-b"]())))
    out = str(tmp_path / "p.dag")
    assert main(["encode", "--encoding", "coo", "--boundary", pic, "-o", out]) == 0
    assert main(["accept", "--automaton", auto, out]) == 0
    assert capsys.readouterr().out.strip() == "accept"
    pic2 = files("q.pic", "1 2\na a\n")
    out2 = str(tmp_path / "q.dag")
    main(["encode", "--encoding", "coo", "--boundary", pic2, "-o", out2])
    assert main(["accept", "--automaton", auto, out2]) == 1


def test_gallery_check_exit_codes(capsys):
    assert main(["gallery", "anbn", "--check", "--max-len", "10"]) == 0
    out = capsys.readouterr().out
    assert "PASS" in out and "2047" in out
    assert main(["gallery", "dia"]) == 0
    assert "rule" in capsys.readouterr().out


def test_dot_command(files, tmp_path):
    d = files("s.dag", dag_to_json(string_dag(["a", "b", "#"])))
    auto = files("a.nda", "rule _ -> a -> p\nrule p -> b -> q\nrule q -> # -> _\n")
    out = tmp_path / "s.dot"
    assert main(["dot", d, "--automaton", auto, "-o", str(out)]) == 0
    golden = (__import__("pathlib").Path(__file__).parent / "data" / "string_ab.dot").read_text()
    assert out.read_text() == golden


def test_translate_commands(files, tmp_path, capsys):
    nfa = files("m.nfa", "start: p\nfinal: q\np a q\nq b q\n")
    nda = str(tmp_path / "m.nda")
    assert main(["translate", "nfa-to-dag", nfa, nda]) == 0
    assert main(["translate", "dag-to-nfa", nda]) == 0
    assert "start:" in capsys.readouterr().out
    ota = files("m.ota", render_ota(OTA_FIXTURES["contains-b"]()))
    nda2 = str(tmp_path / "o.nda")
    assert main(["translate", "ota-to-nda", ota, nda2]) == 0
    ota2 = str(tmp_path / "back.ota")
    assert main(["translate", "nda-to-ota", nda2, ota2]) == 0
    assert main(["equiv", "--automaton", nda2, "--ota", ota2, "--max-rows", "2"]) == 0
    assert main(["translate", "nda-to-ota", nda2, "--strict"]) == 2


def test_serialize_command(files, capsys):
    pic = files("p.pic", "1 2\na b\n")
    assert main(["serialize", pic, "--strategy", "bfa"]) == 0
    assert capsys.readouterr().out.split() == list("####" "#ba#" "####")


def test_equiv_reports_counterexample(files, capsys):
    auto = files("a.nda", render_automaton(ota_to_nda(OTA_FIXTURES["universal"]())))
    ota = files("m.ota", render_ota(OTA_FIXTURES["contains-b"]()))
    assert main(["equiv", "--automaton", auto, "--ota", ota, "--max-rows", "2"]) == 1
    # the empty picture comes first and separates the two languages
    assert "first_counterexample=[0 0]" in capsys.readouterr().out


def test_format_errors_exit_2(files, capsys):
    bad = files("bad.pic", "2 2\na b\na\n")
    assert main(["encode", "--encoding", "coo", bad]) == 2
    err = capsys.readouterr().err
    assert "bad.pic:3" in err and "'a'" in err
    auto = files("bad.nda", "rule a => b\n")
    dag = files("s.dag", dag_to_json(string_dag("ab")))
    assert main(["accept", "--automaton", auto, dag]) == 2
    assert "bad.nda:1" in capsys.readouterr().err
    assert main(["accept", "--automaton", str(auto) + ".missing", dag]) == 2


def test_usage_errors_exit_2(capsys):
    assert main([]) == 2
    assert main(["encode", "--encoding", "zigzag", "x"]) == 2
    assert main(["gallery", "nope"]) == 2


def test_output_is_deterministic(capsys):
    main(["gallery", "dia", "--check", "--max-rows", "2", "--max-cols", "3"])
    first = capsys.readouterr().out
    main(["gallery", "dia", "--check", "--max-rows", "2", "--max-cols", "3", "--jobs", "2"])
    assert capsys.readouterr().out == first


@pytest.mark.skipif(shutil.which("dagpic") is None, reason="console script not installed")
def test_console_script():
    done = subprocess.run(["dagpic", "gallery", "anbn", "--check", "--max-len", "6"],
                          capture_output=True, text=True)
    assert done.returncode == 0 and "PASS" in done.stdout
