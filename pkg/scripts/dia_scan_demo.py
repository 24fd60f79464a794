"""Constant diagonals: DAG automaton on the dia encoding versus a diagonal-scan DFA.

Read along southeast diagonals, the language is regular: each diagonal
must repeat one symbol. The same DFA on an anti-diagonal scan fails.
"""
from dagpic.encodings import EncodingKind
from dagpic.gallery import gallery
from dagpic.harness import check_equiv
from dagpic.machines import Nfa, Strategy


def adjacent_equal_dfa(alphabet=("a", "b")):
    delta = [("#", "#", "#")]
    for s in alphabet:
        delta += [("#", s, s), (s, "#", "#"), (s, s, s)]
    return Nfa.make(delta, {"#"}, {"#"} | set(alphabet))


def main():
    dia = gallery("dia").automaton
    dfa = adjacent_equal_dfa()
    for strategy in (Strategy.RFA_DIAG_SE, Strategy.RFA_DIAG_ANTI):
        report = check_equiv(dia, (dfa, strategy), EncodingKind.DIA, alphabet="ab",
                             max_rows=3, max_cols=4, require_connected=False)
        print(f"{strategy.value:9s} {report.summary()}")


if __name__ == "__main__":
    main()
