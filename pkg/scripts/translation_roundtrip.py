"""Round-trip random NFAs and the 2OTA fixtures through DAG automata."""
import argparse
import random
from dataclasses import dataclass

from dagpic.encodings import EncodingKind
from dagpic.gallery import OTA_FIXTURES
from dagpic.harness import check_equiv, check_string_equiv
from dagpic.machines import Nfa, nfa_accepts
from dagpic.translations import dag_to_nfa, nda_to_ota, nfa_to_dag, ota_to_nda


@dataclass(frozen=True)
class RoundTripConfig:
    nfas: int = 50
    max_states: int = 4
    max_len: int = 8
    max_rows: int = 3
    max_cols: int = 3
    seed: int = 2024


def random_nfa(rng, max_states, alphabet=("a", "b")):
    qs = [f"q{i}" for i in range(rng.randint(1, max_states))]
    delta = [(p, s, q) for p in qs for s in alphabet for q in qs if rng.random() < 0.35]
    start = {q for q in qs if rng.random() < 0.4} or {qs[0]}
    finals = {q for q in qs if rng.random() < 0.4}
    return Nfa.make(delta, start, finals, states=qs, alphabet=alphabet)


def run(config: RoundTripConfig):
    rng = random.Random(config.seed)
    bad = 0
    for _ in range(config.nfas):
        a = random_nfa(rng, config.max_states)
        dag = nfa_to_dag(a)
        back = dag_to_nfa(dag)
        for other in (a, back):
            r = check_string_equiv(dag, lambda w, m=other: nfa_accepts(m, w), "ab", config.max_len)
            bad += not r.ok
    print(f"nfa round trips: {config.nfas} automata, {bad} disagreeing comparisons")
    for name, make in sorted(OTA_FIXTURES.items()):
        m = make()
        nda = ota_to_nda(m)
        back = nda_to_ota(nda)
        kw = dict(kind=EncodingKind.COO, max_rows=config.max_rows, max_cols=config.max_cols)
        print(f"{name:14s} rules={len(nda.rules):4d} states_back={len(back.states):3d}  "
              f"ota->nda {check_equiv(nda, m, **kw).summary()}  "
              f"nda->ota {check_equiv(nda, back, **kw).summary()}")


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--nfas", type=int, default=RoundTripConfig.nfas)
    ap.add_argument("--seed", type=int, default=RoundTripConfig.seed)
    args = ap.parse_args()
    run(RoundTripConfig(nfas=args.nfas, seed=args.seed))


if __name__ == "__main__":
    main()
