"""Which independent edge swaps keep gallery DAGs accepted?

Swaps are split by whether the accepting run assigns both edges the
same state; equal-state swaps always keep the run valid.
"""
import itertools
import sys
from collections import Counter
from pathlib import Path

from dagpic.automaton import find_run
from dagpic.graph import edge_swap, independent

sys.path.insert(0, str(Path(__file__).resolve().parent.parent / "tests"))
from test_acceptance import accepted_dags  # noqa: E402


def main():
    table = Counter()
    for entry, d, run in accepted_dags():
        for e0, e1 in itertools.combinations(sorted(d.src, key=repr), 2):
            if independent(d, e0, e1):
                same = run[e0] == run[e1]
                kept = find_run(entry.automaton, edge_swap(d, e0, e1)) is not None
                table[entry.name, same, kept] += 1
    print(f"{'entry':10s} {'states':9s} {'kept':>7s} {'lost':>7s}")
    for name in sorted({k[0] for k in table}):
        for same in (True, False):
            kept, lost = table[name, same, True], table[name, same, False]
            if kept or lost:
                print(f"{name:10s} {'equal' if same else 'different':9s} {kept:7d} {lost:7d}")


if __name__ == "__main__":
    main()
