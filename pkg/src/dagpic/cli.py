"""Command-line entry point: ``dagpic <subcommand> ...``.

Exit codes: 0 success or agreement, 1 rejection or counterexample,
2 usage or input-format error.
"""
from __future__ import annotations

import argparse
import sys
from pathlib import Path

from .automaton import accepts, accepts_driven, find_run
from .encodings import EncodingKind, encode
from .formats import (FormatError, dag_from_json, dag_to_json, parse_automaton, parse_nfa,
                      parse_ota, render_automaton, render_nfa, render_ota)
from .gallery import NAMES, gallery
from .graph import to_dot, validate
from .harness import AlphabetMismatch, SweepConfig, check_equiv, check_gallery
from .machines import Strategy, serialize
from .picture import PictureFormatError, boundary, parse_picture
from .translations import NotInNormalForm, dag_to_nfa, nda_to_ota, nfa_to_dag, ota_to_nda


class UsageError(Exception):
    pass


def _read(path):
    if path == "-":
        return sys.stdin.read(), "<stdin>"
    try:
        return Path(path).read_text(), path
    except OSError as exc:
        raise UsageError(f"{path}: {exc.strerror}") from None


def _write(path, text):
    if path in (None, "-"):
        sys.stdout.write(text)
    else:
        Path(path).write_text(text)


def _load_picture(path):
    return parse_picture(*_read(path))


def _load_automaton(path):
    return parse_automaton(*_read(path))


def _load_dag(path):
    d = dag_from_json(*_read(path))
    problems = validate(d)
    if problems:
        raise FormatError(f"invalid DAG: {problems[0].kind}: {problems[0].detail}", source=path)
    return d


def cmd_encode(args):
    p = _load_picture(args.picture)
    _write(args.output, dag_to_json(encode(boundary(p) if args.boundary else p, args.encoding)))
    return 0


def cmd_accept(args):
    a, ranks = _load_automaton(args.automaton)
    d = _load_dag(args.dag)
    connected = not args.allow_disconnected
    ok = accepts_driven(a, d, ranks, connected) if ranks else accepts(a, d, connected)
    print("accept" if ok else "reject")
    return 0 if ok else 1


def cmd_translate(args):
    text, src = _read(args.input)
    if args.direction == "nfa-to-dag":
        out = render_automaton(nfa_to_dag(parse_nfa(text, src), bare=args.strict))
    elif args.direction == "dag-to-nfa":
        a, _ = parse_automaton(text, src)
        out = render_nfa(dag_to_nfa(a, bare=args.strict))
    elif args.direction == "nda-to-ota":
        a, _ = parse_automaton(text, src)
        out = render_ota(nda_to_ota(a, strict=args.strict))
    else:
        out = render_automaton(ota_to_nda(parse_ota(text, src)))
    _write(args.output, out)
    return 0


def cmd_serialize(args):
    p = _load_picture(args.picture)
    print(" ".join(serialize(boundary(p), args.strategy, squeezed=args.squeeze)))
    return 0


def cmd_equiv(args):
    a, ranks = _load_automaton(args.automaton)
    if args.ota:
        other = parse_ota(*_read(args.ota))
    else:
        other = (parse_nfa(*_read(args.nfa)), args.strategy)
    report = check_equiv(a, other, kind=args.encoding, boundary=not args.no_boundary,
                         alphabet=args.alphabet, max_rows=args.max_rows, max_cols=args.max_cols,
                         require_connected=not args.allow_disconnected, ranks=ranks,
                         sample=args.sample, seed=args.seed, jobs=args.jobs)
    print(report.summary())
    return 0 if report.ok else 1


def cmd_gallery(args):
    entry = gallery(args.name)
    if not args.check:
        _write(None, render_automaton(entry.automaton, entry.ranks))
        return 0
    config = SweepConfig(args.max_rows, args.max_cols, args.max_len, sample=args.sample,
                         seed=args.seed, jobs=args.jobs)
    report = check_gallery(entry, config)
    if entry.domain == "string":
        domain = f"strings over {{{','.join(entry.alphabet)}}} up to length {args.max_len}"
    else:
        domain = (f"pictures over {{{','.join(entry.alphabet)}}} up to "
                  f"{args.max_rows}x{args.max_cols}")
    print(f"{'entry':<12} {'domain':<44} result")
    print(f"{entry.name:<12} {domain:<44} {report.summary()}")
    return 0 if report.ok else 1


def cmd_dot(args):
    d = _load_dag(args.dag)
    run = None
    if args.automaton:
        a, _ = _load_automaton(args.automaton)
        run = find_run(a, d)
    _write(args.output, to_dot(d, run))
    return 0


def _kind(text):
    try:
        return EncodingKind.parse(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def build_parser():
    ap = argparse.ArgumentParser(prog="dagpic", description="DAG automata over picture encodings")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("encode", help="picture file to DAG JSON")
    p.add_argument("picture")
    p.add_argument("--encoding", type=_kind, required=True)
    p.add_argument("--boundary", action="store_true", help="frame the picture with '#' first")
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_encode)

    p = sub.add_parser("accept", help="run an automaton on a DAG")
    p.add_argument("dag")
    p.add_argument("--automaton", required=True)
    p.add_argument("--allow-disconnected", action="store_true")
    p.set_defaults(func=cmd_accept)

    p = sub.add_parser("translate", help="convert between machine kinds")
    p.add_argument("direction", choices=["nfa-to-dag", "dag-to-nfa", "nda-to-ota", "ota-to-nda"])
    p.add_argument("input")
    p.add_argument("output", nargs="?")
    p.add_argument("--strict", action="store_true",
                   help="literal construction without the completions for edge cases")
    p.set_defaults(func=cmd_translate)

    p = sub.add_parser("serialize", help="scan a framed picture into a string")
    p.add_argument("picture")
    p.add_argument("--strategy", type=Strategy, default=Strategy.RFA_ROWS,
                   help="rfa, bfa, diag or antidiag")
    p.add_argument("--squeeze", action="store_true")
    p.set_defaults(func=cmd_serialize)

    p = sub.add_parser("equiv", help="compare a DAG automaton with a picture automaton")
    p.add_argument("--automaton", required=True)
    side = p.add_mutually_exclusive_group(required=True)
    side.add_argument("--ota")
    side.add_argument("--nfa")
    p.add_argument("--strategy", type=Strategy, default=Strategy.RFA_ROWS)
    p.add_argument("--encoding", type=_kind, default=EncodingKind.COO)
    p.add_argument("--no-boundary", action="store_true")
    p.add_argument("--alphabet", nargs="+")
    p.add_argument("--allow-disconnected", action="store_true")
    _sweep_flags(p)
    p.set_defaults(func=cmd_equiv)

    p = sub.add_parser("gallery", help="print or check a gallery automaton")
    p.add_argument("name", choices=NAMES)
    p.add_argument("--check", action="store_true")
    p.add_argument("--max-len", type=int, default=8)
    _sweep_flags(p)
    p.set_defaults(func=cmd_gallery)

    p = sub.add_parser("dot", help="DAG JSON to Graphviz")
    p.add_argument("dag")
    p.add_argument("--automaton", help="label edges with a run when one exists")
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_dot)
    return ap


def _sweep_flags(p):
    p.add_argument("--max-rows", type=int, default=3)
    p.add_argument("--max-cols", type=int, default=3)
    p.add_argument("--sample", type=int)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--jobs", type=int, default=1)


def main(argv=None) -> int:
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args)
    except (FormatError, PictureFormatError, NotInNormalForm, AlphabetMismatch, UsageError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
