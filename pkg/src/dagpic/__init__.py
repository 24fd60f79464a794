"""DAG automata over picture encodings."""
from .automaton import (DagAutomaton, Rule, accepts, accepts_driven, check_run, find_driven_run,
                        find_run, find_run_deterministic, is_top_down_deterministic, rule,
                        rule_cycles)
from .encodings import EncodingKind, RankedAlphabet, driven_instances, encode, picture_dag
from .gallery import GalleryEntry, gallery
from .graph import (Dag, Free, Pos, connected_components, edge_swap, independent, string_dag,
                    to_dot, validate)
from .harness import EquivReport, check_equiv
from .machines import Nfa, Ota, Strategy, nfa_accepts, ota_accepts, serialize
from .picture import BoundaryPicture, Picture, boundary, enumerate_pictures
from .translations import dag_to_nfa, nda_to_ota, nfa_to_dag, ota_to_nda

__all__ = [
    "BoundaryPicture",
    "Dag",
    "DagAutomaton",
    "EncodingKind",
    "EquivReport",
    "Free",
    "GalleryEntry",
    "Nfa",
    "Ota",
    "Picture",
    "Pos",
    "RankedAlphabet",
    "Rule",
    "Strategy",
    "accepts",
    "accepts_driven",
    "boundary",
    "check_equiv",
    "check_run",
    "connected_components",
    "dag_to_nfa",
    "driven_instances",
    "edge_swap",
    "encode",
    "enumerate_pictures",
    "find_driven_run",
    "find_run",
    "find_run_deterministic",
    "gallery",
    "independent",
    "is_top_down_deterministic",
    "nda_to_ota",
    "nfa_accepts",
    "nfa_to_dag",
    "ota_accepts",
    "ota_to_nda",
    "picture_dag",
    "rule",
    "rule_cycles",
    "serialize",
    "string_dag",
    "to_dot",
    "validate",
]
