"""Automata on transfinite words with finitely many non-blank letters.

The package provides ordinal arithmetic below w^w, sparse words indexed
by ordinals, nondeterministic automata with limit transitions, decision
procedures for their languages and first-order theories over them, and
growth-rate experiments for definable expansions.
"""

from .automata import (
    AutomatonError,
    OrdinalAutomaton,
    load_automaton,
    make_automaton,
    save_automaton,
)
from .gapcode import GapError, GapNFA, cap_policy
from .growth import (
    GrowthError,
    RelationFamily,
    equiv,
    k_const,
    maximal_free_set,
    normalize,
    nu_of_E,
    u_contains,
    u_set,
)
from .logic import (
    LogicError,
    Presentation,
    compile_formula,
    decide,
    find_witness,
    load_presentation,
    parse_formula,
    save_presentation,
)
from .ordinals import Ordinal, OrdinalError, format_ordinal, parse_ordinal
from .semantics import ResourceLimitExceeded, member, run_relation
from .words import (
    Alphabet,
    AlphaWord,
    WordError,
    alphabet,
    convolve,
    format_word,
    make_word,
    parse_word,
)

__all__ = [
    "Alphabet",
    "AlphaWord",
    "AutomatonError",
    "GapError",
    "GapNFA",
    "GrowthError",
    "LogicError",
    "Ordinal",
    "OrdinalAutomaton",
    "OrdinalError",
    "Presentation",
    "RelationFamily",
    "ResourceLimitExceeded",
    "WordError",
    "alphabet",
    "cap_policy",
    "compile_formula",
    "convolve",
    "decide",
    "equiv",
    "find_witness",
    "format_ordinal",
    "format_word",
    "k_const",
    "load_automaton",
    "load_presentation",
    "make_automaton",
    "make_word",
    "maximal_free_set",
    "member",
    "normalize",
    "nu_of_E",
    "parse_formula",
    "parse_ordinal",
    "parse_word",
    "run_relation",
    "save_automaton",
    "save_presentation",
    "u_contains",
    "u_set",
]

__version__ = "0.1.0"
