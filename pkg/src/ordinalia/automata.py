"""Nondeterministic automata with limit transitions.

An automaton here reads words indexed by an ordinal.  Successor steps
use an ordinary transition relation; at each limit position the run
must jump to a state designated for the *set* of states visited
cofinally below that position.  Machines are immutable and hashable so
the run-analysis layer can memoize per machine.

Construction helpers (products, unions, coordinate reindexing) work on
the transition tables directly; the semantic justification lives with
the run-analysis code in :mod:`ordinalia.semantics`.
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass, field
from typing import Iterable, Mapping, Sequence

from .words import Alphabet, Symbol, format_symbol, parse_symbol, product_alphabet

State = object


class AutomatonError(ValueError):
    pass


@dataclass(frozen=True)
class OrdinalAutomaton:
    """States, alphabet, initial/final sets, successor and limit tables.

    ``succ`` maps (state, symbol) to a frozenset of successor states.
    ``limit`` maps a frozenset of states (those visited cofinally) to a
    frozenset of permitted continuation states.  Both tables are total
    in effect: missing keys mean the empty set.
    """

    states: frozenset
    alphabet: Alphabet
    initial: frozenset
    final: frozenset
    succ: Mapping
    limit: Mapping

    # dict is unhashable; freeze both tables into sorted tuples once.
    _succ_key: tuple = field(init=False, repr=False, compare=False)

    def __post_init__(self) -> None:
        succ = {k: frozenset(v) for k, v in self.succ.items() if v}
        limit = {frozenset(k): frozenset(v) for k, v in self.limit.items() if v}
        object.__setattr__(self, "succ", succ)
        object.__setattr__(self, "limit", limit)
        key = (
            tuple(sorted(((repr(q), repr(s)), tuple(sorted(map(repr, v))))
                         for (q, s), v in succ.items())),
            tuple(sorted((tuple(sorted(map(repr, k))), tuple(sorted(map(repr, v))))
                         for k, v in limit.items())),
        )
        object.__setattr__(self, "_succ_key", key)

    def __hash__(self) -> int:
        return hash((self.states, self.alphabet, self.initial, self.final, self._succ_key))

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, OrdinalAutomaton):
            return NotImplemented
        return (
            self.states == other.states
            and self.alphabet == other.alphabet
            and self.initial == other.initial
            and self.final == other.final
            and self._succ_key == other._succ_key
        )

    def step(self, q: State, sym: Symbol) -> frozenset:
        return self.succ.get((q, sym), frozenset())

    def limit_step(self, visited: frozenset) -> frozenset:
        return self.limit.get(visited, frozenset())

    @property
    def size(self) -> int:
        return len(self.states)


@dataclass
class Diagnostics:
    errors: list[str] = field(default_factory=list)
    warnings: list[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.errors


def validate(aut: OrdinalAutomaton) -> Diagnostics:
    diag = Diagnostics()
    if not aut.initial <= aut.states:
        diag.errors.append("initial states not a subset of states")
    if not aut.final <= aut.states:
        diag.errors.append("final states not a subset of states")
    for (q, s), targets in aut.succ.items():
        if q not in aut.states:
            diag.errors.append(f"successor source {q!r} not a state")
        if s not in aut.alphabet.symbols:
            diag.errors.append(f"successor symbol {s!r} not in alphabet")
        if not targets <= aut.states:
            diag.errors.append(f"successor targets of ({q!r}, {s!r}) not states")
    for left, targets in aut.limit.items():
        if not left <= aut.states:
            diag.errors.append(f"limit left set {sorted(map(repr, left))} not states")
        if not left:
            # An empty left set can never be the cofinal visit set of a
            # run, so the transition is dead weight rather than wrong.
            diag.warnings.append("limit transition with empty left set is unreachable")
        if not targets <= aut.states:
            diag.errors.append("limit targets not a subset of states")
    if not aut.initial:
        diag.warnings.append("no initial states; language is empty")
    if not aut.final:
        diag.warnings.append("no final states; language is empty")
    return diag


def make_automaton(
    states: Iterable,
    alphabet: Alphabet,
    initial: Iterable,
    final: Iterable,
    succ: Mapping,
    limit: Mapping,
    check: bool = True,
) -> OrdinalAutomaton:
    aut = OrdinalAutomaton(
        frozenset(states), alphabet, frozenset(initial), frozenset(final),
        dict(succ), dict(limit),
    )
    if check:
        diag = validate(aut)
        if not diag.ok:
            raise AutomatonError("; ".join(diag.errors))
    return aut


# -- combinators -----------------------------------------------------------


def product(a: OrdinalAutomaton, b: OrdinalAutomaton, final_mode: str = "both") -> OrdinalAutomaton:
    """Synchronous product.  ``final_mode`` is 'both' (intersection
    semantics) or 'either'.

    Limit transitions pair every left set of ``a`` with every left set
    of ``b``: a set of product states visited cofinally projects to a
    pair of cofinally visited component sets, and conversely any pair
    of component sets can interleave.  The product left set is the set
    of pairs that can co-occur cofinally, i.e. every subset of
    left_a x left_b with full projections; each yields the product of
    the component targets.
    """
    if a.alphabet != b.alphabet:
        raise AutomatonError("product: alphabet mismatch")
    states = frozenset(itertools.product(a.states, b.states))
    initial = frozenset(itertools.product(a.initial, b.initial))
    if final_mode == "both":
        final = frozenset(itertools.product(a.final, b.final))
    elif final_mode == "either":
        final = frozenset(
            (p, q) for p, q in states if p in a.final or q in b.final
        )
    else:
        raise AutomatonError(f"unknown final_mode {final_mode!r}")

    succ: dict = {}
    for p in a.states:
        for q in b.states:
            for sym in a.alphabet.symbols:
                ts = a.step(p, sym)
                us = b.step(q, sym)
                if ts and us:
                    succ[((p, q), sym)] = frozenset(itertools.product(ts, us))

    limit: dict = {}
    for left_a, tgt_a in a.limit.items():
        for left_b, tgt_b in b.limit.items():
            tgt = frozenset(itertools.product(tgt_a, tgt_b))
            for left in _full_projection_subsets(left_a, left_b):
                limit[left] = limit.get(left, frozenset()) | tgt
    return OrdinalAutomaton(states, a.alphabet, initial, final, succ, limit)


def _full_projection_subsets(left_a: frozenset, left_b: frozenset) -> Iterable[frozenset]:
    """All S <= A x B with proj_1 S = A and proj_2 S = B.

    Degenerate shapes (either side a singleton) are handled without
    enumeration since they are by far the common case in practice.
    """
    la, lb = sorted(left_a, key=repr), sorted(left_b, key=repr)
    if len(la) == 1:
        p = la[0]
        yield frozenset((p, q) for q in lb)
        return
    if len(lb) == 1:
        q = lb[0]
        yield frozenset((p, q) for p in la)
        return
    pairs = [(p, q) for p in la for q in lb]
    n = len(pairs)
    if n > 16:
        raise AutomatonError(
            f"limit product too large: {len(la)}x{len(lb)} left sets"
        )
    for mask in range(1, 1 << n):
        sel = [pairs[i] for i in range(n) if mask >> i & 1]
        if {p for p, _ in sel} == set(la) and {q for _, q in sel} == set(lb):
            yield frozenset(sel)


def union(a: OrdinalAutomaton, b: OrdinalAutomaton) -> OrdinalAutomaton:
    """Disjoint union via tagging; accepts the union language."""
    if a.alphabet != b.alphabet:
        raise AutomatonError("union: alphabet mismatch")

    def ta(q: State) -> tuple:
        return (0, q)

    def tb(q: State) -> tuple:
        return (1, q)

    states = frozenset(map(ta, a.states)) | frozenset(map(tb, b.states))
    initial = frozenset(map(ta, a.initial)) | frozenset(map(tb, b.initial))
    final = frozenset(map(ta, a.final)) | frozenset(map(tb, b.final))
    succ = {
        (ta(q), s): frozenset(map(ta, v)) for (q, s), v in a.succ.items()
    }
    succ.update(
        {(tb(q), s): frozenset(map(tb, v)) for (q, s), v in b.succ.items()}
    )
    limit = {
        frozenset(map(ta, k)): frozenset(map(ta, v)) for k, v in a.limit.items()
    }
    limit.update(
        {frozenset(map(tb, k)): frozenset(map(tb, v)) for k, v in b.limit.items()}
    )
    return OrdinalAutomaton(states, a.alphabet, initial, final, succ, limit)


def reindex(aut: OrdinalAutomaton, arity: int, coords: Sequence[int]) -> OrdinalAutomaton:
    """Lift an automaton over Sigma^r to one over Sigma^arity.

    ``coords[i]`` says which coordinate of the wide symbol feeds the
    automaton's i-th input track.  Repeats are allowed (equating
    tracks); unmentioned coordinates are unconstrained.  An automaton
    over a plain (non-product) alphabet counts as one-track.
    """
    base = aut.alphabet.base
    r = aut.alphabet.arity
    scalar = base is None or r is None
    if scalar:
        base, r = aut.alphabet, 1
    if len(coords) != r:
        raise AutomatonError(f"reindex: expected {r} coordinates, got {len(coords)}")
    if any(c < 0 or c >= arity for c in coords):
        raise AutomatonError("reindex: coordinate out of range")
    wide = product_alphabet(base, arity)

    succ: dict = {}
    for wsym in wide.symbols:
        narrow = wsym[coords[0]] if scalar else tuple(wsym[c] for c in coords)
        for q in aut.states:
            targets = aut.step(q, narrow)
            if targets:
                succ[(q, wsym)] = targets
    return OrdinalAutomaton(
        aut.states, wide, aut.initial, aut.final, succ, dict(aut.limit)
    )


def cylindrify(aut: OrdinalAutomaton, arity: int, occupied: Sequence[int]) -> OrdinalAutomaton:
    """Special case of :func:`reindex` for a strictly increasing track list."""
    if list(occupied) != sorted(set(occupied)):
        raise AutomatonError("cylindrify: occupied tracks must strictly increase")
    return reindex(aut, arity, occupied)


def equality_automaton(base: Alphabet) -> OrdinalAutomaton:
    """Letterwise equality of two tracks, any length."""
    pair = product_alphabet(base, 2)
    q = "eq"
    succ = {(q, (s, s)): frozenset({q}) for s in base.symbols}
    limit = {frozenset({q}): frozenset({q})}
    return OrdinalAutomaton(
        frozenset({q}), pair, frozenset({q}), frozenset({q}), succ, limit
    )


# -- serialization ---------------------------------------------------------


def _state_name(q: State) -> str:
    return q if isinstance(q, str) else repr(q)


def automaton_to_dict(aut: OrdinalAutomaton) -> dict:
    names = {q: _state_name(q) for q in aut.states}
    if len(set(names.values())) != len(names):
        names = {q: f"s{i}" for i, q in enumerate(sorted(aut.states, key=repr))}
    succ = sorted(
        [names[q], format_symbol(s), names[t]]
        for (q, s), targets in aut.succ.items()
        for t in targets
    )
    limit = sorted(
        [sorted(names[q] for q in left), names[t]]
        for left, targets in aut.limit.items()
        for t in targets
    )
    return {
        "states": sorted(names.values()),
        "alphabet": sorted(format_symbol(s) for s in aut.alphabet.symbols),
        "blank": format_symbol(aut.alphabet.blank),
        "initial": sorted(names[q] for q in aut.initial),
        "final": sorted(names[q] for q in aut.final),
        "succ": succ,
        "limit": limit,
    }


def automaton_from_dict(data: dict) -> OrdinalAutomaton:
    try:
        symbols = frozenset(parse_symbol(s) for s in data["alphabet"])
        blank = parse_symbol(data["blank"])
        states = frozenset(data["states"])
        initial = frozenset(data["initial"])
        final = frozenset(data["final"])
        raw_succ = data["succ"]
        raw_limit = data["limit"]
    except KeyError as exc:
        raise AutomatonError(f"automaton JSON missing field {exc}") from None
    arity = None
    for s in symbols:
        if isinstance(s, tuple):
            arity = len(s)
    if arity is not None:
        base_syms = frozenset(c for s in symbols if isinstance(s, tuple) for c in s)
        base = Alphabet(base_syms, blank[0] if isinstance(blank, tuple) else blank)
        alpha_bet = Alphabet(symbols, blank, base=base, arity=arity)
    else:
        alpha_bet = Alphabet(symbols, blank)
    succ: dict = {}
    for src, sym, dst in raw_succ:
        key = (src, parse_symbol(sym))
        succ[key] = succ.get(key, frozenset()) | {dst}
    limit: dict = {}
    for left, dst in raw_limit:
        key = frozenset(left)
        limit[key] = limit.get(key, frozenset()) | {dst}
    return make_automaton(states, alpha_bet, initial, final, succ, limit)


def save_automaton(aut: OrdinalAutomaton, path: str) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(automaton_to_dict(aut), fh, indent=2, sort_keys=True)
        fh.write("\n")


def load_automaton(path: str) -> OrdinalAutomaton:
    with open(path, encoding="utf-8") as fh:
        return automaton_from_dict(json.load(fh))
