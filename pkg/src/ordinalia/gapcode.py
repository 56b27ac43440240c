"""Finite encodings of transfinite words, and a classical NFA layer.

A word of ordinal length with finite support is determined by the
sequence of its letters together with the order types of the blank
stretches between them — its *gap word*.  Gap words are plain finite
sequences, so once the (infinitely many) possible gap ordinals are
bucketed into finitely many classes that every working automaton is
blind to, all of classical automata theory applies: products, subset
construction, complement, projection, emptiness with witnesses.

The bucketing is a :class:`CapPolicy`: per ω-exponent, coefficients are
kept exact below a threshold and wrap with a period above it.  The
thresholds sit strictly above the coefficients of the ambient length
``alpha``, which makes "these gaps sum to exactly alpha" a finite-state
property — the key trick behind the whole layer.
"""

from __future__ import annotations

import itertools
import math
from collections import deque
from dataclasses import dataclass, field
from typing import Iterable, Iterator, Mapping, Sequence

from .automata import OrdinalAutomaton
from .ordinals import ONE, ZERO, Ordinal, add, interval_type
from .semantics import ResourceLimitExceeded, const_reach, power_cycle
from .words import Alphabet, AlphaWord, Symbol, make_word, product_alphabet

MAX_DFA_STATES = 1 << 16
MAX_MERGE_PAIRS = 1 << 18
MAX_ABSTRACT_SYMBOLS = 1 << 16


class GapError(ValueError):
    pass


# -- gap words ---------------------------------------------------------------


@dataclass(frozen=True)
class GapWord:
    """Alternating encoding g0, a1, g1, ..., an, gn of a finite-support word.

    ``gaps`` are the order types of the n+1 maximal blank stretches
    (possibly 0), ``letters`` the n non-blank symbols in position
    order.  Sum law: g0 + 1 + g1 + ... + 1 + gn = length, evaluated
    left to right.
    """

    length: Ordinal
    gaps: tuple
    letters: tuple

    def __post_init__(self) -> None:
        gaps = tuple(self.gaps)
        letters = tuple(self.letters)
        object.__setattr__(self, "gaps", gaps)
        object.__setattr__(self, "letters", letters)
        if len(gaps) != len(letters) + 1:
            raise GapError("need exactly one more gap than letters")
        total = gaps[0]
        for g in gaps[1:]:
            total = add(add(total, ONE), g)
        if total != self.length:
            raise GapError(f"gaps sum to {total}, expected {self.length}")


def encode_gaps(w: AlphaWord) -> GapWord:
    gaps: list[Ordinal] = []
    letters: list[Symbol] = []
    cursor = ZERO
    for pos, sym in w.entries:
        gaps.append(interval_type(cursor, pos))
        letters.append(sym)
        cursor = add(pos, ONE)
    gaps.append(interval_type(cursor, w.length))
    return GapWord(w.length, tuple(gaps), tuple(letters))


def decode_gaps(gw: GapWord, alpha_bet: Alphabet) -> AlphaWord:
    entries: list[tuple[Ordinal, Symbol]] = []
    cursor = ZERO
    for g, sym in zip(gw.gaps, gw.letters):
        cursor = add(cursor, g)
        if sym == alpha_bet.blank:
            raise GapError("gap-word letters must be non-blank")
        entries.append((cursor, sym))
        cursor = add(cursor, ONE)
    return make_word(gw.length, entries, alpha_bet)


# -- cap policies ------------------------------------------------------------


@dataclass(frozen=True)
class CapPolicy:
    """Saturating per-exponent coefficient arithmetic below ``alpha``.

    Coefficient c at exponent j maps to itself below ``thresholds[j]``
    and to ``thresholds[j] + (c - thresholds[j]) % periods[j]`` above.
    Thresholds exceed the corresponding coefficient of ``alpha``, so
    alpha's own class is a singleton; classes otherwise merge exactly
    the gaps that no automaton in the working set can tell apart.
    """

    alpha: Ordinal
    thresholds: tuple[int, ...]
    periods: tuple[int, ...]

    def __post_init__(self) -> None:
        n = self.alpha.degree + 1
        if len(self.thresholds) != n or len(self.periods) != n:
            raise GapError(f"need thresholds/periods for exponents 0..{n - 1}")
        for j in range(n):
            if self.periods[j] < 1:
                raise GapError("periods must be >= 1")
            if self.thresholds[j] <= self.alpha.coefficient(j):
                raise GapError(
                    "threshold at exponent "
                    f"{j} must exceed alpha's coefficient {self.alpha.coefficient(j)}"
                )

    def cap(self, j: int, c: int) -> int:
        lam, pi = self.thresholds[j], self.periods[j]
        return c if c < lam else lam + (c - lam) % pi

    def class_of(self, g: Ordinal) -> tuple[int, ...]:
        if g > self.alpha:
            raise GapError(f"gap {g} exceeds alpha {self.alpha}")
        return tuple(self.cap(j, g.coefficient(j)) for j in range(len(self.thresholds)))

    def representative(self, cls: Sequence[int]) -> Ordinal:
        """Smallest ordinal in the class (classes are coordinatewise boxes)."""
        return Ordinal(tuple(cls))

    def add_classes(self, x: Sequence[int], y: Sequence[int]) -> tuple[int, ...]:
        """Class of xi + eta for any xi in class x, eta in class y.

        Ordinal addition keeps the right summand's low terms, adds at
        its top exponent, and keeps the left summand's higher terms;
        capping is a congruence for + at each exponent, so the class
        of the sum only depends on the classes.
        """
        e = -1
        for j in range(len(y) - 1, -1, -1):
            if y[j]:
                e = j
                break
        if e < 0:
            return tuple(x)
        return tuple(y[:e]) + (self.cap(e, x[e] + y[e]),) + tuple(x[e + 1 :])

    @property
    def zero_class(self) -> tuple[int, ...]:
        return (0,) * len(self.thresholds)

    @property
    def one_class(self) -> tuple[int, ...]:
        return self.class_of(ONE)

    @property
    def alpha_class(self) -> tuple[int, ...]:
        return self.class_of(self.alpha)

    def all_classes(self) -> Iterator[tuple[int, ...]]:
        ranges = [range(l + p) for l, p in zip(self.thresholds, self.periods)]
        return itertools.product(*ranges)

    def class_count(self) -> int:
        return math.prod(l + p for l, p in zip(self.thresholds, self.periods))


def cap_policy(working: Iterable[OrdinalAutomaton], alpha: Ordinal) -> CapPolicy:
    """Coarsest sound policy for a working set of automata at length alpha.

    Per exponent j the blank-stretch relation Reach(blank^(w^j)) of the
    synchronized product has eventually periodic powers; its threshold
    and period are the max/lcm of the per-automaton ones, which is what
    gets computed (the product itself is never built).
    """
    auts = list(working)
    bases = {
        aut.alphabet.base if aut.alphabet.base is not None else aut.alphabet
        for aut in auts
    }
    if len(bases) > 1:
        raise GapError("cap_policy: automata must share a base alphabet")
    thresholds: list[int] = []
    periods: list[int] = []
    for j in range(alpha.degree + 1):
        lam = alpha.coefficient(j) + 1
        pi = 1
        for aut in auts:
            al, ap = power_cycle(aut, aut.alphabet.blank, j)
            lam = max(lam, al)
            pi = math.lcm(pi, ap)
        thresholds.append(lam)
        periods.append(pi)
    return CapPolicy(alpha, tuple(thresholds), tuple(periods))


# -- abstract words and gap NFAs ---------------------------------------------
#
# Abstract symbols are ("gap", class-tuple) or ("let", symbol).  A
# valid abstract word alternates, starts and ends with a gap, and its
# capped total equals alpha's class; the shape NFA recognizes exactly
# those, and every public construction keeps languages inside it.


@dataclass(frozen=True, eq=False)
class GapNFA:
    """Classical NFA over gap classes and non-blank letters."""

    policy: CapPolicy
    alphabet: Alphabet
    states: frozenset
    initial: frozenset
    final: frozenset
    delta: Mapping

    def __post_init__(self) -> None:
        delta = {k: frozenset(v) for k, v in self.delta.items() if v}
        object.__setattr__(self, "delta", delta)

    def step(self, q: object, gsym: tuple) -> frozenset:
        return self.delta.get((q, gsym), frozenset())

    def letters(self) -> list[Symbol]:
        blank = self.alphabet.blank
        return sorted((s for s in self.alphabet.symbols if s != blank), key=repr)

    def symbols(self) -> Iterator[tuple]:
        for cls in self.policy.all_classes():
            yield ("gap", cls)
        for s in self.letters():
            yield ("let", s)

    def symbol_count(self) -> int:
        return self.policy.class_count() + len(self.letters())

    @property
    def size(self) -> int:
        return len(self.states)


def abstract_word(gw: GapWord, policy: CapPolicy) -> tuple:
    """The finite class-level shadow of a gap word."""
    out: list[tuple] = [("gap", policy.class_of(gw.gaps[0]))]
    for sym, g in zip(gw.letters, gw.gaps[1:]):
        out.append(("let", sym))
        out.append(("gap", policy.class_of(g)))
    return tuple(out)


def accepts_abstract(nfa: GapNFA, gsyms: Sequence[tuple]) -> bool:
    cur = set(nfa.initial)
    for gs in gsyms:
        cur = {p for q in cur for p in nfa.step(q, gs)}
        if not cur:
            return False
    return bool(cur & nfa.final)


def accepts_word(nfa: GapNFA, w: AlphaWord) -> bool:
    """Convenience: abstract acceptance of a concrete word."""
    return accepts_abstract(nfa, abstract_word(encode_gaps(w), nfa.policy))


def shape_nfa(policy: CapPolicy, alpha_bet: Alphabet) -> GapNFA:
    """All shape-valid abstract words: alternation plus capped total = alpha.

    States track (what may come next, class accumulated so far); the
    accumulator advances by gap classes and by the class of 1 per
    letter.  Because alpha's class is a singleton under the policy, a
    word is accepted iff some (equivalently, every) concretization of
    its gaps sums to exactly alpha.
    """
    letters = sorted((s for s in alpha_bet.symbols if s != alpha_bet.blank), key=repr)
    one = policy.one_class
    start = ("gap", policy.zero_class)
    states = {start}
    delta: dict = {}
    queue: deque = deque([start])
    while queue:
        st = queue.popleft()
        kind, acc = st
        if kind == "gap":
            for cls in policy.all_classes():
                nxt = ("letter", policy.add_classes(acc, cls))
                delta.setdefault((st, ("gap", cls)), set()).add(nxt)
                if nxt not in states:
                    states.add(nxt)
                    queue.append(nxt)
        else:
            nxt = ("gap", policy.add_classes(acc, one))
            for sym in letters:
                delta.setdefault((st, ("let", sym)), set()).add(nxt)
            if letters and nxt not in states:
                states.add(nxt)
                queue.append(nxt)
    final = frozenset(
        st for st in states if st[0] == "letter" and st[1] == policy.alpha_class
    )
    return GapNFA(policy, alpha_bet, frozenset(states), frozenset({start}), final, delta)


def _check_coverage(aut: OrdinalAutomaton, policy: CapPolicy) -> None:
    blank = aut.alphabet.blank
    for j in range(policy.alpha.degree + 1):
        al, ap = power_cycle(aut, blank, j)
        if al > policy.thresholds[j] or policy.periods[j] % ap != 0:
            raise GapError(
                f"cap policy too coarse for automaton at exponent {j}: "
                f"needs threshold >= {al} and period divisible by {ap}"
            )


def to_gap_nfa(
    aut: OrdinalAutomaton,
    policy: CapPolicy,
    alpha: Ordinal | None = None,
    check: bool = True,
) -> GapNFA:
    """Factor an ordinal automaton through gap classes.

    Gap-class transitions are the blank-stretch reachability relations
    of class representatives; letter transitions come straight from the
    successor table.  The result is intersected with the shape language
    so that abstract acceptance is equivalent to membership:
    member(aut, w) iff the shadow of encode_gaps(w) is accepted.
    """
    if alpha is not None and alpha != policy.alpha:
        raise GapError(f"alpha {alpha} does not match policy alpha {policy.alpha}")
    if check:
        _check_coverage(aut, policy)
    blank = aut.alphabet.blank
    delta: dict = {}
    for cls in policy.all_classes():
        rel = const_reach(aut, blank, policy.representative(cls))
        for q, p in rel:
            delta.setdefault((q, ("gap", cls)), set()).add(p)
    for (q, s), targets in aut.succ.items():
        if s != blank:
            delta.setdefault((q, ("let", s)), set()).update(targets)
    skeleton = GapNFA(
        policy, aut.alphabet, aut.states, aut.initial, aut.final, delta
    )
    return nfa_product(skeleton, shape_nfa(policy, aut.alphabet))


# -- NFA algebra -------------------------------------------------------------


def _compatible(x: GapNFA, y: GapNFA, what: str) -> None:
    if x.policy != y.policy:
        raise GapError(f"{what}: cap policy mismatch")
    if x.alphabet != y.alphabet:
        raise GapError(f"{what}: alphabet mismatch")


def nfa_product(x: GapNFA, y: GapNFA) -> GapNFA:
    """Intersection; only pairs reachable from the initial set are built."""
    _compatible(x, y, "nfa_product")
    syms = list(x.symbols())
    initial = frozenset(itertools.product(x.initial, y.initial))
    states: set = set(initial)
    delta: dict = {}
    queue: deque = deque(initial)
    while queue:
        pq = queue.popleft()
        p, q = pq
        for gs in syms:
            ts = x.step(p, gs)
            us = y.step(q, gs)
            if ts and us:
                nxts = frozenset(itertools.product(ts, us))
                delta[(pq, gs)] = nxts
                for n in nxts:
                    if n not in states:
                        states.add(n)
                        queue.append(n)
    final = frozenset(
        (p, q) for p, q in states if p in x.final and q in y.final
    )
    return GapNFA(x.policy, x.alphabet, frozenset(states), initial, final, delta)


def nfa_union(x: GapNFA, y: GapNFA) -> GapNFA:
    _compatible(x, y, "nfa_union")

    def tag(i: int, q: object) -> tuple:
        return (i, q)

    states = frozenset(tag(0, q) for q in x.states) | frozenset(
        tag(1, q) for q in y.states
    )
    initial = frozenset(tag(0, q) for q in x.initial) | frozenset(
        tag(1, q) for q in y.initial
    )
    final = frozenset(tag(0, q) for q in x.final) | frozenset(
        tag(1, q) for q in y.final
    )
    delta = {
        ((tag(0, q), gs)): frozenset(tag(0, p) for p in v)
        for (q, gs), v in x.delta.items()
    }
    delta.update(
        ((tag(1, q), gs), frozenset(tag(1, p) for p in v))
        for (q, gs), v in y.delta.items()
    )
    return GapNFA(x.policy, x.alphabet, states, initial, final, delta)


def trim(nfa: GapNFA) -> GapNFA:
    """Drop states not on any initial-to-final path."""
    fwd: dict = {}
    bwd: dict = {}
    for (q, _), targets in nfa.delta.items():
        fwd.setdefault(q, set()).update(targets)
        for p in targets:
            bwd.setdefault(p, set()).add(q)

    def closure(seed: frozenset, edges: dict) -> set:
        seen = set(seed)
        stack = list(seed)
        while stack:
            q = stack.pop()
            for p in edges.get(q, ()):
                if p not in seen:
                    seen.add(p)
                    stack.append(p)
        return seen

    keep = closure(nfa.initial, fwd) & closure(nfa.final, bwd)
    delta = {}
    for (q, gs), targets in nfa.delta.items():
        if q in keep:
            kept = targets & keep
            if kept:
                delta[(q, gs)] = kept
    return GapNFA(
        nfa.policy,
        nfa.alphabet,
        frozenset(keep),
        nfa.initial & keep,
        nfa.final & keep,
        delta,
    )


def determinize(nfa: GapNFA, max_states: int = MAX_DFA_STATES) -> GapNFA:
    """Total subset-construction DFA (state sets as frozensets)."""
    if nfa.symbol_count() > MAX_ABSTRACT_SYMBOLS:
        raise ResourceLimitExceeded(
            f"abstract alphabet has {nfa.symbol_count()} symbols, "
            f"over the {MAX_ABSTRACT_SYMBOLS} limit"
        )
    syms = list(nfa.symbols())
    start = frozenset(nfa.initial)
    states: set = {start}
    delta: dict = {}
    queue: deque = deque([start])
    while queue:
        cur = queue.popleft()
        for gs in syms:
            nxt = frozenset(p for q in cur for p in nfa.step(q, gs))
            delta[(cur, gs)] = {nxt}
            if nxt not in states:
                states.add(nxt)
                if len(states) > max_states:
                    raise ResourceLimitExceeded(
                        f"determinization exceeded {max_states} states"
                    )
                queue.append(nxt)
    final = frozenset(s for s in states if s & nfa.final)
    return GapNFA(
        nfa.policy, nfa.alphabet, frozenset(states), frozenset({start}), final, delta
    )


def complement(nfa: GapNFA) -> GapNFA:
    """Shape-valid words not accepted: determinize, flip, re-shape."""
    dfa = determinize(nfa)
    flipped = GapNFA(
        dfa.policy,
        dfa.alphabet,
        dfa.states,
        dfa.initial,
        dfa.states - dfa.final,
        dfa.delta,
    )
    return trim(nfa_product(flipped, shape_nfa(nfa.policy, nfa.alphabet)))


def exists_project(nfa: GapNFA, coord: int) -> GapNFA:
    """Project away one track of a product-alphabet gap NFA.

    Letters project componentwise.  A letter whose projection is all
    blank used to occupy a position, so it dissolves into its
    neighboring gaps; the merge g (+1+g')* is carried out in capped
    class arithmetic by a search over (state, accumulated class).
    """
    base = nfa.alphabet.base
    r = nfa.alphabet.arity
    if base is None or r is None or r < 2:
        raise GapError("exists_project needs a product alphabet of arity >= 2")
    if not 0 <= coord < r:
        raise GapError(f"coordinate {coord} out of range for arity {r}")
    narrow = product_alphabet(base, r - 1) if r > 2 else base

    def proj(sym: tuple) -> Symbol:
        rest = sym[:coord] + sym[coord + 1 :]
        return rest if r > 2 else rest[0]

    policy = nfa.policy
    one = policy.one_class
    erasable = [
        ("let", s) for s in nfa.letters() if proj(s) == narrow.blank
    ]
    gap_syms = [("gap", cls) for cls in policy.all_classes()]

    delta: dict = {}
    for (q, gs), targets in nfa.delta.items():
        if gs[0] == "let":
            ps = proj(gs[1])
            if ps != narrow.blank:
                delta.setdefault((q, ("let", ps)), set()).update(targets)

    budget = MAX_MERGE_PAIRS
    for q in nfa.states:
        seen: set = set()
        queue: deque = deque()
        for gs in gap_syms:
            for p in nfa.step(q, gs):
                node = (p, gs[1])
                if node not in seen:
                    seen.add(node)
                    queue.append(node)
        while queue:
            p, acc = queue.popleft()
            delta.setdefault((q, ("gap", acc)), set()).add(p)
            for els in erasable:
                for p1 in nfa.step(p, els):
                    acc1 = policy.add_classes(acc, one)
                    for gs in gap_syms:
                        for p2 in nfa.step(p1, gs):
                            node = (p2, policy.add_classes(acc1, gs[1]))
                            if node not in seen:
                                seen.add(node)
                                if len(seen) > budget:
                                    raise ResourceLimitExceeded(
                                        "gap-merge search exceeded "
                                        f"{budget} (state, class) pairs"
                                    )
                                queue.append(node)
    projected = GapNFA(
        policy, narrow, nfa.states, nfa.initial, nfa.final, delta
    )
    return trim(projected)


def emptiness_witness(nfa: GapNFA) -> GapWord | None:
    """Shortest accepted abstract word, concretized, or None.

    Breadth-first over states in a fixed order, so witnesses are
    deterministic; gaps take their minimal class representatives and
    the reassembled word is re-checked to sum to exactly alpha.
    """
    syms = sorted(nfa.symbols(), key=repr)
    order = {q: i for i, q in enumerate(sorted(nfa.states, key=repr))}
    parent: dict = {}
    queue: deque = deque()
    for q in sorted(nfa.initial, key=repr):
        parent[q] = None
        queue.append(q)
    goal = None
    for q in queue:
        if q in nfa.final:
            goal = q
            break
    while goal is None and queue:
        q = queue.popleft()
        for gs in syms:
            for p in sorted(nfa.step(q, gs), key=lambda s: order[s]):
                if p not in parent:
                    parent[p] = (q, gs)
                    if p in nfa.final:
                        goal = p
                        break
                    queue.append(p)
            if goal is not None:
                break
        if goal is not None:
            break
    if goal is None:
        return None
    path: list[tuple] = []
    cur = goal
    while parent[cur] is not None:
        prev, gs = parent[cur]
        path.append(gs)
        cur = prev
    path.reverse()
    return _concretize(path, nfa.policy)


def _concretize(gsyms: Sequence[tuple], policy: CapPolicy) -> GapWord:
    gaps: list[Ordinal] = []
    letters: list[Symbol] = []
    expect = "gap"
    for gs in gsyms:
        kind = gs[0]
        if kind != expect:
            raise GapError("accepted abstract word is not shape-valid")
        if kind == "gap":
            gaps.append(policy.representative(gs[1]))
            expect = "let"
        else:
            letters.append(gs[1])
            expect = "gap"
    if expect != "let":
        raise GapError("accepted abstract word is not shape-valid")
    try:
        return GapWord(policy.alpha, tuple(gaps), tuple(letters))
    except GapError as exc:
        raise GapError(f"concretization failed, cap policy unsound: {exc}") from exc
