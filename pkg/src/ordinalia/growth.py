"""Distinguishability growth: free sets, support normalization, probes.

Fix a family of relations given by automata (first track distinguished)
and a finite parameter set E.  Two words are equivalent when no
relation of the family separates them using parameters from E; a set
is *free* when its members are pairwise inequivalent.  The central
quantity is how many pairwise-distinguishable elements a parameter set
of size m can support — for automaton-presented relations this grows
at most linearly in m once supports are normalized into a small
neighborhood of the parameters' supports, while natural non-automatic
structures (the random graph, definable affine maps over a polynomial
ring) blow past every linear bound.  The probes at the bottom of this
module put numbers on both sides of that contrast.

The normalization machinery mirrors the linear-bound argument: every
word is equivalent to one whose support lies in the neighborhood
``U_m`` of the parameter supports, computed by repeatedly cutting
pumpable stretches out of oversized gaps (the cut points come from a
pigeonhole on run relations, so equivalence is preserved exactly).
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Iterable, Mapping, Sequence

from .automata import OrdinalAutomaton
from .ordinals import ONE, ZERO, Ordinal, add, interval_type, omega_power
from .semantics import ResourceLimitExceeded, member, run_relation
from .words import (
    AlphaWord,
    Symbol,
    blank_word,
    concat,
    convolve,
    restrict,
    support,
)

U_ENUM_MAX = 8
U_BOUND_MAX = 1024
SHRINK_MAX_STEPS = 4096
TRANSVERSAL_CAP = 4096


class GrowthError(ValueError):
    pass


# -- relation families -------------------------------------------------------


@dataclass(frozen=True)
class RelationFamily:
    """Automata over a common base alphabet; track 0 is the element,
    the remaining tracks take parameters."""

    automata: tuple
    alpha: Ordinal

    def __post_init__(self) -> None:
        object.__setattr__(self, "automata", tuple(self.automata))
        if not self.automata:
            raise GrowthError("a relation family needs at least one automaton")
        bases = {self._base(aut) for aut in self.automata}
        if len(bases) > 1:
            raise GrowthError("family automata must share a base alphabet")

    @staticmethod
    def _base(aut: OrdinalAutomaton):
        ab = aut.alphabet
        return ab.base if ab.base is not None else ab

    @property
    def base_alphabet(self):
        return self._base(self.automata[0])

    def params(self, aut: OrdinalAutomaton) -> int:
        ab = aut.alphabet
        return (ab.arity - 1) if ab.arity is not None else 0


def k_const(family: RelationFamily) -> int:
    """One more than the number of possible run-relation tuples.

    Any function from a segment count into relation tuples must repeat
    within this many steps, which is what the gap-shrinking pigeonhole
    uses; it also sets the neighborhood radius for normalization.
    """
    return (1 << sum(len(aut.states) ** 2 for aut in family.automata)) + 1


# -- equivalence under parameters ---------------------------------------------


def _tuples(family: RelationFamily, E: Sequence[AlphaWord], aut: OrdinalAutomaton):
    return itertools.product(E, repeat=family.params(aut))


def _holds(aut: OrdinalAutomaton, x: AlphaWord, params: tuple) -> bool:
    return member(aut, convolve([x, *params]) if params else x)


def equiv(family: RelationFamily, E: Sequence[AlphaWord],
          x: AlphaWord, y: AlphaWord) -> bool:
    """No relation of the family separates x from y with parameters in E."""
    E = list(E)
    for aut in family.automata:
        for params in _tuples(family, E, aut):
            if _holds(aut, x, params) != _holds(aut, y, params):
                return False
    return True


def signature(family: RelationFamily, E: Sequence[AlphaWord], x: AlphaWord) -> tuple:
    """Membership bits of x across all relations and parameter tuples;
    equal signatures is the same thing as equivalence."""
    E = list(E)
    return tuple(
        _holds(aut, x, params)
        for aut in family.automata
        for params in _tuples(family, E, aut)
    )


@dataclass(frozen=True)
class FreeSetReport:
    members: tuple
    universe_size: int

    @property
    def size(self) -> int:
        return len(self.members)


def maximal_free_set(
    family: RelationFamily,
    E: Sequence[AlphaWord],
    universe: Iterable[AlphaWord],
    key: Callable | None = None,
) -> FreeSetReport:
    """Greedy maximal pairwise-distinguishable subset of the universe.

    Scanning order is the caller's key (defaults to the well-order used
    elsewhere), and the first representative of every equivalence class
    gets picked, so the result is deterministic and genuinely maximal:
    anything left out is equivalent to something inside.
    """
    from .examples import word_sort_key

    scan = sorted(universe, key=key or word_sort_key)
    seen: set = set()
    members: list[AlphaWord] = []
    for w in scan:
        sig = signature(family, E, w)
        if sig not in seen:
            seen.add(sig)
            members.append(w)
    return FreeSetReport(tuple(members), len(scan))


def nu_of_E(
    family: RelationFamily,
    E: Sequence[AlphaWord],
    universe: Iterable[AlphaWord],
    free_family: Sequence[frozenset] | Callable | None = None,
    signature_fn: Callable | None = None,
    transversal_cap: int = TRANSVERSAL_CAP,
) -> int:
    """Distinguishable-element count of E, optionally through a family.

    Without ``free_family`` this is the number of equivalence classes
    in the universe (every maximal free set is a class transversal).
    With a family — a list of word sets, or a callable scoring a
    candidate set directly — it is the *minimum* over all maximal free
    sets G of the largest family member inside G, so the count cannot
    be inflated by a lucky transversal.  ``signature_fn`` substitutes a
    precomputed signature for the automaton-evaluated one.
    """
    from .examples import word_sort_key

    sig = signature_fn or (lambda w: signature(family, E, w))
    classes: dict = {}
    for w in sorted(universe, key=word_sort_key):
        classes.setdefault(sig(w), []).append(w)
    if free_family is None:
        return len(classes)
    groups = list(classes.values())
    total = math.prod(len(g) for g in groups)
    if total > transversal_cap:
        raise ResourceLimitExceeded(
            f"{total} class transversals exceed the cap {transversal_cap}"
        )
    if callable(free_family):
        score = free_family
    else:
        sets = [frozenset(fs) for fs in free_family]

        def score(G: frozenset) -> int:
            return max((len(fs) for fs in sets if fs <= G), default=0)

    return min(score(frozenset(combo)) for combo in itertools.product(*groups))


# -- support neighborhoods ----------------------------------------------------


def high_part(o: Ordinal, m: int) -> Ordinal:
    """The terms of o with exponent strictly above m."""
    if o.degree <= m:
        return ZERO
    return Ordinal((0,) * (m + 1) + o.coeffs[m + 1 :])


def u_contains(X: Iterable[Ordinal], m: int, gamma: Ordinal) -> bool:
    """Is gamma in the m-neighborhood of X?

    gamma qualifies through some anchor in X (or 0) when both agree
    above exponent m and, at the largest disagreeing exponent k, gamma
    overshoots by at most m with all lower coefficients at most m.
    Works for astronomically large m: only actual CNF terms are
    touched, never m of anything.
    """
    for beta in {*X, ZERO}:
        if gamma == beta:
            return True
        if high_part(gamma, m) != high_part(beta, m):
            continue
        top = min(m, max(gamma.degree, beta.degree, 0))
        k = next(
            (i for i in range(top, -1, -1)
             if gamma.coefficient(i) != beta.coefficient(i)),
            None,
        )
        if k is None:
            continue
        if gamma.coefficient(k) > beta.coefficient(k) + m:
            continue
        if any(gamma.coefficient(i) > m for i in range(k)):
            continue
        return True
    return False


def u_single(beta: Ordinal, m: int, bound: Ordinal):
    """Enumerate the m-neighborhood of a single anchor, below ``bound``.

    Enumeration materializes coefficient boxes of side about m, so it
    is only for small m; membership tests scale to any m via
    :func:`u_contains`.
    """
    if m > U_ENUM_MAX:
        raise ResourceLimitExceeded(
            f"neighborhood enumeration needs m <= {U_ENUM_MAX}, got {m}"
        )
    if beta < bound:
        yield beta
    tail = beta.coeffs[m + 1 :] if beta.degree > m else ()
    anchor = [beta.coefficient(i) for i in range(m + 1)]
    for k in range(m + 1):
        for lk in range(anchor[k] + m + 1):
            if lk == anchor[k]:
                continue
            for lows in itertools.product(range(m + 1), repeat=k):
                coeffs = (*lows, lk, *anchor[k + 1 :], *tail)
                gamma = Ordinal(coeffs)
                if gamma < bound:
                    yield gamma


def u_set(X: Iterable[Ordinal], m: int, bound: Ordinal) -> frozenset:
    """The m-neighborhood of X (anchors X and 0), cut off at ``bound``."""
    out: set = set()
    for beta in {*X, ZERO}:
        out.update(u_single(beta, m, bound))
    return frozenset(out)


def u_iter_set(X: Iterable[Ordinal], m: int, rounds: int, bound: Ordinal) -> frozenset:
    """``rounds``-fold iteration of the m-neighborhood operator."""
    cur = frozenset(o for o in X if o < bound)
    for _ in range(rounds):
        cur = u_set(cur, m, bound)
    return cur


def bound_u(X: Iterable[Ordinal], m: int, rounds: int, bound: Ordinal) -> int:
    """Closed-form cardinality bound for the iterated m-neighborhood.

    Polynomial in the coefficient magnitude and the number of distinct
    high parts — the smallness that makes linear growth bounds tick.
    """
    if m > U_BOUND_MAX:
        raise ResourceLimitExceeded(f"bound evaluation needs m <= {U_BOUND_MAX}")
    pool = {*X, bound}
    c = max(
        (o.coefficient(j) for o in pool for j in range(min(m, o.degree) + 1)),
        default=0,
    )
    dm = len({high_part(o, m) for o in {*pool, ZERO}})
    return (c + rounds * m) ** (m + 1) * (rounds * m + 1) * dm


# -- gap shrinking and support normalization -----------------------------------


def shrink_gap(
    family: RelationFamily,
    E: Sequence[AlphaWord],
    v: AlphaWord,
    gamma: Ordinal,
    n: int,
    max_steps: int = SHRINK_MAX_STEPS,
) -> AlphaWord:
    """Cut a pumpable stretch out of the window [gamma, gamma + w^(n+1)).

    The run relations of all family automata over the prefix segments
    [gamma, gamma + w^n * j), with blank parameter tracks, must repeat
    by the pigeonhole; cutting between the first repeated pair leaves
    every relation — hence equivalence under any parameters whose
    supports avoid the window — unchanged.  The window must avoid the
    parameters' supports, and the result is re-verified exactly.
    """
    E = list(E)
    window_end = add(gamma, omega_power(n + 1))
    for e in E:
        if any(gamma <= p < window_end for p in support(e)):
            raise GrowthError("shrink window overlaps a parameter support")
    base = family.base_alphabet

    def profile_at(j: int) -> frozenset:
        hi = gamma if j == 0 else add(gamma, omega_power(n, j))
        seg = restrict(v, gamma, hi)
        out = set()
        for i, aut in enumerate(family.automata):
            p = family.params(aut)
            if p:
                tracks = [seg] + [blank_word(seg.length, base)] * p
                rel = run_relation(aut, convolve(tracks))
            else:
                rel = run_relation(aut, seg)
            out.update((i, q, t) for q, t in rel)
        return frozenset(out)

    seen: dict = {}
    cut = None
    for j in range(max_steps + 1):
        prof = profile_at(j)
        if prof in seen:
            cut = (seen[prof], j)
            break
        seen[prof] = j
    if cut is None:
        raise ResourceLimitExceeded(
            f"no repeated segment relation within {max_steps} steps"
        )
    n1, n2 = cut
    c1 = gamma if n1 == 0 else add(gamma, omega_power(n, n1))
    c2 = add(gamma, omega_power(n, n2))
    w = concat(restrict(v, ZERO, c1), restrict(v, c2, v.length))
    if w.length != v.length:
        raise GrowthError(
            "cut changed the word length; the window geometry is wrong"
        )
    if not equiv(family, E, v, w):
        raise GrowthError("shrink failed re-verification")
    return w


@dataclass(frozen=True)
class NormalizeResult:
    word: AlphaWord
    steps: tuple


def normalize(
    family: RelationFamily,
    E: Sequence[AlphaWord],
    v: AlphaWord,
    m: int | None = None,
    max_steps: int = 64,
) -> NormalizeResult:
    """Equivalent word with support inside the m-neighborhood of
    supp(E) plus the length.

    With ``m`` omitted the true pigeonhole constant is used.  Each round
    looks at the largest offending support point: when some coefficient
    of it is oversized and the pumping window around that coefficient
    avoids every parameter support (a blocked window at an exponent
    within the radius would certify the point as unoffending, so this
    is the common case), a stretch is cut out of the window; otherwise
    the offending stretch is transplanted flush against the anchors.
    A user-supplied small ``m`` tightens the neighborhood far below
    what the pigeonhole justifies, so transplants become frequent and
    may fail.  Every step re-verifies equivalence exactly — exploration
    can fail loudly but never silently lies.
    """
    E = list(E)
    radius = k_const(family) if m is None else m
    if radius < 3:
        raise GrowthError("the neighborhood radius must be at least 3")
    anchors = frozenset().union(*(support(e) for e in E)) if E else frozenset()
    anchors |= {v.length}
    cur = v
    steps: list[str] = []
    prev_measure = None
    for _ in range(max_steps):
        offenders = sorted(
            p for p in support(cur) if not u_contains(anchors, radius, p)
        )
        if not offenders:
            return NormalizeResult(cur, tuple(steps))
        beta = offenders[-1]
        measure = (len(offenders), beta)
        if prev_measure is not None and measure >= prev_measure:
            raise GrowthError("normalization stopped making progress")
        prev_measure = measure
        window = _find_window(beta, anchors, radius, cur.length)
        if window is not None:
            nn, eps1 = window
            cur = shrink_gap(family, E, cur, eps1, nn)
            steps.append(f"shrink window at {eps1} exponent {nn}")
            continue
        cur = _transplant(family, E, cur, beta, radius)
        steps.append(f"transplant around {beta}")
    raise GrowthError(f"normalization exceeded {max_steps} steps")


def _find_window(
    beta: Ordinal, anchors: frozenset, radius: int, alpha: Ordinal
) -> tuple | None:
    """Smallest exponent of beta with an oversized coefficient whose
    pumping window avoids every anchor and the length."""
    for nn in range(beta.degree + 1):
        b = beta.coefficient(nn)
        if b < radius - 1:
            continue
        eps1 = Ordinal((0,) * nn + (b + 1 - radius,) + beta.coeffs[nn + 1 :])
        eps2 = Ordinal(
            (0,) * (nn + 1) + (beta.coefficient(nn + 1) + 1,) + beta.coeffs[nn + 2 :]
        )
        if any(eps1 <= a < eps2 for a in {*anchors, alpha}):
            continue
        return nn, eps1
    return None


def _transplant(
    family: RelationFamily,
    E: Sequence[AlphaWord],
    v: AlphaWord,
    beta: Ordinal,
    m: int,
) -> AlphaWord:
    """Exploratory support transplant around a blocked offender.

    Rebuilds the word with the stretch carrying beta moved flush
    against the nearest anchor structure, padding with blank blocks of
    order type w^m.  Exact equivalence is re-verified; a too-small m
    shows up as a loud failure here.
    """
    it = interval_type
    alpha = v.length
    beta_high = high_part(beta, m)
    vpoints = support(v)
    epoints = frozenset().union(*(support(e) for e in E)) if E else frozenset()
    below = [p for p in (vpoints | epoints) if p < beta_high]
    gamma = add(max(below), ONE) if below else ZERO
    after = sorted(p for p in epoints if beta <= p < alpha)
    delta = after[0] if after else alpha
    delta_high = high_part(delta, m)
    vbelow = [p for p in vpoints if p < delta_high]
    dprime = add(max(vbelow), ONE) if vbelow else ZERO
    if not (gamma <= beta_high <= dprime <= delta_high <= alpha):
        raise GrowthError("transplant geometry collapsed; m too small")
    eta = it(add(it(gamma, beta_high), it(beta_high, dprime)), it(gamma, delta_high))
    pieces = concat(
        concat(
            concat(restrict(v, ZERO, gamma), blank_word(omega_power(m), v.alphabet)),
            restrict(v, beta_high, dprime),
        ),
        concat(blank_word(eta, v.alphabet), restrict(v, delta_high, alpha)),
    )
    if pieces.length != alpha:
        raise GrowthError("transplant changed the word length; m too small")
    if not equiv(family, E, v, pieces):
        raise GrowthError("transplant failed re-verification; m too small")
    return pieces


# -- probes --------------------------------------------------------------------


@dataclass(frozen=True)
class ProbeRow:
    stage: int
    parameter_count: int
    nu: int

    @property
    def ratio(self) -> Fraction:
        return Fraction(self.nu, self.parameter_count)


def growth_bound_probe(max_stage: int = 2, rng=None, cross_checks: int = 40):
    """Distinguishability of the triangular family, stage by stage.

    Stage n uses the stage-n words as parameters and measures the
    family's count over the stage-(n+1) words (plus one filler).  The
    first two stages are evaluated straight off the generator-graph
    automata; the last stage builds signatures by running the
    generators forward, cross-checked against the automata on random
    triples when an rng is supplied.
    """
    from .examples import AB, W2, f_apply, generator_relations, tn_words

    family = RelationFamily(tuple(generator_relations()), W2)
    tags = ("a", "b")
    rows: list[ProbeRow] = []
    for n in range(max_stage + 1):
        E = list(tn_words(n))
        universe = list(tn_words(n + 1)) + [blank_word(W2, AB)]
        fsets = [frozenset(tn_words(n)), frozenset(tn_words(n + 1))]
        if n <= 1:
            nu = nu_of_E(family, E, universe, free_family=fsets)
        else:
            produced: dict = {}
            for t, tag in enumerate(tags):
                for wi, w in enumerate(E):
                    for vi, ve in enumerate(E):
                        u = f_apply(tag, w, ve)
                        produced.setdefault(u, set()).add((t, wi, vi))
            sig_fn = lambda u: frozenset(produced.get(u, ()))
            nu = nu_of_E(family, E, universe, free_family=fsets,
                         signature_fn=sig_fn)
            if rng is not None:
                for _ in range(cross_checks):
                    tag = rng.choice(tags)
                    w = rng.choice(E)
                    ve = rng.choice(E)
                    u = rng.choice(universe)
                    aut = family.automata[tags.index(tag)]
                    got = member(aut, convolve([u, w, ve]))
                    if got != (u == f_apply(tag, w, ve)):
                        raise GrowthError(
                            "generator automaton disagrees with direct application"
                        )
        rows.append(ProbeRow(n, len(E), nu))
    return tuple(rows)


def rado_edge(i: int, j: int) -> bool:
    """Adjacency of the bit graph on the naturals: the smaller index
    reads a set bit of the larger."""
    lo, hi = sorted((i, j))
    return lo != hi and bool((hi >> lo) & 1)


@dataclass(frozen=True)
class RadoRow:
    n: int
    nu: int


def rado_growth_demo(max_n: int = 4):
    """Classes of the bit graph against parameters 0..n-1: always 2^n.

    The window [0, 2^(n+1)) already realizes every adjacency pattern,
    so the count is exact, and it exceeds n*k for every fixed k once n
    is large enough — the growth no automaton-presented family attains.
    """
    rows = []
    for n in range(max_n + 1):
        sigs = {
            tuple(rado_edge(x, e) for e in range(n))
            for x in range(1 << (n + 1))
        }
        rows.append(RadoRow(n, len(sigs)))
    return tuple(rows)


def _polymul(a: int, b: int) -> int:
    """Carry-less product: polynomials over the two-element field as bits."""
    out = 0
    while b:
        if b & 1:
            out ^= a
        a <<= 1
        b >>= 1
    return out


@dataclass(frozen=True)
class SquaringRow:
    support: int
    slope: int
    pair_count: int
    distinct: int


def squaring_experiment(max_support: int = 3):
    """Affine-map growth over the carry-less polynomial ring.

    For the parameter with support {0..s-1}, search the minimal slope x
    making (a, b) -> a*x + b injective on pairs from the parameter's
    subset lattice, then count the image.  The count is 4^s: a single
    parameter of size s supports quadratically-exponentially many
    distinguishable values, which is the shape of argument that rules
    out automaton presentations of rings with such definable maps.
    """
    rows = []
    for s in range(1, max_support + 1):
        subs = list(range(1 << s))
        x = 0
        while True:
            vals = {_polymul(a, x) ^ b for a in subs for b in subs}
            if len(vals) == len(subs) ** 2:
                break
            x += 1
        rows.append(SquaringRow(s, x, len(subs) ** 2, len(vals)))
    return tuple(rows)
