"""Finitely supported words over ordinal position sets.

A word of length alpha maps every position below alpha to a symbol,
with all but finitely many positions holding the alphabet's blank.
Storage is sparse: only the non-blank entries are kept, sorted by
position.  Restriction, concatenation and convolution are the three
workhorses; their position bookkeeping is plain ordinal arithmetic.

Symbols are either opaque scalars (typically one-character strings) or,
for convolutions, tuples of scalars.  A tuple symbol renders as its
components joined by ``|`` in literals and files.
"""

from __future__ import annotations

import itertools
import re
from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .ordinals import (
    Ordinal,
    ZERO,
    add,
    format_ordinal,
    interval_type,
    parse_ordinal,
)

Symbol = object


class WordError(ValueError):
    pass


@dataclass(frozen=True, slots=True)
class Alphabet:
    symbols: frozenset
    blank: Symbol
    base: "Alphabet | None" = field(default=None, compare=False)
    arity: int | None = field(default=None, compare=False)

    def __post_init__(self) -> None:
        if self.blank not in self.symbols:
            raise WordError(f"blank {self.blank!r} not among symbols")

    def letters(self) -> list:
        """Non-blank symbols in a deterministic order."""
        return sorted((s for s in self.symbols if s != self.blank), key=repr)

    def __repr__(self) -> str:
        return f"Alphabet({sorted(map(repr, self.symbols))}, blank={self.blank!r})"


def alphabet(symbols: Iterable, blank: Symbol = "_") -> Alphabet:
    return Alphabet(frozenset(symbols) | {blank}, blank)


def product_alphabet(base: Alphabet, arity: int) -> Alphabet:
    """Componentwise product: tuple symbols, componentwise blank."""
    if arity < 1:
        raise WordError("product arity must be >= 1")
    syms = frozenset(itertools.product(sorted(base.symbols, key=repr), repeat=arity))
    return Alphabet(syms, (base.blank,) * arity, base=base, arity=arity)


@dataclass(frozen=True, slots=True)
class AlphaWord:
    length: Ordinal
    alphabet: Alphabet
    entries: tuple[tuple[Ordinal, Symbol], ...]  # sorted, non-blank only

    def at(self, pos: Ordinal) -> Symbol:
        if not pos < self.length:
            raise WordError(f"position {pos} out of range [0, {self.length})")
        for p, s in self.entries:
            if p == pos:
                return s
        return self.alphabet.blank

    def entry_map(self) -> dict:
        return dict(self.entries)

    def __str__(self) -> str:
        return format_word(self)

    def __repr__(self) -> str:
        return f"AlphaWord({format_word(self)!r})"


def make_word(
    length: Ordinal, entries: Iterable[tuple[Ordinal, Symbol]], alpha_bet: Alphabet
) -> AlphaWord:
    seen: dict[Ordinal, Symbol] = {}
    for pos, sym in entries:
        if sym not in alpha_bet.symbols:
            raise WordError(f"symbol {sym!r} not in alphabet")
        if not pos < length:
            raise WordError(f"entry position {pos} not below length {length}")
        if pos in seen:
            raise WordError(f"duplicate entry at {pos}")
        if sym != alpha_bet.blank:
            seen[pos] = sym
    ordered = tuple(sorted(seen.items(), key=lambda e: e[0]._key()))
    return AlphaWord(length, alpha_bet, ordered)


def blank_word(length: Ordinal, alpha_bet: Alphabet) -> AlphaWord:
    return AlphaWord(length, alpha_bet, ())


def support(w: AlphaWord) -> frozenset:
    return frozenset(p for p, _ in w.entries)


def sorted_support(w: AlphaWord) -> list[Ordinal]:
    return [p for p, _ in w.entries]


def restrict(w: AlphaWord, lo: Ordinal, hi: Ordinal) -> AlphaWord:
    """The word w|[lo, hi), re-based at zero via interval types."""
    if lo > hi or hi > w.length:
        raise WordError(f"bad restriction bounds [{lo}, {hi}) for length {w.length}")
    new_len = interval_type(lo, hi)
    entries = tuple(
        (interval_type(lo, p), s) for p, s in w.entries if lo <= p and p < hi
    )
    return AlphaWord(new_len, w.alphabet, entries)


def concat(u: AlphaWord, v: AlphaWord) -> AlphaWord:
    """u followed by v; v's positions are shifted by len(u).

    Entries of u keep their positions.  Because len(u) + q is strictly
    monotone in q and at least len(u), the two entry families never
    collide and none are dropped.
    """
    if u.alphabet != v.alphabet:
        raise WordError("concat: alphabet mismatch")
    total = add(u.length, v.length)
    entries = u.entries + tuple((add(u.length, q), s) for q, s in v.entries)
    return AlphaWord(total, u.alphabet, tuple(sorted(entries, key=lambda e: e[0]._key())))


def convolve(ws: Sequence[AlphaWord]) -> AlphaWord:
    """Zip r same-length words into one word over the product alphabet."""
    if not ws:
        raise WordError("convolve needs at least one word")
    base = ws[0].alphabet
    length = ws[0].length
    for w in ws:
        if w.alphabet != base:
            raise WordError("convolve: alphabet mismatch")
        if w.length != length:
            raise WordError("convolve: length mismatch")
    prod = product_alphabet(base, len(ws))
    positions = sorted({p for w in ws for p in support(w)}, key=lambda o: o._key())
    maps = [w.entry_map() for w in ws]
    entries = tuple(
        (p, tuple(m.get(p, base.blank) for m in maps)) for p in positions
    )
    return AlphaWord(length, prod, entries)


def component(w: AlphaWord, i: int) -> AlphaWord:
    """Drop to coordinate i of a product-alphabet word."""
    base = w.alphabet.base
    if base is None:
        raise WordError("component: word is not over a product alphabet")
    entries = tuple((p, s[i]) for p, s in w.entries if s[i] != base.blank)
    return AlphaWord(w.length, base, entries)


# -- symbol and word literals --------------------------------------------


def format_symbol(sym: Symbol) -> str:
    if isinstance(sym, tuple):
        return "|".join(str(c) for c in sym)
    return str(sym)


def parse_symbol(text: str) -> Symbol:
    return tuple(text.split("|")) if "|" in text else text


def format_word(w: AlphaWord) -> str:
    inner = ", ".join(
        f"{format_ordinal(p)}:{format_symbol(s)}" for p, s in w.entries
    )
    return f"len={format_ordinal(w.length)}; {{{inner}}}"


_WORD_RE = re.compile(r"len=(?P<len>[^;]+);\{(?P<entries>.*)\}$")


def parse_word(text: str, alpha_bet: Alphabet) -> AlphaWord:
    squeezed = re.sub(r"\s+", "", text)
    m = _WORD_RE.fullmatch(squeezed)
    if m is None:
        raise WordError(f"bad word literal: {text!r}")
    length = parse_ordinal(m.group("len"))
    entries = []
    body = m.group("entries")
    if body:
        for item in body.split(","):
            if ":" not in item:
                raise WordError(f"bad word entry: {item!r}")
            pos_text, sym_text = item.split(":", 1)
            entries.append((parse_ordinal(pos_text), parse_symbol(sym_text)))
    return make_word(length, entries, alpha_bet)
