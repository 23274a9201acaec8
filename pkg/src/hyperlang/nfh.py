"""Hyperautomata: an NFA over track letters plus a quantifier prefix.

An NFH accepts *languages*, not words: the quantifier prefix ranges over the
words of a candidate language, and the underlying automaton checks the joint
padded word assignment.  Only finite-language membership is implemented here.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

from .core import (HWord, QuantifierPrefix, Word, as_word, is_synchronous,
                   pad_to_sync, strip_hash)
from .errors import EmptyLanguage, UniverseTooLarge
from .nfa import Nfa, nfa_language, nfa_member


@dataclass(frozen=True)
class Nfh:
    """A nondeterministic finite hyperautomaton."""

    symbols: frozenset[str]
    prefix: QuantifierPrefix
    underlying: Nfa

    def __post_init__(self):
        if self.underlying.vars != self.prefix.variables:
            raise ValueError("quantifier prefix must cover the underlying variables"
                             f" {self.underlying.vars} in order")

    @property
    def vars(self) -> tuple[str, ...]:
        return self.prefix.variables


def nfh_accepts(n: Nfh, language: Iterable) -> bool:
    """Finite-language membership per the quantifier semantics.

    ``language`` is a finite, non-empty collection of words over the NFH's
    alphabet.  Each quantifier binds its variable to a word of the language;
    a fully bound assignment is checked by right-padding all words to equal
    length and running the underlying automaton.
    """
    words = sorted({as_word(w) for w in language})
    if not words:
        raise EmptyLanguage("hyperlanguage membership is defined for non-empty languages")
    entries = n.prefix.entries
    order = n.vars
    memo: dict[tuple, bool] = {}

    def leaf(assignment: tuple[Word, ...]) -> bool:
        if assignment not in memo:
            h = pad_to_sync(dict(zip(order, assignment)), order)
            memo[assignment] = nfa_member(n.underlying, h)
        return memo[assignment]

    def evaluate(depth: int, bound: tuple[Word, ...]) -> bool:
        if depth == len(entries):
            return leaf(bound)
        quantifier, _ = entries[depth]
        branches = (evaluate(depth + 1, bound + (w,)) for w in words)
        return any(branches) if quantifier == "E" else all(branches)

    return evaluate(0, ())


def _accepted_assignments(underlying: Nfa, max_len: int) -> set[tuple[Word, ...]]:
    """All synchronous accepted HWords of length ≤ max_len, as stripped track tuples."""
    order = underlying.vars
    found: set[tuple[Word, ...]] = set()
    for letters in nfa_language(underlying, max_len):
        h = HWord(order, tuple(letters))
        if not is_synchronous(h):
            continue
        if letters and letters[-1].is_all_pad():
            continue
        found.add(tuple(strip_hash(tuple(l[v] for l in letters)) for v in order))
    return found


class _Trie:
    """Prefix tree over word tuples, for fast quantifier-tree evaluation."""

    __slots__ = ("children", "terminal")

    def __init__(self):
        self.children: dict[Word, _Trie] = {}
        self.terminal = False

    def insert(self, assignment: Sequence[Word]):
        node = self
        for w in assignment:
            node = node.children.setdefault(w, _Trie())
        node.terminal = True


def nfh_hyperlanguage_probe(n: Nfh, max_len: int,
                            universe_cap: int = 20) -> frozenset[frozenset[Word]]:
    """All non-empty sublanguages of Σ^{≤max_len} the NFH accepts.

    Exhaustive over every non-empty subset of the bounded universe; guarded
    by ``universe_cap`` on the number of universe words.
    """
    symbols = sorted(n.symbols)
    universe: list[Word] = [()]
    frontier: list[Word] = [()]
    for _ in range(max_len):
        frontier = [w + (s,) for w in frontier for s in symbols]
        universe.extend(frontier)
    if len(universe) > universe_cap:
        raise UniverseTooLarge(
            f"universe has {len(universe)} words; cap is {universe_cap}")

    root = _Trie()
    for assignment in _accepted_assignments(n.underlying, max_len):
        if all(len(w) <= max_len for w in assignment):
            root.insert(assignment)

    quantifiers = n.prefix.quantifiers

    def evaluate(node: _Trie, depth: int, words: tuple[Word, ...]) -> bool:
        if depth == len(quantifiers):
            return node.terminal
        children = node.children
        if quantifiers[depth] == "E":
            return any(w in children and evaluate(children[w], depth + 1, words)
                       for w in words)
        return all(w in children and evaluate(children[w], depth + 1, words)
                   for w in words)

    accepted = []
    for mask in range(1, 1 << len(universe)):
        words = tuple(universe[i] for i in range(len(universe)) if mask >> i & 1)
        if evaluate(root, 0, words):
            accepted.append(frozenset(words))
    return frozenset(accepted)
