"""Context-free hypergrammars and their decidable decision procedures.

A CFHG is a CFG over track letters plus a quantifier prefix.  Decision
procedures follow the decidability frontier: ∃*-emptiness and single-∀
emptiness are polynomial; ∀*/∃∀* emptiness is decidable for ranked grammars
via diagonal restriction; finite-language membership is decidable for every
prefix; everything else raises a structured ``Undecidable``.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from .cfg import (Cfg, cfg_empty, cfg_intersect_empty, cleanup, cyk_member,
                  derive_bounded, to_cnf)
from .core import (HWord, PAD, QuantifierPrefix, TrackLetter, Word, as_word,
                   is_synchronous, pad_to_sync)
from .errors import (EmptyLanguage, NotRanked, Undecidable, UniverseTooLarge,
                     WrongPrefix)
from .nfa import Nfa, pad_anywhere, track_product, with_var, word_automaton
from .ranks import RankTable, compute_ranks, is_ranked


@dataclass(frozen=True)
class Cfhg:
    """A context-free hypergrammar."""

    symbols: frozenset[str]
    prefix: QuantifierPrefix
    underlying: Cfg

    def __post_init__(self):
        order = self.prefix.variables
        for token in self.underlying.terminals():
            if not isinstance(token, TrackLetter) or token.vars != order:
                raise ValueError(
                    f"terminal {token!r} is not a track letter over {order}")
            for s in token.symbols:
                if s != PAD and s not in self.symbols:
                    raise ValueError(f"symbol {s!r} outside the alphabet")

    @property
    def vars(self) -> tuple[str, ...]:
        return self.prefix.variables

    def ranked(self) -> bool:
        return is_ranked(self.underlying).ranked


def _require_prefix(g: Cfhg, allowed, what: str):
    if g.prefix.quantifiers not in allowed:
        raise WrongPrefix(f"{what} requires a prefix in {allowed}, "
                          f"got {g.prefix.render()!r}")


def exists_empty(g: Cfhg) -> bool:
    """Emptiness for ∃* prefixes (and a single ∀): reduces to CFG emptiness."""
    qs = g.prefix.quantifiers
    if not (all(q == "E" for q in qs) or len(qs) == 1):
        raise WrongPrefix("exists_empty handles ∃* and single-quantifier prefixes")
    return cfg_empty(g.underlying)


def exists_regular_member(g: Cfhg, a: Nfa) -> bool:
    """Is L(a) in the hyperlanguage of an ∃^k grammar?

    True iff some k-tuple of #-padded words of L(a) is derived, i.e. the
    underlying grammar meets the k-fold free product of pad-closed copies
    of the automaton.
    """
    if any(q != "E" for q in g.prefix.quantifiers):
        raise WrongPrefix("regular membership is only decidable for ∃* prefixes")
    padded = pad_anywhere(a)
    joint = track_product([with_var(padded, v) for v in g.vars])
    return not cfg_intersect_empty(to_cnf(g.underlying), joint)


def finite_member(g: Cfhg, language, force_slow: bool = False) -> bool:
    """Is the finite language a member of the grammar's hyperlanguage?

    Walks the quantifier decision tree over word assignments.  A leaf asks
    whether some #-padding of the assignment is derived: for ranked grammars
    the synchronous padding is the only one, so a CYK check suffices; in
    general the leaf intersects the underlying grammar with the product of
    pad-anywhere word automata.
    """
    words = sorted({as_word(w) for w in language})
    if not words:
        raise EmptyLanguage("membership is defined for non-empty languages")
    for w in words:
        for s in w:
            if s not in g.symbols:
                raise EmptyLanguage(f"word symbol {s!r} outside the alphabet")
    cnf = to_cnf(g.underlying)
    order = g.vars
    use_fast = not force_slow and g.ranked()
    memo: dict[tuple, bool] = {}

    def leaf(assignment: tuple[Word, ...]) -> bool:
        if assignment in memo:
            return memo[assignment]
        if use_fast:
            h = pad_to_sync(dict(zip(order, assignment)), order)
            result = cyk_member(cnf, h)
        else:
            parts = [with_var(pad_anywhere(word_automaton(w, g.symbols)), v)
                     for w, v in zip(assignment, order)]
            result = not cfg_intersect_empty(cnf, track_product(parts))
        memo[assignment] = result
        return result

    entries = g.prefix.entries

    def evaluate(depth: int, bound: tuple[Word, ...]) -> bool:
        if depth == len(entries):
            return leaf(bound)
        quantifier, _ = entries[depth]
        branches = (evaluate(depth + 1, bound + (w,)) for w in words)
        return any(branches) if quantifier == "E" else all(branches)

    return evaluate(0, ())


def sync_check_bounded(g: Cfhg, n: int) -> bool:
    """Every derivable terminal word of length ≤ n is synchronous."""
    for word in derive_bounded(g.underlying, n):
        if not is_synchronous(HWord(g.vars, tuple(word))):
            return False
    return True


def diagonal_restriction(g: Cfhg) -> Cfg:
    """Drop every rule whose letters assign the variables different symbols
    (or a pad); what remains derives exactly the all-identical assignments."""

    def diagonal(body) -> bool:
        for token in body:
            if isinstance(token, TrackLetter):
                if PAD in token.symbols or len(set(token.symbols)) != 1:
                    return False
        return True

    rules = {(v, body) for v, body in g.underlying.rules if diagonal(body)}
    return cleanup(Cfg(g.underlying.variables, g.underlying.start, rules))


def sync_forall_empty(g: Cfhg) -> bool:
    """Emptiness of a ranked ∀*/∃∀* grammar: a language exists iff a singleton
    does, so it suffices to check the diagonal restriction for emptiness."""
    qs = g.prefix.quantifiers
    if not (all(q == "A" for q in qs)
            or (qs[0] == "E" and all(q == "A" for q in qs[1:]))):
        raise WrongPrefix("sync_forall_empty handles ∀* and ∃∀* prefixes")
    if not g.ranked():
        raise NotRanked("the diagonal reduction is only sound for ranked grammars")
    return cfg_empty(diagonal_restriction(g))


def cfhg_empty(g: Cfhg) -> bool:
    """Emptiness with routing to the applicable decision procedure.

    Raises ``Undecidable`` (naming the relevant result) for the prefix
    classes where no procedure exists.
    """
    qs = g.prefix.quantifiers
    if all(q == "E" for q in qs) or len(qs) == 1:
        return exists_empty(g)
    forall_tail = qs[0] == "E" and all(q == "A" for q in qs[1:])
    if all(q == "A" for q in qs) or forall_tail:
        if g.ranked():
            return sync_forall_empty(g)
        raise Undecidable(
            "undecforall",
            "emptiness of ∀*/∃∀*-CFHG is undecidable for non-ranked grammars")
    exists_count = len(list(itertools.takewhile(lambda q: q == "E", qs)))
    if all(q == "A" for q in qs[exists_count:]):
        raise Undecidable(
            "emptinessexistsforall",
            "emptiness of ∃*∀*-CFHG is undecidable even for ranked grammars")
    raise Undecidable(
        "forallexists",
        "emptiness of prefixes with ∀ before ∃ is undecidable already for NFH")


def regular_member(g: Cfhg, a: Nfa) -> bool:
    """Regular-language membership, defined only for ∃* prefixes."""
    if all(q == "E" for q in g.prefix.quantifiers):
        return exists_regular_member(g, a)
    raise Undecidable(
        "forallsyncundec",
        "regular membership for grammars with a ∀ quantifier is undecidable")


def bounded_nonempty_witness(g: Cfhg, max_len: int,
                             universe_cap: int = 20):
    """Search for a member language over Σ^{≤max_len}; None if none is found.

    Evidence only — a miss does not decide emptiness.
    """
    symbols = sorted(g.symbols)
    universe: list[Word] = [()]
    frontier: list[Word] = [()]
    for _ in range(max_len):
        frontier = [w + (s,) for w in frontier for s in symbols]
        universe.extend(frontier)
    if len(universe) > universe_cap:
        raise UniverseTooLarge(
            f"universe has {len(universe)} words; cap is {universe_cap}")
    for mask in range(1, 1 << len(universe)):
        words = [universe[i] for i in range(len(universe)) if mask >> i & 1]
        if finite_member(g, words):
            return frozenset(words)
    return None


def rank_table(g: Cfhg) -> RankTable:
    return compute_ranks(g.underlying)
