"""Constructions that compile a described language into a singleton-exact NFH.

Each builder returns an NFH whose hyperlanguage is exactly ``{L}`` for the
described language L, under the quantifier shape the construction needs:
finite languages (∀∃), ordered languages (∃∀∃), partially ordered languages
(∃^m ∀ ∃^k), and prefix-closed / general regular languages via relations.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from .core import (HWord, PAD, QuantifierPrefix, TrackLetter, Word, as_word,
                   is_synchronous, pad_to_sync, strip_hash, tracks_of)
from .errors import CapExceeded, EmptyLanguage, NotPrefixClosed
from .nfa import (Dfa, Nfa, absorb_pad, complement, compose_free, compose_sync,
                  determinize, elim_pad, intersect, nfa_language, nfa_member,
                  pad_closure, pad_suffix, project, rename_vars, to_base, trim,
                  union_all, with_var, word_automaton)
from .nfh import Nfh


# --- relations over word pairs -------------------------------------------------

def relation_accepts(relation: Nfa, u, v) -> bool:
    """True iff the pair (u, v) is in the relation the 2-track NFA computes."""
    h = pad_to_sync({"x": as_word(u), "y": as_word(v)}, ("x", "y"))
    return nfa_member(absorb_pad(pad_closure(relation)), h)


def relation_pairs(relation: Nfa, max_len: int) -> set[tuple[Word, Word]]:
    """All related pairs with both words of length ≤ max_len, by enumeration."""
    closed = absorb_pad(pad_closure(relation))
    pairs: set[tuple[Word, Word]] = set()
    for letters in nfa_language(closed, max_len):
        hw = HWord(relation.vars, tuple(letters))
        if not is_synchronous(hw):
            continue
        if letters and letters[-1].is_all_pad():
            continue
        tracks = tracks_of(hw)
        pairs.add((strip_hash(tracks["x"]), strip_hash(tracks["y"])))
    return pairs


# --- specs ---------------------------------------------------------------------

@dataclass(frozen=True)
class OrderedLanguageSpec:
    """A first word plus a successor-function automaton over variables x, y."""

    first_word: Word
    successor: Nfa

    def __post_init__(self):
        if self.successor.vars != ("x", "y"):
            raise ValueError("successor automaton must be over variables (x, y)")

    def check_functional(self, max_len: int) -> bool:
        """Bounded check that the relation is a function on its domain."""
        by_source: dict[Word, set[Word]] = {}
        for u, v in relation_pairs(self.successor, max_len):
            by_source.setdefault(u, set()).add(v)
        return all(len(vs) == 1 for vs in by_source.values())


@dataclass(frozen=True)
class PartialOrderSpec:
    """m minimal words, a successor-relation automaton, and a successor bound k."""

    minimal_words: tuple[Word, ...]
    relation: Nfa
    max_successors: int

    def __post_init__(self):
        if not self.minimal_words:
            raise ValueError("at least one minimal word is required")
        if self.max_successors < 1:
            raise ValueError("the successor bound must be at least 1")
        if self.relation.vars != ("x", "y"):
            raise ValueError("relation automaton must be over variables (x, y)")

    def check_minimal(self, max_len: int) -> bool:
        """Bounded check that the declared minimal words have no predecessor."""
        pairs = relation_pairs(self.relation, max_len)
        return not any(v in self.minimal_words and u != v for u, v in pairs)


# --- finite and ordered languages ----------------------------------------------

def realize_finite(words, alphabet=None) -> Nfh:
    """∀∃-NFH for a finite language: every word demands the cyclically next one."""
    language = sorted({as_word(w) for w in words})
    if not language:
        raise EmptyLanguage("cannot realize the empty language")
    symbols = set(alphabet) if alphabet is not None else {s for w in language for s in w}
    symbols = symbols or {"a"}
    k = len(language)
    parts = []
    for i, w in enumerate(language):
        succ = language[(i + 1) % k]
        parts.append(compose_free(with_var(word_automaton(w, symbols), "x"),
                                  with_var(word_automaton(succ, symbols), "y")))
    underlying = absorb_pad(union_all(parts))
    return Nfh(frozenset(symbols), QuantifierPrefix((("A", "x"), ("E", "y"))),
               underlying)


def realize_ordered(spec: OrderedLanguageSpec, alphabet=None) -> Nfh:
    """∃∀∃-NFH for an ordered language: a chain reaction from the first word."""
    symbols = set(alphabet) if alphabet is not None else \
        {s for s in spec.successor.symbols if s != PAD}
    first = with_var(word_automaton(spec.first_word, symbols), "x1")
    chain = rename_vars(spec.successor, {"x": "x2", "y": "x3"})
    underlying = absorb_pad(compose_free(first, chain))
    prefix = QuantifierPrefix((("E", "x1"), ("A", "x2"), ("E", "x3")))
    return Nfh(frozenset(symbols), prefix, underlying)


# --- successor-counting automata -----------------------------------------------

def _successor_product(relation: Nfa, shared: str, y_names: tuple[str, ...]) -> Nfa:
    """Joint automaton over (shared, y_1..y_i): i relation copies sharing the
    first track, accepting only when all y-words are pairwise distinct.

    States are (per-copy states, set of index pairs already seen distinct).
    """
    closed = pad_closure(relation)
    i = len(y_names)
    all_pairs = frozenset(frozenset(p) for p in itertools.combinations(range(i), 2))
    moves: dict = {}
    for q, letter, p in closed.transitions:
        moves.setdefault(q, []).append((letter["x"], letter["y"], p))

    joint_vars = (shared,) + y_names
    initial = {(combo, frozenset())
               for combo in itertools.product(closed.initial, repeat=i)}
    states = set(initial)
    transitions = set()
    stack = list(initial)
    while stack:
        (copies, seen) = stack.pop()
        per_copy: list[dict] = []
        for q in copies:
            by_x: dict = {}
            for x_sym, y_sym, p in moves.get(q, []):
                by_x.setdefault(x_sym, []).append((y_sym, p))
            per_copy.append(by_x)
        shared_syms = set(per_copy[0]) if per_copy else set()
        for by_x in per_copy[1:]:
            shared_syms &= set(by_x)
        for x_sym in shared_syms:
            for combo in itertools.product(*(by_x[x_sym] for by_x in per_copy)):
                y_syms = tuple(y for y, _ in combo)
                targets = tuple(p for _, p in combo)
                new_seen = seen | {frozenset({j1, j2})
                                   for j1 in range(i) for j2 in range(j1 + 1, i)
                                   if y_syms[j1] != y_syms[j2]}
                letter = TrackLetter(joint_vars, (x_sym,) + y_syms)
                target = (targets, new_seen)
                transitions.add((((copies, seen)), letter, target))
                if target not in states:
                    states.add(target)
                    stack.append(target)
    accepting = {
        (copies, seen) for (copies, seen) in states
        if seen == all_pairs and all(q in closed.accepting for q in copies)
    }
    return trim(Nfa(closed.symbols, states, initial, accepting, transitions,
                    joint_vars))


def successors_ge(relation: Nfa, i: int) -> Nfa:
    """Base-alphabet NFA for the words with at least ``i`` distinct successors."""
    if i < 1:
        raise ValueError("the successor count must be at least 1")
    y_names = tuple(f"y{j + 1}" for j in range(i))
    joint = absorb_pad(_successor_product(relation, "x", y_names))
    for y in y_names:
        joint = project(joint, y)
    return elim_pad(to_base(joint))


def successors_exact(relation: Nfa, i: int, det_cap: int = 64) -> Nfa:
    """Words with exactly ``i`` successors: at least i but not at least i+1."""
    at_least = successors_ge(relation, i)
    more = trim(successors_ge(relation, i + 1))
    if len(more.states) > det_cap:
        raise CapExceeded(
            f"determinization input has {len(more.states)} states (cap {det_cap})")
    letters = {s for s in relation.symbols if s != PAD}
    not_more = complement(determinize(more), letters)
    return trim(intersect(at_least, not_more))


# --- partially ordered languages -----------------------------------------------

def _constrain_track(a: Nfa, var: str, base: Nfa) -> Nfa:
    """Product of a track automaton with a base automaton run on one track."""
    moves_base: dict = {}
    for q, s, p in base.transitions:
        moves_base.setdefault((q, s), set()).add(p)
    initial = {(q, b) for q in a.initial for b in base.initial}
    states = set(initial)
    transitions = set()
    stack = list(initial)
    moves_a = a.moves_from()
    while stack:
        (q, b) = stack.pop()
        for letter, q2 in moves_a.get(q, []):
            for b2 in moves_base.get((b, letter[var]), set()):
                target = (q2, b2)
                transitions.add(((q, b), letter, target))
                if target not in states:
                    states.add(target)
                    stack.append(target)
    accepting = {(q, b) for (q, b) in states
                 if q in a.accepting and b in base.accepting}
    return trim(Nfa(a.symbols | base.symbols, states, initial, accepting,
                    transitions, a.vars))


def _extend_diagonal(a: Nfa, source: str, new_vars: tuple[str, ...]) -> Nfa:
    """Add tracks that copy the ``source`` track letter for letter."""
    if not new_vars:
        return a
    joint_vars = a.vars + new_vars
    transitions = {
        (q, TrackLetter(joint_vars, letter.symbols + (letter[source],) * len(new_vars)), p)
        for q, letter, p in a.transitions
    }
    return Nfa(a.symbols, a.states, a.initial, a.accepting, transitions, joint_vars)


def realize_partially_ordered(spec: PartialOrderSpec, det_cap: int = 64) -> Nfh:
    """∃^m ∀ ∃^k NFH: minimal words exist, and every word demands its successors."""
    m = len(spec.minimal_words)
    k = spec.max_successors
    symbols = {s for s in spec.relation.symbols if s != PAD}
    symbols |= {s for w in spec.minimal_words for s in w}
    x_names = tuple(f"x{i + 1}" for i in range(m))
    y_names = tuple(f"y{i + 1}" for i in range(k))
    a_u = compose_free(*(with_var(word_automaton(w, symbols), x)
                         for w, x in zip(spec.minimal_words, x_names)))

    parts = []
    for i in range(1, k + 1):
        exact = successors_exact(spec.relation, i, det_cap)
        b_i = _successor_product(spec.relation, "z", y_names[:i])
        b_i = _constrain_track(b_i, "z", pad_suffix(exact))
        b_i = _extend_diagonal(b_i, "z", y_names[i:])
        if b_i.accepting:
            parts.append(trim(compose_free(a_u, b_i)))
    if not parts:
        raise EmptyLanguage("no word of the relation's domain has 1..k successors")
    underlying = absorb_pad(union_all(parts))
    prefix = QuantifierPrefix(tuple(("E", x) for x in x_names)
                              + (("A", "z"),)
                              + tuple(("E", y) for y in y_names))
    return Nfh(frozenset(symbols), prefix, underlying)


# --- prefix-closed regular languages -------------------------------------------

def _check_prefix_closed(a: Dfa) -> Dfa:
    """Trim and verify that accepting states are reached only via accepting states."""
    t = trim(a)
    if not t.accepting:
        raise NotPrefixClosed("the language is empty")
    for q, _, p in t.transitions:
        if p in t.accepting and q not in t.accepting:
            raise NotPrefixClosed(
                f"accepting state {p!r} is reachable from non-accepting {q!r}")
    if not (t.initial & t.accepting):
        raise NotPrefixClosed("the empty word is not in the language")
    return t


def _accepting_extensions(a: Nfa) -> dict:
    """accepting state -> sorted letters leading to an accepting state."""
    out = {}
    for q in a.accepting:
        letters = sorted({s for (q2, s, p) in a.transitions
                          if q2 == q and p in a.accepting})
        out[q] = letters
    return out


def prefix_closed_relation(a: Dfa) -> PartialOrderSpec:
    """Single-letter-extension relation of a prefix-closed regular language."""
    t = _check_prefix_closed(a)
    extensions = _accepting_extensions(t)
    k = max((len(ls) for ls in extensions.values()), default=1) or 1

    final = ("ext", 0)
    while final in t.states:
        final = ("ext", final[1] + 1)
    transitions = set()
    for q, s, p in t.transitions:
        transitions.add((q, TrackLetter(("x", "y"), (s, s)), p))
    for q, letters in extensions.items():
        if letters:
            for s in letters:
                transitions.add((q, TrackLetter(("x", "y"), (PAD, s)), final))
        else:
            transitions.add((q, TrackLetter(("x", "y"), (PAD, PAD)), final))
    relation = Nfa(t.symbols | {PAD}, t.states | {final}, t.initial, {final},
                   transitions, ("x", "y"))
    return PartialOrderSpec(((),), relation, k)


def realize_prefix_closed_fast(a: Dfa) -> Nfh:
    """Polynomial ∃∀∃^k NFH for a prefix-closed regular language.

    One component reads the word assigned to z diagonally on all y-tracks and
    finishes with a single letter that hands each y one extension letter (or
    pad, where fewer extensions exist).
    """
    t = _check_prefix_closed(a)
    extensions = _accepting_extensions(t)
    k = max((len(ls) for ls in extensions.values()), default=1) or 1
    y_names = tuple(f"y{i + 1}" for i in range(k))
    joint_vars = ("z",) + y_names

    final = ("ext", 0)
    while final in t.states:
        final = ("ext", final[1] + 1)
    transitions = set()
    for q, s, p in t.transitions:
        transitions.add((q, TrackLetter(joint_vars, (s,) * (k + 1)), p))
    for q, letters in extensions.items():
        padded = tuple(letters) + (PAD,) * (k - len(letters))
        transitions.add((q, TrackLetter(joint_vars, (PAD,) + padded), final))
    component = Nfa(t.symbols | {PAD}, t.states | {final}, t.initial, {final},
                    transitions, joint_vars)

    symbols = {s for s in t.symbols if s != PAD}
    eps = with_var(word_automaton((), symbols), "x1")
    underlying = absorb_pad(compose_free(eps, component))
    prefix = QuantifierPrefix((("E", "x1"), ("A", "z"))
                              + tuple(("E", y) for y in y_names))
    return Nfh(frozenset(symbols), prefix, underlying)


# --- general regular languages -------------------------------------------------

def _simple_paths(a: Dfa) -> list[Word]:
    """Words reaching accepting states along simple paths from the start state."""
    out: list[Word] = []
    moves = a.moves_from()

    def walk(q, word: Word, visited: frozenset):
        if q in a.accepting:
            out.append(word)
        for s, p in sorted(moves.get(q, []), key=repr):
            if p not in visited:
                walk(p, word + (s,), visited | {p})

    walk(a.start, (), frozenset({a.start}))
    return sorted(set(out))


def _simple_cycles(a: Dfa) -> list[tuple[object, Word]]:
    """(state q, word c) pairs where c is read along a simple cycle at q."""
    out = []
    moves = a.moves_from()
    for q in sorted(a.states, key=repr):
        def walk(cur, word: Word, visited: frozenset):
            for s, p in sorted(moves.get(cur, []), key=repr):
                if p == q:
                    out.append((q, word + (s,)))
                elif p not in visited and p != q:
                    walk(p, word + (s,), visited | {p})
        walk(q, (), frozenset({q}))
    return out


def _pump_component(a: Dfa, p, cycle: Word) -> Nfa:
    """Track NFA over (x, y) for pairs (uv, u·cycle·v): the run of x reaches
    ``p`` along a simple prefix u, and y repeats x delayed by the cycle.

    Phase one reads u diagonally along a simple path; at ``p`` the y-track
    reads the cycle while the x-track runs ahead, buffered; phase three drains
    the buffer.  Since the DFA is deterministic, the y-run's acceptance is
    implied by the x-run's.
    """
    moves = {}
    for q, s, r in a.transitions:
        moves.setdefault(q, []).append((s, r))
    n = len(cycle)
    letter = lambda x_sym, y_sym: TrackLetter(("x", "y"), (x_sym, y_sym))

    def phase2_steps(state):
        """Transitions out of a pump-phase state (x_state|None, j, buffer)."""
        x_state, j, buffer = state
        steps = []
        if j < n:
            y_sym = cycle[j]
            if x_state is not None:
                for s, r in moves.get(x_state, []):
                    steps.append((letter(s, y_sym), ("pump", r, j + 1, buffer + (s,))))
                if x_state in a.accepting:
                    steps.append((letter(PAD, y_sym), ("pump", None, j + 1, buffer)))
            else:
                steps.append((letter(PAD, y_sym), ("pump", None, j + 1, buffer)))
        elif buffer:
            y_sym = buffer[0]
            if x_state is not None:
                for s, r in moves.get(x_state, []):
                    steps.append((letter(s, y_sym), ("pump", r, j, buffer[1:] + (s,))))
                if x_state in a.accepting:
                    steps.append((letter(PAD, y_sym), ("pump", None, j, buffer[1:])))
            else:
                steps.append((letter(PAD, y_sym), ("pump", None, j, buffer[1:])))
        return steps

    initial = ("walk", a.start, frozenset({a.start}))
    states = {initial}
    transitions = set()
    stack = [initial]
    while stack:
        state = stack.pop()
        steps = []
        if state[0] == "walk":
            _, q, visited = state
            for s, r in moves.get(q, []):
                if r not in visited:
                    steps.append((letter(s, s), ("walk", r, visited | {r})))
            if q == p:
                steps.extend(phase2_steps((q, 0, ())))
        else:
            steps = phase2_steps(state[1:])
        for l, target in steps:
            transitions.add((state, l, target))
            if target not in states:
                states.add(target)
                stack.append(target)
    accepting = {s for s in states
                 if s[0] == "pump" and s[1] is None and s[2] == n and not s[3]}
    return trim(Nfa(a.symbols | {PAD}, states, {initial}, accepting, transitions,
                    ("x", "y")))


def regular_relation(a: Dfa, path_cap: int = 32, cycle_cap: int = 32) -> PartialOrderSpec:
    """Cycle-pumping successor relation of a regular language (plus reflexivity)."""
    t = a
    paths = _simple_paths(t)
    if not paths:
        raise EmptyLanguage("the language is empty")
    if len(paths) > path_cap:
        raise CapExceeded(f"{len(paths)} simple-path words exceed the cap {path_cap}")
    cycles = _simple_cycles(t)
    if len(cycles) > cycle_cap:
        raise CapExceeded(f"{len(cycles)} simple cycles exceed the cap {cycle_cap}")
    parts = [compose_sync(t, t, track_vars=("x", "y"))]
    for q, c in cycles:
        component = _pump_component(t, q, c)
        if component.accepting:
            parts.append(component)
    relation = union_all(parts)
    k = 1 + len(cycles)
    return PartialOrderSpec(tuple(paths), relation, k)


def realize_regular(a: Dfa, path_cap: int = 32, cycle_cap: int = 32,
                    det_cap: int = 64) -> Nfh:
    """∃^m ∀ ∃^k NFH for a regular language, via the cycle-pumping relation."""
    return realize_partially_ordered(regular_relation(a, path_cap, cycle_cap),
                                     det_cap)
