"""Automata plumbing: membership, compositions, padding closures, boolean ops."""

import itertools
import random

import pytest

from hyperlang.core import HWord, as_word, hword_from_tracks, pad_to_sync, strip_hash
from hyperlang.errors import UnknownLetter, VarClash
from hyperlang.nfa import (Dfa, Nfa, complement, compose_free, compose_sync,
                           determinize, intersect, nfa_empty, nfa_language,
                           nfa_member, pad_anywhere, pad_suffix, project,
                           rename_vars, totalize, trim, union, with_var,
                           word_automaton)


def base_words(a, max_len):
    return {"".join(w) for w in nfa_language(a, max_len)}


def test_nfa_member_word_automata():
    a = word_automaton(as_word("ab"))
    assert nfa_member(a, as_word("ab"))
    assert not nfa_member(a, as_word("a"))
    with pytest.raises(UnknownLetter):
        nfa_member(a, as_word("c"))


def test_nfa_member_track(fig1_nfh):
    h = pad_to_sync({"x": as_word("a"), "y": as_word("aa")})
    assert nfa_member(fig1_nfh.underlying, h)
    same = pad_to_sync({"x": as_word("a"), "y": as_word("a")})
    assert not nfa_member(fig1_nfh.underlying, same)


def test_nfa_empty():
    a = Nfa({"a"}, {"q"}, {"q"}, set(), set())
    assert nfa_empty(a)
    assert not nfa_empty(word_automaton(as_word("ab")))
    product = intersect(word_automaton(as_word("a")), word_automaton(as_word("b")))
    assert nfa_empty(product)


def test_word_automaton_shape():
    a = word_automaton(as_word("ab"))
    assert len(a.states) == 3
    assert base_words(a, 3) == {"ab"}
    e = word_automaton(())
    assert len(e.states) == 1
    assert base_words(e, 2) == {""}


def test_pad_suffix():
    a = pad_suffix(word_automaton(as_word("a")))
    for w in ("a", "a#", "a##"):
        assert nfa_member(a, as_word(w))
    assert not nfa_member(a, as_word("#a"))


def test_pad_anywhere():
    a = pad_anywhere(word_automaton(as_word("ab")))
    for w in ("ab", "a#b", "#ab#", "##a##b##"):
        assert nfa_member(a, as_word(w))
    assert not nfa_member(a, as_word("ba"))
    got = base_words(a, 4)
    universe = {"".join(p) for n in range(5)
                for p in itertools.product("ab#", repeat=n)}
    want = {w for w in universe if "".join(strip_hash(as_word(w))) == "ab"}
    assert got == want


def test_compose_free_basic():
    a = compose_free(with_var(word_automaton(as_word("a")), "x"),
                     with_var(word_automaton(as_word("ab")), "y"))
    assert nfa_member(a, hword_from_tracks({"x": as_word("a#"),
                                            "y": as_word("ab")}))
    assert not nfa_member(a, hword_from_tracks({"x": as_word("b#"),
                                                "y": as_word("ab")}))


def test_compose_free_var_clash():
    x1 = with_var(word_automaton(as_word("a")), "x")
    x2 = with_var(word_automaton(as_word("b")), "x")
    with pytest.raises(VarClash):
        compose_free(x1, x2)
    assert not nfa_empty(compose_free(x1, rename_vars(x2, {"x": "y"})))


def test_compose_free_characterization():
    a1 = union(word_automaton(as_word("a")), word_automaton(as_word("bb")))
    a2 = word_automaton(as_word("ab"))
    l1 = {"a", "bb"}
    l2 = {"ab"}
    composed = compose_free(with_var(a1, "x"), with_var(a2, "y"))
    universe = {"".join(p) for n in range(4)
                for p in itertools.product("ab", repeat=n)}
    for w1, w2 in itertools.product(universe, repeat=2):
        if not w1 and not w2:
            continue
        h = pad_to_sync({"x": as_word(w1), "y": as_word(w2)})
        assert nfa_member(composed, h) == (w1 in l1 and w2 in l2), (w1, w2)


def test_compose_sync():
    ab = word_automaton(as_word("ab"))
    both = compose_sync(ab, ab, track_vars=("x", "y"))
    assert nfa_member(both, hword_from_tracks({"x": as_word("ab"),
                                               "y": as_word("ab")}))
    assert nfa_empty(trim(compose_sync(word_automaton(as_word("a")),
                                       word_automaton(as_word("b")),
                                       track_vars=("x", "y"))))


def test_sync_subset_of_free():
    a1 = union(word_automaton(as_word("a")), word_automaton(as_word("ab")))
    sync = compose_sync(a1, a1, track_vars=("x", "y"))
    free = compose_free(with_var(a1, "x"), with_var(a1, "y"))
    accepted = list(nfa_language(sync, 3))
    assert accepted
    for letters in accepted:
        assert nfa_member(free, HWord(("x", "y"), tuple(letters)))


def test_union_intersect():
    a = union(word_automaton(as_word("a")), word_automaton(as_word("b")))
    assert base_words(a, 2) == {"a", "b"}
    both = intersect(a, word_automaton(as_word("a")))
    assert base_words(both, 2) == {"a"}


def test_determinize_complement():
    a = word_automaton(as_word("a"), symbols={"a", "b"})
    c = complement(totalize(determinize(a), {"a", "b"}), letters={"a", "b"})
    assert not nfa_member(c, as_word("a"))
    assert nfa_member(c, as_word("b"))
    assert nfa_member(c, as_word("aa"))
    assert nfa_member(c, ())


def test_project():
    composed = compose_free(with_var(word_automaton(as_word("a")), "x"),
                            with_var(word_automaton(as_word("b")), "y"))
    onto_x = project(composed, "y")
    accepted = {"".join(t.symbols[0] for t in h)
                for h in nfa_language(onto_x, 2)}
    assert accepted == {"a", "a#"}


def _random_nfa(rng, symbols="ab", max_states=4):
    states = [f"q{i}" for i in range(rng.randint(1, max_states))]
    delta = {(rng.choice(states), s, rng.choice(states))
             for s in symbols for _ in range(rng.randint(0, 3))}
    accepting = {q for q in states if rng.random() < 0.5}
    return Nfa(set(symbols), states, {states[0]}, accepting, delta)


def test_determinize_preserves_language():
    rng = random.Random(11)
    for _ in range(20):
        a = _random_nfa(rng)
        assert base_words(a, 4) == base_words(determinize(a), 4)


def test_complement_is_exact_complement():
    rng = random.Random(12)
    universe = {"".join(p) for n in range(4)
                for p in itertools.product("ab", repeat=n)}
    for _ in range(10):
        a = _random_nfa(rng)
        c = complement(totalize(determinize(a), {"a", "b"}), letters={"a", "b"})
        assert base_words(c, 3) == universe - base_words(a, 3)
