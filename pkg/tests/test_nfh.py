"""NFH acceptance semantics and the bounded hyperlanguage probe."""

import itertools
import random

import pytest

from hyperlang.core import QuantifierPrefix, TrackLetter, as_word
from hyperlang.errors import EmptyLanguage, UniverseTooLarge
from hyperlang.nfa import Nfa, with_var, word_automaton
from hyperlang.nfh import Nfh, nfh_accepts, nfh_hyperlanguage_probe
from hyperlang.realize import realize_finite

from conftest import language_strings, letter, words


def test_fig1_rejects_finite(fig1_nfh):
    assert not nfh_accepts(fig1_nfh, words("a", "aa"))
    assert not nfh_accepts(fig1_nfh, words("eps", "a", "aa", "aaa"))


def test_exists_witness():
    underlying = with_var(word_automaton(as_word("a"), symbols={"a", "b"}), "x")
    n = Nfh(frozenset({"a", "b"}), QuantifierPrefix.parse("E x"), underlying)
    assert nfh_accepts(n, words("a", "b"))
    assert not nfh_accepts(n, words("b"))


def test_realize_finite_roundtrip():
    n = realize_finite({"ab", "ba"})
    assert nfh_accepts(n, words("ab", "ba"))
    assert not nfh_accepts(n, words("ab"))


def test_empty_language_rejected(fig1_nfh):
    with pytest.raises(EmptyLanguage):
        nfh_accepts(fig1_nfh, [])


def test_probe_realize_finite():
    got = nfh_hyperlanguage_probe(realize_finite({"ab", "ba"}), 2)
    assert {frozenset(language_strings(l)) for l in got} == {
        frozenset({"ab", "ba"})}


def test_probe_forall_singleton():
    v = ("x",)
    underlying = Nfa({"a", "#"}, {"q0", "q1"}, {"q0"}, {"q1"},
                     {("q0", letter(v, "a"), "q1")}, v)
    n = Nfh(frozenset({"a"}), QuantifierPrefix.parse("A x"), underlying)
    got = nfh_hyperlanguage_probe(n, 1)
    assert {frozenset(language_strings(l)) for l in got} == {frozenset({"a"})}


def test_probe_fig1_empty(fig1_nfh):
    assert nfh_hyperlanguage_probe(fig1_nfh, 3) == frozenset()


def test_probe_universe_guard(fig1_nfh):
    with pytest.raises(UniverseTooLarge):
        nfh_hyperlanguage_probe(fig1_nfh, 25)


def _random_forall_nfh(rng):
    v = ("x1", "x2")
    pool = [letter(v, a, b) for a in "ab#" for b in "ab#" if (a, b) != ("#", "#")]
    states = [f"q{i}" for i in range(rng.randint(2, 3))]
    delta = {(rng.choice(states), rng.choice(pool), rng.choice(states))
             for _ in range(rng.randint(2, 6))}
    accepting = {q for q in states if rng.random() < 0.5}
    underlying = Nfa({"a", "b", "#"}, states, {states[0]}, accepting, delta, v)
    return Nfh(frozenset({"a", "b"}), QuantifierPrefix.parse("A x1 A x2"),
               underlying)


def test_forall_subset_closure():
    rng = random.Random(21)
    for _ in range(15):
        n = _random_forall_nfh(rng)
        accepted = nfh_hyperlanguage_probe(n, 2)
        for language in accepted:
            for size in range(1, len(language)):
                for subset in itertools.combinations(sorted(language), size):
                    assert frozenset(subset) in accepted, language


def test_exists_superset_monotone():
    underlying = with_var(word_automaton(as_word("a"), symbols={"a", "b"}), "x")
    n = Nfh(frozenset({"a", "b"}), QuantifierPrefix.parse("E x"), underlying)
    accepted = nfh_hyperlanguage_probe(n, 1)
    universe = [(), ("a",), ("b",)]
    for language in accepted:
        for extra in universe:
            bigger = frozenset(language) | {extra}
            assert frozenset(bigger) in accepted
