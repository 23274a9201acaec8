"""Base alphabets, word variables, track letters, and word assignments.

A k-variable word assignment is stored as an ``HWord``: a sequence of
``TrackLetter`` values, each mapping every word variable to a base symbol or
to the pad marker ``#``.  Shorter words are padded at the end with ``#`` so
that all tracks have equal length.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Mapping, Sequence

from .errors import LengthMismatch

PAD = "#"

Word = tuple[str, ...]


def as_word(w: str | Sequence[str]) -> Word:
    """Normalize a word to a tuple of symbols.

    Strings are split into single-character symbols; any other sequence is
    taken as a sequence of (possibly multi-character) symbol tokens.
    """
    if isinstance(w, str):
        return tuple(w)
    return tuple(w)


def render_word(w: Word) -> str:
    if not w:
        return "eps"
    if all(len(s) == 1 for s in w):
        return "".join(w)
    return " ".join(w)


@dataclass(frozen=True)
class Alphabet:
    """An ordered set of base symbols.  The pad marker ``#`` is reserved."""

    symbols: tuple[str, ...]

    def __post_init__(self):
        if not self.symbols:
            raise ValueError("alphabet must be non-empty")
        if len(set(self.symbols)) != len(self.symbols):
            raise ValueError("alphabet symbols must be unique")
        if PAD in self.symbols:
            raise ValueError("the pad marker '#' cannot be an alphabet symbol")

    @classmethod
    def of(cls, *symbols: str) -> "Alphabet":
        return cls(tuple(symbols))

    def __contains__(self, symbol: str) -> bool:
        return symbol in self.symbols

    def __iter__(self):
        return iter(self.symbols)

    def __len__(self) -> int:
        return len(self.symbols)

    def words_up_to(self, n: int) -> list[Word]:
        """All words of length at most ``n``, shortest first, in symbol order."""
        out: list[Word] = [()]
        frontier: list[Word] = [()]
        for _ in range(n):
            frontier = [w + (s,) for w in frontier for s in self.symbols]
            out.extend(frontier)
        return out


@dataclass(frozen=True)
class VarSet:
    """An ordered sequence of word-variable names."""

    names: tuple[str, ...]

    def __post_init__(self):
        if not self.names:
            raise ValueError("variable set must be non-empty")
        if len(set(self.names)) != len(self.names):
            raise ValueError("variable names must be unique")

    @classmethod
    def of(cls, *names: str) -> "VarSet":
        return cls(tuple(names))

    def __iter__(self):
        return iter(self.names)

    def __len__(self) -> int:
        return len(self.names)

    def index(self, name: str) -> int:
        return self.names.index(name)


@dataclass(frozen=True)
class TrackLetter:
    """A single letter of the joint alphabet: one symbol (or ``#``) per variable."""

    vars: tuple[str, ...]
    symbols: tuple[str, ...]

    def __post_init__(self):
        if len(self.vars) != len(self.symbols):
            raise ValueError("track letter must assign every variable")

    @classmethod
    def of(cls, assignment: Mapping[str, str], var_order: Sequence[str]) -> "TrackLetter":
        missing = [v for v in var_order if v not in assignment]
        if missing:
            raise ValueError(f"track letter missing variables {missing}")
        return cls(tuple(var_order), tuple(assignment[v] for v in var_order))

    def __getitem__(self, var: str) -> str:
        return self.symbols[self.vars.index(var)]

    def items(self):
        return tuple(zip(self.vars, self.symbols))

    def pad_vars(self) -> frozenset[str]:
        """Variables assigned the pad marker in this letter."""
        return frozenset(v for v, s in self.items() if s == PAD)

    def is_all_pad(self) -> bool:
        return all(s == PAD for s in self.symbols)

    def render(self) -> str:
        return "[" + ",".join(f"{v}={s}" for v, s in self.items()) + "]"

    def __repr__(self) -> str:
        return self.render()


@dataclass(frozen=True)
class HWord:
    """A finite sequence of track letters, all over the same variables."""

    vars: tuple[str, ...]
    letters: tuple[TrackLetter, ...]

    def __post_init__(self):
        for letter in self.letters:
            if letter.vars != self.vars:
                raise ValueError("all letters of an HWord must share one variable set")

    def __len__(self) -> int:
        return len(self.letters)

    def __iter__(self):
        return iter(self.letters)

    def render(self) -> str:
        return "".join(letter.render() for letter in self.letters) or "eps"


@dataclass(frozen=True)
class QuantifierPrefix:
    """A quantifier per word variable, in variable order.  'E' = exists, 'A' = forall."""

    entries: tuple[tuple[str, str], ...]

    def __post_init__(self):
        names = [v for _, v in self.entries]
        if len(set(names)) != len(names):
            raise ValueError("each variable must be quantified exactly once")
        for q, _ in self.entries:
            if q not in ("E", "A"):
                raise ValueError(f"unknown quantifier {q!r}")

    @classmethod
    def parse(cls, text: str) -> "QuantifierPrefix":
        toks = text.split()
        if len(toks) % 2 != 0 or not toks:
            raise ValueError(f"bad quantifier prefix {text!r}")
        return cls(tuple((toks[i], toks[i + 1]) for i in range(0, len(toks), 2)))

    @property
    def variables(self) -> tuple[str, ...]:
        return tuple(v for _, v in self.entries)

    @property
    def quantifiers(self) -> tuple[str, ...]:
        return tuple(q for q, _ in self.entries)

    def render(self) -> str:
        return " ".join(f"{q} {v}" for q, v in self.entries)


def strip_hash(w: str | Sequence[str]) -> Word:
    """Remove every pad marker from a padded word."""
    return tuple(s for s in as_word(w) if s != PAD)


def is_padding_of(wp: str | Sequence[str], w: str | Sequence[str]) -> bool:
    """True iff ``wp`` is ``w`` with pad markers inserted (anywhere)."""
    return strip_hash(wp) == as_word(w)


def hword_from_tracks(tracks: Mapping[str, str | Sequence[str]],
                      var_order: Sequence[str] | None = None) -> HWord:
    """Zip equal-length padded tracks into an HWord, letter by letter."""
    order = tuple(var_order) if var_order is not None else tuple(tracks)
    words = {v: as_word(tracks[v]) for v in order}
    lengths = {len(w) for w in words.values()}
    if len(lengths) > 1:
        raise LengthMismatch(f"tracks have unequal lengths {sorted(lengths)}")
    n = lengths.pop() if lengths else 0
    letters = tuple(
        TrackLetter(order, tuple(words[v][i] for v in order)) for i in range(n)
    )
    return HWord(order, letters)


def tracks_of(h: HWord) -> dict[str, Word]:
    """Split an HWord back into its per-variable padded tracks."""
    return {
        v: tuple(letter[v] for letter in h.letters) for v in h.vars
    }


def is_synchronous(h: HWord) -> bool:
    """True iff every track has its pad markers only as a suffix."""
    for w in tracks_of(h).values():
        seen_pad = False
        for s in w:
            if s == PAD:
                seen_pad = True
            elif seen_pad:
                return False
    return True


def pad_to_sync(assignment: Mapping[str, str | Sequence[str]],
                var_order: Sequence[str] | None = None) -> HWord:
    """Right-pad the assigned words with ``#`` to equal length and zip them."""
    order = tuple(var_order) if var_order is not None else tuple(assignment)
    words = {v: as_word(assignment[v]) for v in order}
    n = max((len(w) for w in words.values()), default=0)
    padded = {v: w + (PAD,) * (n - len(w)) for v, w in words.items()}
    return hword_from_tracks(padded, order)


def all_track_letters(alphabet: Alphabet, var_order: Sequence[str],
                      include_all_pad: bool = False) -> list[TrackLetter]:
    """Every track letter over (alphabet + pad)^vars, in a fixed order."""
    symbols = tuple(alphabet.symbols) + (PAD,)
    combos: list[tuple[str, ...]] = [()]
    for _ in var_order:
        combos = [c + (s,) for c in combos for s in symbols]
    letters = [TrackLetter(tuple(var_order), c) for c in combos]
    if not include_all_pad:
        letters = [l for l in letters if not l.is_all_pad()]
    return letters


def subsets_nonempty(items: Sequence) -> Iterable[frozenset]:
    """All non-empty subsets of ``items``, by increasing bit pattern."""
    items = list(items)
    for mask in range(1, 1 << len(items)):
        yield frozenset(items[i] for i in range(len(items)) if mask >> i & 1)
