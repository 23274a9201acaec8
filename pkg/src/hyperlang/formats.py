"""Text formats for automata, hyperautomata, grammars, languages, and tiles.

All formats are line-based; blank lines and ``#!`` comments are ignored
(a bare ``#`` is the pad symbol, so it cannot introduce comments).
"""

from __future__ import annotations

import re

from .cfg import Cfg
from .cfhg import Cfhg
from .core import (PAD, QuantifierPrefix, TrackLetter, Word, as_word,
                   render_word)
from .errors import ParseError
from .nfa import Dfa, Nfa, canonical
from .nfh import Nfh
from .pcp import PcpInstance
from .ranks import RankTable, compute_ranks, is_ranked

_LETTER_RE = re.compile(r"^\[([^\[\]]*)\]$")


def _lines(text: str) -> list[str]:
    out = []
    for raw in text.splitlines():
        line = raw.split("#!", 1)[0].strip()
        if line:
            out.append(line)
    return out


def _fields(lines: list[str]) -> list[tuple[str, str]]:
    out = []
    for line in lines:
        if ":" not in line:
            raise ParseError(f"expected 'key: value', got {line!r}")
        key, value = line.split(":", 1)
        out.append((key.strip(), value.strip()))
    return out


def parse_track_letter(token: str, var_order) -> TrackLetter:
    m = _LETTER_RE.match(token)
    if not m:
        raise ParseError(f"expected a track letter like [x=a,y=#], got {token!r}")
    assignment = {}
    body = m.group(1)
    for part in body.split(",") if body else []:
        if "=" not in part:
            raise ParseError(f"bad track-letter entry {part!r} in {token!r}")
        var, sym = part.split("=", 1)
        assignment[var.strip()] = sym.strip()
    if var_order is None:
        var_order = tuple(assignment)
    missing = [v for v in var_order if v not in assignment]
    extra = [v for v in assignment if v not in var_order]
    if missing or extra:
        raise ParseError(f"letter {token!r} does not cover variables {var_order}")
    return TrackLetter(tuple(var_order),
                       tuple(assignment[v] for v in var_order))


def parse_nfa(text: str) -> Nfa:
    """Parse the NFA/DFA text format."""
    fields = _fields(_lines(text))
    kind = None
    alphabet: list[str] = []
    vars_: tuple[str, ...] | None = None
    states: list[str] = []
    initial: list[str] = []
    accepting: list[str] = []
    transitions = []
    extra: dict[str, str] = {}
    for key, value in fields:
        if key == "type":
            kind = value
        elif key == "alphabet":
            alphabet = value.split()
        elif key == "vars":
            vars_ = tuple(value.split())
        elif key == "states":
            states = value.split()
        elif key == "initial":
            initial = value.split()
        elif key == "accepting":
            accepting = value.split()
        elif key == "trans":
            parts = value.split()
            if len(parts) != 3:
                raise ParseError(f"bad transition line {value!r}")
            transitions.append(tuple(parts))
        else:
            extra[key] = value
    if kind not in ("nfa", "dfa"):
        raise ParseError(f"missing or bad 'type:' line (got {kind!r})")
    if not alphabet:
        raise ParseError("missing 'alphabet:' line")
    try:
        if vars_ is None:
            trans = {(q, letter, p) for q, letter, p in transitions}
        else:
            trans = {(q, parse_track_letter(letter, vars_), p)
                     for q, letter, p in transitions}
        symbols = set(alphabet) | ({PAD} if vars_ is not None else set())
        if kind == "dfa":
            if len(initial) != 1:
                raise ParseError("a DFA needs exactly one initial state")
            return Dfa(symbols, states, initial[0], accepting, trans, vars_)
        return Nfa(symbols, states, initial, accepting, trans, vars_)
    except ParseError:
        raise
    except (ValueError, KeyError) as exc:
        raise ParseError(str(exc)) from exc


def render_nfa(a: Nfa, normalize: bool = True) -> str:
    if normalize:
        a = canonical(a)
    kind = "dfa" if isinstance(a, Dfa) else "nfa"
    lines = [f"type: {kind}",
             "alphabet: " + " ".join(sorted(s for s in a.symbols if s != PAD))]
    if a.is_track:
        lines.append("vars: " + " ".join(a.vars))
    lines.append("states: " + " ".join(sorted(a.states, key=_state_key)))
    lines.append("initial: " + " ".join(sorted(a.initial, key=_state_key)))
    lines.append("accepting: " + " ".join(sorted(a.accepting, key=_state_key)))
    for q, letter, p in sorted(a.transitions, key=repr):
        token = letter.render() if a.is_track else letter
        lines.append(f"trans: {q} {token} {p}")
    return "\n".join(lines) + "\n"


def _state_key(q):
    if isinstance(q, str):
        m = re.match(r"^q(\d+)$", q)
        if m:
            return (0, int(m.group(1)), q)
        return (1, 0, q)
    return (2, 0, repr(q))


def parse_nfh(text: str) -> Nfh:
    """NFH file: the NFA format plus a ``quantifiers:`` header."""
    lines = _lines(text)
    prefix = None
    rest = []
    for line in lines:
        key = line.split(":", 1)[0].strip()
        if key == "quantifiers":
            try:
                prefix = QuantifierPrefix.parse(line.split(":", 1)[1].strip())
            except ValueError as exc:
                raise ParseError(str(exc)) from exc
        else:
            rest.append(line)
    if prefix is None:
        raise ParseError("missing 'quantifiers:' line")
    underlying = parse_nfa("\n".join(rest))
    if underlying.vars is None:
        raise ParseError("an NFH underlying automaton needs a 'vars:' line")
    try:
        return Nfh(frozenset(s for s in underlying.symbols if s != PAD),
                   prefix, underlying)
    except ValueError as exc:
        raise ParseError(str(exc)) from exc


def render_nfh(n: Nfh) -> str:
    return f"quantifiers: {n.prefix.render()}\n" + render_nfa(n.underlying)


def _parse_rule_body(tokens: list[str], heads: set[str], vars_):
    body = []
    for token in tokens:
        if token.startswith("["):
            body.append(parse_track_letter(token, vars_))
        elif token in heads:
            body.append(token)
        else:
            body.append(token)  # a bare base-alphabet terminal
    return tuple(body)


def parse_cfg_text(text: str):
    """Parse the grammar format; returns (Cfg, quantifier prefix or None,
    declared alphabet or None)."""
    fields = _fields(_lines(text))
    start = None
    prefix = None
    alphabet = None
    vars_: tuple[str, ...] | None = None
    raw_rules: list[tuple[str, list[str]]] = []
    for key, value in fields:
        if key == "start":
            start = value
        elif key == "quantifiers":
            try:
                prefix = QuantifierPrefix.parse(value)
            except ValueError as exc:
                raise ParseError(str(exc)) from exc
        elif key == "alphabet":
            alphabet = value.split()
        elif key == "vars":
            vars_ = tuple(value.split())
        elif key == "rule":
            if "->" not in value:
                raise ParseError(f"bad rule line {value!r}")
            head, body = value.split("->", 1)
            raw_rules.append((head.strip(), body.split()))
        else:
            raise ParseError(f"unknown grammar field {key!r}")
    if start is None:
        raise ParseError("missing 'start:' line")
    if vars_ is None and prefix is not None:
        vars_ = prefix.variables
    heads = {h for h, _ in raw_rules} | {start}
    rules = set()
    for head, tokens in raw_rules:
        if tokens == ["eps"]:
            rules.add((head, ()))
        else:
            rules.add((head, _parse_rule_body(tokens, heads, vars_)))
    try:
        grammar = Cfg(heads, start, rules)
    except ValueError as exc:
        raise ParseError(str(exc)) from exc
    return grammar, prefix, alphabet


def parse_cfhg(text: str) -> Cfhg:
    grammar, prefix, alphabet = parse_cfg_text(text)
    if prefix is None:
        raise ParseError("missing 'quantifiers:' line")
    if alphabet is None:
        symbols = set()
        for token in grammar.terminals():
            if isinstance(token, TrackLetter):
                symbols |= {s for s in token.symbols if s != PAD}
            else:
                raise ParseError(f"terminal {token!r} is not a track letter; "
                                 "hypergrammars need bracketed terminals")
        alphabet = sorted(symbols)
    try:
        return Cfhg(frozenset(alphabet), prefix, grammar)
    except ValueError as exc:
        raise ParseError(str(exc)) from exc


def render_cfhg(g: Cfhg) -> str:
    lines = [f"quantifiers: {g.prefix.render()}",
             "alphabet: " + " ".join(sorted(g.symbols)),
             "vars: " + " ".join(g.vars),
             f"start: {g.underlying.start}"]
    for v, body in sorted(g.underlying.rules, key=repr):
        if not body:
            lines.append(f"rule: {v} -> eps")
        else:
            tokens = [t.render() if isinstance(t, TrackLetter) else t
                      for t in body]
            lines.append(f"rule: {v} -> " + " ".join(tokens))
    return "\n".join(lines) + "\n"


def parse_language(text: str) -> list[Word]:
    """One word per line; ``eps`` denotes the empty word."""
    words = []
    for line in _lines(text):
        words.append(() if line == "eps" else as_word(line))
    if not words:
        raise ParseError("the language file lists no words")
    return words


def render_language(words) -> str:
    return "\n".join(render_word(w) for w in sorted(words)) + "\n"


def parse_pcp(text: str) -> PcpInstance:
    """One tile per line: ``top | bottom``."""
    tiles = []
    for line in _lines(text):
        if "|" not in line:
            raise ParseError(f"expected 'top | bottom', got {line!r}")
        top, bottom = line.split("|", 1)
        tiles.append((as_word(top.strip()), as_word(bottom.strip())))
    if not tiles:
        raise ParseError("the tile file lists no tiles")
    try:
        return PcpInstance(tuple(tiles))
    except ValueError as exc:
        raise ParseError(str(exc)) from exc


def _vertex_label(vertex) -> str:
    if isinstance(vertex, str):
        return vertex
    return " ".join(t.render() if isinstance(t, TrackLetter) else t
                    for t in vertex) or "eps"


def _rank_set(s) -> str:
    return "{" + ",".join(sorted(s)) + "}"


def rank_report(g: Cfhg) -> str:
    """Human-readable rank table plus any ranked-check violations."""
    table = compute_ranks(g.underlying)
    verdict = is_ranked(g.underlying, table)
    lines = ["vertex | L | R"]
    for vertex in sorted(table.left, key=_vertex_label):
        lines.append(f"{_vertex_label(vertex)} | {_rank_set(table.left[vertex])}"
                     f" | {_rank_set(table.right[vertex])}")
    for (head, body), i, r, l in verdict.violations:
        rule = f"{head} -> {_vertex_label(body)}"
        lines.append(f"violation: {rule} @ position {i}")
    return "\n".join(lines) + "\n"
