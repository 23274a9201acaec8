"""Command-line front end.

Exit codes: 0 = TRUE/success, 1 = FALSE, 2 = undecidable or cap exceeded,
64 = usage error, 65 = parse error.  ``--json`` switches the output to a
machine-readable document with a versioned schema.
"""

from __future__ import annotations

import argparse
import json
import sys

from .cfhg import (bounded_nonempty_witness, cfhg_empty, finite_member,
                   regular_member)
from .core import render_word
from .errors import (CapExceeded, HyperlangError, ParseError, Undecidable,
                     UniverseTooLarge)
from .formats import (parse_cfhg, parse_language, parse_nfa, parse_nfh,
                      parse_pcp, rank_report, render_cfhg, render_language,
                      render_nfh)
from .nfa import Dfa, determinize, trim
from .nfh import nfh_accepts, nfh_hyperlanguage_probe
from .pcp import pcp_encode_exists_forall, pcp_encode_forall
from .ranks import is_ranked
from .realize import (OrderedLanguageSpec, prefix_closed_relation,
                      realize_finite, realize_ordered,
                      realize_partially_ordered, realize_prefix_closed_fast,
                      realize_regular)

EXIT_TRUE = 0
EXIT_FALSE = 1
EXIT_UNDECIDABLE = 2
EXIT_USAGE = 64
EXIT_PARSE = 65


class _UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise _UsageError(message)


def _build_parser() -> _Parser:
    parser = _Parser(prog="hyperlang",
                     description="Regular and context-free hyperlanguage toolkit")
    parser.add_argument("--json", action="store_true",
                        help="emit machine-readable JSON")
    sub = parser.add_subparsers(dest="group", required=True)

    nfh = sub.add_parser("nfh").add_subparsers(dest="verb", required=True)
    member = nfh.add_parser("member")
    member.add_argument("nfh_file")
    member.add_argument("lang_file")
    probe = nfh.add_parser("probe")
    probe.add_argument("nfh_file")
    probe.add_argument("--max-len", type=int, required=True)

    realize = sub.add_parser("realize").add_subparsers(dest="verb", required=True)
    finite = realize.add_parser("finite")
    finite.add_argument("lang_file")
    finite.add_argument("-o", "--output", required=True)
    ordered = realize.add_parser("ordered")
    ordered.add_argument("first_word", help="the minimal word ('eps' for empty)")
    ordered.add_argument("successor_file", help="NFA over vars x y computing f")
    ordered.add_argument("-o", "--output", required=True)
    prefix_closed = realize.add_parser("prefix-closed")
    prefix_closed.add_argument("dfa_file")
    prefix_closed.add_argument("--route", choices=["fast", "relation"],
                               default="fast")
    prefix_closed.add_argument("-o", "--output", required=True)
    regular = realize.add_parser("regular")
    regular.add_argument("dfa_file")
    regular.add_argument("-o", "--output", required=True)

    cfhg = sub.add_parser("cfhg").add_subparsers(dest="verb", required=True)
    empty = cfhg.add_parser("empty")
    empty.add_argument("cfhg_file")
    empty.add_argument("--bounded", type=int, default=None,
                       help="also search for a member language up to this length")
    mf = cfhg.add_parser("member-finite")
    mf.add_argument("cfhg_file")
    mf.add_argument("lang_file")
    mr = cfhg.add_parser("member-regular")
    mr.add_argument("cfhg_file")
    mr.add_argument("nfa_file")
    ranks = cfhg.add_parser("ranks")
    ranks.add_argument("cfhg_file")
    ir = cfhg.add_parser("is-ranked")
    ir.add_argument("cfhg_file")

    pcp = sub.add_parser("pcp").add_subparsers(dest="verb", required=True)
    ef = pcp.add_parser("encode-forall")
    ef.add_argument("pcp_file")
    ef.add_argument("-o", "--output", required=True)
    ea = pcp.add_parser("encode-ea")
    ea.add_argument("pcp_file")
    ea.add_argument("-o", "--output", required=True)
    return parser


def _read(path: str) -> str:
    try:
        with open(path, encoding="utf-8") as handle:
            return handle.read()
    except OSError as exc:
        raise _UsageError(f"cannot read {path}: {exc}") from exc


def _write(path: str, text: str):
    try:
        with open(path, "w", encoding="utf-8") as handle:
            handle.write(text)
    except OSError as exc:
        raise _UsageError(f"cannot write {path}: {exc}") from exc


def _as_dfa(a) -> Dfa:
    if isinstance(a, Dfa):
        return a
    return determinize(trim(a))


class _Report:
    """Collects the verdict and payload; renders text or JSON at the end."""

    def __init__(self, use_json: bool):
        self.use_json = use_json
        self.document = {"schema": 1}
        self.lines: list[str] = []
        self.exit_code = EXIT_TRUE

    def verdict(self, value: bool):
        self.document["verdict"] = "TRUE" if value else "FALSE"
        self.lines.append("TRUE" if value else "FALSE")
        self.exit_code = EXIT_TRUE if value else EXIT_FALSE

    def undecidable(self, reason: str, message: str):
        self.document["verdict"] = "UNDECIDABLE"
        self.document["reason"] = reason
        self.document["message"] = message
        self.lines.append(f"UNDECIDABLE({reason}): {message}")
        self.exit_code = EXIT_UNDECIDABLE

    def note(self, key: str, value, text: str | None = None):
        self.document[key] = value
        if text is not None:
            self.lines.append(text)

    def body(self, text: str, key: str = "output"):
        self.document[key] = text
        self.lines.append(text.rstrip("\n"))

    def emit(self) -> int:
        if self.use_json:
            print(json.dumps(self.document, sort_keys=True))
        else:
            for line in self.lines:
                print(line)
        return self.exit_code


def _run_nfh(args, report: _Report):
    n = parse_nfh(_read(args.nfh_file))
    if args.verb == "member":
        words = parse_language(_read(args.lang_file))
        report.verdict(nfh_accepts(n, words))
    else:
        accepted = nfh_hyperlanguage_probe(n, args.max_len)
        rendered = sorted("{" + ",".join(render_word(w) for w in sorted(lang)) + "}"
                          for lang in accepted)
        report.note("languages", rendered)
        report.lines.extend(rendered or ["(none)"])


def _run_realize(args, report: _Report):
    if args.verb == "finite":
        n = realize_finite(parse_language(_read(args.lang_file)))
    elif args.verb == "ordered":
        word = "" if args.first_word == "eps" else args.first_word
        successor = parse_nfa(_read(args.successor_file))
        n = realize_ordered(OrderedLanguageSpec(tuple(word), successor))
    elif args.verb == "prefix-closed":
        dfa = _as_dfa(parse_nfa(_read(args.dfa_file)))
        if args.route == "fast":
            n = realize_prefix_closed_fast(dfa)
        else:
            n = realize_partially_ordered(prefix_closed_relation(dfa))
    else:
        n = realize_regular(_as_dfa(parse_nfa(_read(args.dfa_file))))
    _write(args.output, render_nfh(n))
    report.note("output", args.output, f"wrote {args.output}")


def _run_cfhg(args, report: _Report):
    g = parse_cfhg(_read(args.cfhg_file))
    if args.verb == "empty":
        try:
            report.verdict(cfhg_empty(g))
        except Undecidable as exc:
            report.undecidable(exc.reason, str(exc))
            if args.bounded is not None:
                witness = bounded_nonempty_witness(g, args.bounded)
                if witness is None:
                    report.note("witness", None,
                                f"no member language found up to length {args.bounded}")
                else:
                    rendered = "{" + ",".join(render_word(w)
                                              for w in sorted(witness)) + "}"
                    report.note("witness", rendered, f"witness: {rendered}")
    elif args.verb == "member-finite":
        words = parse_language(_read(args.lang_file))
        report.verdict(finite_member(g, words))
    elif args.verb == "member-regular":
        a = parse_nfa(_read(args.nfa_file))
        report.verdict(regular_member(g, a))
    elif args.verb == "ranks":
        report.body(rank_report(g))
    else:
        verdict = is_ranked(g.underlying)
        report.verdict(verdict.ranked)
        for (head, body), i, r, l in verdict.violations:
            rendered = " ".join(t.render() if hasattr(t, "render") else t
                                for t in body)
            line = (f"violation: {head} -> {rendered} @ position {i}: "
                    f"R={{{','.join(sorted(r))}}} ⊄ L={{{','.join(sorted(l))}}}")
            report.lines.append(line)
            report.document.setdefault("violations", []).append(line)


def _run_pcp(args, report: _Report):
    instance = parse_pcp(_read(args.pcp_file))
    if args.verb == "encode-forall":
        g = pcp_encode_forall(instance)
    else:
        g = pcp_encode_exists_forall(instance)
    _write(args.output, render_cfhg(g))
    report.note("output", args.output, f"wrote {args.output}")


def run(argv) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except _UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    report = _Report(args.json)
    try:
        if args.group == "nfh":
            _run_nfh(args, report)
        elif args.group == "realize":
            _run_realize(args, report)
        elif args.group == "cfhg":
            _run_cfhg(args, report)
        else:
            _run_pcp(args, report)
    except _UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except ParseError as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except Undecidable as exc:
        report.undecidable(exc.reason, str(exc))
        return report.emit()
    except (CapExceeded, UniverseTooLarge) as exc:
        print(f"cap exceeded: {exc}", file=sys.stderr)
        return EXIT_UNDECIDABLE
    except HyperlangError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    return report.emit()


def main() -> int:
    return run(sys.argv[1:])


if __name__ == "__main__":
    sys.exit(main())
