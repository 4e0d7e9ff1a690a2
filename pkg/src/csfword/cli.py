"""Command-line front end.

Subcommands: analyze-word, check, rep-number, csf-number, construct, census,
verify.  Exit codes: 0 ok, 1 property/representation failure, 2 parse error,
3 inconclusive within bounds, 4 construction validation failure.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import census as census_mod
from . import suites as suites_mod
from .csf import csf_uniform_rep_number, csf_witnesses, k2_expand, twin_expand
from .errors import BoundsExceededError, ParseError, ValidationError
from .graphs import SimpleGraph, complete, crown, cycle, empty, path
from .represent import (
    SearchBounds,
    border_free_representation,
    default_node_budget,
    graph_of_word,
    mismatched_pairs,
    representation_number,
    represents,
    tm3_join,
)
from .words import (
    Word,
    csf_index,
    find_border,
    find_square_factor,
    multiplicity_profile,
    restrict,
    uniformity,
)

SCHEMA = census_mod.SCHEMA

_GENERATORS = {"complete": complete, "empty": empty, "path": path, "cycle": cycle, "crown": crown}

EXIT_OK = 0
EXIT_PROPERTY_FAILURE = 1
EXIT_PARSE_ERROR = 2
EXIT_INCONCLUSIVE = 3
EXIT_VALIDATION_FAILURE = 4


def _emit(obj, out: str | None) -> None:
    text = json.dumps(obj, indent=2, sort_keys=True) + "\n"
    if out:
        Path(out).write_text(text)
    else:
        sys.stdout.write(text)


def _load_word(args) -> Word:
    if args.word is not None:
        text = args.word
    elif getattr(args, "word_file", None):
        text = Path(args.word_file).read_text()
    else:
        raise ParseError("no word given; use --word or --word-file")
    return Word.parse(text, compact=args.compact)


def _load_graph(spec: str) -> SimpleGraph:
    """A graph argument is a file path or a generator shorthand like
    cycle:5, complete:4, crown:4."""
    if ":" in spec:
        name, _, arg = spec.partition(":")
        if name in _GENERATORS:
            try:
                return _GENERATORS[name](int(arg))
            except ValueError as exc:
                raise ParseError(f"bad generator size in {spec!r}") from exc
    p = Path(spec)
    if not p.exists():
        raise ParseError(f"graph {spec!r}: no such file and not a generator shorthand")
    return SimpleGraph.parse(p.read_text())


def _bounds(args) -> SearchBounds:
    return SearchBounds(
        k_max=args.k_max,
        n_max=args.n_max,
        node_budget=args.budget if args.budget is not None else default_node_budget(),
    )


def _add_bounds_flags(sp) -> None:
    sp.add_argument("--k-max", type=int, default=3, help="largest uniformity to try")
    sp.add_argument("--n-max", type=int, default=5, help="largest vertex count for searches")
    sp.add_argument("--budget", type=int, default=None,
                    help="backtracking node budget (default: CSFWORD_BUDGET or 10^8)")


def _add_word_flags(sp) -> None:
    sp.add_argument("--word", help="word text")
    sp.add_argument("--word-file", help="file containing the word text")
    sp.add_argument("--compact", action="store_true",
                    help="one character per letter, apostrophes bind left")


def cmd_analyze_word(args) -> int:
    w = _load_word(args)
    g = graph_of_word(w)
    idx = csf_index(w)
    report = {
        "schema": SCHEMA,
        "word": w.to_text(),
        "length": len(w),
        "alphabet": w.sorted_alphabet(),
        "multiplicity": multiplicity_profile(w),
        "uniformity": uniformity(w),
        "graph": g.to_json_obj(),
        "square_factor": find_square_factor(w),
        "longest_square_factor": find_square_factor(w, longest=True),
        "shortest_border": find_border(w) if len(w) else None,
        "csf_index": idx,
        "witnesses_by_half_length": {
            str(h): [
                {"subset": sorted(wit.subset), "start": wit.start, "block": wit.block.to_text()}
                for wit in csf_witnesses(w, h)
            ]
            for h in range(1, idx)
        },
    }
    _emit(report, args.out)
    return EXIT_OK


def cmd_check(args) -> int:
    w = _load_word(args)
    g = _load_graph(args.graph)
    if represents(w, g):
        _emit({"schema": SCHEMA, "represents": True, "word": w.to_text(),
               "graph": g.to_json_obj()}, args.out)
        return EXIT_OK
    diagnostics: dict = {"schema": SCHEMA, "represents": False, "word": w.to_text()}
    missing = sorted(g.vertices - w.alphabet)
    extra = sorted(w.alphabet - g.vertices)
    if missing or extra:
        diagnostics["missing_letters"] = missing
        diagnostics["extra_letters"] = extra
    else:
        diagnostics["mismatched_pairs"] = [
            {
                "pair": [x, y],
                "adjacent_in_graph": adjacent,
                "restriction": restrict(w, {x, y}).to_text(),
            }
            for x, y, adjacent in mismatched_pairs(w, g)
        ]
    _emit(diagnostics, args.out)
    return EXIT_PROPERTY_FAILURE


def cmd_rep_number(args) -> int:
    g = _load_graph(args.graph)
    res = representation_number(g, _bounds(args))
    _emit({
        "schema": SCHEMA,
        "graph": g.to_json_obj(),
        "value": res.value,
        "witness": str(res.witness) if res.witness else None,
        "exhausted_per_k": {str(k): v for k, v in res.exhausted_per_k.items()},
    }, args.out)
    return EXIT_OK if res.value is not None else EXIT_INCONCLUSIVE


def cmd_csf_number(args) -> int:
    g = _load_graph(args.graph)
    res = csf_uniform_rep_number(g, _bounds(args))
    _emit({
        "schema": SCHEMA,
        "graph": g.to_json_obj(),
        "value": res.value,
        "witness": str(res.witness) if res.witness else None,
        "k_of_witness": res.k_of_witness,
        "certified_up_to_k": res.certified_up_to_k,
        "exact": res.exact,
        "exact_via": res.exact_via,
    }, args.out)
    return EXIT_OK if res.value is not None else EXIT_INCONCLUSIVE


def _write_construction(args, word: Word, graph: SimpleGraph, extra: dict | None = None) -> None:
    payload = {
        "schema": SCHEMA,
        "word": word.to_text(),
        "graph": graph.to_json_obj(),
    }
    if extra:
        payload.update(extra)
    if args.out:
        word_path = Path(args.out + ".word.txt")
        graph_path = Path(args.out + ".graph.txt")
        word_path.write_text(word.to_text() + "\n")
        graph_path.write_text(graph.to_text())
        payload["word_file"] = str(word_path)
        payload["graph_file"] = str(graph_path)
    sys.stdout.write(json.dumps(payload, indent=2, sort_keys=True) + "\n")


def cmd_construct(args) -> int:
    kind = args.kind
    if kind == "tm3-join":
        if not args.word:
            raise ParseError("tm3-join needs at least one --word")
        words = [Word.parse(tx, compact=args.compact) for tx in args.word]
        joined = tm3_join(words)
        _write_construction(args, joined, graph_of_word(joined))
        return EXIT_OK
    if kind == "border-free":
        if not args.graph:
            raise ParseError("border-free needs --graph")
        g = _load_graph(args.graph)
        w = border_free_representation(g, _bounds(args))
        _write_construction(args, w, g)
        return EXIT_OK
    if kind in ("k2-expand", "twin-expand"):
        if not args.word:
            raise ParseError(f"{kind} needs --word")
        if not args.vertex:
            raise ParseError(f"{kind} needs --vertex")
        w = Word.parse(args.word[0], compact=args.compact)
        g = _load_graph(args.graph) if args.graph else graph_of_word(w)
        if kind == "k2-expand":
            new_graph, new_word = k2_expand(g, args.vertex, w)
        else:
            if not args.new_vertex:
                raise ParseError("twin-expand needs --new-vertex")
            new_graph, new_word = twin_expand(g, args.vertex, w, args.new_vertex)
        _write_construction(args, new_word, new_graph)
        return EXIT_OK
    raise ParseError(f"unknown construction kind {kind!r}")


def cmd_census(args) -> int:
    records = census_mod.build_census(args.n_max, _bounds(args))
    if args.format == "csv":
        text = census_mod.census_to_csv(records)
    else:
        text = census_mod.census_to_json(records)
    if args.out:
        Path(args.out).write_text(text)
    else:
        sys.stdout.write(text)
    if any(r.representation_number is None or r.csf_uniform_number is None for r in records):
        return EXIT_INCONCLUSIVE
    return EXIT_OK


def cmd_verify(args) -> int:
    names = sorted(suites_mod.SUITES) if args.suite == "all" else [args.suite]
    bounds = _bounds(args)
    reports = []
    failed = False
    for name in names:
        report = suites_mod.run_suite(name, bounds)
        reports.append(report)
        status = "ok" if report.ok else "FAILED"
        line = (f"suite {report.suite_name}: {status}, {report.cases_run} cases, "
                f"{len(report.failures)} failures, {report.runtime_seconds:.2f}s")
        sys.stdout.write(line + "\n")
        for case, expected, got in report.failures[:10]:
            sys.stdout.write(f"  FAIL {case}: expected {expected}, got {got}\n")
        failed = failed or not report.ok
    if args.format == "json":
        sys.stdout.write(json.dumps(
            {"schema": SCHEMA, "suites": [r.to_json_obj() for r in reports]},
            indent=2, sort_keys=True) + "\n")
    return EXIT_PROPERTY_FAILURE if failed else EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="csfword",
        description="Analyze complete-square-free word representations of graphs.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    sp = sub.add_parser("analyze-word", help="report on one word")
    _add_word_flags(sp)
    sp.add_argument("--out")
    sp.set_defaults(func=cmd_analyze_word)

    sp = sub.add_parser("check", help="does the word represent the graph?")
    _add_word_flags(sp)
    sp.add_argument("--graph", required=True, help="graph file or generator shorthand")
    sp.add_argument("--out")
    sp.set_defaults(func=cmd_check)

    sp = sub.add_parser("rep-number", help="least uniformity admitting a representant")
    sp.add_argument("--graph", required=True)
    _add_bounds_flags(sp)
    sp.add_argument("--out")
    sp.set_defaults(func=cmd_rep_number)

    sp = sub.add_parser("csf-number", help="complete square-free uniform representation number")
    sp.add_argument("--graph", required=True)
    _add_bounds_flags(sp)
    sp.add_argument("--out")
    sp.set_defaults(func=cmd_csf_number)

    sp = sub.add_parser("construct", help="run one of the word constructions")
    sp.add_argument("kind", choices=["k2-expand", "twin-expand", "tm3-join", "border-free"])
    sp.add_argument("--word", action="append", help="word text (repeat for tm3-join)")
    sp.add_argument("--compact", action="store_true")
    sp.add_argument("--graph", help="graph file or generator shorthand")
    sp.add_argument("--vertex", help="vertex to expand")
    sp.add_argument("--new-vertex", help="fresh vertex label for twin-expand")
    _add_bounds_flags(sp)
    sp.add_argument("--out", help="prefix for the .word.txt/.graph.txt outputs")
    sp.set_defaults(func=cmd_construct)

    sp = sub.add_parser("census", help="classify all graphs on n vertices")
    _add_bounds_flags(sp)
    sp.add_argument("--format", choices=["json", "csv"], default="json")
    sp.add_argument("--out")
    sp.set_defaults(func=cmd_census)

    sp = sub.add_parser("verify", help="run a named property suite, or all")
    sp.add_argument("suite", help=f"one of: all, {', '.join(sorted(suites_mod.SUITES))}")
    _add_bounds_flags(sp)
    sp.add_argument("--format", choices=["text", "json"], default="text")
    sp.set_defaults(func=cmd_verify)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except ParseError as exc:
        sys.stderr.write(f"parse error: {exc}\n")
        return EXIT_PARSE_ERROR
    except ValidationError as exc:
        sys.stderr.write(f"validation failure: {exc}\n")
        return EXIT_VALIDATION_FAILURE
    except BoundsExceededError as exc:
        sys.stderr.write(f"inconclusive within bounds: {exc}\n")
        return EXIT_INCONCLUSIVE
    except ValueError as exc:
        if args.command == "construct":
            sys.stderr.write(f"validation failure: {exc}\n")
            return EXIT_VALIDATION_FAILURE
        sys.stderr.write(f"error: {exc}\n")
        return EXIT_PARSE_ERROR


if __name__ == "__main__":
    sys.exit(main())
