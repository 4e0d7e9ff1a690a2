"""Named property suites behind the ``verify`` command.

Each suite re-checks one family of structural claims on concrete instances
and returns a report; a correct build produces zero failures everywhere.
"""

from __future__ import annotations

import random
import time
from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from . import _kernels
from ._encode import adjacency_matrix, encode_word
from .census import build_census, census_to_json
from .csf import csf_uniform_rep_number, csf_witnesses, twin_expand
from .graphs import (
    SimpleGraph,
    clique_number,
    complete,
    crown,
    cycle,
    empty,
    graph_classes,
    is_connected,
    path,
    universal_vertices,
)
from .represent import (
    SearchBounds,
    enumerate_k_uniform_words,
    find_k_uniform_word,
    graph_of_word,
    representation_number,
    represents,
    square_free_representation,
    tm3_join,
)
from .words import (
    Word,
    csf_index,
    find_p_complete_square,
    find_p_complete_square_naive,
    is_p_complete_square_free,
    restrict,
    uniformity,
)


@dataclass
class SuiteReport:
    suite_name: str
    cases_run: int = 0
    failures: list[tuple[str, str, str]] = field(default_factory=list)
    runtime_seconds: float = 0.0
    notes: dict = field(default_factory=dict)

    def check(self, case: str, expected, got) -> None:
        self.cases_run += 1
        if expected != got:
            self.failures.append((case, repr(expected), repr(got)))

    def check_true(self, case: str, got: bool) -> None:
        self.check(case, True, bool(got))

    @property
    def ok(self) -> bool:
        return not self.failures

    def to_json_obj(self) -> dict:
        return {
            "suite": self.suite_name,
            "cases_run": self.cases_run,
            "failures": [list(f) for f in self.failures],
            "runtime_seconds": round(self.runtime_seconds, 3),
            "notes": self.notes,
        }


# fixture words used across suites and the command line
DEMO_WORD = Word.parse("125783462145673818725346", compact=True)
CSF3_DEMO_WORD = Word.parse("14213243", compact=True)
TRIANGLE_PENDANT_GRAPH = SimpleGraph.build("1234", [("1", "2"), ("1", "3"), ("1", "4"), ("2", "3")])
TRIANGLE_PENDANT_WORD_UNIFORM = Word.parse("23123414", compact=True)
TRIANGLE_PENDANT_WORD_SHORT = Word.parse("23414", compact=True)
CYCLE5_WORD = Word.parse("5213243541", compact=True)
CROWN4_WORD = Word.parse("1234'43'2'1'1243'34'2'1'1342'24'3'1'2341'14'3'2'", compact=True)
CROWN4_WORD_SWAPPED = Word.parse("1234'43'2'1'1243'34'2'1'1342'24'3'1'2341'13'4'2'", compact=True)
TWIN_EXPANDED_ONCE = Word.parse("5211'3243541'1", compact=True)
TWIN_EXPANDED_TWICE = Word.parse("55'211'32435'541'1", compact=True)


def _brute_square_free(w: Word) -> bool:
    seq = w.letters
    m = len(seq)
    for half in range(1, m // 2 + 1):
        for start in range(m - 2 * half + 1):
            if seq[start:start + half] == seq[start + half:start + 2 * half]:
                return False
    return True


def suite_paper_examples(bounds: SearchBounds) -> SuiteReport:
    """The worked fixtures: restrictions, complete-square witnesses, the
    triangle-with-pendant graph, the crown words, and the twin-expansion
    chain around the five-cycle."""
    rep = SuiteReport("paper-examples")

    rep.check("restrict demo {2,5,7}", "257257725",
              restrict(DEMO_WORD, {"2", "5", "7"}).to_text(compact=True))
    rep.check("restrict demo {2,5,7,8}", "257825788725",
              restrict(DEMO_WORD, {"2", "5", "7", "8"}).to_text(compact=True))
    # the exhibited subsets carry the exhibited squares
    sub = restrict(DEMO_WORD, {"2", "5", "7"})
    rep.check("demo {2,5,7} starts with 257 257", "257257",
              Word(sub.letters[:6]).to_text(compact=True))
    sub4 = restrict(DEMO_WORD, {"2", "5", "7", "8"})
    rep.check("demo {2,5,7,8} starts with 2578 2578", "25782578",
              Word(sub4.letters[:8]).to_text(compact=True))
    rep.check_true("demo word has a 3-complete square",
                   find_p_complete_square(DEMO_WORD, 3) is not None)
    rep.check_true("demo word has a 4-complete square",
                   find_p_complete_square(DEMO_WORD, 4) is not None)
    rep.check_true("14213243 is 3-complete square-free",
                   is_p_complete_square_free(CSF3_DEMO_WORD, 3))
    rep.check("csf index of 14213243", 3, csf_index(CSF3_DEMO_WORD))

    rep.check_true("23123414 represents the triangle-with-pendant graph",
                   represents(TRIANGLE_PENDANT_WORD_UNIFORM, TRIANGLE_PENDANT_GRAPH))
    rep.check_true("23414 represents the triangle-with-pendant graph",
                   represents(TRIANGLE_PENDANT_WORD_SHORT, TRIANGLE_PENDANT_GRAPH))
    rep.check("csf index of 23123414", 4, csf_index(TRIANGLE_PENDANT_WORD_UNIFORM))
    rep.check_true("23414 is 3-complete square-free",
                   is_p_complete_square_free(TRIANGLE_PENDANT_WORD_SHORT, 3))
    rep.check_true("the {1,2,3} restriction of 23123414 is the square 231231",
                   restrict(TRIANGLE_PENDANT_WORD_UNIFORM, {"1", "2", "3"}).to_text(compact=True)
                   == "231231")

    rep.check_true("crown word represents crown(4)", represents(CROWN4_WORD, crown(4)))
    rep.check_true("swapped crown word represents crown(4)",
                   represents(CROWN4_WORD_SWAPPED, crown(4)))
    rep.check_true("swapped crown word is 7-complete square-free",
                   is_p_complete_square_free(CROWN4_WORD_SWAPPED, 7))
    wit_subsets = {w.subset for w in csf_witnesses(CROWN4_WORD_SWAPPED, 6)}
    rep.check_true("swapped crown word has the {1,4',3'} half-6 witness",
                   frozenset({"1", "4'", "3'"}) in wit_subsets)
    rep.check("restriction of swapped word to {1,4',3'}", "14'3'13'4'14'3'13'4'",
              restrict(CROWN4_WORD_SWAPPED, {"1", "4'", "3'"}).to_text(compact=True))

    rep.check_true("5213243541 represents the five-cycle",
                   represents(CYCLE5_WORD, cycle(5)))
    g1, w1 = twin_expand(cycle(5), "1", CYCLE5_WORD, "1'")
    rep.check("first twin expansion word", TWIN_EXPANDED_ONCE.to_text(), w1.to_text())
    g2, w2 = twin_expand(g1, "5", w1, "5'")
    rep.check("second twin expansion word", TWIN_EXPANDED_TWICE.to_text(), w2.to_text())
    expected_g1 = SimpleGraph.build(
        ["1", "2", "3", "4", "5", "1'"],
        [("1", "2"), ("2", "3"), ("3", "4"), ("4", "5"), ("1", "5"), ("1'", "2"), ("1'", "5")],
    )
    expected_g2 = SimpleGraph.build(
        list(expected_g1.vertices) + ["5'"],
        list(expected_g1.edges) + [("5'", "1"), ("5'", "4"), ("5'", "1'")],
    )
    rep.check("first expanded graph", expected_g1, g1)
    rep.check("second expanded graph", expected_g2, g2)
    for name, w in (("first", w1), ("second", w2)):
        rep.check_true(f"{name} expansion is uniform", uniformity(w) is not None)
        rep.check_true(f"{name} expansion is 3-complete square-free",
                       is_p_complete_square_free(w, 3))
    return rep


def suite_lm15(bounds: SearchBounds) -> SuiteReport:
    """csf uniform representation number is 1 exactly for complete graphs,
    over every isomorphism class with at most five vertices."""
    rep = SuiteReport("lm15")
    for n in range(1, 6):
        for g in graph_classes(n):
            res = csf_uniform_rep_number(g, bounds)
            rep.check(f"n={n} key={g.edge_count}e/{sorted(g.edges)}",
                      g.is_complete(), res.value == 1)
    return rep


def suite_cor1(bounds: SearchBounds) -> SuiteReport:
    """The palindrome double word 1..n n..1 is a 2-complete square-free
    uniform representant of the edgeless graph, n up to 8."""
    rep = SuiteReport("cor1")
    for n in range(1, 9):
        g = empty(n)
        toks = g.sorted_vertices()
        w = Word(tuple(toks) + tuple(reversed(toks)))
        rep.check(f"uniformity n={n}", 2, uniformity(w))
        rep.check_true(f"represents empty({n})", represents(w, g))
        rep.check_true(f"2-complete square-free n={n}", is_p_complete_square_free(w, 2))
    return rep


def suite_lm11(bounds: SearchBounds) -> SuiteReport:
    """Exhaustively over k-uniform words (k <= 3, alphabet <= 4) plus random
    samples at alphabet 5: whenever the csf index is at least 2, the clique
    number of the induced graph stays below it."""
    rep = SuiteReport("lm11")
    total = 0
    for k in range(1, 4):
        for n in range(1, 5):
            words, failures, first_fail = _kernels.scan_clique_vs_csf(k, n)
            total += int(words)
            rep.check(f"exhaustive k={k} n={n} ({int(words)} words)", 0, int(failures))
            if failures:
                rep.notes[f"first_failure_k{k}_n{n}"] = [int(x) for x in first_fail]
    for k, num, seed in ((2, 5000, 11), (3, 5000, 13)):
        words, failures, _ = _kernels.sample_clique_vs_csf(k, 5, num, seed)
        total += int(words)
        rep.check(f"samples k={k} alphabet=5", 0, int(failures))
    rep.notes["words_checked"] = total
    return rep


def suite_lm12(bounds: SearchBounds) -> SuiteReport:
    """Every connected, non-complete, triangle-free graph with at most six
    vertices that admits a 2-uniform representant: the minimal witness is
    3-complete square-free, and every 2-uniform representant has csf index
    exactly clique number + 1 (= 3)."""
    rep = SuiteReport("lm12")
    wide = SearchBounds(k_max=bounds.k_max, n_max=6, node_budget=bounds.node_budget)
    graphs_checked = 0
    words_checked = 0
    for n in range(2, 7):
        for g in graph_classes(n):
            if g.is_complete() or not is_connected(g) or clique_number(g) >= 3:
                continue
            found = find_k_uniform_word(g, 2, wide)
            if found.word is None:
                rep.check_true(f"n={n} {sorted(g.edges)} search exhausted", found.exhausted)
                continue
            graphs_checked += 1
            rep.check_true(f"minimal 2-uniform witness 3-csf n={n} {sorted(g.edges)}",
                           is_p_complete_square_free(found.word, 3))
            enum = enumerate_k_uniform_words(g, 2, wide)
            rep.check_true(f"full 2-uniform enumeration exhausted n={n} {sorted(g.edges)}",
                           enum.exhausted)
            order = g.sorted_vertices()
            arrays = np.array([encode_word(w, order)[0] for w in enum.words], dtype=np.int64)
            csfs = _kernels.csf_index_many(arrays, len(order))
            words_checked += len(enum.words)
            bad = [i for i, c in enumerate(csfs) if int(c) != 3]
            rep.check(f"all 2-uniform representants csf=3 n={n} {sorted(g.edges)}",
                      [], [str(enum.words[i]) for i in bad[:3]])
    rep.notes["graphs_checked"] = graphs_checked
    rep.notes["words_checked"] = words_checked
    return rep


def suite_tm7_core(bounds: SearchBounds) -> SuiteReport:
    """All 4-uniform words over a three-letter alphabet: every word that
    represents the path b-a-c (center a) has csf index at least 4."""
    rep = SuiteReport("tm7-core")
    adj = np.zeros((3, 3), dtype=np.bool_)
    adj[0, 1] = adj[1, 0] = True
    adj[0, 2] = adj[2, 0] = True
    total, representing, violations, first_bad = _kernels.scan_representants_min_csf(4, 3, adj, 4)
    rep.check("four-uniform words over three letters", 34650, int(total))
    rep.check("violations", 0, int(violations))
    rep.notes["representants"] = int(representing)
    if violations:
        rep.notes["first_violation"] = [int(x) for x in first_bad]
    rep.cases_run = int(total)
    return rep


def suite_lmk(bounds: SearchBounds) -> SuiteReport:
    """Connected graphs with representation number 2 (n <= 5): every
    2-uniform representant is square-free and border-free.  A bounded spot
    check runs the same test at representation number 3 when a small graph
    with that number exists (the triangular prism)."""
    rep = SuiteReport("lmk")
    words_checked = 0
    for n in range(2, 6):
        for g in graph_classes(n):
            if g.is_complete() or not is_connected(g):
                continue
            k1 = find_k_uniform_word(g, 1, bounds)
            rep.check_true(f"no 1-uniform representant n={n} {sorted(g.edges)}",
                           k1.word is None and k1.exhausted)
            enum = enumerate_k_uniform_words(g, 2, bounds)
            rep.check_true(f"2-uniform enumeration exhausted n={n} {sorted(g.edges)}",
                           enum.exhausted)
            rep.check_true(f"2-uniform representants exist n={n} {sorted(g.edges)}",
                           len(enum.words) > 0)
            order = g.sorted_vertices()
            arrays = np.array([encode_word(w, order)[0] for w in enum.words], dtype=np.int64)
            idx, code = _kernels.square_border_scan(arrays)
            rep.check(f"square/border free n={n} {sorted(g.edges)}", (-1, 0),
                      (int(idx), int(code)))
            words_checked += len(enum.words)
    # spot check at representation number 3
    prism = SimpleGraph.build(
        "123456",
        [("1", "2"), ("2", "3"), ("1", "3"), ("4", "5"), ("5", "6"), ("4", "6"),
         ("1", "4"), ("2", "5"), ("3", "6")],
    )
    wide = SearchBounds(k_max=3, n_max=6, node_budget=bounds.node_budget)
    prism_rep = representation_number(prism, wide)
    rep.notes["prism_representation_number"] = prism_rep.value
    if prism_rep.value == 3:
        sample = enumerate_k_uniform_words(prism, 3, wide, max_words=500)
        order = prism.sorted_vertices()
        arrays = np.array([encode_word(w, order)[0] for w in sample.words], dtype=np.int64)
        idx, code = _kernels.square_border_scan(arrays)
        rep.check("prism 3-uniform sample square/border free", (-1, 0), (int(idx), int(code)))
        words_checked += len(sample.words)
    rep.notes["words_checked"] = words_checked
    return rep


def suite_oracle(bounds: SearchBounds) -> SuiteReport:
    """Differential test: the optimized complete-square detector agrees with
    the all-subsets reference scanner on 500 random words, for every p from 1
    to csf index + 1."""
    rep = SuiteReport("oracle")
    rng = random.Random(185321)
    for case in range(500):
        alphabet = [str(i + 1) for i in range(rng.randint(1, 8))]
        length = rng.randint(1, 16)
        w = Word(tuple(rng.choice(alphabet) for _ in range(length)))
        fast_csf = csf_index(w)
        naive_csf = None
        for p in range(1, fast_csf + 2):
            fast = find_p_complete_square(w, p)
            slow = find_p_complete_square_naive(w, p)
            if (fast is None) != (slow is None):
                rep.check(f"case {case} {w} p={p} presence", slow is None, fast is None)
                continue
            if fast is not None:
                rep.check(f"case {case} {w} p={p} witness",
                          (slow.subset, slow.start, slow.block),
                          (fast.subset, fast.start, fast.block))
            else:
                rep.cases_run += 1
            if slow is None and naive_csf is None:
                naive_csf = p
        rep.check(f"case {case} {w} csf agreement", naive_csf, fast_csf)
    return rep


_COMPONENT_SHAPES: list[Callable[[], SimpleGraph]] = [
    lambda: complete(1),
    lambda: complete(2),
    lambda: path(3),
    lambda: complete(3),
    lambda: path(4),
    lambda: cycle(4),
]


def _relabel_offset(g: SimpleGraph, offset: int) -> SimpleGraph:
    mapping = {v: str(int(v) + offset) for v in g.vertices}
    return g.relabel(mapping)


def suite_tm3_join(bounds: SearchBounds) -> SuiteReport:
    """Join 50 random pairs/triples of small components through the
    disjoint-union formula; every join must represent the union and be
    square-free (checked against an independent inline scanner)."""
    rep = SuiteReport("tm3-join")
    joined = tm3_join([Word.parse("1 2"), Word.parse("3")])
    rep.check("two-letter plus singleton join", "1323132", joined.to_text(compact=True))

    rng = random.Random(424241)
    small = SearchBounds(k_max=3, n_max=4, node_budget=bounds.node_budget)
    for case in range(50):
        count = rng.choice((2, 2, 3))
        shapes = [rng.randrange(1, len(_COMPONENT_SHAPES))]  # first one has an edge
        shapes += [rng.randrange(0, len(_COMPONENT_SHAPES)) for _ in range(count - 1)]
        comps = []
        offset = 0
        for s in shapes:
            g = _COMPONENT_SHAPES[s]()
            comps.append(_relabel_offset(g, offset))
            offset += len(g.vertices)
        words = [square_free_representation(c, small) for c in comps]
        union = SimpleGraph.build(
            (v for c in comps for v in c.vertices),
            (e for c in comps for e in c.edges),
        )
        w = tm3_join(words)
        rep.check_true(f"case {case} represents union", represents(w, union))
        rep.check_true(f"case {case} square-free", _brute_square_free(w))
    return rep


def suite_lmn1(bounds: SearchBounds) -> SuiteReport:
    """Graphs with a universal vertex (n <= 5), at their computed csf uniform
    representation number p: in every enumerated p-csf uniform representant
    with k <= 3, every subset whose restriction holds a square of half length
    p-1 contains the universal vertex."""
    rep = SuiteReport("lmn1")
    words_checked = 0
    for n in range(1, 6):
        for g in graph_classes(n):
            universals = universal_vertices(g)
            if not universals:
                continue
            res = csf_uniform_rep_number(g, bounds)
            p = res.value
            if p is None:
                rep.check_true(f"n={n} {sorted(g.edges)} csf computed", False)
                continue
            if p < 2:
                rep.cases_run += 1  # no half-length p-1 squares exist at p=1
                continue
            order = g.sorted_vertices()
            adj = adjacency_matrix(g.edges, order)
            for k in range(1, bounds.k_max + 1):
                arrays, exhausted, _ = _kernels.enum_representants(
                    adj, k, bounds.node_budget, False, 2_000_000
                )
                rep.check_true(f"n={n} {sorted(g.edges)} k={k} exhausted", exhausted)
                if not len(arrays):
                    continue
                csfs = _kernels.csf_index_many(arrays, n)
                keep = [i for i in range(len(arrays)) if int(csfs[i]) <= p]
                if not keep:
                    continue
                kept = arrays[np.array(keep, dtype=np.int64)]
                words_checked += len(keep)
                for v in sorted(universals):
                    vid = order.index(v)
                    wi, mask = _kernels.square_subsets_avoiding(kept, n, p - 1, vid)
                    rep.check(
                        f"n={n} {sorted(g.edges)} k={k} universal={v}",
                        (-1, -1), (int(wi), int(mask)),
                    )
    rep.notes["p_csf_words_checked"] = words_checked
    return rep


def suite_lm13(bounds: SearchBounds) -> SuiteReport:
    """Adding a universal vertex to a non-empty graph whose csf uniform
    number is 3 creates a triangle, so the result cannot stay at 3."""
    rep = SuiteReport("lm13")
    for g in (path(3), path(4), cycle(4), cycle(5), cycle(6), crown(3)):
        wide = SearchBounds(k_max=bounds.k_max, n_max=max(len(g.vertices), bounds.n_max),
                            node_budget=bounds.node_budget)
        base = csf_uniform_rep_number(g, wide)
        rep.check(f"{sorted(g.edges)} base csf", 3, base.value)
        apex = "a"
        extended = SimpleGraph.build(
            list(g.vertices) + [apex], list(g.edges) + [(apex, v) for v in g.vertices]
        )
        rep.check_true(f"{sorted(g.edges)} apex creates a triangle",
                       clique_number(extended) >= 3)
    return rep


def suite_tm8_sanity(bounds: SearchBounds) -> SuiteReport:
    """3-uniform words over alphabets up to 4 letters: squares found in
    proper subset restrictions stay below half length ceil(3n/2) - 1.  Words
    whose only such square needs the full alphabet are flagged, not failed."""
    rep = SuiteReport("tm8-sanity")
    flagged_total = 0
    words_total = 0
    for n in range(1, 5):
        total, failures, flagged = _kernels.scan_proper_subset_bound(3, n)
        rep.check(f"proper-subset bound n={n} ({int(total)} words)", 0, int(failures))
        words_total += int(total)
        flagged_total += int(flagged)
    rep.notes["full_alphabet_flagged"] = flagged_total
    rep.notes["words_checked"] = words_total
    return rep


def suite_census(bounds: SearchBounds) -> SuiteReport:
    """The four-vertex census: eleven isomorphism classes, internally
    consistent rows, and byte-identical output on a rerun."""
    rep = SuiteReport("census")
    records = build_census(4, bounds)
    rep.check("classes on four vertices", 11, len(records))
    for r in records:
        complete_graph = r.edge_count == 6
        rep.check(f"{r.canonical_key} rep=1 iff complete", complete_graph,
                  r.representation_number == 1)
        if not complete_graph:
            rep.check_true(f"{r.canonical_key} csf >= clique+1",
                           r.csf_uniform_number is not None
                           and r.csf_uniform_number >= r.clique_number + 1)
    first = census_to_json(records)
    second = census_to_json(build_census(4, bounds))
    rep.check_true("byte-identical rerun", first == second)
    return rep


SUITES: dict[str, Callable[[SearchBounds], SuiteReport]] = {
    "paper-examples": suite_paper_examples,
    "lm15": suite_lm15,
    "cor1": suite_cor1,
    "lm11": suite_lm11,
    "lm12": suite_lm12,
    "tm7-core": suite_tm7_core,
    "lmk": suite_lmk,
    "oracle": suite_oracle,
    "tm3-join": suite_tm3_join,
    "lmn1": suite_lmn1,
    "lm13": suite_lm13,
    "tm8-sanity": suite_tm8_sanity,
    "census": suite_census,
}


def run_suite(name: str, bounds: SearchBounds | None = None) -> SuiteReport:
    if name not in SUITES:
        raise ValueError(f"unknown suite {name!r}; available: {', '.join(sorted(SUITES))}")
    bounds = bounds or SearchBounds()
    start = time.perf_counter()
    report = SUITES[name](bounds)
    report.runtime_seconds = time.perf_counter() - start
    return report
