"""Complete-square-free analysis of uniform representations: csf uniform
representation numbers with exactness certificates, square-vertex reports,
and the constructive expansions (K2 module, occurrence-based twin)."""

from __future__ import annotations

import warnings
from dataclasses import dataclass

import numpy as np

from . import _kernels
from ._encode import adjacency_matrix, decode_mask, decode_word, encode_word
from .errors import BoundsExceededError, ValidationError
from .graphs import SimpleGraph, clique_number, induced_subgraph, substitute_module, universal_vertices
from .represent import SearchBounds, graph_of_word, represents, representation_number
from .words import (
    Letter,
    SquareWitness,
    Word,
    csf_index,
    is_p_complete_square_free,
    occurrence_based_map,
    restrict,
    uniformity,
)


@dataclass(frozen=True)
class CsfResult:
    """Minimum p over uniform representants within bounds.

    ``certified_up_to_k`` is the largest k for which "no smaller p with any
    uniformity <= k" was actually verified; ``exact`` marks values pinned by a
    structural argument rather than by search alone, with the argument named
    in ``exact_via``.
    """

    value: int | None
    witness: Word | None
    k_of_witness: int | None
    certified_up_to_k: int
    exact: bool
    exact_via: str | None

    def __post_init__(self):
        if self.witness is not None:
            if uniformity(self.witness) != self.k_of_witness:
                raise ValidationError("csf witness is not k-uniform for its recorded k")
            if self.value is not None and csf_index(self.witness) > self.value:
                raise ValidationError("csf witness exceeds the reported value")


@dataclass(frozen=True)
class SquareVertexReport:
    vertex: Letter
    is_p_square_vertex_up_to_k: bool
    k_bound: int
    counterexample_word: Word | None
    enumeration_exhausted: bool = True


def is_p_csf_uniform_representation(w: Word, g: SimpleGraph, p: int) -> bool:
    """True when ``w`` is uniform, represents ``g``, and is p-complete
    square-free."""
    return uniformity(w) is not None and represents(w, g) and is_p_complete_square_free(w, p)


def _cor1_word(g: SimpleGraph) -> Word:
    toks = g.sorted_vertices()
    return Word(tuple(toks) + tuple(reversed(toks)))


def _enumerate_arrays(g: SimpleGraph, k: int, bounds: SearchBounds):
    order = g.sorted_vertices()
    adj = adjacency_matrix(g.edges, order)
    words, exhausted, _ = _kernels.enum_representants(
        adj, k, bounds.node_budget, False, 2_000_000
    )
    return words, exhausted, order


def csf_uniform_rep_number(g: SimpleGraph, bounds: SearchBounds | None = None) -> CsfResult:
    """Least p such that some uniform representant of ``g`` (k within bounds)
    is p-complete square-free.

    Complete graphs are exactly the p=1 case and empty graphs the p=2 case;
    for anything else the clique number c forces p >= c+1, so a witness
    reaching c+1 settles the value exactly.  Otherwise the result carries the
    k range that was exhausted.
    """
    bounds = bounds or SearchBounds()
    n = len(g.vertices)
    if n == 0:
        raise ValueError("graph has no vertices")
    if n > bounds.n_max:
        raise BoundsExceededError(f"graph has {n} vertices, bound is {bounds.n_max}")

    if g.is_complete():
        witness = Word(tuple(g.sorted_vertices()))
        return CsfResult(1, witness, 1, bounds.k_max, True, "complete: repeat-free single permutation")
    if g.is_empty_graph():
        witness = _cor1_word(g)
        if not is_p_csf_uniform_representation(witness, g, 2):
            raise ValidationError("palindrome witness failed validation")
        return CsfResult(2, witness, 2, bounds.k_max, True, "empty: palindrome double word, and p=1 needs a complete graph")

    clique = clique_number(g)
    lower = clique + 1
    rep = representation_number(g, bounds)
    if rep.value is None:
        certified = 0
        for k in range(1, bounds.k_max + 1):
            if not rep.exhausted_per_k.get(k, False):
                break
            certified = k
        return CsfResult(None, None, None, certified, False, None)

    best_p: int | None = None
    best_witness: Word | None = None
    best_k: int | None = None
    all_exhausted = all(rep.exhausted_per_k.get(k, False) for k in range(1, rep.value))
    certified = rep.value - 1 if all_exhausted else 0
    for k in range(rep.value, bounds.k_max + 1):
        arrays, exhausted, order = _enumerate_arrays(g, k, bounds)
        if len(arrays):
            csfs = _kernels.csf_index_many(arrays, len(order))
            idx = int(np.argmin(csfs))
            k_best = int(csfs[idx])
            if best_p is None or k_best < best_p:
                best_p = k_best
                best_witness = decode_word(arrays[idx], order)
                best_k = k
        if exhausted and all_exhausted:
            certified = k
        else:
            all_exhausted = False
        if best_p == lower:
            # the clique bound proves no representant at any uniformity does
            # better, so remaining k need not be enumerated
            return CsfResult(best_p, best_witness, best_k, bounds.k_max, True,
                             "clique lower bound met by witness")
    if best_p is None:
        return CsfResult(None, None, None, certified, False, None)
    exact = False
    via = None
    if rep.value > 3 and all(rep.exhausted_per_k.get(k, False) for k in range(1, min(4, rep.value))) and best_p == 4:
        # uniformity above 3 rules out any 3-complete square-free representant
        exact = True
        via = "representation number above 3 forces p >= 4"
    return CsfResult(best_p, best_witness, best_k, certified, exact, via)


def csf_witnesses(w: Word, half_length: int) -> list[SquareWitness]:
    """All canonical witnesses with the given block length, one per realizable
    block alphabet, in canonical subset order."""
    if half_length < 1:
        raise ValueError("half_length must be at least 1")
    if len(w) == 0:
        return []
    arr, order = encode_word(w)
    masks, starts, count = _kernels.witnesses_at_half(arr, len(order), half_length)
    out = []
    for i in range(count):
        subset = decode_mask(int(masks[i]), order)
        sub = restrict(w, subset)
        start = int(starts[i])
        out.append(SquareWitness(subset=subset, start=start,
                                 block=Word(sub.letters[start:start + half_length])))
    return out


def p_square_vertex_report(
    g: SimpleGraph, p: int, bounds: SearchBounds | None = None
) -> list[SquareVertexReport]:
    """Per-vertex report: is the vertex inside some (p-1)-half-length square
    subset of every p-complete square-free uniform representant with k within
    bounds?

    The quantification is bounded by k_max (stamped in each report); p=1 has
    no meaningful witnesses and reports every vertex as False.
    """
    bounds = bounds or SearchBounds()
    if p < 1:
        raise ValueError("p must be at least 1")
    n = len(g.vertices)
    if n == 0:
        raise ValueError("graph has no vertices")
    if n > bounds.n_max:
        raise BoundsExceededError(f"graph has {n} vertices, bound is {bounds.n_max}")
    expected = csf_uniform_rep_number(g, bounds)
    if expected.value is not None and expected.value != p:
        warnings.warn(
            f"p={p} differs from the computed csf uniform representation number "
            f"{expected.value}; the report is still relative to p={p}",
            stacklevel=2,
        )
    order = sorted(g.vertices)
    if p == 1:
        return [SquareVertexReport(v, False, bounds.k_max, None) for v in order]

    covers: list[int] = []
    words_per_cover: list[Word] = []
    exhausted_all = True
    for k in range(1, bounds.k_max + 1):
        arrays, exhausted, _ = _enumerate_arrays(g, k, bounds)
        exhausted_all = exhausted_all and exhausted
        if not len(arrays):
            continue
        csfs = _kernels.csf_index_many(arrays, n)
        keep = [i for i in range(len(arrays)) if int(csfs[i]) <= p]
        if not keep:
            continue
        kept = arrays[np.array(keep, dtype=np.int64)]
        unions = _kernels.square_mask_union(kept, n, p - 1)
        for row, mask in zip(kept, unions):
            covers.append(int(mask))
            words_per_cover.append(decode_word(row, order))

    reports = []
    for vi, v in enumerate(order):
        counterexample = None
        for mask, word in zip(covers, words_per_cover):
            if not (mask >> vi) & 1:
                counterexample = word
                break
        reports.append(SquareVertexReport(
            vertex=v,
            is_p_square_vertex_up_to_k=counterexample is None,
            k_bound=bounds.k_max,
            counterexample_word=counterexample,
            enumeration_exhausted=exhausted_all,
        ))
    return reports


# ---------------------------------------------------------------------------
# constructive expansions
# ---------------------------------------------------------------------------

def k2_expand(g: SimpleGraph, v: Letter, w: Word) -> tuple[SimpleGraph, Word]:
    """Replace vertex ``v`` with a two-vertex clique module and rewrite the
    word accordingly (every occurrence of v becomes the same two-letter block).

    Requires a uniform representant whose csf index is above 2.  The caller
    checks the (p+1)-status of the output; it rises exactly when v lies in
    every p-half-length square subset.
    """
    if v not in g.vertices:
        raise ValueError(f"unknown vertex {v!r}")
    if uniformity(w) is None:
        raise ValueError("expansion needs a uniform word")
    if not represents(w, g):
        raise ValueError("word does not represent the graph")
    if csf_index(w) <= 2:
        raise ValueError("expansion is defined for csf index above 2")
    va, vb = v + "a", v + "b"
    if {va, vb} & g.vertices:
        raise ValueError(f"fresh labels {va!r}/{vb!r} collide with existing vertices")
    module = SimpleGraph.build([va, vb], [(va, vb)])
    expanded = substitute_module(g, v, module)
    new_word = occurrence_based_map(w, lambda x, i: (va, vb) if x == v else (x,))
    if not represents(new_word, expanded):
        raise ValidationError("expanded word does not represent the expanded graph")
    return expanded, new_word


def twin_expand(g: SimpleGraph, x: Letter, w: Word, new_vertex: Letter) -> tuple[SimpleGraph, Word]:
    """Add a non-adjacent twin of ``x``: the new vertex joins exactly x's
    neighbors, and the word maps x's odd occurrences to (x, new) and even
    ones to (new, x).

    Input must be a 3-complete square-free uniform representant; the output
    is validated to be one for the extended graph.
    """
    if x not in g.vertices:
        raise ValueError(f"unknown vertex {x!r}")
    if new_vertex in g.vertices:
        raise ValueError(f"new vertex {new_vertex!r} already present")
    k = uniformity(w)
    if k is None:
        raise ValueError("expansion needs a uniform word")
    if not represents(w, g):
        raise ValueError("word does not represent the graph")
    if not is_p_complete_square_free(w, 3):
        raise ValueError("word is not 3-complete square-free")

    def h(y: Letter, i: int):
        if y != x:
            return (y,)
        return (x, new_vertex) if i % 2 == 1 else (new_vertex, x)

    new_word = occurrence_based_map(w, h)
    extended = SimpleGraph.build(
        g.vertices | {new_vertex},
        list(g.edges) + [(new_vertex, u) for u in g.neighbors(x)],
    )
    if uniformity(new_word) != k:
        raise ValidationError("twin expansion lost uniformity")
    if not represents(new_word, extended):
        raise ValidationError("twin expansion does not represent the extended graph")
    if not is_p_complete_square_free(new_word, 3):
        raise ValidationError("twin expansion lost 3-complete square-freeness")
    return extended, new_word


def apex_removal_check(g: SimpleGraph, v: Letter, w: Word, p: int) -> bool:
    """Remove a universal vertex from a p-csf uniform representant and verify
    the restriction is a (p-1)-csf uniform representant of the smaller graph."""
    if v not in universal_vertices(g):
        raise ValueError(f"vertex {v!r} is not universal")
    if p < 2:
        raise ValueError("p must be at least 2")
    if uniformity(w) is None or not represents(w, g) or not is_p_complete_square_free(w, p):
        raise ValueError("word is not a p-complete square-free uniform representant")
    keep = g.vertices - {v}
    reduced_word = restrict(w, keep)
    reduced_graph = induced_subgraph(g, keep)
    return (
        uniformity(reduced_word) is not None
        and represents(reduced_word, reduced_graph)
        and is_p_complete_square_free(reduced_word, p - 1)
    )
