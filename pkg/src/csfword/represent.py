"""From words to graphs and back: induced graphs, representation checks, and
exhaustive searches for uniform, permutational, square-free and border-free
representants.

Every search is bounded and reports whether its space was fully covered, so
"no word found" is either a proof or an explicitly inconclusive answer.
"""

from __future__ import annotations

import os
from dataclasses import dataclass, field
from itertools import combinations, permutations
from typing import Callable, Sequence

from . import _kernels
from ._encode import adjacency_matrix, decode_word, encode_word
from .errors import BoundsExceededError, ValidationError
from .graphs import SimpleGraph, components, disjoint_union, induced_subgraph
from .words import (
    Letter,
    Word,
    alternates,
    final_permutation,
    find_border,
    find_square_factor,
    initial_permutation,
    restrict,
    uniformity,
)

DEFAULT_NODE_BUDGET = 100_000_000
DEFAULT_MAX_WORDS = 2_000_000


def default_node_budget() -> int:
    """Node budget, overridable through the CSFWORD_BUDGET variable."""
    raw = os.environ.get("CSFWORD_BUDGET", "")
    if raw:
        try:
            return int(raw)
        except ValueError:
            raise ValueError(f"CSFWORD_BUDGET must be an integer, got {raw!r}") from None
    return DEFAULT_NODE_BUDGET


@dataclass(frozen=True)
class SearchBounds:
    """Limits that qualify every search-based answer."""

    k_max: int = 3
    n_max: int = 5
    node_budget: int = field(default_factory=default_node_budget)

    def __post_init__(self):
        if self.k_max < 1 or self.n_max < 1 or self.node_budget < 1:
            raise ValueError("all search bounds must be positive")


@dataclass(frozen=True)
class RepSearchResult:
    """Outcome of a single-k search.  When ``word`` is None, ``exhausted``
    tells whether absence is a proof (full space covered) or merely a budget
    artifact."""

    word: Word | None
    k: int
    exhausted: bool
    nodes: int = 0


@dataclass(frozen=True)
class RepNumberResult:
    value: int | None
    witness: Word | None
    exhausted_per_k: dict[int, bool]


@dataclass(frozen=True)
class EnumerationResult:
    words: tuple[Word, ...]
    exhausted: bool
    nodes: int


def graph_of_word(w: Word) -> SimpleGraph:
    """The graph induced by alternation: vertices are the alphabet, and two
    letters are adjacent exactly when they alternate in the word."""
    letters = w.sorted_alphabet()
    edges = [(x, y) for x, y in combinations(letters, 2) if alternates(w, x, y)]
    return SimpleGraph.build(letters, edges)


def represents(w: Word, g: SimpleGraph) -> bool:
    """True when the word's alphabet is exactly V(g) and its alternation graph
    equals g (labels included)."""
    if w.alphabet != g.vertices:
        return False
    return graph_of_word(w).edges == g.edges


def mismatched_pairs(w: Word, g: SimpleGraph) -> list[tuple[Letter, Letter, bool]]:
    """Diagnostic for failed checks: pairs whose alternation status disagrees
    with adjacency, as (x, y, adjacent_in_graph)."""
    if w.alphabet != g.vertices:
        raise ValueError("word alphabet differs from the vertex set")
    out = []
    for x, y in combinations(sorted(g.vertices), 2):
        if alternates(w, x, y) != g.has_edge(x, y):
            out.append((x, y, g.has_edge(x, y)))
    return out


def candidate_neighbors(w: Word, x: Letter) -> frozenset[Letter]:
    """Letters that occur exactly once in every gap between consecutive
    occurrences of ``x``; any neighbor of ``x`` in the induced graph is among
    them.  With fewer than two occurrences of ``x`` the constraint is vacuous
    and all other letters are returned."""
    positions = [i for i, tok in enumerate(w.letters) if tok == x]
    others = w.alphabet - {x}
    if len(positions) < 2:
        return frozenset(others)
    candidates = set(others)
    for a, b in zip(positions, positions[1:]):
        gap = w.letters[a + 1:b]
        once = {tok for tok in gap if gap.count(tok) == 1}
        candidates &= once
    return frozenset(candidates)


def extend_by_initial_permutation(w: Word) -> Word:
    """Prepend the word of first occurrences; the induced graph is unchanged."""
    return initial_permutation(w) + w


def _encode_graph(g: SimpleGraph):
    order = g.sorted_vertices()
    return adjacency_matrix(g.edges, order), order


def find_k_uniform_word(
    g: SimpleGraph,
    k: int,
    bounds: SearchBounds | None = None,
    first_position_fixed: bool = False,
) -> RepSearchResult:
    """Search for one k-uniform word representing ``g`` by backtracking over
    positions with alternation-consistency pruning.

    ``first_position_fixed`` restricts position 0 to the smallest vertex, a
    rotation-based symmetry cut that is only safe for existence queries; it
    is off by default.
    """
    bounds = bounds or SearchBounds()
    if k < 1:
        raise ValueError("k must be at least 1")
    if not g.vertices:
        raise ValueError("graph has no vertices")
    if len(g.vertices) > bounds.n_max:
        raise BoundsExceededError(f"graph has {len(g.vertices)} vertices, bound is {bounds.n_max}")
    adj, order = _encode_graph(g)
    words, exhausted, nodes = _kernels.enum_representants(
        adj, k, bounds.node_budget, first_position_fixed, 1
    )
    if len(words) == 0:
        return RepSearchResult(None, k, exhausted, nodes)
    word = decode_word(words[0], order)
    if not represents(word, g):
        raise ValidationError(f"search produced a non-representing word {word!r}")
    return RepSearchResult(word, k, exhausted, nodes)


def representation_number(g: SimpleGraph, bounds: SearchBounds | None = None) -> RepNumberResult:
    """Least k within bounds admitting a k-uniform representant, with the
    lexicographically first witness."""
    bounds = bounds or SearchBounds()
    flags: dict[int, bool] = {}
    for k in range(1, bounds.k_max + 1):
        res = find_k_uniform_word(g, k, bounds)
        flags[k] = res.exhausted
        if res.word is not None:
            return RepNumberResult(k, res.word, flags)
    return RepNumberResult(None, None, flags)


def enumerate_k_uniform_words(
    g: SimpleGraph,
    k: int,
    bounds: SearchBounds | None = None,
    visitor: Callable[[Word], None] | None = None,
    max_words: int = DEFAULT_MAX_WORDS,
) -> EnumerationResult:
    """Visit every k-uniform word representing ``g`` exactly once, in
    lexicographic order of sorted vertex tokens.  ``exhausted`` is False when
    the node budget or ``max_words`` cut the enumeration short."""
    bounds = bounds or SearchBounds()
    if not g.vertices:
        raise ValueError("graph has no vertices")
    if len(g.vertices) > bounds.n_max:
        raise BoundsExceededError(f"graph has {len(g.vertices)} vertices, bound is {bounds.n_max}")
    adj, order = _encode_graph(g)
    arrays, exhausted, nodes = _kernels.enum_representants(
        adj, k, bounds.node_budget, False, max_words
    )
    words = tuple(decode_word(row, order) for row in arrays)
    if visitor is not None:
        for w in words:
            visitor(w)
    return EnumerationResult(words, exhausted, nodes)


# ---------------------------------------------------------------------------
# permutational representations
# ---------------------------------------------------------------------------

def permutational_representation(
    g: SimpleGraph, k_max: int = 4, n_max: int = 8
) -> list[Word] | None:
    """Least-k concatenation of k vertex permutations representing ``g``.

    In such a word a pair alternates exactly when its relative order agrees
    across all k permutations, so the search works over per-permutation
    order bitmasks.  Returns the permutations, or None if no k <= k_max works.
    """
    n = len(g.vertices)
    if n == 0:
        raise ValueError("graph has no vertices")
    if n > n_max:
        raise BoundsExceededError(f"permutational search supports up to {n_max} vertices")
    order = g.sorted_vertices()
    pairs = list(combinations(range(n), 2))
    e_mask = 0
    for b, (i, j) in enumerate(pairs):
        if g.has_edge(order[i], order[j]):
            e_mask |= 1 << b
    non_e = ((1 << len(pairs)) - 1) ^ e_mask

    perms = list(permutations(range(n)))
    masks = []
    for perm in perms:
        pos = {v: i for i, v in enumerate(perm)}
        m = 0
        for b, (i, j) in enumerate(pairs):
            if pos[i] < pos[j]:
                m |= 1 << b
        masks.append(m)

    def to_words(chosen: list[int]) -> list[Word]:
        return [Word(tuple(order[v] for v in perms[i])) for i in chosen]

    for k in range(1, k_max + 1):
        for first in range(len(perms)):
            base = masks[first]
            compat = [i for i in range(len(perms)) if (masks[i] ^ base) & e_mask == 0]
            reachable = 0
            for i in compat:
                reachable |= masks[i] ^ base
            if reachable & non_e != non_e:
                continue

            def extend(chosen: list[int], covered: int, start: int) -> list[int] | None:
                if covered & non_e == non_e:
                    return chosen
                if len(chosen) == k:
                    return None
                remaining = 0
                for i in compat[start:]:
                    remaining |= masks[i] ^ base
                if (covered | remaining) & non_e != non_e:
                    return None
                for pos_i in range(start, len(compat)):
                    i = compat[pos_i]
                    got = extend(chosen + [i], covered | (masks[i] ^ base), pos_i + 1)
                    if got is not None:
                        return got
                return None

            solution = extend([first], 0, 0)
            if solution is not None and len(solution) <= k:
                words = to_words(solution)
                combined = Word(tuple(tok for w in words for tok in w.letters))
                if not represents(combined, g):
                    raise ValidationError("permutation search produced an invalid word")
                return words
    return None


# ---------------------------------------------------------------------------
# square-free and border-free representations
# ---------------------------------------------------------------------------

def tm3_join(component_words: Sequence[Word]) -> Word:
    """Join square-free words of disjoint components into one square-free word
    for the disjoint union.

    With words w1..wn, last letter l of w1, and final permutations s(wi), the
    join is  w1 minus l, w2..wn, l, s(wn)..s(w2), s(w1) minus l, s(w2)..s(wn), l.
    The output is re-validated (represents the union, square-free) before it
    is returned.
    """
    if not component_words:
        raise ValueError("need at least one component word")
    for w in component_words:
        if len(w) == 0:
            raise ValueError("component words must be non-empty")
        if find_square_factor(w) is not None:
            raise ValueError(f"component word {w!r} is not square-free")
    if len(component_words) == 1:
        return component_words[0]
    seen: set[Letter] = set()
    for w in component_words:
        if seen & w.alphabet:
            raise ValueError("component alphabets must be pairwise disjoint")
        seen |= w.alphabet
    w1 = component_words[0]
    rest = list(component_words[1:])
    if not graph_of_word(w1).edges:
        raise ValueError("the first component's graph needs at least one edge")
    last = w1.letters[-1]
    sigma1_minus = Word(tuple(tok for tok in final_permutation(w1).letters if tok != last))
    parts: list[Word] = [Word(w1.letters[:-1])]
    parts.extend(rest)
    parts.append(Word((last,)))
    parts.extend(final_permutation(w) for w in reversed(rest))
    parts.append(sigma1_minus)
    parts.extend(final_permutation(w) for w in rest)
    parts.append(Word((last,)))
    joined = Word(tuple(tok for p in parts for tok in p.letters))

    expected = disjoint_union([graph_of_word(w) for w in component_words])
    if not represents(joined, expected):
        raise ValidationError(f"join {joined!r} does not represent the disjoint union")
    if find_square_factor(joined) is not None:
        raise ValidationError(f"join {joined!r} contains a square")
    return joined


def _connected_minimal_witness(g: SimpleGraph, bounds: SearchBounds) -> Word:
    rep = representation_number(g, bounds)
    if rep.value is None:
        raise BoundsExceededError(
            f"no uniform representant found with k <= {bounds.k_max} "
            f"(exhausted: {rep.exhausted_per_k})"
        )
    return rep.witness


def _ordered_component_list(g: SimpleGraph) -> list[SimpleGraph]:
    comps = components(g)
    edged = [c for c in comps if c.edges]
    if not edged:
        if len(g.vertices) == 2:
            raise ValueError("the empty graph on two vertices has no square-free representation")
        raise ValueError(
            "every component is edgeless; the join construction needs a component with an edge"
        )
    first = min(edged, key=lambda c: min(c.vertices))
    rest = sorted((c for c in comps if c is not first), key=lambda c: min(c.vertices))
    return [first] + rest


def square_free_representation(g: SimpleGraph, bounds: SearchBounds | None = None) -> Word:
    """A square-free word representing ``g``.

    Connected graphs use the minimal-k uniform witness, which is always
    square-free; disconnected graphs join per-component witnesses, so some
    component must have an edge (in particular the two-vertex empty graph is
    rejected).
    """
    bounds = bounds or SearchBounds()
    if not g.vertices:
        raise ValueError("graph has no vertices")
    comps = components(g)
    if len(comps) == 1:
        witness = _connected_minimal_witness(g, bounds)
        if find_square_factor(witness) is not None:
            raise ValidationError(f"minimal uniform witness {witness!r} contains a square")
        return witness
    ordered = _ordered_component_list(g)
    words = [square_free_representation(c, bounds) for c in ordered]
    return tm3_join(words)


def border_free_representation(g: SimpleGraph, bounds: SearchBounds | None = None) -> Word:
    """A border-free word representing ``g``.

    The two-vertex empty graph gets its classic representant (1122 over its
    tokens).  For connected graphs the minimal-k uniform witness is already
    border-free: a border would rotate into a square at the same uniformity.
    Disconnected graphs take the square-free join, retrying with alternative
    component witnesses in the rare case the join is bordered.
    """
    bounds = bounds or SearchBounds()
    if not g.vertices:
        raise ValueError("graph has no vertices")
    if len(g.vertices) == 2 and not g.edges:
        a, b = g.sorted_vertices()
        return Word((a, a, b, b))
    comps = components(g)
    if len(comps) == 1:
        witness = _connected_minimal_witness(g, bounds)
        if find_border(witness) is not None:
            raise ValidationError(f"minimal uniform witness {witness!r} is bordered")
        return witness
    joined = square_free_representation(g, bounds)
    if find_border(joined) is None:
        return joined
    # Joins almost never carry a border (first and last letters always come
    # from different alternation classes); when one does, swap in alternative
    # per-component witnesses until the border disappears.
    ordered = _ordered_component_list(g)
    rep_ks = [representation_number(c, bounds).value for c in ordered]
    alternatives: list[tuple[Word, ...]] = []
    for comp, k in zip(ordered, rep_ks):
        enum = enumerate_k_uniform_words(comp, k, bounds, max_words=64)
        alternatives.append(enum.words)
    def search(i: int, chosen: list[Word]) -> Word | None:
        if i == len(ordered):
            candidate = tm3_join(chosen)
            return candidate if find_border(candidate) is None else None
        for w in alternatives[i]:
            if find_square_factor(w) is not None:
                continue
            got = search(i + 1, chosen + [w])
            if got is not None:
                return got
        return None
    result = search(0, [])
    if result is None:
        raise BoundsExceededError("no border-free join found within the retry budget")
    return result
