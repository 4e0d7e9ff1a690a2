"""Labeled simple graphs with generators, clique queries, module substitution,
and small-scale canonical forms.

Vertices are the same tokens words use, so a graph and its representing words
share one namespace.  All query routines are explicit brute force with
configured bounds; everything here is desk scale.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from functools import cached_property
from itertools import combinations, permutations

from .errors import BoundsExceededError, ParseError
from .words import Letter, _check_token

CLIQUE_BRUTE_FORCE_MAX = 16
CANONICAL_FORM_MAX = 8


def _norm_edge(u: Letter, v: Letter) -> tuple[Letter, Letter]:
    if u == v:
        raise ValueError(f"self-loop on {u!r} is not allowed")
    return (u, v) if u < v else (v, u)


@dataclass(frozen=True)
class SimpleGraph:
    """An undirected simple graph over letter-labeled vertices."""

    vertices: frozenset[Letter]
    edges: frozenset[tuple[Letter, Letter]]

    def __post_init__(self):
        for v in self.vertices:
            _check_token(v)
        for u, v in self.edges:
            if u not in self.vertices or v not in self.vertices:
                raise ValueError(f"edge ({u!r}, {v!r}) uses an unknown vertex")
            if not u < v:
                raise ValueError(f"edge ({u!r}, {v!r}) is not normalized")

    @classmethod
    def build(cls, vertices, edges=()) -> "SimpleGraph":
        vset = frozenset(vertices)
        eset = frozenset(_norm_edge(u, v) for u, v in edges)
        return cls(vset, eset)

    # -- basic queries -------------------------------------------------------

    def __len__(self) -> int:
        return len(self.vertices)

    @property
    def edge_count(self) -> int:
        return len(self.edges)

    def has_edge(self, u: Letter, v: Letter) -> bool:
        return _norm_edge(u, v) in self.edges

    @cached_property
    def _adjacency(self) -> dict[Letter, frozenset[Letter]]:
        nbrs: dict[Letter, set[Letter]] = {v: set() for v in self.vertices}
        for u, v in self.edges:
            nbrs[u].add(v)
            nbrs[v].add(u)
        return {v: frozenset(s) for v, s in nbrs.items()}

    def neighbors(self, v: Letter) -> frozenset[Letter]:
        if v not in self.vertices:
            raise ValueError(f"unknown vertex {v!r}")
        return self._adjacency[v]

    def degree(self, v: Letter) -> int:
        return len(self.neighbors(v))

    def sorted_vertices(self) -> list[Letter]:
        return sorted(self.vertices)

    def is_complete(self) -> bool:
        n = len(self.vertices)
        return len(self.edges) == n * (n - 1) // 2

    def is_empty_graph(self) -> bool:
        return not self.edges

    def relabel(self, mapping: dict[Letter, Letter]) -> "SimpleGraph":
        return SimpleGraph.build(
            (mapping[v] for v in self.vertices),
            ((mapping[u], mapping[v]) for u, v in self.edges),
        )

    # -- text and JSON formats ----------------------------------------------

    def to_text(self) -> str:
        lines = ["vertices: " + " ".join(self.sorted_vertices())]
        for u, v in sorted(self.edges):
            lines.append(f"edge: {u} {v}")
        return "\n".join(lines) + "\n"

    def to_json_obj(self) -> dict:
        return {
            "vertices": self.sorted_vertices(),
            "edges": [[u, v] for u, v in sorted(self.edges)],
        }

    @classmethod
    def parse(cls, text: str) -> "SimpleGraph":
        """Parse either the line format ("vertices: ...", "edge: u v" lines)
        or a JSON object {"vertices": [...], "edges": [[u, v], ...]}."""
        stripped = text.lstrip()
        if stripped.startswith("{"):
            try:
                obj = json.loads(text)
            except json.JSONDecodeError as exc:
                raise ParseError(f"bad graph JSON: {exc}") from exc
            if not isinstance(obj, dict) or "vertices" not in obj:
                raise ParseError("graph JSON must be an object with a 'vertices' key")
            return cls.build(obj["vertices"], obj.get("edges", ()))
        vertices: list[Letter] | None = None
        edges: list[tuple[Letter, Letter]] = []
        for lineno, raw in enumerate(text.splitlines(), start=1):
            line = raw.strip()
            if not line or line.startswith("#"):
                continue
            if line.startswith("vertices:"):
                vertices = line[len("vertices:"):].split()
            elif line.startswith("edge:"):
                parts = line[len("edge:"):].split()
                if len(parts) != 2:
                    raise ParseError(f"edge line needs two vertices: {raw!r}", position=lineno)
                edges.append((parts[0], parts[1]))
            else:
                raise ParseError(f"unrecognized graph line: {raw!r}", position=lineno)
        if vertices is None:
            raise ParseError("graph text has no 'vertices:' line")
        g = cls.build(vertices, edges)
        unknown = {x for e in edges for x in e} - g.vertices
        if unknown:
            raise ParseError(f"edges mention unknown vertices: {sorted(unknown)}")
        return g


# ---------------------------------------------------------------------------
# generators
# ---------------------------------------------------------------------------

def _labels(n: int) -> list[Letter]:
    return [str(i) for i in range(1, n + 1)]


def complete(n: int) -> SimpleGraph:
    labels = _labels(n)
    return SimpleGraph.build(labels, combinations(labels, 2))


def empty(n: int) -> SimpleGraph:
    return SimpleGraph.build(_labels(n))


def path(n: int) -> SimpleGraph:
    labels = _labels(n)
    return SimpleGraph.build(labels, zip(labels, labels[1:]))


def cycle(n: int) -> SimpleGraph:
    labels = _labels(n)
    if n <= 2:
        # degenerate: cycle(1) is a vertex, cycle(2) a single edge
        return SimpleGraph.build(labels, zip(labels, labels[1:]))
    return SimpleGraph.build(labels, list(zip(labels, labels[1:])) + [(labels[-1], labels[0])])


def crown(n: int) -> SimpleGraph:
    """Complete bipartite graph on parts 1..n and 1'..n' minus the perfect
    matching i to i'."""
    part_a = _labels(n)
    part_b = [x + "'" for x in part_a]
    edges = [(a, b) for a in part_a for b in part_b if a + "'" != b]
    return SimpleGraph.build(part_a + part_b, edges)


def from_edge_list(edges, isolated=()) -> SimpleGraph:
    vertices = {x for e in edges for x in e} | set(isolated)
    return SimpleGraph.build(vertices, edges)


def disjoint_union(graphs) -> SimpleGraph:
    vertices: list[Letter] = []
    edges: list[tuple[Letter, Letter]] = []
    for g in graphs:
        overlap = set(vertices) & g.vertices
        if overlap:
            raise ValueError(f"vertex labels shared between components: {sorted(overlap)}")
        vertices.extend(g.vertices)
        edges.extend(g.edges)
    return SimpleGraph.build(vertices, edges)


# ---------------------------------------------------------------------------
# structure queries
# ---------------------------------------------------------------------------

def induced_subgraph(g: SimpleGraph, keep) -> SimpleGraph:
    keep = frozenset(keep)
    unknown = keep - g.vertices
    if unknown:
        raise ValueError(f"unknown vertices in induced subgraph: {sorted(unknown)}")
    return SimpleGraph.build(keep, (e for e in g.edges if e[0] in keep and e[1] in keep))


def components(g: SimpleGraph) -> list[SimpleGraph]:
    """Connected components, ordered by their smallest vertex token."""
    seen: set[Letter] = set()
    out = []
    for start in g.sorted_vertices():
        if start in seen:
            continue
        stack = [start]
        comp = {start}
        while stack:
            v = stack.pop()
            for u in g.neighbors(v):
                if u not in comp:
                    comp.add(u)
                    stack.append(u)
        seen |= comp
        out.append(induced_subgraph(g, comp))
    return out


def is_connected(g: SimpleGraph) -> bool:
    return len(components(g)) <= 1


def clique_number(g: SimpleGraph, max_vertices: int = CLIQUE_BRUTE_FORCE_MAX) -> int:
    """Size of a maximum clique, by brute force over vertex subsets."""
    n = len(g.vertices)
    if n > max_vertices:
        raise BoundsExceededError(
            f"clique brute force supports up to {max_vertices} vertices, got {n}"
        )
    if n == 0:
        return 0
    order = g.sorted_vertices()
    index = {v: i for i, v in enumerate(order)}
    nbr = [0] * n
    for u, v in g.edges:
        nbr[index[u]] |= 1 << index[v]
        nbr[index[v]] |= 1 << index[u]
    best = 1
    for mask in range(1, 1 << n):
        if mask.bit_count() <= best:
            continue
        ok = True
        rest = mask
        while rest:
            v = (rest & -rest).bit_length() - 1
            rest &= rest - 1
            need = mask & ~(1 << v)
            if nbr[v] & need != need:
                ok = False
                break
        if ok:
            best = mask.bit_count()
    return best


def has_clique(g: SimpleGraph, p: int) -> bool:
    if p <= 1:
        return p <= len(g.vertices)
    return clique_number(g) >= p


def universal_vertices(g: SimpleGraph) -> frozenset[Letter]:
    """Vertices adjacent to every other vertex."""
    n = len(g.vertices)
    return frozenset(v for v in g.vertices if g.degree(v) == n - 1)


def substitute_module(g: SimpleGraph, v: Letter, module: SimpleGraph) -> SimpleGraph:
    """Replace vertex ``v`` with the given graph: module vertices keep their
    own edges and each one inherits all of v's neighbors."""
    if v not in g.vertices:
        raise ValueError(f"unknown vertex {v!r}")
    collision = module.vertices & (g.vertices - {v})
    if collision:
        raise ValueError(f"module labels collide with host graph: {sorted(collision)}")
    outside = g.vertices - {v}
    nbrs = g.neighbors(v)
    edges = [e for e in g.edges if v not in e]
    edges.extend(module.edges)
    edges.extend((u, m) for u in nbrs for m in module.vertices)
    return SimpleGraph.build(outside | module.vertices, edges)


# ---------------------------------------------------------------------------
# isomorphism at desk scale
# ---------------------------------------------------------------------------

def canonical_form(g: SimpleGraph, max_vertices: int = CANONICAL_FORM_MAX) -> str:
    """A relabeling-invariant key: the minimum adjacency bit string over all
    vertex orderings listing degrees in non-increasing order.

    Keys are equal exactly for isomorphic graphs (within the same order n).
    """
    n = len(g.vertices)
    if n > max_vertices:
        raise BoundsExceededError(
            f"canonical form brute force supports up to {max_vertices} vertices, got {n}"
        )
    if n == 0:
        return "0|0"
    order = g.sorted_vertices()
    index = {v: i for i, v in enumerate(order)}
    adj = [[False] * n for _ in range(n)]
    for u, v in g.edges:
        adj[index[u]][index[v]] = True
        adj[index[v]][index[u]] = True
    degrees = [len(g.neighbors(v)) for v in order]
    # group vertex ids by degree, highest first; candidate orderings permute
    # within groups only
    by_degree: dict[int, list[int]] = {}
    for i, d in enumerate(degrees):
        by_degree.setdefault(d, []).append(i)
    groups = [by_degree[d] for d in sorted(by_degree, reverse=True)]
    best: int | None = None
    pairs = list(combinations(range(n), 2))

    def rec(chosen: list[int], gi: int):
        nonlocal best
        if gi == len(groups):
            bits = 0
            for b, (i, j) in enumerate(pairs):
                if adj[chosen[i]][chosen[j]]:
                    bits |= 1 << b
            if best is None or bits < best:
                best = bits
            return
        for perm in permutations(groups[gi]):
            rec(chosen + list(perm), gi + 1)

    rec([], 0)
    assert best is not None
    return f"{n}|{best:x}"


def are_isomorphic(g: SimpleGraph, h: SimpleGraph) -> bool:
    if len(g.vertices) != len(h.vertices) or len(g.edges) != len(h.edges):
        return False
    if sorted(g.degree(v) for v in g.vertices) != sorted(h.degree(v) for v in h.vertices):
        return False
    return canonical_form(g) == canonical_form(h)


def graph_classes(n: int) -> list[SimpleGraph]:
    """One representative per isomorphism class of graphs on n vertices,
    labeled 1..n, in canonical key order.

    Enumerates all labeled graphs and removes each new graph's full
    relabeling orbit, so every class is touched exactly once.
    """
    if n < 1:
        raise ValueError("need n >= 1")
    labels = _labels(n)
    pairs = list(combinations(range(n), 2))
    nbits = len(pairs)
    # pair index permutation induced by each vertex permutation
    pair_pos = {p: b for b, p in enumerate(pairs)}
    perm_maps = []
    for perm in permutations(range(n)):
        perm_maps.append([pair_pos[tuple(sorted((perm[i], perm[j])))] for i, j in pairs])
    seen = bytearray(1 << nbits)
    reps: list[SimpleGraph] = []
    for mask in range(1 << nbits):
        if seen[mask]:
            continue
        for pm in perm_maps:
            img = 0
            for b in range(nbits):
                if (mask >> b) & 1:
                    img |= 1 << pm[b]
            seen[img] = 1
        edges = [(labels[i], labels[j]) for b, (i, j) in enumerate(pairs) if (mask >> b) & 1]
        reps.append(SimpleGraph.build(labels, edges))
    reps.sort(key=lambda g: (len(g.edges), canonical_form(g)))
    return reps
