"""Bridges between token-level values and the integer kernels."""

from __future__ import annotations

import numpy as np

from .words import Letter, Word


def letter_order(tokens) -> list[Letter]:
    return sorted(set(tokens))


def encode_word(w: Word, order: list[Letter] | None = None) -> tuple[np.ndarray, list[Letter]]:
    """Word as an int64 id array; ids follow sorted token order by default."""
    if order is None:
        order = letter_order(w.letters)
    index = {tok: i for i, tok in enumerate(order)}
    return np.array([index[tok] for tok in w.letters], dtype=np.int64), order


def decode_word(arr: np.ndarray, order: list[Letter]) -> Word:
    return Word(tuple(order[int(i)] for i in arr))


def decode_mask(mask: int, order: list[Letter]) -> frozenset[Letter]:
    return frozenset(order[i] for i in range(len(order)) if (mask >> i) & 1)


def adjacency_matrix(edges, order: list[Letter]) -> np.ndarray:
    index = {tok: i for i, tok in enumerate(order)}
    n = len(order)
    adj = np.zeros((n, n), dtype=np.bool_)
    for u, v in edges:
        adj[index[u], index[v]] = True
        adj[index[v], index[u]] = True
    return adj
