"""Hot integer kernels over encoded words and graphs.

Words are int64 arrays of letter ids (0..n-1, ids in sorted token order) and
graphs are boolean adjacency matrices over the same ids.  Every kernel is a
plain Python function; when numba is importable (and CSFWORD_NO_NUMBA is not
set) they are JIT-compiled, otherwise the same source runs interpreted as the
pure fallback path.  ``benchmarks/bench_kernels.py`` compares the two paths.
"""

from __future__ import annotations

import os

import numpy as np

_FORCE_PURE = os.environ.get("CSFWORD_NO_NUMBA", "") not in ("", "0")

if _FORCE_PURE:
    NUMBA_ENABLED = False
else:
    try:
        from numba import njit as _njit

        NUMBA_ENABLED = True
    except ImportError:  # pragma: no cover - numba is a declared dependency
        NUMBA_ENABLED = False

BACKEND = "numba" if NUMBA_ENABLED else "python"

if NUMBA_ENABLED:
    def _kernel(fn):
        return _njit(cache=True)(fn)
else:
    def _kernel(fn):
        return fn


# ---------------------------------------------------------------------------
# squares and borders on a single encoded word
# ---------------------------------------------------------------------------

@_kernel
def first_square(arr, m, min_half):
    """First factor square with half length >= min_half, scanning start
    ascending then half ascending.  Returns (start, half) or (-1, -1)."""
    for start in range(m - 2 * min_half + 1):
        top = (m - start) // 2
        for half in range(min_half, top + 1):
            eq = True
            for i in range(half):
                if arr[start + i] != arr[start + half + i]:
                    eq = False
                    break
            if eq:
                return start, half
    return -1, -1


@_kernel
def longest_square_above(arr, m, lower):
    """Largest square half length strictly above ``lower``, else 0.  Ties on
    half length resolve to the smallest start (scan order)."""
    for half in range(m // 2, lower, -1):
        for start in range(m - 2 * half + 1):
            eq = True
            for i in range(half):
                if arr[start + i] != arr[start + half + i]:
                    eq = False
                    break
            if eq:
                return half
    return 0


@_kernel
def has_square_at_half(arr, m, half):
    for start in range(m - 2 * half + 1):
        eq = True
        for i in range(half):
            if arr[start + i] != arr[start + half + i]:
                eq = False
                break
        if eq:
            return True
    return False


@_kernel
def shortest_border(arr, m):
    """Length of the shortest non-empty border u with arr = u v u, else 0."""
    for length in range(1, m // 2 + 1):
        eq = True
        for i in range(length):
            if arr[i] != arr[m - length + i]:
                eq = False
                break
        if eq:
            return length
    return 0


# ---------------------------------------------------------------------------
# complete squares in restrictions
# ---------------------------------------------------------------------------

@_kernel
def csf_max_half(word, n):
    """Largest square half length over all subset restrictions of the word.

    Only subsets of letters occurring at least twice are scanned: a square
    always survives restriction to the letters of its own block, and those
    letters all repeat.
    """
    m = word.shape[0]
    counts = np.zeros(n, np.int64)
    for i in range(m):
        counts[word[i]] += 1
    elig = np.empty(n, np.int64)
    e = 0
    for letter in range(n):
        if counts[letter] >= 2:
            elig[e] = letter
            e += 1
    best = 0
    buf = np.empty(m, np.int64)
    for sub in range(1, 1 << e):
        length = 0
        for j in range(e):
            if (sub >> j) & 1:
                length += counts[elig[j]]
        if length // 2 <= best:
            continue
        keep = 0
        for j in range(e):
            if (sub >> j) & 1:
                keep |= 1 << elig[j]
        rl = 0
        for i in range(m):
            if (keep >> word[i]) & 1:
                buf[rl] = word[i]
                rl += 1
        h = longest_square_above(buf, rl, best)
        if h > best:
            best = h
    return best


@_kernel
def csf_index_arr(word, n):
    return 1 + csf_max_half(word, n)


@_kernel
def find_p_square(word, n, p):
    """Canonical p-complete-square witness: subsets of repeated letters in
    (cardinality, lexicographic) order, first (start, half) square inside.

    Returns (found, subset_mask, start, half).
    """
    m = word.shape[0]
    counts = np.zeros(n, np.int64)
    for i in range(m):
        counts[word[i]] += 1
    elig = np.empty(n, np.int64)
    e = 0
    for letter in range(n):
        if counts[letter] >= 2:
            elig[e] = letter
            e += 1
    buf = np.empty(m, np.int64)
    idx = np.empty(n, np.int64)
    for size in range(1, e + 1):
        for i in range(size):
            idx[i] = i
        while True:
            keep = 0
            length = 0
            for j in range(size):
                keep |= 1 << elig[idx[j]]
                length += counts[elig[idx[j]]]
            if length >= 2 * p:
                rl = 0
                for i in range(m):
                    if (keep >> word[i]) & 1:
                        buf[rl] = word[i]
                        rl += 1
                start, half = first_square(buf, rl, p)
                if start >= 0:
                    return True, keep, start, half
            j = size - 1
            while j >= 0 and idx[j] == e - size + j:
                j -= 1
            if j < 0:
                break
            idx[j] += 1
            for t in range(j + 1, size):
                idx[t] = idx[t - 1] + 1
    return False, 0, -1, -1


@_kernel
def witnesses_at_half(word, n, half):
    """One canonical witness per realizable block alphabet: for each subset T
    (canonical order) the first square of exactly ``half`` whose block uses
    every letter of T.  Returns (masks, starts, count)."""
    m = word.shape[0]
    counts = np.zeros(n, np.int64)
    for i in range(m):
        counts[word[i]] += 1
    elig = np.empty(n, np.int64)
    e = 0
    for letter in range(n):
        if counts[letter] >= 2:
            elig[e] = letter
            e += 1
    cap = 1 << e
    masks = np.empty(cap, np.int64)
    starts = np.empty(cap, np.int64)
    found = 0
    buf = np.empty(m, np.int64)
    idx = np.empty(n, np.int64)
    for size in range(1, e + 1):
        for i in range(size):
            idx[i] = i
        while True:
            keep = 0
            length = 0
            for j in range(size):
                keep |= 1 << elig[idx[j]]
                length += counts[elig[idx[j]]]
            if length >= 2 * half:
                rl = 0
                for i in range(m):
                    if (keep >> word[i]) & 1:
                        buf[rl] = word[i]
                        rl += 1
                for start in range(rl - 2 * half + 1):
                    eq = True
                    for i in range(half):
                        if buf[start + i] != buf[start + half + i]:
                            eq = False
                            break
                    if not eq:
                        continue
                    block_letters = 0
                    for i in range(start, start + half):
                        block_letters |= 1 << buf[i]
                    if block_letters == keep:
                        masks[found] = keep
                        starts[found] = start
                        found += 1
                        break
            j = size - 1
            while j >= 0 and idx[j] == e - size + j:
                j -= 1
            if j < 0:
                break
            idx[j] += 1
            for t in range(j + 1, size):
                idx[t] = idx[t - 1] + 1
    return masks[:found], starts[:found], found


@_kernel
def square_subsets_avoiding(words, n, half, avoid):
    """Scan many words for a subset not containing ``avoid`` whose restriction
    has a square of half length exactly ``half``.  Returns the first violating
    (word index, subset mask), or (-1, -1)."""
    cnt = words.shape[0]
    L = words.shape[1]
    buf = np.empty(L, np.int64)
    for wi in range(cnt):
        for mask in range(1, 1 << n):
            if (mask >> avoid) & 1:
                continue
            rl = 0
            for i in range(L):
                if (mask >> words[wi, i]) & 1:
                    buf[rl] = words[wi, i]
                    rl += 1
            if rl < 2 * half:
                continue
            if has_square_at_half(buf, rl, half):
                return wi, mask
    return -1, -1


@_kernel
def csf_index_many(words, n):
    cnt = words.shape[0]
    out = np.empty(cnt, np.int64)
    for wi in range(cnt):
        out[wi] = 1 + csf_max_half(words[wi, :], n)
    return out


@_kernel
def square_mask_union(words, n, half):
    """Per word, the union (bitwise or) of all subset masks whose restriction
    contains a square of half length exactly ``half``.  A letter id sits in
    the union exactly when some qualifying subset contains it."""
    cnt = words.shape[0]
    L = words.shape[1]
    buf = np.empty(L, np.int64)
    out = np.zeros(cnt, np.int64)
    for wi in range(cnt):
        union = 0
        for mask in range(1, 1 << n):
            if mask & union == mask:
                continue
            rl = 0
            for i in range(L):
                if (mask >> words[wi, i]) & 1:
                    buf[rl] = words[wi, i]
                    rl += 1
            if rl < 2 * half:
                continue
            if has_square_at_half(buf, rl, half):
                union |= mask
        out[wi] = union
    return out


# ---------------------------------------------------------------------------
# words and graphs
# ---------------------------------------------------------------------------

@_kernel
def graph_adj_of_word(word, n):
    """Adjacency by alternation: ids x, y are adjacent when the word
    restricted to them never repeats a letter consecutively."""
    m = word.shape[0]
    last = np.full((n, n), -1, np.int64)
    broken = np.zeros((n, n), np.bool_)
    present = np.zeros(n, np.bool_)
    for i in range(m):
        x = word[i]
        present[x] = True
        for y in range(n):
            if y == x:
                continue
            if last[x, y] == x:
                broken[x, y] = True
                broken[y, x] = True
            last[x, y] = x
            last[y, x] = x
    adj = np.zeros((n, n), np.bool_)
    for x in range(n):
        for y in range(n):
            if x != y and present[x] and present[y] and not broken[x, y]:
                adj[x, y] = True
    return adj


@_kernel
def word_represents(word, n, adj):
    """True when every id 0..n-1 occurs and the alternation graph equals adj."""
    m = word.shape[0]
    last = np.full((n, n), -1, np.int64)
    broken = np.zeros((n, n), np.bool_)
    present = np.zeros(n, np.bool_)
    for i in range(m):
        x = word[i]
        present[x] = True
        for y in range(n):
            if y == x:
                continue
            if last[x, y] == x:
                broken[x, y] = True
                broken[y, x] = True
            last[x, y] = x
            last[y, x] = x
    for x in range(n):
        if not present[x]:
            return False
    for x in range(n):
        for y in range(x + 1, n):
            if adj[x, y] != (not broken[x, y]):
                return False
    return True


@_kernel
def clique_number_adj(adj):
    n = adj.shape[0]
    if n == 0:
        return 0
    nbr = np.zeros(n, np.int64)
    for x in range(n):
        for y in range(n):
            if adj[x, y]:
                nbr[x] |= 1 << y
    best = 1
    for mask in range(1, 1 << n):
        ok = True
        size = 0
        for v in range(n):
            if (mask >> v) & 1:
                size += 1
                need = mask & ~(1 << v)
                if (nbr[v] & need) != need:
                    ok = False
                    break
        if ok and size > best:
            best = size
    return best


# ---------------------------------------------------------------------------
# backtracking search for k-uniform representants
# ---------------------------------------------------------------------------

@_kernel
def enum_representants(adj, k, node_budget, fix_first, stop_after):
    """All k-uniform words (letter ids, lexicographic order) whose alternation
    graph is exactly ``adj``.

    Letters are placed left to right.  An adjacent pair prunes as soon as one
    of its letters repeats with no partner in between; a non-adjacent pair
    prunes at the moment both letters reach k occurrences while still strictly
    alternating.  Together the two rules admit exactly the representants.

    Returns (words, exhausted, nodes); exhausted is False when the node budget
    ran out or ``stop_after`` words were collected before the tree was done.
    """
    n = adj.shape[0]
    L = k * n
    word = np.zeros(L, np.int64)
    counts = np.zeros(n, np.int64)
    pair_last = np.full((n, n), -1, np.int64)
    pair_broken = np.zeros((n, n), np.bool_)
    saved_last = np.zeros((L, n), np.int64)
    saved_broken = np.zeros((L, n), np.bool_)
    cand = np.zeros(L, np.int64)
    cap = 64
    out = np.empty((cap, L), np.int64)
    count = 0
    nodes = 0
    exhausted = True
    depth = 0
    cand[0] = 0
    while depth >= 0:
        x = cand[depth]
        if x >= n or (fix_first and depth == 0 and x >= 1):
            depth -= 1
            if depth >= 0:
                px = word[depth]
                counts[px] -= 1
                for y in range(n):
                    if y != px:
                        pair_last[px, y] = saved_last[depth, y]
                        pair_last[y, px] = saved_last[depth, y]
                        pair_broken[px, y] = saved_broken[depth, y]
                        pair_broken[y, px] = saved_broken[depth, y]
                cand[depth] = px + 1
            continue
        nodes += 1
        if nodes > node_budget:
            exhausted = False
            break
        ok = counts[x] < k
        if ok:
            for y in range(n):
                if y == x:
                    continue
                if adj[x, y]:
                    if pair_last[x, y] == x:
                        ok = False
                        break
                elif (counts[x] + 1 == k and counts[y] == k
                      and not pair_broken[x, y] and pair_last[x, y] != x):
                    ok = False
                    break
        if not ok:
            cand[depth] = x + 1
            continue
        word[depth] = x
        counts[x] += 1
        for y in range(n):
            saved_last[depth, y] = pair_last[x, y]
            saved_broken[depth, y] = pair_broken[x, y]
        for y in range(n):
            if y == x:
                continue
            if pair_last[x, y] == x:
                pair_broken[x, y] = True
                pair_broken[y, x] = True
            pair_last[x, y] = x
            pair_last[y, x] = x
        if depth == L - 1:
            if count == cap:
                cap2 = cap * 2
                tmp = np.empty((cap2, L), np.int64)
                for r in range(cap):
                    for c in range(L):
                        tmp[r, c] = out[r, c]
                out = tmp
                cap = cap2
            for c in range(L):
                out[count, c] = word[c]
            count += 1
            counts[x] -= 1
            for y in range(n):
                if y != x:
                    pair_last[x, y] = saved_last[depth, y]
                    pair_last[y, x] = saved_last[depth, y]
                    pair_broken[x, y] = saved_broken[depth, y]
                    pair_broken[y, x] = saved_broken[depth, y]
            cand[depth] = x + 1
            if count >= stop_after:
                exhausted = False
                break
        else:
            depth += 1
            cand[depth] = 0
    return out[:count], exhausted, nodes


# ---------------------------------------------------------------------------
# exhaustive scans over all k-uniform words of a fixed alphabet
# ---------------------------------------------------------------------------

@_kernel
def next_perm(arr, L):
    i = L - 2
    while i >= 0 and arr[i] >= arr[i + 1]:
        i -= 1
    if i < 0:
        return False
    j = L - 1
    while arr[j] <= arr[i]:
        j -= 1
    t = arr[i]
    arr[i] = arr[j]
    arr[j] = t
    lo = i + 1
    hi = L - 1
    while lo < hi:
        t = arr[lo]
        arr[lo] = arr[hi]
        arr[hi] = t
        lo += 1
        hi -= 1
    return True


@_kernel
def _fill_sorted_uniform(word, k, n):
    pos = 0
    for letter in range(n):
        for _ in range(k):
            word[pos] = letter
            pos += 1


@_kernel
def scan_clique_vs_csf(k, n):
    """Every k-uniform word over n letters: when the csf index is at least 2,
    the clique number of the induced graph must be below it.  Returns
    (total, failures, first failing word)."""
    L = k * n
    word = np.empty(L, np.int64)
    _fill_sorted_uniform(word, k, n)
    total = 0
    failures = 0
    first_fail = np.full(L, -1, np.int64)
    while True:
        total += 1
        csf = 1 + csf_max_half(word, n)
        if csf >= 2:
            adj = graph_adj_of_word(word, n)
            if clique_number_adj(adj) >= csf:
                failures += 1
                if failures == 1:
                    for i in range(L):
                        first_fail[i] = word[i]
        if not next_perm(word, L):
            break
    return total, failures, first_fail


@_kernel
def sample_clique_vs_csf(k, n, num, seed):
    """Random k-uniform words (uniform shuffles), same check as the full scan."""
    np.random.seed(seed)
    L = k * n
    word = np.empty(L, np.int64)
    _fill_sorted_uniform(word, k, n)
    failures = 0
    first_fail = np.full(L, -1, np.int64)
    for _ in range(num):
        for i in range(L - 1, 0, -1):
            j = np.random.randint(0, i + 1)
            t = word[i]
            word[i] = word[j]
            word[j] = t
        csf = 1 + csf_max_half(word, n)
        if csf >= 2:
            adj = graph_adj_of_word(word, n)
            if clique_number_adj(adj) >= csf:
                failures += 1
                if failures == 1:
                    for i in range(L):
                        first_fail[i] = word[i]
    return num, failures, first_fail


@_kernel
def scan_representants_min_csf(k, n, adj, min_csf):
    """Every k-uniform word over n letters: count those representing ``adj``
    and among them any with csf index below ``min_csf``.  Returns
    (total, representing, violations, first violating word)."""
    L = k * n
    word = np.empty(L, np.int64)
    _fill_sorted_uniform(word, k, n)
    total = 0
    representing = 0
    violations = 0
    first_bad = np.full(L, -1, np.int64)
    while True:
        total += 1
        if word_represents(word, n, adj):
            representing += 1
            if 1 + csf_max_half(word, n) < min_csf:
                violations += 1
                if violations == 1:
                    for i in range(L):
                        first_bad[i] = word[i]
        if not next_perm(word, L):
            break
    return total, representing, violations, first_bad


@_kernel
def scan_proper_subset_bound(k, n):
    """Every k-uniform word over n letters (k >= 3): squares found in proper
    subset restrictions stay below half length ceil(kn/2) - 1.  Words whose
    only offending square needs the full alphabet are counted as flagged, not
    failed.  Returns (total, failures, flagged)."""
    L = k * n
    bound = (k * n + 1) // 2 - 2
    word = np.empty(L, np.int64)
    _fill_sorted_uniform(word, k, n)
    buf = np.empty(L, np.int64)
    total = 0
    failures = 0
    flagged = 0
    full_mask = (1 << n) - 1
    while True:
        total += 1
        proper_max = 0
        for mask in range(1, full_mask):
            rl = 0
            for i in range(L):
                if (mask >> word[i]) & 1:
                    buf[rl] = word[i]
                    rl += 1
            if rl // 2 <= proper_max:
                continue
            h = longest_square_above(buf, rl, proper_max)
            if h > proper_max:
                proper_max = h
        if proper_max > bound:
            failures += 1
        if longest_square_above(word, L, bound) > bound:
            flagged += 1
        if not next_perm(word, L):
            break
    return total, failures, flagged


@_kernel
def square_border_scan(words):
    """First word that is not square-free (code 1) or not border-free
    (code 2); (-1, 0) when all pass."""
    cnt = words.shape[0]
    L = words.shape[1]
    for wi in range(cnt):
        row = words[wi, :]
        start, _ = first_square(row, L, 1)
        if start >= 0:
            return wi, 1
        if shortest_border(row, L) > 0:
            return wi, 2
    return -1, 0


def warmup() -> None:
    """Compile (or touch) every kernel on tiny inputs."""
    w = np.array([0, 1, 0, 1], np.int64)
    first_square(w, 4, 1)
    longest_square_above(w, 4, 0)
    has_square_at_half(w, 4, 2)
    shortest_border(w, 4)
    csf_max_half(w, 2)
    csf_index_arr(w, 2)
    find_p_square(w, 2, 1)
    witnesses_at_half(w, 2, 2)
    adj = graph_adj_of_word(w, 2)
    word_represents(w, 2, adj)
    clique_number_adj(adj)
    words, _, _ = enum_representants(adj, 1, 10_000, False, 1 << 60)
    csf_index_many(words, 2)
    square_subsets_avoiding(words, 2, 1, 0)
    square_mask_union(words, 2, 1)
    square_border_scan(words)
    scan_clique_vs_csf(1, 2)
    sample_clique_vs_csf(2, 2, 2, 1)
    scan_representants_min_csf(1, 2, adj, 1)
    scan_proper_subset_bound(3, 1)
