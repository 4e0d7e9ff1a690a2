"""Words over token alphabets: restriction, alternation, squares, borders,
and complete-square detection in restrictions.

A letter is a non-empty whitespace-free token, so primed vertices such as
``4'`` are ordinary letters.  Words are immutable; every operation returns
a new value.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from itertools import combinations
from typing import Callable, Iterable, Mapping

from .errors import BoundsExceededError, ParseError

Letter = str

# Exhaustive subset scans are exponential in the alphabet; this guard keeps
# them at desk scale (2^20 subsets worst case).
MAX_SCAN_ALPHABET = 20


def _check_token(token: str) -> str:
    if not token or any(ch.isspace() for ch in token):
        raise ParseError(f"invalid letter token {token!r}: must be non-empty and whitespace-free")
    return token


@dataclass(frozen=True)
class Word:
    """An immutable sequence of letters."""

    letters: tuple[Letter, ...]

    def __post_init__(self):
        for tok in self.letters:
            _check_token(tok)

    # -- construction ------------------------------------------------------

    @classmethod
    def parse(cls, text: str, compact: bool = False) -> "Word":
        """Parse a word from text.

        The default format is space-separated tokens ("1 2 5 7").  Compact
        mode reads one character per letter, with an apostrophe glued to the
        character before it ("1234'43'..." has letters 1,2,3,4',4,3',...).
        """
        text = text.strip()
        if not compact:
            return cls(tuple(text.split()))
        tokens: list[str] = []
        for i, ch in enumerate(text):
            if ch == "'":
                if not tokens:
                    raise ParseError("apostrophe with no preceding letter", position=i)
                tokens[-1] += ch
            elif ch.isspace():
                raise ParseError("whitespace inside a compact word", position=i)
            else:
                tokens.append(ch)
        return cls(tuple(tokens))

    @classmethod
    def of(cls, *tokens: Letter) -> "Word":
        return cls(tuple(tokens))

    # -- derived views -----------------------------------------------------

    @cached_property
    def alphabet(self) -> frozenset[Letter]:
        return frozenset(self.letters)

    @cached_property
    def multiplicity(self) -> dict[Letter, int]:
        counts: dict[Letter, int] = {}
        for tok in sorted(self.letters):
            counts[tok] = 0
        for tok in self.letters:
            counts[tok] += 1
        return counts

    def sorted_alphabet(self) -> list[Letter]:
        return sorted(self.alphabet)

    # -- formatting --------------------------------------------------------

    def to_text(self, compact: bool = False) -> str:
        if not compact:
            return " ".join(self.letters)
        for tok in self.letters:
            if len(tok.rstrip("'")) != 1 or tok.startswith("'"):
                raise ValueError(f"letter {tok!r} has no compact form")
        return "".join(self.letters)

    def __str__(self) -> str:
        return self.to_text()

    def __repr__(self) -> str:
        return f"Word({self.to_text()!r})"

    # -- sequence protocol --------------------------------------------------

    def __len__(self) -> int:
        return len(self.letters)

    def __iter__(self):
        return iter(self.letters)

    def __getitem__(self, index: int) -> Letter:
        return self.letters[index]

    def __add__(self, other: "Word") -> "Word":
        return Word(self.letters + other.letters)


EMPTY_WORD = Word(())


@dataclass(frozen=True)
class SquareWitness:
    """Certificate that some restriction of a word contains a square.

    ``restrict(word, subset)`` spells ``block`` twice starting at ``start``.
    """

    subset: frozenset[Letter]
    start: int
    block: Word

    @property
    def block_length(self) -> int:
        return len(self.block)


def restrict(w: Word, letters: Iterable[Letter]) -> Word:
    """The subsequence of ``w`` over the given letters, order preserved.

    Letters absent from ``w`` are ignored; the empty set gives the empty word.
    """
    keep = frozenset(letters)
    return Word(tuple(x for x in w.letters if x in keep))


def alternates(w: Word, x: Letter, y: Letter) -> bool:
    """True when deleting everything but ``x`` and ``y`` leaves a strictly
    alternating word (xyxy... or yxyx..., any length).

    Raises ValueError if ``x == y`` or either letter does not occur; a call
    like that signals a bug in the caller.
    """
    if x == y:
        raise ValueError(f"alternation needs two distinct letters, got {x!r} twice")
    if x not in w.alphabet or y not in w.alphabet:
        missing = x if x not in w.alphabet else y
        raise ValueError(f"letter {missing!r} does not occur in the word")
    prev: Letter | None = None
    for tok in w.letters:
        if tok != x and tok != y:
            continue
        if tok == prev:
            return False
        prev = tok
    return True


def multiplicity_profile(w: Word) -> dict[Letter, int]:
    return dict(w.multiplicity)


def uniformity(w: Word) -> int | None:
    """The uniformity k when every letter occurs exactly k times, else None.

    The empty word has no letters and therefore no well-defined k.
    """
    counts = set(w.multiplicity.values())
    if len(counts) != 1:
        return None
    return counts.pop()


def occurrence_permutation(w: Word, i: int) -> Word:
    """The permutation formed by every letter's i-th occurrence (1-based),
    in order of position.  Defined for uniform words only."""
    k = uniformity(w)
    if k is None:
        raise ValueError("occurrence permutation requires a uniform word")
    if not 1 <= i <= k:
        raise ValueError(f"occurrence index {i} out of range 1..{k}")
    seen: dict[Letter, int] = {}
    out = []
    for tok in w.letters:
        seen[tok] = seen.get(tok, 0) + 1
        if seen[tok] == i:
            out.append(tok)
    return Word(tuple(out))


def initial_permutation(w: Word) -> Word:
    """First occurrences of each letter, in order of appearance.

    Total on all words; equals occurrence_permutation(w, 1) for uniform w.
    """
    seen: set[Letter] = set()
    out = []
    for tok in w.letters:
        if tok not in seen:
            seen.add(tok)
            out.append(tok)
    return Word(tuple(out))


def final_permutation(w: Word) -> Word:
    """Last occurrences of each letter, in order of position."""
    last: dict[Letter, int] = {}
    for pos, tok in enumerate(w.letters):
        last[tok] = pos
    return Word(tuple(tok for _, tok in sorted((pos, tok) for tok, pos in last.items())))


def rotate(w: Word, cut: int) -> Word:
    """v . u where w = u . v and len(u) == cut."""
    if not 0 <= cut <= len(w):
        raise ValueError(f"cut {cut} out of range 0..{len(w)}")
    return Word(w.letters[cut:] + w.letters[:cut])


def find_square_factor(w: Word, longest: bool = False) -> tuple[int, int] | None:
    """A factor square XX as (start, half_length), or None.

    By default returns the first square in (start, half) scan order; with
    ``longest=True`` returns a square of maximal half length (smallest start
    among those).
    """
    seq = w.letters
    m = len(seq)
    if longest:
        for half in range(m // 2, 0, -1):
            for start in range(m - 2 * half + 1):
                if seq[start:start + half] == seq[start + half:start + 2 * half]:
                    return start, half
        return None
    for start in range(m):
        for half in range(1, (m - start) // 2 + 1):
            if seq[start:start + half] == seq[start + half:start + 2 * half]:
                return start, half
    return None


def find_border(w: Word) -> int | None:
    """Length of the shortest non-empty border u with w = u v u, or None.

    The two copies of u may not overlap, so borders run up to len(w) // 2.
    """
    if len(w) < 1:
        raise ValueError("border search needs a non-empty word")
    seq = w.letters
    for length in range(1, len(seq) // 2 + 1):
        if seq[:length] == seq[-length:]:
            return length
    return None


def _scan_subsets(alphabet: list[Letter]):
    """All non-empty subsets: increasing cardinality, then lexicographic on
    sorted tokens.  This is the canonical witness order."""
    for size in range(1, len(alphabet) + 1):
        yield from combinations(alphabet, size)


def _first_square_at_least(seq: tuple[Letter, ...], min_half: int) -> tuple[int, int] | None:
    m = len(seq)
    for start in range(m - 2 * min_half + 1):
        for half in range(min_half, (m - start) // 2 + 1):
            if seq[start:start + half] == seq[start + half:start + 2 * half]:
                return start, half
    return None


def _guard_alphabet(w: Word, what: str) -> None:
    if len(w.alphabet) > MAX_SCAN_ALPHABET:
        raise BoundsExceededError(
            f"{what} scans all letter subsets; alphabet of size {len(w.alphabet)} "
            f"exceeds the supported {MAX_SCAN_ALPHABET}"
        )


def find_p_complete_square(w: Word, p: int) -> SquareWitness | None:
    """A witness that some restriction of ``w`` contains a square XX with
    half length at least ``p``, or None when ``w`` is p-complete square-free.

    The canonical witness comes from the first qualifying subset in
    (cardinality, lexicographic) order, with the first (start, half) square
    inside it.  Only subsets of letters occurring at least twice are scanned:
    any square survives restriction to the letters of its own block, so the
    first qualifying subset always consists of repeated letters.
    """
    if p < 1:
        raise ValueError(f"p must be at least 1, got {p}")
    _guard_alphabet(w, "complete-square detection")
    eligible = sorted(tok for tok, count in w.multiplicity.items() if count >= 2)
    for subset in _scan_subsets(eligible):
        sub = restrict(w, subset)
        if len(sub) < 2 * p:
            continue
        hit = _first_square_at_least(sub.letters, p)
        if hit is not None:
            start, half = hit
            return SquareWitness(
                subset=frozenset(subset),
                start=start,
                block=Word(sub.letters[start:start + half]),
            )
    return None


def find_p_complete_square_naive(w: Word, p: int) -> SquareWitness | None:
    """Reference detector: scans every subset of the alphabet, including
    letters that occur only once.  Same canonical order as the optimized
    detector; used as the oracle in differential tests."""
    if p < 1:
        raise ValueError(f"p must be at least 1, got {p}")
    _guard_alphabet(w, "complete-square detection")
    for subset in _scan_subsets(w.sorted_alphabet()):
        sub = restrict(w, subset)
        hit = _first_square_at_least(sub.letters, p)
        if hit is not None:
            start, half = hit
            return SquareWitness(
                subset=frozenset(subset),
                start=start,
                block=Word(sub.letters[start:start + half]),
            )
    return None


def is_p_complete_square_free(w: Word, p: int) -> bool:
    """True when no restriction of ``w`` contains a square of half length >= p."""
    return find_p_complete_square(w, p) is None


def _longest_square_half(seq: tuple[Letter, ...], lower: int) -> int:
    """Largest half length of a factor square in seq that exceeds ``lower``,
    else 0."""
    m = len(seq)
    for half in range(m // 2, lower, -1):
        for start in range(m - 2 * half + 1):
            if seq[start:start + half] == seq[start + half:start + 2 * half]:
                return half
    return 0


def csf_index(w: Word) -> int:
    """1 + the largest square half length over all restrictions of ``w``;
    equivalently the least p for which ``w`` is p-complete square-free.

    Equals 1 exactly when no letter repeats.
    """
    _guard_alphabet(w, "csf index")
    eligible = sorted(tok for tok, count in w.multiplicity.items() if count >= 2)
    best = 0
    for subset in _scan_subsets(eligible):
        sub = restrict(w, subset)
        if len(sub) // 2 <= best:
            continue
        best = max(best, _longest_square_half(sub.letters, best))
    return 1 + best


OccurrenceMap = Callable[[Letter, int], Iterable[Letter]] | Mapping[tuple[Letter, int], Iterable[Letter]]


def occurrence_based_map(w: Word, h: OccurrenceMap) -> Word:
    """Rewrite ``w`` occurrence-wise: the i-th occurrence of letter x (1-based)
    becomes the image of (x, i), and images are concatenated in order.

    ``h`` is a callable or a mapping from (letter, occurrence index) to an
    iterable of letters (a Word, tuple, or list).  A mapping must cover every
    occurrence present in the word.
    """
    seen: dict[Letter, int] = {}
    out: list[Letter] = []
    for tok in w.letters:
        seen[tok] = seen.get(tok, 0) + 1
        key = (tok, seen[tok])
        if callable(h):
            image = h(tok, seen[tok])
        else:
            if key not in h:
                raise ValueError(f"no mapping for occurrence {key!r}")
            image = h[key]
        out.extend(image.letters if isinstance(image, Word) else tuple(image))
    return Word(tuple(out))
