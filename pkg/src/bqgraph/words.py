"""Combinatorics on words: Lyndon words, Chen-Fox-Lyndon factorization,
Lyndon tuples over multisets and the parity-reversing bijection on them.

Words are plain tuples of non-negative integers.  Python's built-in tuple
ordering is exactly the lexicographic order used throughout (a proper prefix
is smaller than the longer word), so ``<`` on words is the Lyndon order.
"""

from collections import Counter
from typing import Iterable, Iterator, NamedTuple, Sequence, Tuple, Union

Word = Tuple[int, ...]
WordLike = Union[Word, Sequence[int], str]

__all__ = [
    "Word",
    "Multiset",
    "LyndonTuple",
    "as_word",
    "word_str",
    "is_lyndon",
    "lyndon_words",
    "count_lyndon",
    "mobius",
    "cfl_decompose",
    "is_strictly_decreasing",
    "standard_factorization",
    "multiset_permutations",
    "lyndon_tuples",
    "lyndon_index",
    "parity_bijection",
    "t_count",
]


def as_word(w: WordLike, alphabet_size: int = None) -> Word:
    """Coerce ``w`` to a tuple of ints; a string like ``"0011"`` is read digit by digit."""
    if isinstance(w, str):
        word = tuple(int(ch) for ch in w)
    else:
        word = tuple(int(a) for a in w)
    if any(a < 0 for a in word):
        raise ValueError("letters must be non-negative")
    if alphabet_size is not None and any(a >= alphabet_size for a in word):
        raise ValueError(f"letter out of range for alphabet of size {alphabet_size}")
    return word


def word_str(w: Sequence[int]) -> str:
    return "".join(str(a) for a in w)


def _nonempty(w: WordLike) -> Word:
    word = as_word(w)
    if not word:
        raise ValueError("empty word")
    return word


def is_lyndon(w: WordLike) -> bool:
    """True iff ``w`` is strictly smaller than each of its nontrivial rotations."""
    w = _nonempty(w)
    return all(w < w[i:] + w[:i] for i in range(1, len(w)))


def lyndon_words(q: int, n: int) -> list:
    """All Lyndon words of length exactly ``n`` over ``{0, ..., q-1}``, sorted.

    Uses the Fredricksen-Kessler-Maiorana successor rule, which visits every
    Lyndon word of length <= n in lexicographic order.
    """
    if q < 2 or n < 1:
        raise ValueError("need q >= 2 and n >= 1")
    out = []
    w = [-1]
    while w:
        w[-1] += 1
        if len(w) == n:
            out.append(tuple(w))
        m = len(w)
        while len(w) < n:
            w.append(w[len(w) - m])
        while w and w[-1] == q - 1:
            w.pop()
    return out


def mobius(n: int) -> int:
    if n < 1:
        raise ValueError("mobius is defined for n >= 1")
    result, d = 1, 2
    while d * d <= n:
        if n % d == 0:
            n //= d
            if n % d == 0:
                return 0
            result = -result
        d += 1
    return -result if n > 1 else result


def _divisors(n: int) -> list:
    return [d for d in range(1, n + 1) if n % d == 0]


def count_lyndon(q: int, n: int) -> int:
    """Number of Lyndon words of length ``n`` over ``q`` letters (Moebius inversion)."""
    if q < 2 or n < 1:
        raise ValueError("need q >= 2 and n >= 1")
    total = sum(mobius(d) * q ** (n // d) for d in _divisors(n))
    return total // n


def cfl_decompose(w: WordLike) -> list:
    """Chen-Fox-Lyndon factorization of ``w`` by Duval's algorithm.

    Returns the Lyndon factors left to right, so they are non-increasing and
    concatenate back to ``w``.
    """
    w = _nonempty(w)
    n = len(w)
    factors = []
    i = 0
    while i < n:
        j, k = i + 1, i
        while j < n and w[k] <= w[j]:
            k = i if w[k] < w[j] else k + 1
            j += 1
        period = j - k
        while i <= k:
            factors.append(w[i:i + period])
            i += period
    return factors


def is_strictly_decreasing(w: WordLike) -> bool:
    """True iff no Lyndon factor of ``w`` repeats."""
    factors = cfl_decompose(w)
    return all(a > b for a, b in zip(factors, factors[1:]))


def standard_factorization(w: WordLike) -> Tuple[Word, Word]:
    """Split a Lyndon word at its lexicographically smallest proper suffix."""
    w = _nonempty(w)
    if len(w) < 2:
        raise ValueError("standard factorization needs a word of length >= 2")
    if not is_lyndon(w):
        raise ValueError(f"{word_str(w)} is not a Lyndon word")
    i = min(range(1, len(w)), key=lambda j: w[j:])
    return w[:i], w[i:]


class Multiset:
    """Finite multiset of letters, stored as sorted ``(letter, multiplicity)`` pairs."""

    __slots__ = ("_items",)

    def __init__(self, letters=()):
        if isinstance(letters, Multiset):
            items = letters._items
        elif isinstance(letters, dict):
            items = tuple(sorted((int(a), int(m)) for a, m in letters.items() if m))
        else:
            items = tuple(sorted(Counter(as_word(letters)).items()))
        if any(m < 0 for _, m in items):
            raise ValueError("multiplicities must be non-negative")
        self._items = items

    @property
    def counts(self) -> dict:
        return dict(self._items)

    @property
    def letters(self) -> Word:
        return tuple(a for a, m in self._items for _ in range(m))

    @property
    def support(self) -> Word:
        return tuple(a for a, _ in self._items)

    def __len__(self) -> int:
        return sum(m for _, m in self._items)

    def __contains__(self, a) -> bool:
        return any(a == b for b, _ in self._items)

    def __iter__(self):
        return iter(self.letters)

    def __eq__(self, other) -> bool:
        if not isinstance(other, Multiset):
            other = Multiset(other)
        return self._items == other._items

    def __hash__(self) -> int:
        return hash(self._items)

    def __repr__(self) -> str:
        inner = ", ".join(f"{a}^{m}" for a, m in self._items)
        return f"Multiset([{inner}])"

    def issubset(self, other: "Multiset") -> bool:
        oc = Multiset(other).counts
        return all(oc.get(a, 0) >= m for a, m in self._items)


class LyndonTuple(NamedTuple):
    """Strictly increasing Lyndon factors ``(l_1, ..., l_k)`` over a multiset."""

    factors: Tuple[Word, ...]
    source: Multiset

    @property
    def word(self) -> Word:
        # the word l_k ... l_2 l_1 whose factorization this tuple records
        return tuple(a for f in reversed(self.factors) for a in f)

    def __str__(self) -> str:
        return ",".join("(" + word_str(f) + ")" for f in self.factors)


def _tuple_from_word(w: Word, source: Multiset) -> LyndonTuple:
    return LyndonTuple(tuple(reversed(cfl_decompose(w))), source)


def multiset_permutations(letters: Iterable[int]) -> Iterator[Word]:
    """Distinct arrangements of a multiset, in lexicographic order."""
    counts = sorted(Counter(letters).items())
    letters_ = [a for a, _ in counts]
    remaining = [m for _, m in counts]
    total = sum(remaining)
    prefix = []

    def rec():
        if len(prefix) == total:
            yield tuple(prefix)
            return
        for idx, a in enumerate(letters_):
            if remaining[idx]:
                remaining[idx] -= 1
                prefix.append(a)
                yield from rec()
                prefix.pop()
                remaining[idx] += 1

    return rec()


def lyndon_tuples(M) -> list:
    """All Lyndon tuples over ``M``: arrangements with strictly decreasing CFL factors."""
    M = Multiset(M)
    if len(M) < 1:
        raise ValueError("multiset must be non-empty")
    return [
        _tuple_from_word(w, M)
        for w in multiset_permutations(M.letters)
        if is_strictly_decreasing(w)
    ]


def lyndon_index(t: LyndonTuple) -> int:
    """Cardinality of the multiset minus the number of factors."""
    return len(t.source) - len(t.factors)


def parity_bijection(t: LyndonTuple) -> LyndonTuple:
    """Map a Lyndon tuple to one of opposite Lyndon-index parity.

    If the first factor ``l_1`` has length >= 2 and its standard suffix
    ``s_1`` satisfies ``s_1 < l_2`` (vacuously true when ``k == 1``), split it
    into ``(r_1, s_1)``; otherwise merge the first two factors into ``l_1 l_2``.
    """
    if len(t.source) < 2:
        raise ValueError("parity bijection needs a multiset of cardinality >= 2")
    factors = t.factors
    first = factors[0]
    if len(first) >= 2:
        r1, s1 = standard_factorization(first)
        if len(factors) == 1 or s1 < factors[1]:
            return LyndonTuple((r1, s1) + factors[1:], t.source)
    if len(factors) < 2:
        raise ValueError(f"tuple {t} is neither splittable nor mergeable")
    return LyndonTuple((first + factors[1],) + factors[2:], t.source)


def t_count(t: LyndonTuple, B_set, D_set) -> int:
    """Cyclic count, within each factor, of a B-letter immediately followed by a D-letter."""
    b, d = set(B_set), set(D_set)
    total = 0
    for f in t.factors:
        nxt = f[1:] + f[:1]
        total += sum(1 for x, y in zip(f, nxt) if x in b and y in d)
    return total
