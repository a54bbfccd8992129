"""Permutations in one-line notation, reduced words and block permutations.

Products are composition of functions, ``(v * w)(x) = v(w(x))``, so that
``w * s_i`` swaps the entries in positions i and i+1 of ``w``. A word
``(i_1, ..., i_k)`` stands for ``s_{i_1} * ... * s_{i_k}``.

The hot paths of the algebra engine work on bare tuples, so most helpers
here take and return tuples; :class:`Permutation` is a thin wrapper.
"""

from __future__ import annotations

from functools import lru_cache
from itertools import combinations
from typing import Iterable, Sequence

Perm = tuple[int, ...]


def identity(n: int) -> Perm:
    return tuple(range(1, n + 1))


def is_permutation(w: Sequence[int]) -> bool:
    return sorted(w) == list(range(1, len(w) + 1))


def compose(v: Perm, w: Perm) -> Perm:
    return tuple(v[x - 1] for x in w)


def inverse(w: Perm) -> Perm:
    inv = [0] * len(w)
    for pos, val in enumerate(w, 1):
        inv[val - 1] = pos
    return tuple(inv)


def length(w: Perm) -> int:
    n = len(w)
    return sum(1 for i in range(n) for j in range(i + 1, n) if w[i] > w[j])


def times_simple(w: Perm, i: int) -> Perm:
    """w * s_i: swap positions i, i+1."""
    lst = list(w)
    lst[i - 1], lst[i] = lst[i], lst[i - 1]
    return tuple(lst)


def simple_times(i: int, w: Perm) -> Perm:
    """s_i * w: swap the values i, i+1."""
    return tuple(i + 1 if x == i else i if x == i + 1 else x for x in w)


def from_word(word: Iterable[int], n: int) -> Perm:
    lst = list(range(1, n + 1))
    for i in word:
        if not 1 <= i < n:
            raise ValueError(f"generator s_{i} not in S_{n}")
        lst[i - 1], lst[i] = lst[i], lst[i - 1]
    return tuple(lst)


def right_descents(w: Perm) -> list[int]:
    return [i for i in range(1, len(w)) if w[i - 1] > w[i]]


def left_descents(w: Perm) -> list[int]:
    return right_descents(inverse(w))


@lru_cache(maxsize=None)
def canonical_word(w: Perm) -> tuple[int, ...]:
    """The preferred reduced word of w.

    Repeatedly strip the smallest right descent; the stripped letters in
    reverse order form the word. Equivalently the word of w is the word of
    ``w * s_i`` followed by i, with i the smallest right descent of w.
    """
    for i in range(1, len(w)):
        if w[i - 1] > w[i]:
            return canonical_word(times_simple(w, i)) + (i,)
    return ()


def is_reduced(word: Sequence[int], n: int) -> bool:
    return length(from_word(word, n)) == len(word)


def act_on_word(w: Perm, nu: Sequence) -> tuple:
    """Place letter k of ``nu`` in position w(k): the left action on sequences."""
    out = [None] * len(nu)
    for k, letter in enumerate(nu):
        out[w[k] - 1] = letter
    return tuple(out)


def w_ab(a: int, b: int) -> Perm:
    """The block transposition w[a,b] in S_{a+b}."""
    return tuple(x + b for x in range(1, a + 1)) + tuple(x - a for x in range(a + 1, a + b + 1))


def shift(w: Perm, k: int, n: int) -> Perm:
    """Embed w on the letters k+1, ..., k+len(w) of S_n."""
    if k < 0 or k + len(w) > n:
        raise ValueError("shift out of range")
    return identity(k) + tuple(x + k for x in w) + tuple(range(k + len(w) + 1, n + 1))


def s2(c: int, a: int, b: int, n: int | None = None) -> Perm:
    """S_2(c, a, b): the block transposition w[a,b] moved onto letters c+1..c+a+b."""
    if n is None:
        n = c + a + b
    return shift(w_ab(a, b), c, n)


def block_permutation(word: Sequence[int], sizes: Sequence[int]) -> Perm:
    """The block permutation S_{i_1} ... S_{i_p}(a_1, ..., a_t).

    Built recursively: the rightmost factor acts on the given sizes and the
    remaining factors act on the sizes permuted by it.
    """
    t = len(sizes)
    n = sum(sizes)
    for i in word:
        if not 1 <= i < t:
            raise ValueError(f"block index {i} out of range for {t} blocks")
    if not word:
        return identity(n)
    i = word[-1]
    start = sum(sizes[: i - 1])
    last = s2(start, sizes[i - 1], sizes[i], n)
    swapped = list(sizes)
    swapped[i - 1], swapped[i] = swapped[i], swapped[i - 1]
    return compose(block_permutation(word[:-1], swapped), last)


def block_permutation_two_line(word: Sequence[int], sizes: Sequence[int]) -> Perm:
    """Same permutation read off the two-line description of block permutations."""
    t = len(sizes)
    u = from_word(word, t)
    uinv = inverse(u)

    # block j (in the order u^{-1}(1), ..., u^{-1}(t)) occupies consecutive letters
    intervals: dict[int, list[int]] = {}
    pos = 1
    for k in range(t):
        j = uinv[k]
        intervals[j] = list(range(pos, pos + sizes[j - 1]))
        pos += sizes[j - 1]
    bottom = [x for j in range(1, t + 1) for x in intervals[j]]
    return tuple(bottom)


def bruhat_leq(v: Perm, w: Perm) -> bool:
    """v <= w in Bruhat order, by the subword property along the word of w."""
    if len(v) != len(w):
        raise ValueError("size mismatch")
    return _bruhat_leq(v, w)


@lru_cache(maxsize=None)
def _bruhat_leq(v: Perm, w: Perm) -> bool:
    word = canonical_word(w)
    if not word:
        return v == w
    s = word[-1]
    ws = times_simple(w, s)
    vs = times_simple(v, s)
    if v[s - 1] > v[s]:
        v = vs
    return _bruhat_leq(v, ws)


def left_order_geq(v: Perm, w: Perm) -> bool:
    """v >=_L w, that is l(v) = l(v w^{-1}) + l(w)."""
    if len(v) != len(w):
        raise ValueError("size mismatch")
    return length(v) == length(compose(v, inverse(w))) + length(w)


def left_order_leq(v: Perm, w: Perm) -> bool:
    return left_order_geq(w, v)


def is_fully_commutative(w: Perm) -> bool:
    """True iff w avoids the pattern 321."""
    n = len(w)
    for j in range(1, n - 1):
        if any(w[i] > w[j] for i in range(j)) and any(w[k] < w[j] for k in range(j + 1, n)):
            return False
    return True


def coset_representatives(m: int, n: int) -> list[Perm]:
    """Minimal length representatives of the left cosets of S_m x S_n in S_{m+n}."""
    out = []
    for first in combinations(range(1, m + n + 1), m):
        rest = tuple(x for x in range(1, m + n + 1) if x not in first)
        out.append(first + rest)
    return out


class Permutation:
    """An element of S_n; wraps a one-line tuple."""

    __slots__ = ("oneline",)

    def __init__(self, oneline: Iterable[int]):
        oneline = tuple(oneline)
        if not is_permutation(oneline):
            raise ValueError(f"{oneline} is not a permutation")
        self.oneline = oneline

    @classmethod
    def identity(cls, n: int) -> Permutation:
        return cls(identity(n))

    @classmethod
    def from_word(cls, word: Iterable[int], n: int) -> Permutation:
        return cls(from_word(word, n))

    @property
    def n(self) -> int:
        return len(self.oneline)

    @property
    def length(self) -> int:
        return length(self.oneline)

    @property
    def word(self) -> tuple[int, ...]:
        return canonical_word(self.oneline)

    def __call__(self, x: int) -> int:
        return self.oneline[x - 1]

    def __mul__(self, other: Permutation) -> Permutation:
        return Permutation(compose(self.oneline, other.oneline))

    def inverse(self) -> Permutation:
        return Permutation(inverse(self.oneline))

    def __eq__(self, other):
        return isinstance(other, Permutation) and self.oneline == other.oneline

    def __hash__(self):
        return hash(self.oneline)

    def __repr__(self):
        return f"Permutation({list(self.oneline)})"


def canonical_reduced_word(w: Permutation | Perm) -> tuple[int, ...]:
    if isinstance(w, Permutation):
        w = w.oneline
    return canonical_word(tuple(w))
