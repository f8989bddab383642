"""Words over an ordered alphabet, good Lyndon words and dominant words.

A word is a tuple of 1-based letters. Comparison is lexicographic for a chosen
total order on letters, with a proper prefix smaller than its extensions.

>>> from okcluster.rootsys import build_cartan
>>> table = compute_good_lyndon(build_cartan("A", 2), natural_order(2))
>>> table.words
((1,), (1, 2), (2,))
>>> odot(table, table.dominant((1, 2)), table.dominant((2,))).word
(2, 1, 2)
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Sequence

from .rootsys import CartanData, Root

Word = tuple[int, ...]


class UnsupportedConfigurationError(ValueError):
    """Exceptional type with a non-natural order: the merge formula is not known."""


@dataclass(frozen=True)
class AlphabetOrder:
    """perm lists the letters from smallest to largest."""

    perm: tuple[int, ...]

    def __post_init__(self):
        if sorted(self.perm) != list(range(1, len(self.perm) + 1)):
            raise ValueError(f"{self.perm} is not a permutation of 1..{len(self.perm)}")

    @property
    def rank_of(self) -> dict[int, int]:
        r = self.__dict__.get("_rank")
        if r is None:
            r = {letter: pos for pos, letter in enumerate(self.perm)}
            object.__setattr__(self, "_rank", r)
        return r

    def key(self, word: Sequence[int]) -> tuple[int, ...]:
        """Sort key: Python tuple order is lexicographic with prefixes first."""
        r = self.rank_of
        return tuple(r[x] for x in word)

    @property
    def is_natural(self) -> bool:
        return self.perm == tuple(range(1, len(self.perm) + 1))


def natural_order(n: int) -> AlphabetOrder:
    return AlphabetOrder(tuple(range(1, n + 1)))


def lex_compare(order: AlphabetOrder, u: Sequence[int], v: Sequence[int]) -> int:
    """-1, 0 or 1."""
    a, b = order.key(u), order.key(v)
    return (a > b) - (a < b)


def is_lyndon(order: AlphabetOrder, u: Sequence[int]) -> bool:
    if not u:
        raise ValueError("the empty word is not Lyndon")
    k = order.key(u)
    return all(k < k[i:] for i in range(1, len(k)))


def word_weight(word: Sequence[int], n: int) -> Root:
    w = [0] * n
    for x in word:
        w[x - 1] += 1
    return tuple(w)


def cfl_factorize(order: AlphabetOrder, u: Sequence[int]) -> tuple[Word, ...]:
    """Chen-Fox-Lyndon factorization by Duval's algorithm."""
    u = tuple(u)
    if not u:
        raise ValueError("cannot factorize the empty word")
    s = order.key(u)
    out = []
    i, n = 0, len(s)
    while i < n:
        j, k = i + 1, i
        while j < n and s[k] <= s[j]:
            k = i if s[k] < s[j] else k + 1
            j += 1
        while i <= k:
            out.append(u[i:i + j - k])
            i += j - k
    return tuple(out)


@dataclass(frozen=True)
class GoodLyndonTable:
    cartan: CartanData = field(repr=False)
    order: AlphabetOrder
    words: tuple[Word, ...]
    roots: tuple[Root, ...]

    def __post_init__(self):
        object.__setattr__(self, "_index", {w: p for p, w in enumerate(self.words)})
        object.__setattr__(self, "_by_root", dict(zip(self.roots, self.words)))

    def __contains__(self, word) -> bool:
        return tuple(word) in self._index

    def index(self, word: Sequence[int]) -> int:
        return self._index[tuple(word)]

    def word_of(self, root: Sequence[int]) -> Word:
        return self._by_root[tuple(root)]

    def root_of(self, word: Sequence[int]) -> Root:
        return self.roots[self.index(word)]

    def dominant(self, *factors: Sequence[int]) -> DominantWord:
        """Dominant word with the given good Lyndon factors, in any order."""
        c = [0] * len(self.words)
        for f in factors:
            c[self.index(f)] += 1
        return DominantWord(self, tuple(c))

    def unit(self) -> DominantWord:
        return DominantWord(self, (0,) * len(self.words))


@dataclass(frozen=True)
class DominantWord:
    """A root partition, stored by its exponent vector over table.words."""

    table: GoodLyndonTable = field(compare=False, repr=False)
    exponents: tuple[int, ...]

    @property
    def factors(self) -> tuple[Word, ...]:
        out = []
        for p in reversed(range(len(self.exponents))):
            out.extend([self.table.words[p]] * self.exponents[p])
        return tuple(out)

    @property
    def word(self) -> Word:
        return tuple(itertools.chain.from_iterable(self.factors))

    def __len__(self) -> int:
        return sum(c * len(w) for c, w in zip(self.exponents, self.table.words))

    @property
    def weight(self) -> Root:
        n = self.table.cartan.rank
        return tuple(
            sum(c * r[i] for c, r in zip(self.exponents, self.table.roots)) for i in range(n)
        )


def compute_good_lyndon(cartan: CartanData, order: AlphabetOrder) -> GoodLyndonTable:
    """i_beta is the largest i_gamma i_delta over beta = gamma + delta, i_gamma < i_delta."""
    if len(order.perm) != cartan.rank:
        raise ValueError("order and Cartan data have different ranks")
    if cartan.family in "EFG" and not order.is_natural:
        raise UnsupportedConfigurationError(
            f"type {cartan.name} is only supported with the natural order"
        )
    word_of: dict[Root, Word] = {}
    for beta in cartan.positive_roots:  # sorted by height
        if sum(beta) == 1:
            word_of[beta] = (beta.index(1) + 1,)
            continue
        best = None
        for gamma, wg in word_of.items():
            delta = tuple(b - g for b, g in zip(beta, gamma))
            wd = word_of.get(delta)
            if wd is None or order.key(wg) >= order.key(wd):
                continue
            cand = wg + wd
            if best is None or order.key(cand) > order.key(best):
                best = cand
        if best is None:
            raise AssertionError(f"root {beta} has no decomposition")
        word_of[beta] = best
    pairs = sorted(word_of.items(), key=lambda kv: order.key(kv[1]))
    table = GoodLyndonTable(
        cartan, order, tuple(w for _, w in pairs), tuple(r for r, _ in pairs)
    )
    for w, r in zip(table.words, table.roots):
        if not is_lyndon(order, w) or word_weight(w, cartan.rank) != r:
            raise AssertionError(f"bad good Lyndon word {w} for root {r}")
    return table


def is_dominant(table: GoodLyndonTable, u: Sequence[int]) -> DominantWord | None:
    if not u:
        return table.unit()
    factors = cfl_factorize(table.order, u)
    if any(f not in table for f in factors):
        return None
    return table.dominant(*factors)


def odot(table: GoodLyndonTable, mu: DominantWord, nu: DominantWord) -> DominantWord:
    """Sorted merge of the Lyndon factors; on exponent vectors it is addition."""
    return DominantWord(table, tuple(a + b for a, b in zip(mu.exponents, nu.exponents)))


def shuffle_max_oracle(
    order: AlphabetOrder, u: Sequence[int], v: Sequence[int], bound: int = 14
) -> Word:
    """Lexicographically largest shuffle, by exhaustive enumeration."""
    u, v = tuple(u), tuple(v)
    m, n = len(u), len(v)
    if m + n > bound:
        raise ValueError(f"|u|+|v| = {m + n} exceeds the enumeration bound {bound}")
    best, best_key = None, None
    for slots in itertools.combinations(range(m + n), m):
        picked = set(slots)
        iu, iv = iter(u), iter(v)
        w = tuple(next(iu) if p in picked else next(iv) for p in range(m + n))
        k = order.key(w)
        if best_key is None or k > best_key:
            best, best_key = w, k
    return best

