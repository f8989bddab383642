"""Finite-type root systems, Weyl group elements and reduced words.

Roots are integer coefficient tuples over the simple roots. Letters of words
are 1-based, as in s_1, s_2, ...; everything else is 0-based.

>>> a2 = build_cartan("A", 2)
>>> a2.positive_roots
((1, 0), (0, 1), (1, 1))
>>> weyl_from_word(a2, (1, 2, 1)).length
3
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction as Q
from math import gcd, lcm
from typing import Sequence

from .exact import inverse, matmul, matvec

Root = tuple[int, ...]
Word = tuple[int, ...]

ROOT_COUNTS = {
    "A": lambda n: n * (n + 1) // 2,
    "B": lambda n: n * n,
    "C": lambda n: n * n,
    "D": lambda n: n * (n - 1),
    "E": lambda n: {6: 36, 7: 63, 8: 120}[n],
    "F": lambda n: 24,
    "G": lambda n: 6,
}


class InvalidTypeError(ValueError):
    pass


class NotReducedError(ValueError):
    pass


@dataclass(frozen=True)
class CartanData:
    family: str
    rank: int
    cartan: tuple[tuple[int, ...], ...]
    positive_roots: tuple[Root, ...]
    heights: tuple[int, ...]

    @property
    def name(self) -> str:
        return f"{self.family}{self.rank}"

    def simple_root(self, i: int) -> Root:
        """alpha_i for a 1-based letter i."""
        return tuple(int(j == i - 1) for j in range(self.rank))

    def is_positive_root(self, v: Sequence[int]) -> bool:
        return tuple(v) in self._root_set

    @property
    def _root_set(self) -> frozenset[Root]:
        s = self.__dict__.get("_roots_cache")
        if s is None:
            s = frozenset(self.positive_roots)
            object.__setattr__(self, "_roots_cache", s)
        return s

    def reflect(self, i: int, v: Sequence[int]) -> Root:
        """s_i(v) = v - <alpha_i^vee, v> alpha_i, with i a 1-based letter."""
        row = self.cartan[i - 1]
        c = sum(a * x for a, x in zip(row, v))
        out = list(v)
        out[i - 1] -= c
        return tuple(out)


def _bonds(family: str, n: int) -> tuple[list[tuple[int, int]], list[int]]:
    """Dynkin edges (0-based) and doubled squared root lengths, Bourbaki numbering."""
    chain = [(i, i + 1) for i in range(n - 1)]
    if family == "A":
        return chain, [2] * n
    if family == "B":
        return chain, [2] * (n - 1) + [1]
    if family == "C":
        return chain, [1] * (n - 1) + [2]
    if family == "D":
        return [(i, i + 1) for i in range(n - 2)] + [(n - 3, n - 1)], [2] * n
    if family == "E":
        edges = [(0, 2), (2, 3), (3, 4), (1, 3)] + [(i, i + 1) for i in range(4, n - 1)]
        return edges, [2] * n
    if family == "F":
        return chain, [2, 2, 1, 1]
    if family == "G":
        return chain, [1, 3]
    raise InvalidTypeError(f"unknown family {family!r}")


def _valid(family: str, n: int) -> bool:
    return (
        (family == "A" and n >= 1)
        or (family in "BC" and n >= 2)
        or (family == "D" and n >= 4)
        or (family == "E" and n in (6, 7, 8))
        or (family == "F" and n == 4)
        or (family == "G" and n == 2)
    )


def cartan_matrix(family: str, n: int) -> tuple[tuple[int, ...], ...]:
    """a_ij = 2 (alpha_i, alpha_j) / (alpha_i, alpha_i)."""
    if family not in ROOT_COUNTS or not _valid(family, n):
        raise InvalidTypeError(f"{family}{n} is not a finite type")
    edges, lengths = _bonds(family, n)
    form = [[Q(0)] * n for _ in range(n)]
    for i in range(n):
        form[i][i] = Q(lengths[i])
    for i, j in edges:
        # adjacent simple roots: (a_i, a_j) = -max(|a_i|^2, |a_j|^2) / 2
        form[i][j] = form[j][i] = -Q(max(lengths[i], lengths[j]), 2)
    return tuple(tuple(int(2 * form[i][j] / form[i][i]) for j in range(n)) for i in range(n))


def parse_type(name: str) -> tuple[str, int]:
    """'A3' -> ('A', 3)."""
    name = name.strip()
    if len(name) < 2 or not name[1:].isdigit():
        raise InvalidTypeError(f"cannot parse type {name!r}")
    family, n = name[0].upper(), int(name[1:])
    if family not in ROOT_COUNTS or not _valid(family, n):
        raise InvalidTypeError(f"{name} is not a finite type")
    return family, n


def build_cartan(family: str, rank: int) -> CartanData:
    a = cartan_matrix(family, rank)
    simple = [tuple(int(j == i) for j in range(rank)) for i in range(rank)]
    seen = set(simple)
    frontier = list(simple)
    while frontier:
        nxt = []
        for v in frontier:
            for i in range(rank):
                c = sum(a[i][j] * v[j] for j in range(rank))
                u = list(v)
                u[i] -= c
                u = tuple(u)
                if u not in seen and all(x >= 0 for x in u):
                    seen.add(u)
                    nxt.append(u)
        frontier = nxt
    roots = tuple(sorted(seen, key=lambda r: (sum(r), tuple(-x for x in r))))
    if len(roots) != ROOT_COUNTS[family](rank):
        raise AssertionError(f"root closure for {family}{rank} gave {len(roots)} roots")
    return CartanData(family, rank, a, roots, tuple(sum(r) for r in roots))


def symmetrizer(cartan: CartanData) -> tuple[int, ...]:
    """Smallest positive integers d_i with d_i a_ij = d_j a_ji."""
    n, a = cartan.rank, cartan.cartan
    d: list[Q | None] = [None] * n
    d[0] = Q(1)
    stack = [0]
    while stack:
        i = stack.pop()
        for j in range(n):
            if a[i][j] and d[j] is None:
                d[j] = d[i] * a[i][j] / a[j][i]
                stack.append(j)
    scale = lcm(*(x.denominator for x in d))
    out = [int(x * scale) for x in d]
    g = gcd(*out)
    return tuple(x // g for x in out)


def reflection_matrix(cartan: CartanData, i: int) -> tuple[tuple[int, ...], ...]:
    """Matrix of s_i on the simple-root basis (column j is s_i(alpha_j))."""
    n = cartan.rank
    cols = [cartan.reflect(i, cartan.simple_root(j + 1)) for j in range(n)]
    return tuple(tuple(cols[c][r] for c in range(n)) for r in range(n))


@dataclass(frozen=True)
class WeylElement:
    """Hashed and compared by its action matrix only."""

    matrix: tuple[tuple[int, ...], ...]
    length: int
    cartan: CartanData = field(compare=False, repr=False)

    def act(self, v: Sequence[int]) -> Root:
        return matvec(self.matrix, v)

    @property
    def inverse_matrix(self) -> tuple[tuple[int, ...], ...]:
        inv = self.__dict__.get("_inv")
        if inv is None:
            # det is +-1, so the inverse is integral
            inv = tuple(tuple(int(x) for x in row) for row in inverse(self.matrix))
            object.__setattr__(self, "_inv", inv)
        return inv

    def act_inverse(self, v: Sequence[int]) -> Root:
        return matvec(self.inverse_matrix, v)

    def times_simple(self, i: int) -> WeylElement:
        """w s_i."""
        m = matmul(self.matrix, reflection_matrix(self.cartan, i))
        return _element(self.cartan, m)

    def right_descents(self) -> tuple[int, ...]:
        """Letters i with l(w s_i) < l(w), i.e. w(alpha_i) < 0."""
        return tuple(
            i for i in range(1, self.cartan.rank + 1)
            if any(x < 0 for x in self.act(self.cartan.simple_root(i)))
        )


def _length(cartan: CartanData, m) -> int:
    return sum(1 for b in cartan.positive_roots if any(x < 0 for x in matvec(m, b)))


def _element(cartan: CartanData, m) -> WeylElement:
    m = tuple(tuple(int(x) for x in row) for row in m)
    return WeylElement(m, _length(cartan, m), cartan)


def identity_element(cartan: CartanData) -> WeylElement:
    n = cartan.rank
    return WeylElement(tuple(tuple(int(i == j) for j in range(n)) for i in range(n)), 0, cartan)


def _check_letters(cartan: CartanData, letters: Sequence[int]) -> Word:
    word = tuple(int(x) for x in letters)
    bad = [x for x in word if not 1 <= x <= cartan.rank]
    if bad:
        raise ValueError(f"letters {bad} out of range 1..{cartan.rank}")
    return word


def weyl_from_word(cartan: CartanData, letters: Sequence[int]) -> WeylElement:
    word = _check_letters(cartan, letters)
    n = cartan.rank
    m = tuple(tuple(int(i == j) for j in range(n)) for i in range(n))
    for i in word:
        m = matmul(m, reflection_matrix(cartan, i))
    return _element(cartan, m)


def is_reduced(cartan: CartanData, letters: Sequence[int]) -> bool:
    return weyl_from_word(cartan, letters).length == len(letters)


def inversion_set(w: WeylElement) -> frozenset[Root]:
    """Phi_+ cap w Phi_-: positive roots beta with w^{-1}(beta) negative."""
    return frozenset(
        b for b in w.cartan.positive_roots if any(x < 0 for x in w.act_inverse(b))
    )


def beta_sequence(cartan: CartanData, letters: Sequence[int]) -> tuple[Root, ...]:
    """beta_k = s_{i_1} ... s_{i_{k-1}}(alpha_{i_k})."""
    word = _check_letters(cartan, letters)
    out = []
    for k, i in enumerate(word):
        v = cartan.simple_root(i)
        for j in reversed(word[:k]):
            v = cartan.reflect(j, v)
        if not cartan.is_positive_root(v):
            raise NotReducedError(f"word {word} is not reduced")
        out.append(v)
    if len(set(out)) != len(out):
        raise NotReducedError(f"word {word} is not reduced")
    return tuple(out)


def longest_element(cartan: CartanData) -> WeylElement:
    return weyl_from_word(cartan, longest_word(cartan))


def longest_word(cartan: CartanData) -> Word:
    """Some reduced word for w0, grown by right multiplication."""
    w = identity_element(cartan)
    word = []
    while True:
        asc = [i for i in range(1, cartan.rank + 1) if i not in w.right_descents()]
        if not asc:
            return tuple(word)
        w = w.times_simple(asc[0])
        word.append(asc[0])


def some_reduced_word(w: WeylElement) -> Word:
    """A reduced word for w, peeling right descents."""
    word = []
    while w.length:
        i = w.right_descents()[0]
        word.append(i)
        w = w.times_simple(i)
    return tuple(reversed(word))


def count_reduced_expressions(w: WeylElement) -> int:
    """Number of reduced words: sum over right descents of the count for w s_i."""
    memo: dict[tuple, int] = {}

    def count(u: WeylElement) -> int:
        if u.length == 0:
            return 1
        hit = memo.get(u.matrix)
        if hit is None:
            hit = sum(count(u.times_simple(i)) for i in u.right_descents())
            memo[u.matrix] = hit
        return hit

    return count(w)

