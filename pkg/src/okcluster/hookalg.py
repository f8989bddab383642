"""Exact polynomial arithmetic in alpha_1..alpha_n and the hook identities.

The product identity compares prod_beta 1/beta with a sum over seeds of
prod_j 1/wt(x_j); both sides are sums of reciprocals of products of linear
forms, decided by expanding numerators over one common denominator.
"""
from __future__ import annotations

import hashlib
from collections import Counter
from dataclasses import dataclass
from fractions import Fraction as Q
from math import factorial, prod
from typing import Iterable, Sequence

from .cluster import Enumeration, Seed, SeedContext
from .lyndon import DominantWord
from .rootsys import count_reduced_expressions, inversion_set

Monomial = tuple[int, ...]
LinearForm = tuple[int, ...]


class IncompleteEnumerationError(ValueError):
    pass


class SparsePoly:
    """Polynomial as {exponent tuple: nonzero Fraction}."""

    __slots__ = ("nvars", "terms")

    def __init__(self, nvars: int, terms: dict[Monomial, Q] | None = None):
        self.nvars = nvars
        self.terms = {m: Q(c) for m, c in (terms or {}).items() if c}

    @classmethod
    def constant(cls, nvars: int, c) -> SparsePoly:
        return cls(nvars, {(0,) * nvars: Q(c)})

    @classmethod
    def linear(cls, form: Sequence[int]) -> SparsePoly:
        n = len(form)
        return cls(n, {tuple(int(i == j) for i in range(n)): Q(c) for j, c in enumerate(form)})

    def __add__(self, other: SparsePoly) -> SparsePoly:
        out = dict(self.terms)
        for m, c in other.terms.items():
            out[m] = out.get(m, 0) + c
        return SparsePoly(self.nvars, out)

    def __neg__(self) -> SparsePoly:
        return SparsePoly(self.nvars, {m: -c for m, c in self.terms.items()})

    def __sub__(self, other: SparsePoly) -> SparsePoly:
        return self + (-other)

    def __mul__(self, other: SparsePoly) -> SparsePoly:
        out: dict[Monomial, Q] = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                m = tuple(a + b for a, b in zip(m1, m2))
                out[m] = out.get(m, 0) + c1 * c2
        return SparsePoly(self.nvars, out)

    def __pow__(self, e: int) -> SparsePoly:
        out = SparsePoly.constant(self.nvars, 1)
        for _ in range(e):
            out = out * self
        return out

    def __eq__(self, other) -> bool:
        return isinstance(other, SparsePoly) and self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __bool__(self) -> bool:
        return bool(self.terms)

    def evaluate(self, point: Sequence) -> Q:
        return sum((c * prod(Q(x) ** e for x, e in zip(point, m)) for m, c in self.terms.items()),
                   Q(0))

    def canonical(self) -> str:
        return ";".join(f"{','.join(map(str, m))}:{c}" for m, c in sorted(self.terms.items()))

    def digest(self) -> str:
        return hashlib.sha256(self.canonical().encode()).hexdigest()

    def __repr__(self) -> str:
        return f"SparsePoly({self.canonical() or '0'})"


def weight_linear_form(ctx: SeedContext, v: Sequence[int] | DominantWord) -> LinearForm:
    """Linear form of wt(v) = sum_k v_k beta_k, or of the weight of a dominant word."""
    if isinstance(v, DominantWord):
        form = v.weight
    else:
        if any(x < 0 for x in v):
            raise ValueError("weight forms need a nonnegative vector")
        form = ctx.weight(v)
    if not any(form):
        raise ValueError("zero vector has no weight form")
    return tuple(form)


@dataclass(frozen=True)
class ReciprocalProductSum:
    """sum over terms of 1 / prod(forms in the term)."""

    terms: tuple[tuple[LinearForm, ...], ...]

    @classmethod
    def of(cls, terms: Iterable[Iterable[Sequence[int]]]) -> ReciprocalProductSum:
        return cls(tuple(tuple(sorted(tuple(f) for f in t)) for t in terms))

    @property
    def nvars(self) -> int:
        return len(self.terms[0][0])

    def evaluate(self, point: Sequence) -> Q:
        return sum((1 / prod(sum(Q(c) * x for c, x in zip(f, point)) for f in t)
                    for t in self.terms), Q(0))


@dataclass(frozen=True)
class SumCertificate:
    equal: bool
    denominator: tuple[tuple[LinearForm, int], ...]
    lhs_digest: str
    rhs_digest: str


def _numerator(s: ReciprocalProductSum, denom: dict[LinearForm, int], n: int) -> SparsePoly:
    cache: dict[tuple[LinearForm, int], SparsePoly] = {}
    total = SparsePoly(n)
    for t in s.terms:
        mult = Counter(t)
        num = SparsePoly.constant(n, 1)
        for f, e in denom.items():
            k = e - mult.get(f, 0)
            if k:
                p = cache.get((f, k))
                if p is None:
                    p = cache[(f, k)] = SparsePoly.linear(f) ** k
                num = num * p
        total = total + num
    return total


def sum_equals(lhs: ReciprocalProductSum, rhs: ReciprocalProductSum) -> tuple[bool, SumCertificate]:
    """Exact equality of two sums of reciprocal products of linear forms."""
    denom: dict[LinearForm, int] = {}
    for t in lhs.terms + rhs.terms:
        for f, e in Counter(t).items():
            if not any(f):
                raise ValueError("zero linear form in a denominator")
            denom[f] = max(denom.get(f, 0), e)
    n = len(next(iter(denom)))
    a, b = _numerator(lhs, denom, n), _numerator(rhs, denom, n)
    ok = a == b
    return ok, SumCertificate(ok, tuple(sorted(denom.items())), a.digest(), b.digest())


def _require_complete(enum: Enumeration) -> None:
    if not enum.complete:
        raise IncompleteEnumerationError(
            f"seed enumeration stopped at {len(enum.seeds)} seeds before closing; "
            "the hook identities need every seed"
        )


@dataclass(frozen=True)
class HookReport:
    verdict: bool
    lhs: ReciprocalProductSum
    rhs: ReciprocalProductSum
    certificate: SumCertificate


def prophook_sums(ctx: SeedContext, seeds: Sequence[Seed]) -> tuple[ReciprocalProductSum, ReciprocalProductSum]:
    lhs = ReciprocalProductSum.of([sorted(inversion_set(ctx.w))])
    rhs = ReciprocalProductSum.of([[weight_linear_form(ctx, v) for v in s.psi] for s in seeds])
    return lhs, rhs


def verify_prophook(ctx: SeedContext, enum: Enumeration) -> HookReport:
    _require_complete(enum)
    lhs, rhs = prophook_sums(ctx, enum.seeds)
    ok, cert = sum_equals(lhs, rhs)
    return HookReport(ok, lhs, rhs, cert)


@dataclass(frozen=True)
class CorhookReport:
    holds: bool
    lhs: Q  # sum over seeds of N! / prod |mu_j|
    rhs: Q  # N! / prod ht(beta)


def verify_corhook(ctx: SeedContext, enum: Enumeration) -> CorhookReport:
    _require_complete(enum)
    f = factorial(ctx.N)
    lhs = sum((Q(f, prod(ctx.degree(v) for v in s.psi)) for s in enum.seeds), Q(0))
    rhs = Q(f, prod(sum(b) for b in inversion_set(ctx.w)))
    return CorhookReport(lhs == rhs, lhs, rhs)


@dataclass(frozen=True)
class PetersonProctor:
    hook: Q
    reduced_words: int

    @property
    def match(self) -> bool:
        return self.hook == self.reduced_words


def peterson_proctor_report(ctx: SeedContext) -> PetersonProctor:
    hook = Q(factorial(ctx.N), prod(ctx.lam))
    return PetersonProctor(hook, count_reduced_expressions(ctx.w))
