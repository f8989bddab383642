"""Newton-Okounkov simplices of seeds, normal fans and cluster-monomial points.

All simplices live in the hyperplane H = {x : <lambda, x> = 1} where
lambda_k = ht(beta_k). Volumes are reported in the normalization
1 / prod_j <lambda, psi_j>, which is the Euclidean volume of the cone section
up to a factor depending on w only.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction as Q
from math import lcm, prod
from typing import Sequence

from .cluster import InvariantViolation, Seed, SeedContext, revlex_sign
from .exact import dot, inverse, rank, solve_columns, transpose
from .rootsys import symmetrizer


def revlex_compare(a: Sequence, b: Sequence) -> int:
    """Compare at the largest index where a and b differ."""
    if len(a) != len(b):
        raise ValueError("dimension mismatch")
    return revlex_sign([x - y for x, y in zip(a, b)])


def psi_of_monomial(seed: Seed, a: Sequence[int]) -> tuple[int, ...]:
    N = len(seed.psi)
    return tuple(sum(a[j] * seed.psi[j][i] for j in range(N)) for i in range(N))


@dataclass(frozen=True)
class RationalSimplex:
    lam: tuple[int, ...]
    vertices: tuple[tuple[Q, ...], ...]
    normals_N: tuple[tuple[Q, ...], ...]
    normals_n: tuple[tuple[Q, ...], ...]
    volume: Q


def _project(lam, v) -> tuple[Q, ...]:
    """Orthogonal projection onto the hyperplane through 0 parallel to H."""
    c = Q(dot(lam, v), dot(lam, lam))
    return tuple(Q(x) - c * l for x, l in zip(v, lam))


def _simplex(lam, cols, normals_n=None) -> RationalSimplex:
    degs = [dot(lam, c) for c in cols]
    verts = tuple(tuple(Q(x, d) for x in c) for c, d in zip(cols, degs))
    # N_j are the rows of M^{-1}, i.e. the columns of M^{-T}
    Ns = inverse(transpose(cols))
    if normals_n is None:
        normals_n = tuple(_project(lam, Nj) for Nj in Ns)
    return RationalSimplex(tuple(lam), verts, Ns, tuple(normals_n), Q(1, prod(degs)))


def delta_total(ctx: SeedContext) -> RationalSimplex:
    """Delta(A): the simplex spanned by e_k / ht(beta_k)."""
    N = ctx.N
    cols = [tuple(int(i == k) for i in range(N)) for k in range(N)]
    return _simplex(ctx.lam, cols)


def delta_seed(seed: Seed, ctx: SeedContext) -> RationalSimplex:
    return _simplex(ctx.lam, seed.psi, seed.nvec)


@dataclass(frozen=True)
class Decomposition:
    exponents: tuple[int, ...]
    scale: int


def decompose_point(seed: Seed, ctx: SeedContext, p: Sequence) -> Decomposition | None:
    """Write p (integer vector, or rational point of H) as psi . a with a in N^N.

    For an integer vector the scale is <lambda, p>. For a point of H the
    smallest l with l*p a nonnegative integer combination of the psi_j is used.
    Returns None when no such combination exists in this seed.
    """
    p = tuple(Q(x) for x in p)
    c = solve_columns(seed.psi, p)
    if any(x < 0 for x in c):
        return None
    if all(x.denominator == 1 for x in p) and ctx.degree(p) != 1:
        if any(x.denominator != 1 for x in c):
            return None
        return Decomposition(tuple(int(x) for x in c), int(ctx.degree(p)))
    if ctx.degree(p) != 1:
        return None
    l = lcm(*(x.denominator for x in c))
    return Decomposition(tuple(int(x * l) for x in c), l)


@dataclass(frozen=True)
class FanReport:
    N: tuple[tuple[Q, ...], ...]
    n: tuple[tuple[Q, ...], ...]
    checks: int


def normal_fan(seed: Seed, ctx: SeedContext) -> FanReport:
    """Check the normal vectors of Delta_S exactly; raise InvariantViolation on failure."""
    sx = delta_seed(seed, ctx)
    N = ctx.N
    path = seed.path
    checks = 0
    for i in range(N):
        for j in range(N):
            if dot(sx.normals_N[j], seed.psi[i]) != int(i == j):
                raise InvariantViolation(f"<N_{j + 1}, psi_{i + 1}> != delta", path)
            checks += 1
    for j in range(N):
        if tuple(seed.nvec[j]) != _project(ctx.lam, sx.normals_N[j]):
            raise InvariantViolation(f"n_{j + 1} is not the projection of N_{j + 1}", path)
        checks += 1
    v = sx.vertices
    for j in range(N):
        nj = seed.nvec[j]
        others = [p for p in range(N) if p != j]
        for p in others:
            if dot(nj, v[j]) - dot(nj, v[p]) <= 0:
                raise InvariantViolation(f"n_{j + 1} does not point into vertex {j + 1}", path)
            for q in others:
                if dot(nj, v[p]) != dot(nj, v[q]):
                    raise InvariantViolation(f"n_{j + 1} is not normal to facet {j + 1}", path)
                checks += 1
    for x in v:
        if ctx.degree(x) != 1:
            raise InvariantViolation("vertex off the hyperplane", path)
    return FanReport(sx.normals_N, seed.nvec, checks)


@dataclass(frozen=True)
class TMap:
    """The linear map on ker(wt) sending muhat_j of the initial seed to n_j."""

    basis: tuple[tuple[int, ...], ...]
    images: tuple[tuple[Q, ...], ...]

    def __call__(self, v: Sequence) -> tuple[Q, ...]:
        c = solve_columns(self.basis, v)
        if c is None:
            raise ValueError("vector is not in ker(wt)")
        N = len(v)
        return tuple(sum(cj * img[i] for cj, img in zip(c, self.images)) for i in range(N))

    @property
    def matrix(self) -> tuple[tuple[Q, ...], ...]:
        """N x N matrix agreeing with T on ker(wt) and vanishing on its orthogonal complement."""
        N = len(self.basis[0])
        ginv = inverse([[dot(u, v) for v in self.basis] for u in self.basis])
        # rows of the pseudo-inverse (B^T B)^{-1} B^T
        pinv = [[sum(g * b[c] for g, b in zip(grow, self.basis)) for c in range(N)]
                for grow in ginv]
        return tuple(
            tuple(sum(img[i] * prow[c] for img, prow in zip(self.images, pinv)) for c in range(N))
            for i in range(N)
        )


def build_tmap(seed: Seed, ctx: SeedContext, symmetrized: bool = False) -> TMap:
    """T(muhat_j) = n_j on the initial seed.

    With symmetrized=True the images are d_{i_j} n_j instead, d the symmetrizer
    of the Cartan matrix; then T(muhat_j) = d_{i_j} n_j persists in every seed
    also for non simply-laced types, where muhat and n follow different rules.
    """
    basis = tuple(seed.muhat[j] for j in ctx.exchangeable)
    d = symmetrizer(ctx.cartan) if symmetrized else (1,) * ctx.cartan.rank
    images = tuple(tuple(d[ctx.word[j] - 1] * x for x in seed.nvec[j]) for j in ctx.exchangeable)
    if basis and rank(basis) < len(basis):
        raise InvariantViolation("muhat vectors are linearly dependent", seed.path)
    if images and rank(images) < len(images):
        raise InvariantViolation("n vectors are linearly dependent", seed.path)
    return TMap(basis, images)


def tmap_defect(tmap: TMap, seed: Seed, ctx: SeedContext, symmetrized: bool = False) -> list[int]:
    """Exchangeable positions j where T(muhat_j) differs from n_j (or d_{i_j} n_j)."""
    d = symmetrizer(ctx.cartan) if symmetrized else (1,) * ctx.cartan.rank
    return [
        j for j in ctx.exchangeable
        if tmap(seed.muhat[j]) != tuple(d[ctx.word[j] - 1] * x for x in seed.nvec[j])
    ]


def _strict_feasible(rows: Sequence[Sequence[Q]]) -> bool:
    """Whether {y : r . y > 0 for every row r} is nonempty, by Fourier-Motzkin."""
    def normalize(r):
        m = max(abs(x) for x in r)
        return tuple(x / m for x in r)

    if any(not any(r) for r in rows):
        return False
    system = {normalize(r) for r in rows}
    for var in range(len(rows[0]) if rows else 0):
        pos = [r for r in system if r[var] > 0]
        neg = [r for r in system if r[var] < 0]
        nxt = {r for r in system if r[var] == 0}
        for p in pos:
            for q in neg:
                comb = tuple(-q[var] * a + p[var] * b for a, b in zip(p, q))
                if not any(comb):
                    return False  # 0 > 0
                nxt.add(normalize(comb))
        system = nxt
    return True


def interiors_disjoint(seed_a: Seed, seed_b: Seed, ctx: SeedContext) -> bool:
    """Exact test that the open simplices Delta_A and Delta_B do not meet.

    Both interiors are sections of the open cones {y : <N_j, y> > 0}; a point
    in both cones rescales to a common interior point of H.
    """
    sa, sb = delta_seed(seed_a, ctx), delta_seed(seed_b, ctx)
    # cheap certificate: a facet hyperplane of one simplex separates the other
    for s1, s2 in ((sa, seed_b), (sb, seed_a)):
        for Nj in s1.normals_N:
            if all(dot(Nj, v) <= 0 for v in s2.psi):
                return True
    return not _strict_feasible(list(sa.normals_N) + list(sb.normals_N))


def total_volume(seeds: Sequence[Seed], ctx: SeedContext) -> Q:
    return sum((Q(1, prod(ctx.degree(v) for v in s.psi)) for s in seeds), Q(0))
