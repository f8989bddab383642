"""Seeds of the quantum unipotent coordinate ring, tracked by valuation vectors.

Positions k = 0..N-1 index the letters of the order-induced reduced word. A
seed carries, for every position j, the exponent vector psi_j of the dominant
word of its cluster variable, the exchange matrix B, the vectors
muhat_j = sum_i B[i][j] psi_i for exchangeable j, and the normal vectors n_j.
Mutation never looks at actual cluster variables: the valuation of the new
variable is read off the tropical rule with the sign eta of muhat_k.
"""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction as Q
from typing import Sequence

from .exact import columns_to_matrix, det_int, solve_columns
from .lyndon import AlphabetOrder, GoodLyndonTable, Word, compute_good_lyndon
from .rootsys import CartanData, Root, WeylElement, beta_sequence, inversion_set

Vec = tuple[int, ...]


class NonConvexOrderError(ValueError):
    """The order restricted to Phi_+^w is not the order of any reduced word of w."""


class InvariantViolation(AssertionError):
    """A seed failed a structural check; path is the mutation sequence leading to it."""

    def __init__(self, message: str, path: tuple[int, ...] = ()):
        super().__init__(f"{message} (mutation path {[k + 1 for k in path]})")
        self.path = path


def _pos(x: int) -> int:
    return x if x > 0 else 0


def _add(u, v):
    return tuple(a + b for a, b in zip(u, v))


def _scale(c, v):
    return tuple(c * a for a in v)


def revlex_sign(v: Sequence) -> int:
    """Sign of v in the reversed lexicographic order: sign of its last nonzero entry."""
    for x in reversed(v):
        if x:
            return 1 if x > 0 else -1
    return 0


def reduced_word_for_order(table: GoodLyndonTable, w: WeylElement) -> Word:
    """The reduced word whose beta sequence is Phi_+^w sorted by good Lyndon words."""
    cartan = table.cartan
    if w.length == 0:
        raise ValueError("w must not be the identity")
    rest = sorted(inversion_set(w), key=lambda b: table.order.key(table.word_of(b)))
    word = []
    while rest:
        head = rest[0]
        if sum(head) != 1:
            # beta_1 of any reduced word is simple, so no reduced word of w
            # realizes this order
            raise NonConvexOrderError(
                f"order {list(table.order.perm)} does not induce a reduced word of w: "
                f"after the prefix {word} the next root {head} is not simple"
            )
        i = head.index(1) + 1
        word.append(i)
        rest = [cartan.reflect(i, b) for b in rest[1:]]
    return tuple(word)


@dataclass(frozen=True)
class SeedContext:
    cartan: CartanData = field(repr=False)
    table: GoodLyndonTable = field(repr=False)
    w: WeylElement = field(repr=False)
    word: Word
    betas: tuple[Root, ...]
    gl_words: tuple[Word, ...]
    kplus: tuple[int, ...]  # N means "none"
    kminus: tuple[int | None, ...]
    exchangeable: tuple[int, ...]
    frozen: tuple[int, ...]
    lam: tuple[int, ...]

    @property
    def order(self) -> AlphabetOrder:
        return self.table.order

    @property
    def N(self) -> int:
        return len(self.word)

    def weight(self, v: Sequence[int]) -> Root:
        """wt(v) = sum_k v_k beta_k."""
        n = self.cartan.rank
        return tuple(sum(c * b[i] for c, b in zip(v, self.betas)) for i in range(n))

    def degree(self, v: Sequence) -> int:
        """<lambda, v>: the number of letters of the corresponding word."""
        return sum(a * b for a, b in zip(self.lam, v))


def make_context(cartan: CartanData, order: AlphabetOrder, w: WeylElement,
                 table: GoodLyndonTable | None = None) -> SeedContext:
    table = table or compute_good_lyndon(cartan, order)
    word = reduced_word_for_order(table, w)
    betas = beta_sequence(cartan, word)
    N = len(word)
    kplus = tuple(next((s for s in range(k + 1, N) if word[s] == word[k]), N) for k in range(N))
    kminus = tuple(next((s for s in range(k - 1, -1, -1) if word[s] == word[k]), None)
                   for k in range(N))
    gl = tuple(table.word_of(b) for b in betas)
    keys = [order.key(g) for g in gl]
    if any(a >= b for a, b in zip(keys, keys[1:])):
        raise AssertionError("beta sequence is not increasing for the order")
    return SeedContext(
        cartan, table, w, word, betas, gl, kplus, kminus,
        tuple(k for k in range(N) if kplus[k] < N),
        tuple(k for k in range(N) if kplus[k] == N),
        tuple(sum(b) for b in betas),
    )


@dataclass(frozen=True)
class Seed:
    """Compared on (B, psi, muhat, nvec); depth and path are bookkeeping."""

    B: tuple[tuple[int, ...], ...]
    psi: tuple[Vec, ...]
    muhat: tuple[Vec | None, ...]  # None at frozen positions
    nvec: tuple[tuple[Q, ...], ...]
    depth: int = field(default=0, compare=False)
    path: tuple[int, ...] = field(default=(), compare=False)

    @property
    def psi_matrix(self) -> tuple[tuple[int, ...], ...]:
        """M_S: the matrix whose j-th column is psi_j."""
        return columns_to_matrix(self.psi)


def initial_exchange_matrix(ctx: SeedContext) -> tuple[tuple[int, ...], ...]:
    N, kp, a = ctx.N, ctx.kplus, ctx.cartan.cartan
    ex = set(ctx.exchangeable)
    B = [[0] * N for _ in range(N)]
    for k in range(N):
        for l in range(N):
            if k == l or (k not in ex and l not in ex):
                continue
            ik, il = ctx.word[k] - 1, ctx.word[l] - 1
            if l == kp[k]:
                B[k][l] = 1
            elif k == kp[l]:
                B[k][l] = -1
            elif l < k < kp[l] < kp[k]:
                B[k][l] = -a[ik][il]
            elif k < l < kp[k] < kp[l]:
                B[k][l] = a[ik][il]
    return tuple(map(tuple, B))


def muhat_vectors(B, psi, exchangeable) -> tuple[Vec | None, ...]:
    N = len(psi)
    out: list[Vec | None] = [None] * N
    for j in exchangeable:
        v = (0,) * N
        for i in range(N):
            if B[i][j]:
                v = _add(v, _scale(B[i][j], psi[i]))
        out[j] = v
    return tuple(out)


def initial_nvec(ctx: SeedContext) -> tuple[tuple[Q, ...], ...]:
    N, lam = ctx.N, ctx.lam
    norm2 = sum(x * x for x in lam)
    out = []
    for j in range(N):
        e = [Q(int(i == j)) for i in range(N)]
        jp = ctx.kplus[j]
        if jp < N:
            e[jp] -= 1
            c = Q(lam[j] - lam[jp], norm2)
        else:
            c = Q(lam[j], norm2)
        out.append(tuple(x - c * l for x, l in zip(e, lam)))
    return tuple(out)


def initial_seed(ctx: SeedContext) -> Seed:
    """psi_k = sum of e_j over earlier positions j <= k carrying the same letter."""
    N = ctx.N
    psi = tuple(
        tuple(int(j <= k and ctx.word[j] == ctx.word[k]) for j in range(N)) for k in range(N)
    )
    B = initial_exchange_matrix(ctx)
    return Seed(B, psi, muhat_vectors(B, psi, ctx.exchangeable), initial_nvec(ctx))


def mutation_sign(seed: Seed, k: int) -> int:
    """eta_k: +1 iff muhat_k is positive in the reversed lexicographic order."""
    s = revlex_sign(seed.muhat[k])
    if s == 0:
        raise InvariantViolation(f"muhat_{k + 1} vanishes", seed.path)
    return s


def mutate_matrix(B, k: int) -> tuple[tuple[int, ...], ...]:
    N = len(B)
    out = []
    for i in range(N):
        row = []
        for j in range(N):
            if i == k or j == k:
                row.append(-B[i][j])
            else:
                row.append(B[i][j] + _pos(B[i][k]) * _pos(B[k][j])
                           - _pos(-B[i][k]) * _pos(-B[k][j]))
        out.append(tuple(row))
    return tuple(out)


def mutate(seed: Seed, ctx: SeedContext, k: int) -> Seed:
    """Mutation at exchangeable position k (0-based)."""
    if k not in ctx.exchangeable:
        raise ValueError(f"position {k + 1} is frozen or out of range")
    N, B = ctx.N, seed.B
    eta = mutation_sign(seed, k)
    path = seed.path + (k,)

    new_k = _scale(-1, seed.psi[k])
    for i in range(N):
        c = _pos(eta * B[i][k])
        if c:
            new_k = _add(new_k, _scale(c, seed.psi[i]))
    if any(x < 0 for x in new_k):
        raise InvariantViolation(f"negative valuation {new_k} at position {k + 1}", path)
    psi = seed.psi[:k] + (new_k,) + seed.psi[k + 1:]

    # muhat_j = M B e_j is carried by the g-vector rule
    # muhat'_j = muhat_j + [-eta b_kj]_+ muhat_k; with B skew-symmetric this is
    # the same as the n-vector rule below.
    muhat = list(seed.muhat)
    for j in ctx.exchangeable:
        if j == k:
            muhat[j] = _scale(-1, seed.muhat[k])
        else:
            c = _pos(-eta * B[k][j])
            if c:
                muhat[j] = _add(seed.muhat[j], _scale(c, seed.muhat[k]))

    nvec = list(seed.nvec)
    nvec[k] = tuple(-x for x in seed.nvec[k])
    for j in range(N):
        c = _pos(eta * B[j][k])
        if j != k and c:
            nvec[j] = tuple(x + c * y for x, y in zip(seed.nvec[j], seed.nvec[k]))

    return Seed(mutate_matrix(B, k), psi, tuple(muhat), tuple(nvec), seed.depth + 1, path)


def check_seed(seed: Seed, ctx: SeedContext) -> None:
    """Raise InvariantViolation unless the structural seed invariants hold."""
    path = seed.path
    if any(x < 0 for v in seed.psi for x in v):
        raise InvariantViolation("negative psi entry", path)
    if len(set(seed.psi)) != ctx.N:
        raise InvariantViolation("repeated psi vector", path)
    if abs(det_int(seed.psi_matrix)) != 1:
        raise InvariantViolation("psi matrix is not unimodular", path)
    expect = muhat_vectors(seed.B, seed.psi, ctx.exchangeable)
    for j in ctx.exchangeable:
        if seed.muhat[j] != expect[j]:
            raise InvariantViolation(f"muhat_{j + 1} != sum_i b_ij psi_i", path)
        if any(ctx.weight(seed.muhat[j])):
            raise InvariantViolation(f"muhat_{j + 1} has nonzero weight", path)


def canonical_key(seed: Seed, ctx: SeedContext) -> tuple:
    """Invariant under relabelling exchangeable positions; frozen labels are pinned."""
    ex = sorted(ctx.exchangeable, key=lambda j: seed.psi[j])
    rows = list(ctx.frozen) + ex
    return (
        tuple(seed.psi[j] for j in ex),
        tuple(tuple(seed.B[i][j] for i in rows) for j in ex),
    )


@dataclass
class Enumeration:
    seeds: list[Seed]
    complete: bool

    def __len__(self) -> int:
        return len(self.seeds)


def enumerate_seeds(ctx: SeedContext, cap: int = 10_000, start: Seed | None = None) -> Enumeration:
    """Breadth-first search of the exchange graph, up to cap distinct seeds."""
    if cap < 1:
        raise ValueError("cap must be positive")
    first = start or initial_seed(ctx)
    seen = {canonical_key(first, ctx)}
    seeds = [first]
    queue = deque([first])
    while queue:
        s = queue.popleft()
        for k in ctx.exchangeable:
            t = mutate(s, ctx, k)
            key = canonical_key(t, ctx)
            if key in seen:
                continue
            if len(seeds) >= cap:
                return Enumeration(seeds, False)
            seen.add(key)
            seeds.append(t)
            queue.append(t)
    return Enumeration(seeds, True)


def cluster_vectors(seeds: Sequence[Seed]) -> set[Vec]:
    return {v for s in seeds for v in s.psi}


def dominance_leq(seed: Seed, ctx: SeedContext, v: Sequence[int], v2: Sequence[int]) -> bool:
    """v <= v2 iff v2 - v is a nonnegative integer combination of the muhat_j."""
    d = tuple(b - a for a, b in zip(v, v2))
    if any(ctx.weight(d)):
        return False
    gamma = solve_columns([seed.muhat[j] for j in ctx.exchangeable], d)
    if gamma is None:
        raise InvariantViolation("weight-zero vector outside the muhat span", seed.path)
    return all(g.denominator == 1 and g >= 0 for g in gamma)


def corcompat_signs(seed: Seed, ctx: SeedContext) -> dict[int, int]:
    """Reversed-lex sign of -muhat_j, and check that its last nonzero entry sits at j_+.

    -muhat_j is the valuation of y_j = x_{j+} x_{j-}^{-1} prod(...) in the
    orientation where y_j raises the dominance order; for the initial seed it
    should be positive for every exchangeable j.
    """
    out = {}
    for j in ctx.exchangeable:
        v = _scale(-1, seed.muhat[j])
        top = max(i for i, x in enumerate(v) if x)
        out[j] = revlex_sign(v) if top == ctx.kplus[j] else 0
    return out
