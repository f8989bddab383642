"""Command line interface.

    okcluster roots     --type A3 --order 2,1,3 [--w 2,1,3,2]
    okcluster seed      --type A2 --w w0 [--mutate 1]
    okcluster enumerate --type A3 --w 1,2,3,1,2 [--cap 1000]
    okcluster polytopes --type A3 --w 1,2,3,1,2 [--project 3] [--out DIR]
    okcluster verify    --type A3 --order 2,1,3 --w 2,1,3,2 [--seeds FILE]

Positions and letters are 1-based on the command line and in JSON. Exit codes:
0 success, 1 verification failed, 2 usage error, 3 unsupported configuration.
"""
from __future__ import annotations

import argparse
import json
import re
import sys
from itertools import combinations
from dataclasses import dataclass
from fractions import Fraction as Q
from pathlib import Path
from typing import Sequence

from .cluster import (
    Enumeration, InvariantViolation, NonConvexOrderError, Seed, SeedContext, check_seed,
    enumerate_seeds, initial_seed, make_context, muhat_vectors, mutate,
)
from .hookalg import (
    IncompleteEnumerationError, peterson_proctor_report, prophook_sums, sum_equals,
    verify_corhook,
)
from .lyndon import AlphabetOrder, UnsupportedConfigurationError, compute_good_lyndon, natural_order
from .okbody import RationalSimplex, delta_seed, delta_total
from .rootsys import (
    CartanData, InvalidTypeError, NotReducedError, build_cartan, longest_element, parse_type,
    weyl_from_word,
)

EXIT_OK, EXIT_FAILED, EXIT_USAGE, EXIT_UNSUPPORTED = 0, 1, 2, 3


class UsageError(ValueError):
    pass


def rational(x) -> str:
    x = Q(x)
    return f"{x.numerator}/{x.denominator}"


def parse_rational(s) -> Q:
    return Q(s) if isinstance(s, int) else Q(str(s))


def word_str(word: Sequence[int], rank: int) -> str:
    if rank <= 9:
        return "".join(map(str, word))
    return ",".join(map(str, word))


_FLAT_LIST = re.compile(r"\[\s*([^\[\]{}]*?)\s*\]")


def dumps(obj) -> str:
    """Canonical JSON: sorted keys, two-space indent, scalar lists on one line."""
    text = json.dumps(obj, sort_keys=True, indent=2)
    return _FLAT_LIST.sub(lambda m: "[" + ", ".join(x.strip() for x in m.group(1).split(",")) + "]"
                          if m.group(1).strip() else "[]", text) + "\n"


@dataclass
class JobSpec:
    cartan: CartanData
    order: AlphabetOrder
    w_letters: tuple[int, ...] | None  # None means w0


def _parse_letters(text: str, what: str) -> tuple[int, ...]:
    try:
        return tuple(int(x) for x in text.split(",") if x.strip())
    except ValueError:
        raise UsageError(f"cannot parse {what} {text!r}") from None


def job_from_args(args) -> JobSpec:
    try:
        cartan = build_cartan(*parse_type(args.type))
    except InvalidTypeError as e:
        raise UsageError(str(e)) from None
    n = cartan.rank
    order = natural_order(n)
    if args.order:
        perm = _parse_letters(args.order, "order")
        if sorted(perm) != list(range(1, n + 1)):
            raise UsageError(f"--order must be a permutation of 1..{n}")
        order = AlphabetOrder(perm)
    w = getattr(args, "w", None)
    letters = None
    if w and w != "w0":
        letters = _parse_letters(w, "word")
        if any(not 1 <= x <= n for x in letters):
            raise UsageError(f"letters of --w must lie in 1..{n}")
    elif not w:
        letters = ()
    return JobSpec(cartan, order, letters)


def context_for(job: JobSpec) -> SeedContext:
    if job.w_letters is None:
        w = longest_element(job.cartan)
    else:
        w = weyl_from_word(job.cartan, job.w_letters)
        if w.length != len(job.w_letters):
            raise UsageError(f"--w {list(job.w_letters)} is not a reduced word")
    if w.length == 0:
        raise UsageError("--w must be a nonempty reduced word or w0")
    return make_context(job.cartan, job.order, w)


def seed_words(seed: Seed, ctx: SeedContext) -> list[str]:
    """Dominant word of each cluster variable: GL factors in decreasing order."""
    out = []
    for v in seed.psi:
        word = []
        for k in reversed(range(ctx.N)):
            word.extend(ctx.gl_words[k] * v[k])
        out.append(word_str(word, ctx.cartan.rank))
    return out


def seed_to_json(seed: Seed, ctx: SeedContext, with_float: bool = False) -> dict:
    N = ctx.N
    out = {
        "word": list(ctx.word),
        "B": [list(r) for r in seed.B],
        # matrix M_S: column j is psi_j
        "psi": [[seed.psi[j][i] for j in range(N)] for i in range(N)],
        "muhat": [list(m) if m is not None else None for m in seed.muhat],
        "nvec": [[rational(x) for x in v] for v in seed.nvec],
        "frozen": [k + 1 for k in ctx.frozen],
        "depth": seed.depth,
        "path": [k + 1 for k in seed.path],
        "words": seed_words(seed, ctx),
    }
    if with_float:
        out["nvec_float"] = [[float(x) for x in v] for v in seed.nvec]
    return out


def seed_from_json(obj: dict, ctx: SeedContext) -> Seed:
    N = ctx.N
    M = obj["psi"]
    if len(M) != N or any(len(r) != N for r in M):
        raise UsageError(f"seed psi matrix must be {N}x{N}")
    psi = tuple(tuple(int(M[i][j]) for i in range(N)) for j in range(N))
    B = tuple(tuple(int(x) for x in r) for r in obj["B"])
    nvec = tuple(tuple(parse_rational(x) for x in v) for v in obj["nvec"])
    return Seed(B, psi, muhat_vectors(B, psi, ctx.exchangeable), nvec,
                int(obj.get("depth", 0)), tuple(k - 1 for k in obj.get("path", ())))


def simplex_to_json(sx: RationalSimplex, with_float: bool = False) -> dict:
    out = {
        "lambda": list(sx.lam),
        "vertices": [[rational(x) for x in v] for v in sx.vertices],
        "N_rays": [[rational(x) for x in v] for v in sx.normals_N],
        "n_rays": [[rational(x) for x in v] for v in sx.normals_n],
        "volume": rational(sx.volume),
    }
    if with_float:
        out["vertices_float"] = [[float(x) for x in v] for v in sx.vertices]
        out["volume_float"] = float(sx.volume)
    return out


def project_simplices(simplices: Sequence[RationalSimplex], drop: Sequence[int]) -> list[list[tuple[Q, ...]]]:
    """Drop the given coordinates (0-based) for a low-dimensional picture.

    A dropped coordinate must vanish on every vertex except one shared
    standard-basis vertex, which is dropped too: each simplex is replaced by
    its facet opposite that vertex. If more than three coordinates remain,
    trailing ones are dropped as well; this is injective on H because every
    lambda_k is positive.
    """
    out = []
    for sx in simplices:
        verts = list(sx.vertices)
        for c in drop:
            hits = [v for v in verts if v[c] != 0]
            if len(hits) > 1 or any(x != 0 for i, x in enumerate(hits[0] if hits else ()) if i != c):
                raise UsageError(f"coordinate {c + 1} is not carried by a single basis vertex")
            verts = [v for v in verts if v[c] == 0]
        keep = [i for i in range(len(sx.lam)) if i not in drop]
        verts = [tuple(v[i] for i in keep) for v in verts]
        out.append([v[:3] for v in verts])
    return out


def off_text(faces_per_simplex: list[list[tuple[Q, ...]]]) -> str:
    """OFF polyhedral file with every triangle of every projected simplex."""
    points: dict[tuple, int] = {}
    faces = []
    for verts in faces_per_simplex:
        ids = [points.setdefault(tuple(v) + (Q(0),) * (3 - len(v)), len(points)) for v in verts]
        for tri in combinations(ids, 3):
            faces.append(tri)
    lines = ["OFF", f"{len(points)} {len(faces)} 0"]
    for p in points:
        lines.append(" ".join(repr(float(x)) for x in p))
    for f in faces:
        lines.append("3 " + " ".join(map(str, f)))
    return "\n".join(lines) + "\n"


def _emit(text: str, out: str | None) -> None:
    if out:
        Path(out).write_text(text)
    else:
        sys.stdout.write(text)


def cmd_roots(args) -> int:
    job = job_from_args(args)
    table = compute_good_lyndon(job.cartan, job.order)
    n = job.cartan.rank
    result = {
        "type": job.cartan.name,
        "order": list(job.order.perm),
        "roots": [
            {"root": list(r), "height": sum(r), "word": word_str(w, n)}
            for w, r in zip(table.words, table.roots)
        ],
    }
    if job.w_letters != ():
        ctx = context_for(job)
        result["w"] = list(ctx.word)
        result["inversions"] = [
            {"root": list(b), "height": sum(b), "word": word_str(g, n)}
            for b, g in zip(ctx.betas, ctx.gl_words)
        ]
    _emit(dumps(result), args.out)
    return EXIT_OK


def _require_w(job: JobSpec) -> None:
    if job.w_letters == ():
        raise UsageError("--w is required")


def cmd_seed(args) -> int:
    job = job_from_args(args)
    _require_w(job)
    ctx = context_for(job)
    seed = initial_seed(ctx)
    for k in _parse_letters(args.mutate or "", "mutation sequence"):
        if k - 1 not in ctx.exchangeable:
            raise UsageError(f"cannot mutate at {k}: exchangeable positions are "
                             f"{[j + 1 for j in ctx.exchangeable]}")
        seed = mutate(seed, ctx, k - 1)
    _emit(dumps(seed_to_json(seed, ctx, args.float)), args.out)
    return EXIT_OK


def cmd_enumerate(args) -> int:
    job = job_from_args(args)
    _require_w(job)
    ctx = context_for(job)
    enum = enumerate_seeds(ctx, args.cap)
    doc = {
        "complete": enum.complete,
        "count": len(enum.seeds),
        "seeds": [seed_to_json(s, ctx, args.float) for s in enum.seeds],
    }
    _emit(dumps(doc), args.out)
    return EXIT_OK


def cmd_polytopes(args) -> int:
    job = job_from_args(args)
    _require_w(job)
    ctx = context_for(job)
    enum = enumerate_seeds(ctx, args.cap)
    total = delta_total(ctx)
    simplices = [delta_seed(s, ctx) for s in enum.seeds]
    doc = {
        "complete": enum.complete,
        "total": simplex_to_json(total, args.float),
        "seeds": [simplex_to_json(sx, args.float) for sx in simplices],
    }
    off = None
    if args.project:
        drop = [c - 1 for c in _parse_letters(args.project, "projection")]
        if any(not 0 <= c < ctx.N for c in drop):
            raise UsageError(f"--project coordinates must lie in 1..{ctx.N}")
        projected = project_simplices(simplices, drop)
        doc["projection"] = {
            "dropped": [c + 1 for c in drop],
            "simplices": [[[rational(x) for x in v] for v in verts] for verts in projected],
        }
        off = off_text(projected)
    if args.out:
        d = Path(args.out)
        d.mkdir(parents=True, exist_ok=True)
        (d / "total.json").write_text(dumps(doc["total"]))
        for i, sx in enumerate(doc["seeds"], 1):
            (d / f"seed_{i:04d}.json").write_text(dumps(sx))
        if off is not None:
            (d / "projection.off").write_text(off)
        (d / "polytopes.json").write_text(dumps(doc))
    else:
        sys.stdout.write(dumps(doc))
    return EXIT_OK


def cmd_verify(args) -> int:
    job = job_from_args(args)
    _require_w(job)
    ctx = context_for(job)
    if args.seeds:
        try:
            data = json.loads(Path(args.seeds).read_text())
        except (OSError, ValueError) as e:
            raise UsageError(f"cannot read seed file: {e}") from None
        enum = Enumeration([seed_from_json(s, ctx) for s in data["seeds"]],
                           bool(data.get("complete", False)))
    else:
        enum = enumerate_seeds(ctx, args.cap)
    if not enum.complete:
        raise IncompleteEnumerationError(
            f"enumeration incomplete after {len(enum.seeds)} seeds (raise --cap)")
    verdict = True
    try:
        for s in enum.seeds:
            check_seed(s, ctx)
    except InvariantViolation as e:
        print(f"seed check failed: {e}", file=sys.stderr)
        verdict = False
    lhs, rhs = prophook_sums(ctx, enum.seeds)
    same, _ = sum_equals(lhs, rhs)
    cor = verify_corhook(ctx, enum)
    pp = peterson_proctor_report(ctx)
    verdict = verdict and same and cor.holds
    doc = {
        "w": list(ctx.word),
        "order": list(ctx.order.perm),
        "lhs_forms": [list(f) for f in lhs.terms[0]],
        "seeds": len(enum.seeds),
        "verdict": verdict,
        "corhook": {"lhs": rational(cor.lhs), "rhs": rational(cor.rhs)},
        "peterson_proctor": {
            "hook": rational(pp.hook),
            "reduced_words": str(pp.reduced_words),
            "match": pp.match,
        },
    }
    _emit(dumps(doc), args.out)
    return EXIT_OK if verdict else EXIT_FAILED


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="okcluster", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp):
        sp.add_argument("--type", required=True, help="Cartan type, e.g. A3")
        sp.add_argument("--order", help="letters from smallest to largest, e.g. 2,1,3")
        sp.add_argument("--w", help='reduced word as comma-separated letters, or "w0"')
        sp.add_argument("--out", help="output file (directory for polytopes)")
        sp.add_argument("--float", action="store_true", help="add decimal renderings")

    sp = sub.add_parser("roots", help="positive roots, good Lyndon words, inversions of w")
    common(sp)
    sp.set_defaults(func=cmd_roots)

    sp = sub.add_parser("seed", help="initial seed of the order-induced word")
    common(sp)
    sp.add_argument("--mutate", help="mutation directions to apply, e.g. 1,3")
    sp.set_defaults(func=cmd_seed)

    for name, func, helptext in (
        ("enumerate", cmd_enumerate, "all seeds reachable by mutation"),
        ("polytopes", cmd_polytopes, "simplices of all seeds and of the whole algebra"),
        ("verify", cmd_verify, "check the hook identities"),
    ):
        sp = sub.add_parser(name, help=helptext)
        common(sp)
        sp.add_argument("--cap", type=int, default=10_000, help="maximum number of seeds")
        if name == "polytopes":
            sp.add_argument("--project", help="coordinates to drop for the OFF picture, e.g. 3")
        if name == "verify":
            sp.add_argument("--seeds", help="seed file from `enumerate` instead of recomputing")
        sp.set_defaults(func=func)
    return p


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if getattr(args, "cap", 1) < 1:
        parser.error("--cap must be positive")
    try:
        return args.func(args)
    except (UsageError, NotReducedError) as e:
        parser.print_usage(sys.stderr)
        print(f"okcluster: error: {e}", file=sys.stderr)
        return EXIT_USAGE
    except (UnsupportedConfigurationError, NonConvexOrderError) as e:
        print(f"okcluster: unsupported configuration: {e}", file=sys.stderr)
        return EXIT_UNSUPPORTED
    except (IncompleteEnumerationError, InvariantViolation) as e:
        print(f"okcluster: verification failed: {e}", file=sys.stderr)
        return EXIT_FAILED


if __name__ == "__main__":
    sys.exit(main())
