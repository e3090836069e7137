"""Path criteria for B_min to be a regular exact Borel subalgebra."""

from __future__ import annotations

from dataclasses import dataclass, field

from .borel import OrderedAlgebra, ordered
from .homalg import require_qh
from .quiver import MonomialAlgebra, Path, QuiverError


class HasRelations(QuiverError):
    pass


@dataclass(frozen=True)
class EPrimePair:
    i: str
    j: str
    p: Path
    q: Path


@dataclass
class Verdict:
    ok: bool
    witness: tuple = ()
    reason: str | None = None
    details: dict = field(default_factory=dict)


def _e_prime_idx(ctx: OrderedAlgebra, i: str, j: str) -> list[tuple[int, int]]:
    A = ctx.A
    rj = ctx.rank[j]
    out = []
    for pk in ctx.e_indices(i):
        k = A.basis[pk].target
        if ctx.rank[k] > rj:
            continue
        killers = [x for x in A.indices_from(k) if ctx.maxrank[x] <= rj]
        for qk in A.indices_to(k):
            if A.basis[qk].source != j or ctx.maxrank[qk] != rj:
                continue
            if all(A.product_index(x, qk) is None for x in killers if A.product_index(x, pk) is None):
                out.append((pk, qk))
    return out


def e_prime(A: MonomialAlgebra, order, i: str, j: str) -> list[EPrimePair]:
    """E'_ij as pairs (p, q) sorted by basis position of p, then q."""
    ctx = ordered(A, order)
    if ctx.rank[i] >= ctx.rank[j]:
        raise QuiverError(f"need {i} below {j}")
    return [EPrimePair(i, j, A.basis[p], A.basis[q]) for p, q in _e_prime_idx(ctx, i, j)]


def dim_ext_delta_simple(A: MonomialAlgebra, order, i: str, j: str) -> int:
    ctx = ordered(A, order)
    return sum(1 for k in ctx.e_indices(i) if A.basis[k].target == j)


def _suffix_cofactor(A: MonomialAlgebra, p: Path, q: Path) -> Path | None:
    """q'' with q = p * q'' (walk q'' then p), if it exists."""
    n = p.length
    if n > q.length or (n and q.arrows[q.length - n:] != p.arrows):
        return None
    rest = A.quiver.path(q.arrows[:q.length - n], source=q.source)
    return rest if rest.target == p.source else None


def dim_ext_delta_delta(A: MonomialAlgebra, order, i: str, j: str) -> int:
    ctx = ordered(A, order)
    pairs = set(_e_prime_idx(ctx, i, j))
    kernel = 0
    for y in A.indices_to(i):
        if A.basis[y].source != j:
            continue
        if any((pk, A.product_index(pk, y)) in pairs for pk in ctx.e_indices(i)):
            kernel += 1
    return len(pairs) - kernel


def _pairs_in_order(ctx: OrderedAlgebra):
    n = len(ctx.by_rank)
    for rj in range(n):
        for ri in range(rj):
            i, j = ctx.vertex_at(ri), ctx.vertex_at(rj)
            for pk, qk in _e_prime_idx(ctx, i, j):
                yield i, j, pk, qk


def regular_borel_criterion(A: MonomialAlgebra, order, check: bool = True) -> Verdict:
    """Decide regularity of B_min from the E' pairs; the witness is the first bad (p, q)."""
    ctx = require_qh(A, order) if check else ordered(A, order)
    for i, j, pk, qk in _pairs_in_order(ctx):
        q = A.basis[qk]
        if q.is_trivial:
            continue
        p = A.basis[pk]
        rest = _suffix_cofactor(A, p, q)
        if rest is None:
            return Verdict(False, (p, q), f"{q} does not factor through {p}", {"i": i, "j": j})
        y = A.lookup(rest)
        rj = ctx.rank[j]
        for other in ctx.e_indices(i):
            if other == pk:
                continue
            z = A.product_index(other, y)
            if z is not None and ctx.maxrank[z] == rj:
                return Verdict(False, (p, q), f"{A.basis[other]} also survives after {rest}",
                               {"i": i, "j": j})
    return Verdict(True)


def _require_hereditary(A: MonomialAlgebra):
    if A.quiver.relations:
        raise HasRelations("the algebra has relations")


def regular_borel_hereditary(A: MonomialAlgebra, order) -> Verdict:
    """The two-condition test for path algebras (no relations)."""
    _require_hereditary(A)
    ctx = ordered(A, order)
    for pk, p in enumerate(A.basis):
        if p.is_trivial or ctx.maxrank[pk] != ctx.tgt[pk] or ctx.src[pk] >= ctx.tgt[pk]:
            continue
        for qk in A.indices_to(p.target):
            if ctx.src[qk] > ctx.tgt[pk] and _suffix_cofactor(A, p, A.basis[qk]) is None:
                return Verdict(False, (p, A.basis[qk]), "condition 1", {"condition": 1})
    for qk, q in enumerate(A.basis):
        if ctx.src[qk] <= ctx.tgt[qk]:
            continue
        below = [k for k in ctx.e_indices(q.target) if ctx.tgt[k] < ctx.src[qk]]
        if len(below) > 1:
            return Verdict(False, (q, A.basis[below[0]], A.basis[below[1]]), "condition 2",
                           {"condition": 2})
    return Verdict(True)


def regular_verdict(A: MonomialAlgebra, order) -> Verdict:
    if A.quiver.relations:
        return regular_borel_criterion(A, order)
    return regular_borel_hereditary(A, order)


def nabla_shape_check(A: MonomialAlgebra, order) -> Verdict:
    """Every costandard module must be injective or uniserial."""
    _require_hereditary(A)
    ctx = ordered(A, order)
    shapes = {}
    ok = True
    bad = None
    for i in A.vertices:
        ri = ctx.rank[i]
        ending = A.indices_to(i)
        basis = [k for k in ending if ctx.maxrank[k] == ri]
        if len(basis) == len(ending):
            shapes[i] = "injective"
            continue
        longest = max(basis, key=lambda k: A.basis[k].length)
        top = A.basis[longest]
        if all(_suffix_cofactor(A, A.basis[k], top) is not None for k in basis):
            shapes[i] = "uniserial"
        else:
            shapes[i] = "neither"
            if ok:
                ok, bad = False, i
    return Verdict(ok, (bad,) if bad else (), None, {"shapes": shapes})
