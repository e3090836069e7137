"""Direction-preserving paths, path subalgebras and the Reedy factorization.

All functions take a total :class:`VertexOrder` (or a chain of vertices,
listed from lowest to highest).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .quiver import (
    BoundQuiver,
    IncomparableVertices,
    MonomialAlgebra,
    Path,
    QuiverError,
    VertexOrder,
    enumerate_basis,
)


def as_order(A: MonomialAlgebra, order) -> VertexOrder:
    """Accept a VertexOrder or a low-to-high chain of vertices."""
    if isinstance(order, VertexOrder):
        o = order
    else:
        o = VertexOrder.total([str(v) for v in order])
    if set(o.vertices) != set(A.vertices):
        raise QuiverError("order must mention exactly the vertices of the quiver")
    if not o.is_total:
        raise IncomparableVertices("a total order is required")
    return o


class OrderedAlgebra:
    """Rank data of every basis path for one total order (cached per instance)."""

    def __init__(self, A: MonomialAlgebra, order):
        self.A = A
        self.order = as_order(A, order)
        r = self.order.ranks
        self.rank = r
        self.src = [r[p.source] for p in A.basis]
        self.tgt = [r[p.target] for p in A.basis]
        self.maxrank = []
        self.maxcount = []
        self.innermax = []
        for p in A.basis:
            ranks = [r[v] for v in p.vertices]
            m = max(ranks)
            self.maxrank.append(m)
            self.maxcount.append(ranks.count(m))
            self.innermax.append(max(ranks[1:-1], default=-1))
        self.by_rank = self.order.chain

    def vertex_at(self, rank: int) -> str:
        return self.by_rank[rank]

    def is_dp(self, k: int) -> bool:
        return self.src[k] < self.tgt[k]

    def is_right_minimal(self, k: int) -> bool:
        return self.src[k] < self.tgt[k] and self.innermax[k] <= self.src[k]

    def in_bmin(self, k: int) -> bool:
        p = self.A.basis[k]
        if p.is_trivial:
            return True
        return self.src[k] < self.tgt[k] and self.innermax[k] < self.tgt[k]

    def in_cmin_op(self, k: int) -> bool:
        p = self.A.basis[k]
        if p.is_trivial:
            return True
        return self.maxrank[k] == self.src[k] and self.maxcount[k] == 1

    def e_indices(self, i: str) -> list[int]:
        """Right-minimal direction-preserving paths starting at i."""
        return [k for k in self.A.indices_from(i) if self.is_right_minimal(k)]


def ordered(A: MonomialAlgebra, order) -> OrderedAlgebra:
    return order if isinstance(order, OrderedAlgebra) else OrderedAlgebra(A, order)


@dataclass(frozen=True)
class PathSubalgebra:
    algebra: MonomialAlgebra = field(repr=False, compare=False)
    indices: frozenset[int]
    tag: str

    @property
    def paths(self) -> list[Path]:
        return [self.algebra.basis[k] for k in sorted(self.indices)]

    @property
    def dim(self) -> int:
        return len(self.indices)

    def __contains__(self, p) -> bool:
        k = p if isinstance(p, int) else self.algebra.lookup(p)
        return k is not None and k in self.indices

    def nontrivial(self) -> list[Path]:
        return [p for p in self.paths if not p.is_trivial]

    def closure_violation(self) -> tuple[Path, Path] | None:
        """A pair whose nonzero product leaves the set, or None."""
        A = self.algebra
        for a in sorted(self.indices):
            for b in sorted(self.indices):
                c = A.product_index(a, b)
                if c is not None and c not in self.indices:
                    return (A.basis[a], A.basis[b])
        return None


def is_direction_preserving(p: Path, order: VertexOrder) -> bool:
    r = order.ranks
    return r[p.source] < r[p.target]


def right_minimal_dp_paths(A: MonomialAlgebra, order) -> dict[tuple[str, str], list[Path]]:
    """E_ij for all i < j, keyed by (i, j); empty sets are omitted."""
    ctx = ordered(A, order)
    out: dict[tuple[str, str], list[Path]] = {}
    for k, p in enumerate(A.basis):
        if ctx.is_right_minimal(k):
            out.setdefault((p.source, p.target), []).append(p)
    return out


def borel_max_basis(A: MonomialAlgebra, order) -> PathSubalgebra:
    ctx = ordered(A, order)
    idx = frozenset(k for k, p in enumerate(A.basis) if p.is_trivial or ctx.is_dp(k))
    return PathSubalgebra(A, idx, "Bmax")


def borel_min_basis(A: MonomialAlgebra, order) -> PathSubalgebra:
    ctx = ordered(A, order)
    return PathSubalgebra(A, frozenset(k for k in range(A.dim) if ctx.in_bmin(k)), "Bmin")


def delta_sub_basis(A: MonomialAlgebra, order) -> PathSubalgebra:
    """Trivial paths and the paths whose source is their strict maximum."""
    ctx = ordered(A, order)
    return PathSubalgebra(A, frozenset(k for k in range(A.dim) if ctx.in_cmin_op(k)), "CminOp")


def multiplicative_closure(A: MonomialAlgebra, generators: Iterable[int]) -> frozenset[int]:
    """Smallest path set containing the trivial paths and the generators, closed under products."""
    gens = set(generators)
    current = set(A.trivial_index(v) for v in A.vertices) | gens
    frontier = list(current)
    while frontier:
        new = []
        for a in frontier:
            for b in list(current):
                for c in (A.product_index(a, b), A.product_index(b, a)):
                    if c is not None and c not in current:
                        current.add(c)
                        new.append(c)
        frontier = new
    return frozenset(current)


@dataclass
class ReedyFactorization:
    algebra: MonomialAlgebra = field(repr=False)
    pairs: dict[int, tuple[int, int]]
    ok: bool = True

    def factor(self, p: Path) -> tuple[Path, Path]:
        c, b = self.pairs[self.algebra.lookup(p)]
        return self.algebra.basis[c], self.algebra.basis[b]


@dataclass
class ReedyFailure:
    witness: Path
    reason: str
    ok: bool = False


class ReedyError(QuiverError):
    def __init__(self, failure: ReedyFailure):
        self.failure = failure
        super().__init__(f"no Reedy factorization: {failure.reason} ({failure.witness})")


def reedy_factorize(A: MonomialAlgebra, order) -> ReedyFactorization | ReedyFailure:
    """Cut every basis path at its maximum and check bijectivity of the pair map."""
    ctx = ordered(A, order)
    q = A.quiver
    pairs: dict[int, tuple[int, int]] = {}
    for k, p in enumerate(A.basis):
        if ctx.maxcount[k] > 1:
            return ReedyFailure(p, "maximum visited more than once")
        top = ctx.vertex_at(ctx.maxrank[k])
        cut = p.vertices.index(top)
        b = A.lookup(q.path(p.arrows[:cut], source=p.source))
        c = A.lookup(q.path(p.arrows[cut:], source=top))
        if b is None or c is None or not ctx.in_bmin(b) or not ctx.in_cmin_op(c):
            return ReedyFailure(p, "cut factors are not in the two subalgebras")
        pairs[k] = (c, b)
    # surjectivity holds by construction; injectivity and totality on pairs
    seen: dict[tuple[int, int], int] = {}
    for k, cb in pairs.items():
        if cb in seen:
            return ReedyFailure(A.basis[k], "two paths share a factorization")
        seen[cb] = k
    bs = [k for k in range(A.dim) if ctx.in_bmin(k)]
    cs = [k for k in range(A.dim) if ctx.in_cmin_op(k)]
    for c in cs:
        for b in bs:
            if A.basis[b].target != A.basis[c].source:
                continue
            if A.product_index(c, b) is None:
                pb, pc = A.basis[b], A.basis[c]
                return ReedyFailure(q.path(pb.arrows + pc.arrows, source=pb.source),
                                    "composable pair with zero product")
    return ReedyFactorization(A, pairs)


def _require_reedy(A, order) -> ReedyFactorization:
    res = reedy_factorize(A, order)
    if not res.ok:
        raise ReedyError(res)
    return res


def right_module_decomposition(A: MonomialAlgebra, order) -> list[tuple[Path, int]]:
    """Summands q.B_min of A, one per q in the Delta-subalgebra basis, with their dimensions."""
    ctx = ordered(A, order)
    _require_reedy(A, ctx)
    bmin = [k for k in range(A.dim) if ctx.in_bmin(k)]
    size = {v: 0 for v in A.vertices}
    for k in bmin:
        size[A.basis[k].target] += 1
    out = []
    for k in range(A.dim):
        if ctx.in_cmin_op(k):
            qk = A.basis[k]
            out.append((qk, size[qk.source]))
    return out


def normal_splitting(A: MonomialAlgebra, order, x: int | Path) -> Path | None:
    """pi(x): x itself when its C-factor is trivial, otherwise zero (None)."""
    ctx = ordered(A, order)
    fac = _require_reedy(A, ctx)
    k = x if isinstance(x, int) else A.lookup(x)
    if k is None:
        raise QuiverError(f"{x} is not a basis path")
    c, _ = fac.pairs[k]
    return A.basis[k] if A.basis[c].is_trivial else None


def normal_splitting_kernel_violation(A: MonomialAlgebra, order) -> tuple[Path, Path] | None:
    """A kernel path x and a path a with pi(x.a) nonzero, or None."""
    ctx = ordered(A, order)
    fac = _require_reedy(A, ctx)
    kernel = [k for k, (c, _) in fac.pairs.items() if not A.basis[c].is_trivial]
    for x in kernel:
        for a in range(A.dim):
            y = A.product_index(x, a)
            if y is not None and A.basis[fac.pairs[y][0]].is_trivial:
                return (A.basis[x], A.basis[a])
    return None


@dataclass
class TruncationReport:
    vertices: list[str]
    restricted: list[Path]
    intrinsic: list[Path]
    equal: bool
    counterexample: Path | None


def idempotent_check(A: MonomialAlgebra, order, vertices: Iterable[str]) -> TruncationReport:
    """Compare eB_min e with the path subalgebra of eAe generated by its own
    right-minimal direction-preserving paths, for e the sum over ``vertices``."""
    ctx = ordered(A, order)
    S = set(vertices)
    inside = [k for k, p in enumerate(A.basis) if p.source in S and p.target in S]
    left = {k for k in inside if ctx.in_bmin(k)}
    gens = []
    for k in inside:
        p = A.basis[k]
        if p.is_trivial or ctx.src[k] >= ctx.tgt[k]:
            continue
        inner = [ctx.rank[v] for v in p.interior if v in S]
        if all(r <= ctx.src[k] for r in inner):
            gens.append(k)
    right = set(A.trivial_index(v) for v in S) | set(gens)
    frontier = list(right)
    while frontier:
        new = []
        for a in frontier:
            for b in list(right):
                for c in (A.product_index(a, b), A.product_index(b, a)):
                    if c is not None and c not in right:
                        right.add(c)
                        new.append(c)
        frontier = new
    diff = sorted(left ^ right)
    order_v = [v for v in A.vertices if v in S]
    return TruncationReport(order_v, [A.basis[k] for k in sorted(left)],
                            [A.basis[k] for k in sorted(right)], not diff,
                            A.basis[diff[0]] if diff else None)


def truncate_check(A: MonomialAlgebra, order, cutoff_rank: int) -> TruncationReport:
    """Truncation at e = sum of e_i with rank(i) >= cutoff_rank."""
    ctx = ordered(A, order)
    if not 0 <= cutoff_rank < len(A.vertices):
        raise QuiverError(f"cutoff rank {cutoff_rank} out of range")
    return idempotent_check(A, ctx, ctx.by_rank[cutoff_rank:])


@dataclass
class QuotientResult:
    algebra: MonomialAlgebra
    order: VertexOrder
    image: list[Path]
    borel: list[Path]
    compatible: bool


def quotient_quiver(q: BoundQuiver, gens: Sequence[Path]) -> BoundQuiver:
    dead_v = {g.source for g in gens if g.is_trivial}
    dead_a = {g.arrows[0] for g in gens if g.length == 1}
    for a in q.arrows:
        if a.source in dead_v or a.target in dead_v:
            dead_a.add(a.name)
    verts = [v for v in q.vertices if v not in dead_v]
    arrows = [a for a in q.arrows if a.name not in dead_a]
    rels = [r for r in list(q.relations) + [g for g in gens if g.length >= 2]
            if not dead_a.intersection(r.arrows)]
    sub = BoundQuiver(verts, arrows)
    return BoundQuiver(verts, arrows, [sub.path(r.arrows) for r in rels])


def quotient(A: MonomialAlgebra, order, gens: Iterable[Path | str]) -> QuotientResult:
    """A/J for the monomial ideal J generated by ``gens``; also compares B_min(A/J)
    with the image of B_min(A)."""
    ctx = ordered(A, order)
    q = A.quiver
    gl = [g if isinstance(g, Path) else q.parse_path(g) for g in gens]
    for g in gl:
        if A.lookup(g) is None:
            raise QuiverError(f"generator {g} is not a basis path")
    qq = quotient_quiver(q, gl)
    B = enumerate_basis(qq)
    sub_order = ctx.order.restrict(qq.vertices)
    image = [p for p in borel_min_basis(A, ctx).paths if B.lookup(p) is not None]
    bq = borel_min_basis(B, sub_order).paths
    return QuotientResult(B, sub_order, image, bq, sorted(p.key for p in image) == sorted(p.key for p in bq))
