"""Quasi-hereditary structures of a quiver algebra, counted by brute force over
total orders, and the Q(na, nb, nc) family with its closed-form counts."""

from __future__ import annotations

import hashlib
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from itertools import permutations
from math import comb
from typing import Callable, Sequence

from . import kernels
from .borel import OrderedAlgebra, ordered
from .homalg import check_quasi_hereditary
from .quiver import Arrow, BoundQuiver, MonomialAlgebra, QuiverError, VertexOrder, enumerate_basis
from .regularity import HasRelations, regular_borel_criterion


class TooManyVertices(QuiverError):
    pass


def catalan(n: int) -> int:
    if n < 0:
        raise ValueError("Catalan numbers need n >= 0")
    return comb(2 * n, n) // (n + 1)


@dataclass(frozen=True)
class FamilySpec:
    na: int
    nb: int
    nc: int
    opposite: bool = False

    def __post_init__(self):
        if min(self.na, self.nb, self.nc) < 0:
            raise ValueError("family parameters must be non-negative")

    @property
    def label(self) -> str:
        return f"Q({self.na},{self.nb},{self.nc})" + ("^op" if self.opposite else "")


def family_vertices(f: FamilySpec) -> list[str]:
    return ([f"a{k}" for k in range(f.na, -1, -1)] + [f"b{k}" for k in range(1, f.nb + 1)]
            + [f"c{k}" for k in range(1, f.nc + 1)])


def family_quiver(f: FamilySpec) -> BoundQuiver:
    """a_na -> ... -> a_0, then a_0 -> b_1 -> ... -> b_nb and a_0 -> c_1 -> ... -> c_nc."""
    edges = [(f"a{k}", f"a{k - 1}") for k in range(f.na, 0, -1)]
    for letter, length in (("b", f.nb), ("c", f.nc)):
        chain = ["a0"] + [f"{letter}{k}" for k in range(1, length + 1)]
        edges += list(zip(chain, chain[1:]))
    arrows = []
    for s, t in edges:
        if f.opposite:
            s, t = t, s
        arrows.append(Arrow(f"{s}_{t}", s, t))
    return BoundQuiver(family_vertices(f), arrows)


def adaptedness_check(Q: BoundQuiver | MonomialAlgebra, order: VertexOrder) -> bool:
    """Every path between incomparable vertices passes through a vertex above both ends."""
    A = Q if isinstance(Q, MonomialAlgebra) else enumerate_basis(Q)
    if A.quiver.relations:
        raise HasRelations("adaptedness is tested on path algebras only")
    for p in A.basis:
        i, j = p.source, p.target
        if not p.arrows or order.comparable(i, j):
            continue
        if not any(order.less(i, k) and order.less(j, k) for k in p.interior):
            return False
    return True


@dataclass(frozen=True)
class Fingerprint:
    delta: tuple[tuple[str, tuple[str, ...]], ...]
    nabla: tuple[tuple[str, tuple[str, ...]], ...]

    def canonical(self) -> str:
        lines = []
        for tag, part in (("D", self.delta), ("N", self.nabla)):
            for v, keys in part:
                lines.append(f"{tag} {v}: " + " ".join(keys))
        return "\n".join(lines) + "\n"

    @property
    def digest(self) -> str:
        return hashlib.sha256(self.canonical().encode()).hexdigest()


def _path_sort_key(A: MonomialAlgebra, k: int):
    p = A.basis[k]
    return (A.quiver.vertex_index[p.source], p.arrows)


def order_fingerprint(A: MonomialAlgebra, order) -> Fingerprint:
    ctx = ordered(A, order)
    delta, nabla = [], []
    for v in A.vertices:
        rv = ctx.rank[v]
        d = [k for k in A.indices_from(v) if ctx.maxrank[k] == rv]
        nb = [k for k in A.indices_to(v) if ctx.maxrank[k] == rv]
        delta.append((v, tuple(str(A.basis[k]) for k in sorted(d, key=lambda k: _path_sort_key(A, k)))))
        nabla.append((v, tuple(str(A.basis[k]) for k in sorted(nb, key=lambda k: _path_sort_key(A, k)))))
    return Fingerprint(tuple(delta), tuple(nabla))


@dataclass
class CensusClass:
    digest: str
    representative: list[str]
    size: int
    essential: VertexOrder
    regular: bool | None
    qh: bool
    consistent: bool


@dataclass
class StructureCensus:
    vertices: list[str]
    classes: list[CensusClass]
    orders: int
    backend: str

    @property
    def num_classes(self) -> int:
        return len(self.classes)

    @property
    def num_qh(self) -> int:
        return sum(1 for c in self.classes if c.qh)

    @property
    def num_regular(self) -> int:
        return sum(1 for c in self.classes if c.regular)

    def class_of(self, chain: Sequence[str]) -> CensusClass:
        """The class whose members include the given low-to-high chain."""
        chain = list(chain)
        for c in self.classes:
            if c.representative == chain:
                return c
        raise KeyError("chain is not a class representative; use find_class")


def kernel_input(A: MonomialAlgebra):
    """Arrays describing the nontrivial paths of a path algebra for the census kernels."""
    vidx = A.quiver.vertex_index
    paths = [k for k, p in enumerate(A.basis) if p.arrows]
    pos = {k: x for x, k in enumerate(paths)}
    src, tgt, parent = [], [], []
    for k in paths:
        p = A.basis[k]
        src.append(vidx[p.source])
        tgt.append(vidx[p.target])
        if p.length == 1:
            parent.append(-1)
        else:
            parent.append(pos[A.index[(p.source, p.arrows[:-1])]])
    bad_p, bad_q = [], []
    for x, kp in enumerate(paths):
        ap = A.basis[kp].arrows
        for y, kq in enumerate(paths):
            if x == y or tgt[x] != tgt[y]:
                continue
            aq = A.basis[kq].arrows
            if len(ap) > len(aq) or aq[len(aq) - len(ap):] != ap:
                bad_p.append(x)
                bad_q.append(y)
    return src, tgt, parent, bad_p, bad_q


def _default_threads(threads: int | None) -> int:
    if threads is None:
        env = os.environ.get("QB_THREADS")
        threads = int(env) if env else 1
    return max(1, threads)


def _essential(vertices: Sequence[str], masks: Sequence[int]) -> VertexOrder:
    pairs = []
    for v, m in enumerate(masks):
        for u in range(len(vertices)):
            if m >> u & 1:
                pairs.append((vertices[u], vertices[v]))
    return VertexOrder(list(vertices), pairs)


def _hereditary_census(A: MonomialAlgebra, threads: int, chunk_fn: Callable) -> list[tuple]:
    n = len(A.vertices)
    src, tgt, parent, bad_p, bad_q = kernel_input(A)

    def run(first):
        return chunk_fn(n, src, tgt, parent, bad_p, bad_q, first)

    if threads > 1 and n > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            chunks = list(pool.map(run, range(n)))
    else:
        chunks = [run(first) for first in range(n)]
    merged: dict[bytes, list] = {}
    for chunk in chunks:  # chunks come in increasing lowest vertex, so the first hit is minimal
        for key, count, chain, masks, reg, agree in chunk:
            e = merged.get(key)
            if e is None:
                merged[key] = [count, chain, list(masks), reg, agree]
            else:
                e[0] += count
                e[2] = [a & b for a, b in zip(e[2], masks)]
                e[4] = e[4] and agree and e[3] == reg
    return [(e[1], e[0], e[2], e[3], e[4], True) for e in merged.values()]


def _monomial_census(A: MonomialAlgebra) -> list[tuple]:
    n = len(A.vertices)
    merged: dict[Fingerprint, list] = {}
    for perm in permutations(range(n)):
        chain = [A.vertices[v] for v in perm]
        ctx = OrderedAlgebra(A, chain)
        fp = order_fingerprint(A, ctx)
        below = [0] * n
        acc = 0
        for v in perm:
            below[v] = acc
            acc |= 1 << v
        e = merged.get(fp)
        if e is None:
            qh = check_quasi_hereditary(A, ctx).ok
            reg = regular_borel_criterion(A, ctx, check=False).ok if qh else None
            merged[fp] = [1, tuple(perm), below, reg, True, qh]
        else:
            e[0] += 1
            e[2] = [a & b for a, b in zip(e[2], below)]
            if e[5]:
                if regular_borel_criterion(A, ctx, check=False).ok != e[3]:
                    e[4] = False
    return [(e[1], e[0], e[2], e[3], e[4], e[5]) for e in merged.values()]


def enumerate_structures(A: MonomialAlgebra, max_n: int = 10, threads: int | None = None,
                         backend: str | None = None) -> StructureCensus:
    """Group all total orders by their standard and costandard modules.

    ``backend`` may be "compiled", "python" or None (best available); it only
    matters for path algebras, where the per-order work runs in a kernel.
    """
    n = len(A.vertices)
    if n > max_n:
        raise TooManyVertices(f"{n} vertices exceeds the cap of {max_n}")
    threads = _default_threads(threads)
    if A.quiver.relations:
        raw = _monomial_census(A)
        used = "python"
    else:
        if backend == "python":
            fn, used = kernels.python_census_chunk, "python"
        elif backend == "compiled":
            if kernels.compiled_census_chunk is None:
                raise RuntimeError("compiled kernel is not available")
            fn, used = kernels.compiled_census_chunk, "compiled"
        else:
            fn, used = kernels.census_chunk, kernels.BACKEND
        raw = _hereditary_census(A, threads, fn)
    verts = list(A.vertices)
    classes = []
    total = 0
    for perm, count, masks, reg, agree, qh in raw:
        chain = [verts[v] for v in perm]
        fp = order_fingerprint(A, chain)
        classes.append(CensusClass(fp.digest, chain, count, _essential(verts, masks),
                                   reg, qh, agree))
        total += count
    classes.sort(key=lambda c: c.digest)
    return StructureCensus(verts, classes, total, used)


def find_class(census: StructureCensus, A: MonomialAlgebra, order) -> CensusClass:
    digest = order_fingerprint(A, order).digest
    for c in census.classes:
        if c.digest == digest:
            return c
    raise KeyError("order not found in census")


def essential_order(A: MonomialAlgebra, representative, census: StructureCensus | None = None) -> VertexOrder:
    """Intersection of all total orders equivalent to ``representative``."""
    census = census or enumerate_structures(A)
    return find_class(census, A, representative).essential


def family_regular_criterion(f: FamilySpec, order) -> bool:
    """Closed-form test for a regular exact Borel subalgebra on the family quiver."""
    chain = order.chain if isinstance(order, VertexOrder) else list(order)
    r = {v: k for k, v in enumerate(chain)}
    a = [f"a{k}" for k in range(f.na + 1)]
    if f.opposite:
        return (all(r["a0"] > r[f"b{k}"] for k in range(1, f.nb + 1))
                or all(r["a0"] > r[f"c{k}"] for k in range(1, f.nc + 1)))

    def arm(letter, length):
        for k in range(1, length + 2):
            if not all(r["a0"] > r[f"{letter}{m}"] for m in range(1, k)):
                continue
            if k <= length and not all(r[f"{letter}{k}"] > r[x] for x in a):
                continue
            return True
        return False

    return arm("b", f.nb) or arm("c", f.nc)


def predicted_counts(f: FamilySpec) -> int:
    C = catalan
    na, nb, nc = f.na, f.nb, f.nc
    if f.opposite:
        return C(nb) * C(na + nc + 1) + C(nc) * C(na + nb + 1) - C(nb) * C(nc) * C(na + 1)
    return C(nb + 1) * C(na + nc + 1) + C(nc + 1) * C(na + nb + 1) - C(na + 1) * C(nb + 1) * C(nc + 1)


# closed forms for the D-type families, indexed by n
D_TABLE: dict[str, Callable[[int], int]] = {
    "total_n11": lambda n: 2 * catalan(n + 3) - 3 * catalan(n + 2),
    "regular_n11": lambda n: 4 * (catalan(n + 2) - catalan(n + 1)),
    "regular_n11_op": lambda n: 2 * catalan(n + 2) - catalan(n + 1),
    "total_1n1": lambda n: 3 * catalan(n + 2) - catalan(n + 1),
    "regular_1n1": lambda n: 2 * catalan(n + 2) + catalan(n + 1),
    "regular_1n1_op": lambda n: catalan(n + 2) + 3 * catalan(n),
}


@dataclass
class FamilyRow:
    spec: FamilySpec
    structures: int
    regular: int
    regular_op: int
    predicted: int
    predicted_op: int
    consistent: bool

    @property
    def matches(self) -> bool:
        return self.regular == self.predicted and self.regular_op == self.predicted_op


def family_row(na: int, nb: int, nc: int, threads: int | None = None, max_n: int = 10,
               backend: str | None = None) -> FamilyRow:
    """Enumerate Q(na,nb,nc) and its opposite and compare with the closed forms."""
    direct = FamilySpec(na, nb, nc, False)
    opp = FamilySpec(na, nb, nc, True)
    c1 = enumerate_structures(enumerate_basis(family_quiver(direct)), max_n, threads, backend)
    c2 = enumerate_structures(enumerate_basis(family_quiver(opp)), max_n, threads, backend)
    consistent = all(c.consistent for c in c1.classes + c2.classes)
    return FamilyRow(direct, c1.num_classes, c1.num_regular, c2.num_regular,
                     predicted_counts(direct), predicted_counts(opp), consistent)
