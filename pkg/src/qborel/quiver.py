"""Quivers, paths, vertex orders and monomial algebras.

Paths are stored in traversal order: ``Path("1", ("alpha", "beta"))`` first
walks ``alpha`` and then ``beta``.  The algebraic product follows the
right-to-left convention, so ``path_product(a, b)`` traverses ``b`` first and
then ``a``.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from functools import cached_property
from itertools import combinations
from typing import Iterable, Iterator, Sequence


class QuiverError(ValueError):
    """Base class for errors raised by this package."""


class MalformedQuiver(QuiverError):
    pass


class NotComposable(QuiverError):
    pass


class IncomparableVertices(QuiverError):
    pass


class CyclicOrder(QuiverError):
    pass


class InfiniteDimensional(QuiverError):
    """The bound quiver algebra has infinitely many nonzero paths."""

    def __init__(self, witness: "Path", prefix: "Path | None" = None):
        self.witness = witness
        self.prefix = prefix
        super().__init__(f"infinite dimensional: cycle {witness} is never killed")


@dataclass(frozen=True)
class Arrow:
    name: str
    source: str
    target: str


@dataclass(frozen=True)
class Path:
    source: str
    arrows: tuple[str, ...]
    vertices: tuple[str, ...] = field(compare=False, repr=False)

    @property
    def target(self) -> str:
        return self.vertices[-1]

    @property
    def length(self) -> int:
        return len(self.arrows)

    @property
    def is_trivial(self) -> bool:
        return not self.arrows

    @property
    def interior(self) -> tuple[str, ...]:
        return self.vertices[1:-1]

    @property
    def key(self) -> tuple[str, tuple[str, ...]]:
        return (self.source, self.arrows)

    def __str__(self) -> str:
        if not self.arrows:
            return f"e_{self.source}"
        return ".".join(self.arrows)


def _is_factor(small: Sequence[str], big: Sequence[str]) -> bool:
    n, m = len(small), len(big)
    return any(tuple(big[k:k + n]) == tuple(small) for k in range(m - n + 1))


def reduce_relations(relations: Iterable[Path]) -> frozenset[Path]:
    """Drop every generator that contains another generator as a factor."""
    rels = sorted(set(relations), key=lambda p: (p.length, p.arrows))
    kept: list[Path] = []
    for r in rels:
        if not any(_is_factor(k.arrows, r.arrows) for k in kept):
            kept.append(r)
    return frozenset(kept)


class BoundQuiver:
    """A quiver together with a reduced set of monomial relations."""

    def __init__(self, vertices: Sequence[str], arrows: Sequence[Arrow | tuple[str, str, str]],
                 relations: Iterable[Path | Sequence[str]] = ()):
        self.vertices: tuple[str, ...] = tuple(str(v) for v in vertices)
        if len(set(self.vertices)) != len(self.vertices):
            raise MalformedQuiver("duplicate vertex label")
        vset = set(self.vertices)
        arrs = []
        for a in arrows:
            a = a if isinstance(a, Arrow) else Arrow(*a)
            if a.source not in vset or a.target not in vset:
                raise MalformedQuiver(f"arrow {a.name} has an undeclared endpoint")
            arrs.append(a)
        self.arrows: tuple[Arrow, ...] = tuple(arrs)
        self.arrow_map: dict[str, Arrow] = {a.name: a for a in self.arrows}
        if len(self.arrow_map) != len(self.arrows):
            raise MalformedQuiver("duplicate arrow name")
        self.vertex_index = {v: k for k, v in enumerate(self.vertices)}
        rels = []
        for r in relations:
            p = r if isinstance(r, Path) else self.path(r)
            if p.length < 2:
                raise MalformedQuiver(f"relation {p} has length < 2")
            rels.append(p)
        self.relations: frozenset[Path] = reduce_relations(rels)

    def _key(self):
        return (self.vertices, self.arrows, self.relations)

    def __eq__(self, other):
        return isinstance(other, BoundQuiver) and self._key() == other._key()

    def __hash__(self):
        return hash(self._key())

    def __repr__(self):
        return (f"BoundQuiver(vertices={list(self.vertices)}, arrows={len(self.arrows)}, "
                f"relations={sorted(str(r) for r in self.relations)})")

    def trivial(self, v: str) -> Path:
        if v not in self.vertex_index:
            raise MalformedQuiver(f"unknown vertex {v}")
        return Path(v, (), (v,))

    def path(self, arrows: Sequence[str], source: str | None = None) -> Path:
        """Build the path walking ``arrows`` in order; raises NotComposable."""
        arrows = tuple(arrows)
        if not arrows:
            if source is None:
                raise MalformedQuiver("a trivial path needs a source")
            return self.trivial(source)
        try:
            first = self.arrow_map[arrows[0]]
        except KeyError:
            raise MalformedQuiver(f"unknown arrow {arrows[0]}") from None
        if source is not None and source != first.source:
            raise NotComposable(f"arrow {first.name} does not start at {source}")
        verts = [first.source, first.target]
        for name in arrows[1:]:
            a = self.arrow_map.get(name)
            if a is None:
                raise MalformedQuiver(f"unknown arrow {name}")
            if a.source != verts[-1]:
                raise NotComposable(f"arrow {name} does not start at {verts[-1]}")
            verts.append(a.target)
        return Path(first.source, arrows, tuple(verts))

    def parse_path(self, text: str) -> Path:
        """Parse ``e_v`` (trivial path) or ``a.b.c`` (traversal order)."""
        text = text.strip()
        if text in self.arrow_map:
            return self.path((text,))
        if text.startswith("e_") and text[2:] in self.vertex_index:
            return self.trivial(text[2:])
        return self.path(tuple(t.strip() for t in text.split(".")))

    def arrows_from(self, v: str) -> list[Arrow]:
        return [a for a in self.arrows if a.source == v]

    def opposite(self) -> "BoundQuiver":
        arrows = [Arrow(a.name, a.target, a.source) for a in self.arrows]
        q = BoundQuiver(self.vertices, arrows)
        rels = [q.path(tuple(reversed(r.arrows))) for r in self.relations]
        return BoundQuiver(self.vertices, arrows, rels)

    def is_acyclic(self) -> bool:
        indeg = {v: 0 for v in self.vertices}
        for a in self.arrows:
            indeg[a.target] += 1
        todo = deque(v for v in self.vertices if indeg[v] == 0)
        seen = 0
        while todo:
            v = todo.popleft()
            seen += 1
            for a in self.arrows_from(v):
                indeg[a.target] -= 1
                if indeg[a.target] == 0:
                    todo.append(a.target)
        return seen == len(self.vertices)


class VertexOrder:
    """A strict partial order on vertices, stored transitively closed.

    ``pairs`` holds ``(a, b)`` meaning ``a < b``.
    """

    def __init__(self, vertices: Sequence[str], pairs: Iterable[tuple[str, str]] = ()):
        self.vertices = tuple(vertices)
        vset = set(self.vertices)
        above: dict[str, set[str]] = {v: set() for v in self.vertices}
        for a, b in pairs:
            if a not in vset or b not in vset:
                raise MalformedQuiver(f"order mentions undeclared vertex in {a} < {b}")
            above[a].add(b)
        # transitive closure by DFS from every vertex
        closed: set[tuple[str, str]] = set()
        for v in self.vertices:
            stack, seen = list(above[v]), set()
            while stack:
                w = stack.pop()
                if w in seen:
                    continue
                seen.add(w)
                stack.extend(above[w])
            if v in seen:
                raise CyclicOrder(f"order has a cycle through {v}")
            closed.update((v, w) for w in seen)
        self.pairs: frozenset[tuple[str, str]] = frozenset(closed)

    @classmethod
    def total(cls, chain: Sequence[str]) -> "VertexOrder":
        """Total order from a sequence listed from lowest to highest."""
        chain = list(chain)
        return cls(chain, list(zip(chain, chain[1:])))

    def __eq__(self, other):
        return (isinstance(other, VertexOrder) and set(self.vertices) == set(other.vertices)
                and self.pairs == other.pairs)

    def __hash__(self):
        return hash((frozenset(self.vertices), self.pairs))

    def __repr__(self):
        if self.is_total:
            return "VertexOrder(" + " < ".join(self.chain) + ")"
        return f"VertexOrder(partial, {sorted(self.covering_pairs())})"

    def less(self, a: str, b: str) -> bool:
        return (a, b) in self.pairs

    def comparable(self, a: str, b: str) -> bool:
        return a == b or (a, b) in self.pairs or (b, a) in self.pairs

    @cached_property
    def is_total(self) -> bool:
        n = len(self.vertices)
        return len(self.pairs) == n * (n - 1) // 2

    @cached_property
    def ranks(self) -> dict[str, int]:
        """Rank of every vertex (0 = lowest); total orders only."""
        if not self.is_total:
            raise IncomparableVertices("ranks are only defined for total orders")
        below = {v: 0 for v in self.vertices}
        for a, b in self.pairs:
            below[b] += 1
        return below

    def rank(self, v: str) -> int:
        return self.ranks[v]

    @property
    def chain(self) -> list[str]:
        r = self.ranks
        return sorted(self.vertices, key=r.__getitem__)

    def covering_pairs(self) -> list[tuple[str, str]]:
        """Transitive reduction, ordered by vertex declaration."""
        idx = {v: k for k, v in enumerate(self.vertices)}
        cover = []
        for a, b in self.pairs:
            if not any((a, c) in self.pairs and (c, b) in self.pairs for c in self.vertices):
                cover.append((a, b))
        return sorted(cover, key=lambda ab: (idx[ab[0]], idx[ab[1]]))

    def restrict(self, vertices: Iterable[str]) -> "VertexOrder":
        vs = [v for v in self.vertices if v in set(vertices)]
        keep = set(vs)
        return VertexOrder(vs, [(a, b) for a, b in self.pairs if a in keep and b in keep])

    def linear_extensions(self) -> Iterator["VertexOrder"]:
        """All total orders refining this one (small vertex sets only)."""
        def rec(placed: list[str], rest: set[str]):
            if not rest:
                yield VertexOrder.total(placed)
                return
            for v in [w for w in self.vertices if w in rest]:
                if not any((u, v) in self.pairs for u in rest if u != v):
                    rest.remove(v)
                    placed.append(v)
                    yield from rec(placed, rest)
                    placed.pop()
                    rest.add(v)
        yield from rec([], set(self.vertices))


def max_vertex(p: Path, order: VertexOrder) -> str:
    """Order-maximum of the vertices visited by ``p``."""
    if order.is_total:
        r = order.ranks
        return max(p.vertices, key=r.__getitem__)
    best = p.vertices[0]
    for v in p.vertices[1:]:
        if not order.comparable(best, v):
            raise IncomparableVertices(f"{best} and {v} are incomparable on {p}")
        if order.less(best, v):
            best = v
    for v in p.vertices:
        if not order.comparable(best, v):
            raise IncomparableVertices(f"{best} and {v} are incomparable on {p}")
    return best


class _AhoCorasick:
    """Aho-Corasick machine over arrow names."""

    def __init__(self, patterns: Iterable[Sequence[str]]):
        self.goto: list[dict[str, int]] = [{}]
        self.terminal: list[bool] = [False]
        for pat in patterns:
            node = 0
            for a in pat:
                nxt = self.goto[node].get(a)
                if nxt is None:
                    nxt = len(self.goto)
                    self.goto[node][a] = nxt
                    self.goto.append({})
                    self.terminal.append(False)
                node = nxt
            self.terminal[node] = True
        self.fail = [0] * len(self.goto)
        todo = deque(self.goto[0].values())
        while todo:
            node = todo.popleft()
            for a, child in self.goto[node].items():
                f = self.fail[node]
                while f and a not in self.goto[f]:
                    f = self.fail[f]
                self.fail[child] = self.goto[f].get(a, 0) if self.goto[f].get(a, 0) != child else 0
                self.terminal[child] = self.terminal[child] or self.terminal[self.fail[child]]
                todo.append(child)
        self._memo: dict[tuple[int, str], int] = {}

    def step(self, node: int, a: str) -> int:
        key = (node, a)
        res = self._memo.get(key)
        if res is None:
            n = node
            while n and a not in self.goto[n]:
                n = self.fail[n]
            res = self.goto[n].get(a, 0)
            self._memo[key] = res
        return res


class MonomialAlgebra:
    """Finite-dimensional algebra kQ/I with its canonical path basis.

    Use :func:`enumerate_basis` to construct one.
    """

    def __init__(self, quiver: BoundQuiver, basis: Sequence[Path]):
        self.quiver = quiver
        self.basis: tuple[Path, ...] = tuple(basis)
        self.index: dict[tuple[str, tuple[str, ...]], int] = {p.key: k for k, p in enumerate(self.basis)}
        self._from: dict[str, list[int]] = {v: [] for v in quiver.vertices}
        self._to: dict[str, list[int]] = {v: [] for v in quiver.vertices}
        for k, p in enumerate(self.basis):
            self._from[p.source].append(k)
            self._to[p.target].append(k)

    @property
    def vertices(self) -> tuple[str, ...]:
        return self.quiver.vertices

    @property
    def dim(self) -> int:
        return len(self.basis)

    def __repr__(self):
        return f"MonomialAlgebra(dim={self.dim}, vertices={list(self.vertices)})"

    def trivial_index(self, v: str) -> int:
        return self.index[(v, ())]

    def indices_from(self, v: str) -> list[int]:
        return self._from[v]

    def indices_to(self, v: str) -> list[int]:
        return self._to[v]

    def lookup(self, p: Path) -> int | None:
        return self.index.get(p.key)

    def product_index(self, a: int, b: int) -> int | None:
        """Index of ``basis[a] * basis[b]`` or None when zero or not composable."""
        pa, pb = self.basis[a], self.basis[b]
        if pb.target != pa.source:
            return None
        if not pa.arrows:
            return b
        return self.index.get((pb.source, pb.arrows + pa.arrows))

    @cached_property
    def opposite(self) -> "MonomialAlgebra":
        return enumerate_basis(self.quiver.opposite())


def ideal_contains(A: MonomialAlgebra, p: Path) -> bool:
    """True iff some relation generator is a contiguous factor of ``p``."""
    return any(_is_factor(r.arrows, p.arrows) for r in A.quiver.relations)


def path_product(a: Path, b: Path, A: MonomialAlgebra) -> Path | None:
    """Algebraic product ``a * b`` (walk ``b``, then ``a``); None stands for zero."""
    if b.target != a.source:
        raise NotComposable(f"{a} * {b}: {b} ends at {b.target}, {a} starts at {a.source}")
    q = A.quiver
    prod = q.path(b.arrows + a.arrows, source=b.source) if (a.arrows or b.arrows) else b
    k = A.index.get(prod.key)
    return None if k is None else A.basis[k]


def enumerate_basis(q: BoundQuiver) -> MonomialAlgebra:
    """All paths avoiding the relations, via the quiver x Aho-Corasick product automaton.

    Raises InfiniteDimensional when a cycle of allowed words is reachable.
    """
    ac = _AhoCorasick(r.arrows for r in q.relations)
    out = {v: q.arrows_from(v) for v in q.vertices}

    def successors(state):
        v, node = state
        for a in out[v]:
            nxt = ac.step(node, a.name)
            if not ac.terminal[nxt]:
                yield a, (a.target, nxt)

    # cycle detection on the reachable part of the product automaton
    WHITE, GREY, BLACK = 0, 1, 2
    colour: dict[tuple[str, int], int] = {}
    parent: dict[tuple[str, int], tuple[tuple[str, int], Arrow]] = {}
    for v in q.vertices:
        start = (v, 0)
        if colour.get(start, WHITE) != WHITE:
            continue
        colour[start] = GREY
        stack = [(start, successors(start))]
        while stack:
            state, it = stack[-1]
            for a, nxt in it:
                c = colour.get(nxt, WHITE)
                if c == GREY:
                    cycle = [a.name]
                    cur = state
                    while cur != nxt:
                        prev, arr = parent[cur]
                        cycle.append(arr.name)
                        cur = prev
                    cycle.reverse()
                    prefix = []
                    cur = nxt
                    while cur in parent:
                        prev, arr = parent[cur]
                        prefix.append(arr.name)
                        cur = prev
                    prefix.reverse()
                    witness = q.path(cycle)
                    pre = q.path(prefix, source=cur[0])
                    raise InfiniteDimensional(witness, pre)
                if c == WHITE:
                    colour[nxt] = GREY
                    parent[nxt] = (state, a)
                    stack.append((nxt, successors(nxt)))
                    break
            else:
                colour[state] = BLACK
                stack.pop()

    basis: list[Path] = []
    for v in q.vertices:
        todo = [((v, 0), (), (v,))]
        while todo:
            state, arrs, verts = todo.pop()
            basis.append(Path(v, arrs, verts))
            for a, nxt in successors(state):
                todo.append((nxt, arrs + (a.name,), verts + (a.target,)))
    vidx = q.vertex_index
    basis.sort(key=lambda p: (p.length, vidx[p.source], p.arrows))
    return MonomialAlgebra(q, basis)


def factors(p: Path, q: BoundQuiver) -> Iterator[Path]:
    """All contiguous nontrivial factors of ``p``."""
    for i, j in combinations(range(p.length + 1), 2):
        yield q.path(p.arrows[i:j])
