"""Standard and costandard modules, the heredity-chain test, an Ext^1 oracle
and a verifier for exact Borel subalgebras given by spanning vectors.

Modules are left modules: P_i = A e_i is spanned by the basis paths starting
at i, and Hom(P_u, P_w) is identified with the paths from w to u acting by
right multiplication.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

from .borel import OrderedAlgebra, ordered
from .linalg import RationalMatrix, rank, same_span
from .quiver import MonomialAlgebra, Path, QuiverError

Vector = dict[int, Fraction]


class NotQuasiHereditary(QuiverError):
    pass


class MissingSemisimplePart(QuiverError):
    pass


@dataclass
class ModulePresentation:
    apex: str
    kind: str
    basis: list[Path]
    kernel: list[Path]

    @property
    def dim(self) -> int:
        return len(self.basis)


def standard_basis(A: MonomialAlgebra, order, i: str) -> ModulePresentation:
    """Delta_i: paths from i never rising above i; the rest of P_i is the kernel."""
    ctx = ordered(A, order)
    ri = ctx.rank[i]
    basis, kernel = [], []
    for k in A.indices_from(i):
        (basis if ctx.maxrank[k] <= ri else kernel).append(A.basis[k])
    return ModulePresentation(i, "Delta", basis, kernel)


def costandard_basis(A: MonomialAlgebra, order, i: str) -> ModulePresentation:
    """Nabla_i, labelled by the dual basis: paths ending at i whose maximum is i."""
    ctx = ordered(A, order)
    ri = ctx.rank[i]
    basis, kernel = [], []
    for k in A.indices_to(i):
        (basis if ctx.maxrank[k] == ri else kernel).append(A.basis[k])
    return ModulePresentation(i, "Nabla", basis, kernel)


@dataclass
class PresentationData:
    apex: str
    p1: list[tuple[str, Path]]
    p2: list[tuple[str, Path, Path]]  # (apex, label q, the P1 label p it maps into)

    def describe(self) -> str:
        def ps(vs):
            return " + ".join(f"P_{v}" for v in vs) if vs else "0"
        return f"{ps([a for a, *_ in self.p2])} -> {ps([a for a, _ in self.p1])} -> P_{self.apex}"


def delta_presentation(A: MonomialAlgebra, order, i: str) -> PresentationData:
    """P2 -> P1 -> P_i -> Delta_i with P1 indexed by E_i and P2 by the annihilating paths E_p."""
    ctx = ordered(A, order)
    p1, p2 = [], []
    for k in ctx.e_indices(i):
        p = A.basis[k]
        p1.append((p.target, p))
        for qk in A.indices_from(p.target):
            if A.basis[qk].arrows and A.product_index(qk, k) is None:
                q = A.basis[qk]
                p2.append((q.target, q, p))
    return PresentationData(i, p1, p2)


def presentation_checks(A: MonomialAlgebra, order, i: str) -> dict[str, bool]:
    """image(d1) equals the kernel of P_i -> Delta_i, and d1 d2 = 0."""
    ctx = ordered(A, order)
    pres = delta_presentation(A, ctx, i)
    image = set()
    for _, p in pres.p1:
        pk = A.lookup(p)
        for x in A.indices_from(p.target):
            y = A.product_index(x, pk)
            if y is not None:
                image.add(y)
    kernel = {A.lookup(p) for p in standard_basis(A, ctx, i).kernel}
    d1d2 = all(A.product_index(A.lookup(q), A.lookup(p)) is None for _, q, p in pres.p2)
    return {"image_is_kernel": image == kernel, "d1_d2_zero": d1d2, "rank_d1": len(image) == len(kernel)}


@dataclass
class QHVerdict:
    ok: bool
    layers: list[str]
    vertex: str | None = None
    reason: str | None = None
    witness: tuple[Path, ...] = ()


def check_quasi_hereditary(A: MonomialAlgebra, order) -> QHVerdict:
    """Peel split heredity ideals A e_v A from the top vertex downwards."""
    ctx = ordered(A, order)
    alive = set(range(A.dim))
    layers = []
    for r in range(len(A.vertices) - 1, -1, -1):
        v = ctx.vertex_at(r)
        layers.append(v)
        starts = [k for k in A.indices_from(v) if k in alive]
        ends = [k for k in A.indices_to(v) if k in alive]
        for k in starts:
            if A.basis[k].target == v and A.basis[k].arrows:
                return QHVerdict(False, layers, v, "nontrivial path from the layer vertex to itself",
                                 (A.basis[k],))
        for p in starts:
            for q in ends:
                if A.product_index(p, q) is None:
                    return QHVerdict(False, layers, v, "product through the layer vertex vanishes",
                                     (A.basis[p], A.basis[q]))
        alive = {k for k in alive if v not in A.basis[k].vertices}
    return QHVerdict(True, layers)


def require_qh(A: MonomialAlgebra, order) -> OrderedAlgebra:
    ctx = ordered(A, order)
    v = check_quasi_hereditary(A, ctx)
    if not v.ok:
        raise NotQuasiHereditary(f"not quasi-hereditary at vertex {v.vertex}: {v.reason}")
    return ctx


def ext1_dim(A: MonomialAlgebra, order, i: str, j: str, target: str = "delta",
             check: bool = True) -> int:
    """dim Ext^1(Delta_i, N) for N = Delta_j (target="delta") or L_j (target="simple").

    Uses the presentation of Delta_i whose first term is indexed by every path
    from i ending above i, computes its relation module by linear algebra and
    takes cocycles modulo coboundaries.
    """
    ctx = require_qh(A, order) if check else ordered(A, order)
    ri, rj = ctx.rank[i], ctx.rank[j]
    # summands of P1(Delta_i): (label index, apex)
    summands = [k for k in A.indices_from(i) if ctx.tgt[k] > ri]
    if not summands:
        return 0
    # kernel of pi_N inside P_j
    if target == "delta":
        in_ker = {k for k in A.indices_from(j) if ctx.maxrank[k] > rj}
    elif target == "simple":
        in_ker = {k for k in A.indices_from(j) if A.basis[k].arrows}
    else:
        raise ValueError("target must be 'delta' or 'simple'")

    # relation module: kernel of d1 on the basis (a, x)
    src_cols: dict[tuple[int, int], int] = {}
    d1_rows: dict[int, dict[int, Fraction]] = {}
    for a, pk in enumerate(summands):
        for x in A.indices_from(A.basis[pk].target):
            col = src_cols.setdefault((a, x), len(src_cols))
            y = A.product_index(x, pk)
            if y is not None:
                d1_rows.setdefault(y, {})[col] = Fraction(1)
    d1 = RationalMatrix(list(d1_rows.values()), len(src_cols))
    cols_inv = {c: ax for ax, c in src_cols.items()}
    relations = d1.nullspace()

    # unknowns: maps on summand a given by a path y from j to apex(a)
    var: dict[tuple[int, int], int] = {}
    for a, pk in enumerate(summands):
        for y in A.indices_to(A.basis[pk].target):
            if A.basis[y].source == j:
                var[(a, y)] = len(var)
    if not var:
        return 0
    by_summand: dict[int, list[int]] = {}
    for (a, y) in var:
        by_summand.setdefault(a, []).append(y)

    constraints = []
    for rel in relations:
        rows: dict[int, dict[int, Fraction]] = {}
        for col, coeff in rel.items():
            a, x = cols_inv[col]
            for y in by_summand.get(a, ()):
                w = A.product_index(x, y)
                if w is None or w in in_ker:
                    continue
                row = rows.setdefault(w, {})
                c = var[(a, y)]
                row[c] = row.get(c, 0) + coeff
        constraints.extend(r for r in rows.values() if any(r.values()))
    dim_z = len(var) - RationalMatrix(constraints, len(var)).rank()

    bound = []
    for (a, y), c in var.items():
        if y in in_ker:
            bound.append({c: Fraction(1)})
    for y0 in A.indices_to(i):
        if A.basis[y0].source != j:
            continue
        vec = {}
        for a, pk in enumerate(summands):
            z = A.product_index(pk, y0)
            if z is not None:
                vec[var[(a, z)]] = Fraction(1)
        if vec:
            bound.append(vec)
    return dim_z - RationalMatrix(bound, len(var)).rank()


def _parse_linear(A: MonomialAlgebra, text: str) -> Vector:
    q = A.quiver
    vec: Vector = {}
    s = text.replace(" ", "")
    for sign, coef, path in re.findall(r"([+-]?)(?:([0-9]+(?:/[0-9]+)?)\*)?([^+\-]+)", s):
        c = Fraction(coef) if coef else Fraction(1)
        if sign == "-":
            c = -c
        p = q.parse_path(path)
        k = A.lookup(p)
        if k is None:
            raise QuiverError(f"{path} is zero in the algebra")
        vec[k] = vec.get(k, 0) + c
    return {k: v for k, v in vec.items() if v}


@dataclass
class SpannedSubalgebra:
    algebra: MonomialAlgebra = field(repr=False)
    vectors: list[Vector]

    @classmethod
    def from_paths(cls, A: MonomialAlgebra, paths: Iterable[Path]) -> "SpannedSubalgebra":
        return cls(A, [{A.lookup(p): Fraction(1)} for p in paths])

    @classmethod
    def from_expressions(cls, A: MonomialAlgebra, exprs: Iterable[str]) -> "SpannedSubalgebra":
        """Each expression is a signed sum of paths, e.g. ``gamma + alpha.beta`` or ``1/2*alpha``."""
        return cls(A, [_parse_linear(A, e) for e in exprs])

    @property
    def dim(self) -> int:
        return rank(self.vectors)

    def multiply(self, u: Mapping[int, Fraction], v: Mapping[int, Fraction]) -> Vector:
        A = self.algebra
        out: Vector = {}
        for a, ca in u.items():
            for b, cb in v.items():
                c = A.product_index(a, b)
                if c is not None:
                    out[c] = out.get(c, 0) + ca * cb
        return {k: x for k, x in out.items() if x}


@dataclass
class CheckResult:
    ok: bool
    witness: str | None = None


@dataclass
class BorelReport:
    checks: dict[str, CheckResult]

    @property
    def ok(self) -> bool:
        return all(c.ok for c in self.checks.values())


def _fmt_vec(A: MonomialAlgebra, v: Mapping[int, Fraction]) -> str:
    parts = []
    for k in sorted(v):
        c = v[k]
        name = str(A.basis[k])
        parts.append(name if c == 1 else f"{c}*{name}")
    return " + ".join(parts) or "0"


def _restrict(v: Mapping[int, Fraction], keep) -> Vector:
    return {k: c for k, c in v.items() if k in keep}


def verify_exact_borel(A: MonomialAlgebra, order, B: SpannedSubalgebra) -> BorelReport:
    ctx = require_qh(A, order)
    V = [dict(v) for v in B.vectors if v]
    for v in A.vertices:
        e = {A.trivial_index(v): Fraction(1)}
        if rank(V + [e]) != rank(V):
            raise MissingSemisimplePart(f"e_{v} is not in the span")
    checks: dict[str, CheckResult] = {}
    dimB = rank(V)

    bad = None
    for u in V:
        for w in V:
            prod = B.multiply(u, w)
            if prod and rank(V + [prod]) != dimB:
                bad = f"({_fmt_vec(A, u)}) * ({_fmt_vec(A, w)})"
                break
        if bad:
            break
    checks["closure"] = CheckResult(bad is None, bad)

    nontriv = {k for k, p in enumerate(A.basis) if p.arrows}
    radB = [r for r in (_restrict(v, nontriv) for v in V) if r]
    dim_rad = rank(radB)
    checks["radical"] = CheckResult(dim_rad == dimB - len(A.vertices),
                                    None if dim_rad == dimB - len(A.vertices) else f"dim {dim_rad}")

    # A rad(B) e_i for every i
    ArB: dict[str, list[Vector]] = {}
    for i in A.vertices:
        src_i = set(A.indices_from(i))
        gens = [g for g in (_restrict(r, src_i) for r in radB) if g]
        vecs = []
        for g in gens:
            for a in range(A.dim):
                prod = B.multiply({a: Fraction(1)}, g)
                if prod:
                    vecs.append(prod)
        ArB[i] = vecs

    total = 0
    for i in A.vertices:
        m_i = len(A.indices_from(i)) - rank(ArB[i])
        tgt_i = set(A.indices_to(i))
        eiB = rank([g for g in (_restrict(v, tgt_i) for v in V) if g])
        total += m_i * eiB
    checks["projective"] = CheckResult(total == A.dim, None if total == A.dim else f"{total} != {A.dim}")

    bad = None
    for i in A.vertices:
        eta = [{k: Fraction(1)} for k in A.indices_from(i) if ctx.maxrank[k] > ctx.rank[i]]
        if not same_span(ArB[i], eta):
            bad = f"vertex {i}"
            break
    checks["standard_modules"] = CheckResult(bad is None, bad)

    rad2 = [p for p in (B.multiply(u, w) for u in radB for w in radB) if p]
    bad = None
    for i in A.vertices:
        for j in A.vertices:
            keep = set(A.indices_from(i)) & set(A.indices_to(j))
            if not keep:
                continue
            d1 = rank([g for g in (_restrict(r, keep) for r in radB) if g])
            d2 = rank([g for g in (_restrict(r, keep) for r in rad2) if g])
            if d1 > d2 and ctx.rank[i] >= ctx.rank[j]:
                bad = f"{i} -> {j}"
                break
        if bad:
            break
    checks["directed"] = CheckResult(bad is None, bad)
    return BorelReport(checks)
