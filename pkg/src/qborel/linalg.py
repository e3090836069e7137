"""Exact linear algebra over the rationals.

Rows are kept sparse (column -> value).  Rank uses fraction-free elimination
on integer rows, reduced by their content after every step so entries stay
small; nullspaces use ordinary reduced row echelon form over Fraction.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd, lcm
from typing import Iterable, Mapping, Sequence

SparseRow = dict[int, Fraction]


def _as_fraction(x) -> Fraction:
    return x if isinstance(x, Fraction) else Fraction(x)


def _integer_row(row: Mapping[int, Fraction]) -> dict[int, int]:
    den = 1
    for v in row.values():
        den = lcm(den, v.denominator)
    out = {c: int(v * den) for c, v in row.items() if v}
    return _primitive(out)


def _primitive(row: dict[int, int]) -> dict[int, int]:
    g = 0
    for v in row.values():
        g = gcd(g, v)
        if g == 1:
            return row
    if g > 1:
        row = {c: v // g for c, v in row.items()}
    return row


class RationalMatrix:
    """A rows x cols matrix with exact rational entries stored sparsely."""

    def __init__(self, rows: Iterable[Mapping[int, object] | Sequence[object]], cols: int | None = None):
        self.rows: list[SparseRow] = []
        width = 0
        for r in rows:
            if isinstance(r, Mapping):
                sr = {int(c): _as_fraction(v) for c, v in r.items() if v}
            else:
                sr = {c: _as_fraction(v) for c, v in enumerate(r) if v}
            if sr:
                width = max(width, max(sr) + 1)
            self.rows.append(sr)
        self.cols = width if cols is None else cols
        if width > self.cols:
            raise ValueError("entry outside the declared column range")

    @property
    def shape(self) -> tuple[int, int]:
        return (len(self.rows), self.cols)

    def __repr__(self):
        return f"RationalMatrix({len(self.rows)}x{self.cols})"

    def to_dense(self) -> list[list[Fraction]]:
        out = []
        for r in self.rows:
            d = [Fraction(0)] * self.cols
            for c, v in r.items():
                d[c] = v
            out.append(d)
        return out

    def transpose(self) -> "RationalMatrix":
        cols: list[SparseRow] = [{} for _ in range(self.cols)]
        for i, r in enumerate(self.rows):
            for c, v in r.items():
                cols[c][i] = v
        return RationalMatrix(cols, len(self.rows))

    def rank(self) -> int:
        """Rank by sparse fraction-free elimination."""
        pivots: dict[int, dict[int, int]] = {}
        for r in self.rows:
            row = _integer_row(r)
            while row:
                c = min(row)
                p = pivots.get(c)
                if p is None:
                    pivots[c] = row
                    break
                a, b = p[c], row[c]
                new = {k: a * v for k, v in row.items()}
                for k, v in p.items():
                    nv = new.get(k, 0) - b * v
                    if nv:
                        new[k] = nv
                    else:
                        new.pop(k, None)
                row = _primitive(new)
        return len(pivots)

    def rref(self) -> tuple[list[SparseRow], list[int]]:
        """Reduced row echelon form; returns (nonzero rows, pivot columns)."""
        pivots: dict[int, SparseRow] = {}
        for r in self.rows:
            row = dict(r)
            # pivot rows are fully reduced, so one pass clears every pivot column
            for c in [c for c in row if c in pivots]:
                f = row[c]
                for k, v in pivots[c].items():
                    nv = row.get(k, 0) - f * v
                    if nv:
                        row[k] = nv
                    else:
                        row.pop(k, None)
            if not row:
                continue
            c = min(row)
            inv = 1 / row[c]
            row = {k: v * inv for k, v in row.items()}
            for pc, prow in pivots.items():
                f = prow.get(c)
                if f:
                    for k, v in row.items():
                        nv = prow.get(k, 0) - f * v
                        if nv:
                            prow[k] = nv
                        else:
                            prow.pop(k, None)
            pivots[c] = row
        order = sorted(pivots)
        return [pivots[c] for c in order], order

    def nullspace(self) -> list[SparseRow]:
        """Basis of {x : M x = 0}, one sparse vector per free column."""
        rows, piv = self.rref()
        pivset = set(piv)
        basis = []
        for free in range(self.cols):
            if free in pivset:
                continue
            vec: SparseRow = {free: Fraction(1)}
            for pc, row in zip(piv, rows):
                v = row.get(free)
                if v:
                    vec[pc] = -v
            basis.append(vec)
        return basis

    def mul_vector(self, x: Mapping[int, Fraction]) -> SparseRow:
        out: SparseRow = {}
        for i, r in enumerate(self.rows):
            s = sum((v * x[c] for c, v in r.items() if c in x), Fraction(0))
            if s:
                out[i] = s
        return out


def rank(vectors: Iterable[Mapping[int, object]]) -> int:
    return RationalMatrix(list(vectors)).rank()


def same_span(xs: Sequence[Mapping[int, object]], ys: Sequence[Mapping[int, object]]) -> bool:
    """True iff the two families of sparse vectors span the same subspace."""
    rx, ry = rank(xs), rank(ys)
    return rx == ry == rank(list(xs) + list(ys))


def format_fraction(x: Fraction) -> str:
    x = Fraction(x)
    return f"{x.numerator}/{x.denominator}"
