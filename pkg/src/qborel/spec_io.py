"""Text format for bound quivers with an order, and deterministic JSON reports.

A problem file looks like::

    quiver fixA {
      vertices: 1 2 3;
      arrows:
        alpha: 1 -> 3;
        beta: 3 -> 2;
        gamma: 1 -> 2;
      relations: alpha.beta;
      order: 1 < 2 < 3;
    }

Relations are written in traversal order (first arrow first).  ``rel:`` is
accepted for ``relations:``; ``#`` starts a comment.  The order block holds one
or more chains separated by ``;`` and is closed transitively.
"""

from __future__ import annotations

import hashlib
import json
import re
from dataclasses import dataclass
from pathlib import Path as FsPath
from typing import Any, Iterator

from .quiver import (Arrow, BoundQuiver, CyclicOrder, MalformedQuiver, NotComposable, Path,
                     QuiverError, VertexOrder)


class SpecError(QuiverError):
    """Input problem, with a 1-based position when one is known."""

    def __init__(self, message: str, line: int | None = None, col: int | None = None):
        self.line, self.col = line, col
        where = f"line {line}, column {col}: " if line is not None else ""
        super().__init__(where + message)


class SpecSyntaxError(SpecError):
    pass


class UnknownVertex(SpecError):
    pass


class UnknownArrow(SpecError):
    pass


class NonComposableRelation(SpecError):
    pass


class SpecCyclicOrder(SpecError, CyclicOrder):
    pass


@dataclass(frozen=True)
class ProblemSpec:
    name: str
    quiver: BoundQuiver
    order: VertexOrder | None = None


_TOKEN = re.compile(r"\s+|#[^\n]*|(?P<arrow>->)|(?P<sym>[:;<.{}])|(?P<name>[\w']+)|(?P<bad>.)")
_SECTIONS = {"vertices", "arrows", "relations", "rel", "order"}


@dataclass
class _Tok:
    kind: str
    text: str
    line: int
    col: int


def _tokenize(text: str) -> list[_Tok]:
    toks = []
    line, line_start = 1, 0
    for m in _TOKEN.finditer(text):
        col = m.start() - line_start + 1
        if m.group("bad"):
            raise SpecSyntaxError(f"unexpected character {m.group('bad')!r}", line, col)
        for kind in ("arrow", "sym", "name"):
            if m.group(kind):
                toks.append(_Tok(kind, m.group(kind), line, col))
                break
        nl = m.group().count("\n")
        if nl:
            line += nl
            line_start = m.start() + m.group().rfind("\n") + 1
    toks.append(_Tok("eof", "", line, len(text) - line_start + 1))
    return toks


class _Parser:
    def __init__(self, text: str):
        self.toks = _tokenize(text)
        self.pos = 0

    def peek(self, k: int = 0) -> _Tok:
        return self.toks[min(self.pos + k, len(self.toks) - 1)]

    def next(self) -> _Tok:
        t = self.peek()
        self.pos += 1
        return t

    def expect(self, text: str) -> _Tok:
        t = self.next()
        if t.kind != "sym" or t.text != text:
            raise SpecSyntaxError(f"expected {text!r}, found {t.text or 'end of input'!r}", t.line, t.col)
        return t

    def name(self) -> _Tok:
        t = self.next()
        if t.kind != "name":
            raise SpecSyntaxError(f"expected a name, found {t.text or 'end of input'!r}", t.line, t.col)
        return t

    def at_section(self) -> bool:
        t = self.peek()
        if t.kind != "name" or t.text not in _SECTIONS or self.peek(1).text != ":":
            return False
        # "order: x -> y;" inside an arrows block is an arrow named order
        return not (self.peek(2).kind == "name" and self.peek(3).kind == "arrow")

    def parse(self) -> ProblemSpec:
        kw = self.name()
        if kw.text != "quiver":
            raise SpecSyntaxError("a spec starts with 'quiver'", kw.line, kw.col)
        name = self.name().text
        self.expect("{")
        vertices: list[_Tok] | None = None
        arrows: list[tuple[_Tok, _Tok, _Tok]] = []
        relations: list[list[_Tok]] = []
        chains: list[list[_Tok]] = []
        seen_order = False
        while self.peek().text != "}":
            t = self.peek()
            if not self.at_section():
                raise SpecSyntaxError(f"expected a section keyword, found {t.text or 'end of input'!r}",
                                      t.line, t.col)
            self.next()
            self.expect(":")
            if t.text == "vertices":
                if vertices is not None:
                    raise SpecSyntaxError("vertices declared twice", t.line, t.col)
                vertices = []
                while self.peek().text != ";":
                    vertices.append(self.name())
                self.expect(";")
            elif t.text == "arrows":
                while self.peek().kind == "name" and not self.at_section():
                    a = self.name()
                    self.expect(":")
                    s = self.name()
                    arr = self.next()
                    if arr.kind != "arrow":
                        raise SpecSyntaxError("expected '->'", arr.line, arr.col)
                    d = self.name()
                    self.expect(";")
                    arrows.append((a, s, d))
            elif t.text in ("relations", "rel"):
                while self.peek().kind == "name" and not self.at_section():
                    path = [self.name()]
                    while self.peek().text == ".":
                        self.next()
                        path.append(self.name())
                    if len(path) < 2:
                        raise SpecSyntaxError("a relation needs at least two arrows",
                                              path[0].line, path[0].col)
                    self.expect(";")
                    relations.append(path)
            else:
                seen_order = True
                while self.peek().kind == "name" and not self.at_section():
                    chain = [self.name()]
                    while self.peek().text == "<":
                        self.next()
                        chain.append(self.name())
                    self.expect(";")
                    chains.append(chain)
        self.expect("}")
        end = self.next()
        if end.kind != "eof":
            raise SpecSyntaxError("trailing input after the closing brace", end.line, end.col)
        if vertices is None:
            raise SpecSyntaxError("missing 'vertices:' section", kw.line, kw.col)
        return _build(name, vertices, arrows, relations, chains if seen_order else None)


def _build(name, vertices, arrows, relations, chains) -> ProblemSpec:
    vnames = [v.text for v in vertices]
    vset = set()
    for v in vertices:
        if v.text in vset:
            raise SpecSyntaxError(f"duplicate vertex {v.text}", v.line, v.col)
        vset.add(v.text)
    arrow_objs = []
    anames = set()
    for a, s, d in arrows:
        for end in (s, d):
            if end.text not in vset:
                raise UnknownVertex(f"unknown vertex {end.text}", end.line, end.col)
        if a.text in anames:
            raise SpecSyntaxError(f"duplicate arrow {a.text}", a.line, a.col)
        anames.add(a.text)
        arrow_objs.append(Arrow(a.text, s.text, d.text))
    q = BoundQuiver(vnames, arrow_objs)
    rels = []
    for path in relations:
        for t in path:
            if t.text not in anames:
                raise UnknownArrow(f"unknown arrow {t.text}", t.line, t.col)
        try:
            rels.append(q.path([t.text for t in path]))
        except NotComposable as exc:
            raise NonComposableRelation(str(exc), path[0].line, path[0].col) from None
    try:
        q = BoundQuiver(vnames, arrow_objs, rels)
    except MalformedQuiver as exc:
        raise SpecError(str(exc)) from None
    order = None
    if chains is not None:
        pairs = []
        for chain in chains:
            for t in chain:
                if t.text not in vset:
                    raise UnknownVertex(f"unknown vertex {t.text}", t.line, t.col)
            pairs += [(a.text, b.text) for a, b in zip(chain, chain[1:])]
        try:
            order = VertexOrder(vnames, pairs)
        except CyclicOrder as exc:
            t = chains[0][0]
            raise SpecCyclicOrder(str(exc), t.line, t.col) from None
    return ProblemSpec(name, q, order)


def parse_spec(text: str) -> ProblemSpec:
    return _Parser(text).parse()


def load_spec(path: str | FsPath) -> ProblemSpec:
    try:
        text = FsPath(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise SpecError(f"cannot read {path}: {exc.strerror}") from None
    return parse_spec(text)


def path_sort_key(q: BoundQuiver, p: Path):
    """Canonical ordering of paths: source in declaration order, then arrow names."""
    return (q.vertex_index[p.source], p.arrows)


def render_spec(s: ProblemSpec) -> str:
    q = s.quiver
    lines = [f"quiver {s.name} {{", "  vertices: " + " ".join(q.vertices) + ";"]
    if q.arrows:
        lines.append("  arrows:")
        lines += [f"    {a.name}: {a.source} -> {a.target};" for a in q.arrows]
    if q.relations:
        lines.append("  relations:")
        for r in sorted(q.relations, key=lambda p: path_sort_key(q, p)):
            lines.append("    " + ".".join(r.arrows) + ";")
    if s.order is not None:
        if s.order.is_total:
            chains = [" < ".join(s.order.chain)]
        else:
            idx = q.vertex_index
            cover = sorted(s.order.covering_pairs(), key=lambda ab: (idx[ab[0]], idx[ab[1]]))
            chains = [f"{a} < {b}" for a, b in cover]
        lines.append("  order: " + "; ".join(chains) + ";" if chains else "  order:")
    lines.append("}")
    return "\n".join(lines) + "\n"


def spec_digest(s: ProblemSpec) -> str:
    return hashlib.sha256(render_spec(s).encode("utf-8")).hexdigest()


def _check_no_floats(obj: Any, where: str = "payload") -> None:
    if isinstance(obj, float):
        raise TypeError(f"floating-point value at {where}")
    if isinstance(obj, dict):
        for k, v in obj.items():
            if not isinstance(k, str):
                raise TypeError(f"non-string key at {where}")
            _check_no_floats(v, f"{where}.{k}")
    elif isinstance(obj, (list, tuple)):
        for k, v in enumerate(obj):
            _check_no_floats(v, f"{where}[{k}]")


def make_report(command: str, digest: str, payload: dict) -> dict:
    _check_no_floats(payload)
    return {"command": command, "inputDigest": digest, "payload": payload}


def dumps_report(report: dict) -> str:
    return json.dumps(report, sort_keys=True, indent=2, ensure_ascii=False) + "\n"


def iter_chains(order: VertexOrder) -> Iterator[str]:
    """Human-readable chains of an order (its covering pairs, or one chain if total)."""
    if order.is_total:
        yield " < ".join(order.chain)
    else:
        for a, b in sorted(order.covering_pairs()):
            yield f"{a} < {b}"
