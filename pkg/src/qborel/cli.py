"""Command-line interface.

Exit codes: 0 computed with a positive verdict, 1 computed with a negative
verdict, 2 input or usage error.
"""

from __future__ import annotations

import argparse
import os
import sys
from typing import Callable

from . import borel, census, homalg, regularity
from .quiver import MonomialAlgebra, QuiverError, VertexOrder, enumerate_basis
from .spec_io import (ProblemSpec, dumps_report, load_spec, make_report, parse_spec,
                      path_sort_key, spec_digest)


class InputError(Exception):
    pass


class Result:
    """Payload, plain-text lines and exit code of one command."""

    def __init__(self, payload: dict, lines: list[str], code: int = 0):
        self.payload, self.lines, self.code = payload, lines, code


def _threads(args) -> int:
    if args.threads is not None:
        return max(1, args.threads)
    env = os.environ.get("QB_THREADS")
    if env:
        try:
            return max(1, int(env))
        except ValueError:
            raise InputError(f"QB_THREADS must be an integer, got {env!r}") from None
    return 1


class Context:
    def __init__(self, spec: ProblemSpec):
        self.spec = spec
        self.A: MonomialAlgebra = enumerate_basis(spec.quiver)

    @property
    def order(self) -> VertexOrder:
        o = self.spec.order
        if o is None:
            raise InputError("this command needs an 'order:' block")
        if not o.is_total:
            raise InputError("this command needs a total order")
        return o

    def ps(self, paths) -> list[str]:
        q = self.spec.quiver
        return [str(p) for p in sorted(paths, key=lambda p: path_sort_key(q, p))]


def _qh_gate(ctx: Context) -> Result | None:
    v = homalg.check_quasi_hereditary(ctx.A, ctx.order)
    if v.ok:
        return None
    payload = {"quasiHereditary": False, "vertex": v.vertex, "reason": v.reason,
               "witness": [str(p) for p in v.witness]}
    return Result(payload, [f"not quasi-hereditary at vertex {v.vertex}: {v.reason}"], 1)


def cmd_check(ctx: Context, args) -> Result:
    v = homalg.check_quasi_hereditary(ctx.A, ctx.order)
    payload = {"dim": ctx.A.dim, "quasiHereditary": v.ok, "layers": list(v.layers)}
    if not v.ok:
        payload.update(vertex=v.vertex, reason=v.reason, witness=[str(p) for p in v.witness])
        return Result(payload, [f"dim A = {ctx.A.dim}", f"not quasi-hereditary at vertex {v.vertex}: {v.reason}"], 1)
    return Result(payload, [f"dim A = {ctx.A.dim}", "quasi-hereditary; heredity chain from the top: "
                            + " ".join(v.layers)])


def cmd_borel(ctx: Context, args) -> Result:
    gate = _qh_gate(ctx)
    if gate:
        return gate
    A, o = ctx.A, ctx.order
    bmin = borel.borel_min_basis(A, o)
    bmax = borel.borel_max_basis(A, o)
    cmin = borel.delta_sub_basis(A, o)
    E = borel.right_minimal_dp_paths(A, o)
    payload = {
        "Bmin": ctx.ps(bmin.paths), "Bmax": ctx.ps(bmax.paths), "CminOp": ctx.ps(cmin.paths),
        "E": {f"{i}->{j}": ctx.ps(ps) for (i, j), ps in E.items()},
    }
    lines = ["B_min:  " + " ".join(payload["Bmin"]), "B_max:  " + " ".join(payload["Bmax"]),
             "C_min^op: " + " ".join(payload["CminOp"])]
    lines += [f"E[{k}]: " + " ".join(v) for k, v in sorted(payload["E"].items())]
    return Result(payload, lines)


def cmd_reedy(ctx: Context, args) -> Result:
    A, o = ctx.A, ctx.order
    r = borel.reedy_factorize(A, o)
    if not r.ok:
        payload = {"ok": False, "witness": str(r.witness), "reason": r.reason}
        return Result(payload, [f"no Reedy decomposition: {r.reason} (witness {r.witness})"], 1)
    q = ctx.spec.quiver
    keys = sorted(r.pairs, key=lambda k: path_sort_key(q, A.basis[k]))
    pairs = {str(A.basis[k]): [str(A.basis[c]), str(A.basis[b])] for k, (c, b) in r.pairs.items()}
    decomp = [[str(p), d] for p, d in borel.right_module_decomposition(A, o)]
    lines = [f"{A.basis[k]} = {pairs[str(A.basis[k])][0]} * {pairs[str(A.basis[k])][1]}" for k in keys]
    lines.append("right B_min-module summands: " + ", ".join(f"{p} (dim {d})" for p, d in decomp))
    return Result({"ok": True, "pairs": pairs, "decomposition": decomp}, lines)


def cmd_modules(ctx: Context, args) -> Result:
    gate = _qh_gate(ctx)
    if gate:
        return gate
    A, o = ctx.A, ctx.order
    payload: dict = {"Delta": {}, "Nabla": {}, "presentations": {}}
    lines = []
    total = 0
    for v in A.vertices:
        d = homalg.standard_basis(A, o, v)
        n = homalg.costandard_basis(A, o, v)
        pres = homalg.delta_presentation(A, o, v)
        total += d.dim * n.dim
        payload["Delta"][v] = ctx.ps(d.basis)
        payload["Nabla"][v] = ctx.ps(n.basis)
        payload["presentations"][v] = {
            "P1": [[a, str(p)] for a, p in pres.p1],
            "P2": [[a, str(q), str(p)] for a, q, p in pres.p2],
            "shape": pres.describe(),
        }
        lines.append(f"Delta_{v}: " + " ".join(payload["Delta"][v]))
        lines.append(f"Nabla_{v}: " + " ".join(payload["Nabla"][v]))
        lines.append(f"  presentation: {pres.describe()}")
    payload["dimA"] = A.dim
    payload["sumDeltaNabla"] = total
    lines.append(f"dim A = {A.dim}, sum dim Delta_i * dim Nabla_i = {total}")
    return Result(payload, lines, 0 if total == A.dim else 1)


def cmd_regularity(ctx: Context, args) -> Result:
    A, o = ctx.A, ctx.order
    if args.hereditary_only:
        if A.quiver.relations:
            raise InputError("--hereditary-only needs an algebra without relations")
        v = regularity.regular_borel_hereditary(A, o)
    else:
        gate = _qh_gate(ctx)
        if gate:
            return gate
        v = regularity.regular_borel_criterion(A, o)
    payload = {"regular": v.ok, "witness": [str(p) for p in v.witness], "reason": v.reason}
    if not args.hereditary_only:
        eprime = {}
        ob = borel.ordered(A, o)
        for rj in range(len(A.vertices)):
            for ri in range(rj):
                i, j = ob.vertex_at(ri), ob.vertex_at(rj)
                pairs = regularity.e_prime(A, o, i, j)
                if pairs:
                    eprime[f"{i},{j}"] = [[str(x.p), str(x.q)] for x in pairs]
        payload["Eprime"] = eprime
    if v.ok:
        return Result(payload, ["B_min is a regular exact Borel subalgebra"])
    wit = ", ".join(str(p) for p in v.witness)
    return Result(payload, [f"not regular: {v.reason}", f"witness: ({wit})"], 1)


def cmd_ext(ctx: Context, args) -> Result:
    gate = _qh_gate(ctx)
    if gate:
        return gate
    A, o = ctx.A, ctx.order
    verts = list(o.chain)
    for v in (args.i, args.j):
        if v is not None and v not in verts:
            raise InputError(f"unknown vertex {v}")
    rows = []
    agree = True
    for j in verts:
        for i in verts:
            if o.rank(i) >= o.rank(j):
                continue
            if (args.i and i != args.i) or (args.j and j != args.j):
                continue
            comb_dd = regularity.dim_ext_delta_delta(A, o, i, j)
            lin_dd = homalg.ext1_dim(A, o, i, j, "delta", check=False)
            comb_dl = regularity.dim_ext_delta_simple(A, o, i, j)
            lin_dl = homalg.ext1_dim(A, o, i, j, "simple", check=False)
            agree = agree and comb_dd == lin_dd and comb_dl == lin_dl
            rows.append({"i": i, "j": j, "deltaCombinatorial": comb_dd, "deltaLinear": lin_dd,
                         "simpleCombinatorial": comb_dl, "simpleLinear": lin_dl})
    lines = [f"Ext1(Delta_{r['i']}, Delta_{r['j']}) = {r['deltaCombinatorial']} (linear algebra {r['deltaLinear']}); "
             f"Ext1(Delta_{r['i']}, L_{r['j']}) = {r['simpleCombinatorial']} (linear algebra {r['simpleLinear']})"
             for r in rows]
    return Result({"ext": rows, "agree": agree}, lines, 0 if agree else 1)


def cmd_verify_borel(ctx: Context, args) -> Result:
    gate = _qh_gate(ctx)
    if gate:
        return gate
    A, o = ctx.A, ctx.order
    if args.span:
        exprs = [e for e in args.span.split(",") if e.strip()]
        B = homalg.SpannedSubalgebra.from_expressions(A, exprs)
    else:
        B = homalg.SpannedSubalgebra.from_paths(A, borel.borel_min_basis(A, o).paths)
    rep = homalg.verify_exact_borel(A, o, B)
    payload = {"ok": rep.ok, "dim": B.dim,
               "checks": {k: {"ok": c.ok, "witness": c.witness} for k, c in rep.checks.items()}}
    lines = [f"{k}: {'ok' if c.ok else 'FAILED'}" + (f" ({c.witness})" if c.witness else "")
             for k, c in rep.checks.items()]
    lines.append("exact Borel subalgebra" if rep.ok else "not an exact Borel subalgebra")
    return Result(payload, lines, 0 if rep.ok else 1)


def _report_truncation(t: borel.TruncationReport) -> dict:
    return {"vertices": list(t.vertices), "restricted": [str(p) for p in t.restricted],
            "intrinsic": [str(p) for p in t.intrinsic], "equal": t.equal,
            "counterexample": str(t.counterexample) if t.counterexample else None}


def cmd_truncate(ctx: Context, args) -> Result:
    A, o = ctx.A, ctx.order
    if args.cutoff is not None:
        if args.cutoff not in o.vertices:
            raise InputError(f"unknown vertex {args.cutoff}")
        ranks = [o.rank(args.cutoff)]
    else:
        ranks = list(range(len(A.vertices)))
    reports = [borel.truncate_check(A, o, r) for r in ranks]
    ok = all(t.equal for t in reports)
    lines = [f"e = sum over {{{', '.join(t.vertices)}}}: " + ("equal" if t.equal else f"differs at {t.counterexample}")
             for t in reports]
    return Result({"truncations": [_report_truncation(t) for t in reports], "ok": ok}, lines, 0 if ok else 1)


def cmd_quotient(ctx: Context, args) -> Result:
    A, o = ctx.A, ctx.order
    gens = [g.strip() for g in (args.gens or "").split(",") if g.strip()]
    if not gens:
        raise InputError("--gens needs at least one generator")
    q = ctx.spec.quiver
    try:
        parsed = [q.parse_path(g) for g in gens]
    except QuiverError as exc:
        raise InputError(str(exc)) from None
    res = borel.quotient(A, o, parsed)
    B = res.algebra
    reg = None
    if homalg.check_quasi_hereditary(B, res.order).ok:
        reg = regularity.regular_borel_criterion(B, res.order, check=False).ok
    sort = lambda ps: [str(p) for p in sorted(ps, key=lambda p: path_sort_key(q, p))]
    payload = {"dim": B.dim, "vertices": list(B.vertices), "image": sort(res.image),
               "borel": sort(res.borel), "compatible": res.compatible, "regular": reg}
    lines = [f"dim A/J = {B.dim}", "B_min(A/J): " + " ".join(payload["borel"]),
             "image of B_min(A): " + " ".join(payload["image"]),
             "compatible" if res.compatible else "not compatible",
             f"regular: {reg}"]
    return Result(payload, lines, 0 if res.compatible else 1)


def _census_payload(c: census.StructureCensus) -> dict:
    return {
        "classes": [{"digest": k.digest, "representative": k.representative, "size": k.size,
                     "essentialOrder": [list(p) for p in sorted(k.essential.covering_pairs())],
                     "regular": k.regular, "qh": k.qh, "consistent": k.consistent}
                    for k in c.classes],
        "totals": {"classes": c.num_classes, "regular": c.num_regular, "qh": c.num_qh,
                   "orders": c.orders},
    }


def cmd_census(ctx: Context, args) -> Result:
    c = census.enumerate_structures(ctx.A, max_n=args.max_n, threads=_threads(args))
    payload = _census_payload(c)
    lines = [f"{c.orders} total orders, {c.num_classes} classes, {c.num_qh} quasi-hereditary, "
             f"{c.num_regular} with a regular exact Borel subalgebra"]
    for k in c.classes:
        lines.append(f"  {' < '.join(k.representative)}  size {k.size}  regular {k.regular}")
    return Result(payload, lines)


def cmd_family(args) -> tuple[str, Result]:
    for name in ("na", "nb", "nc"):
        if getattr(args, name) < 0:
            raise InputError(f"--{name} must be non-negative")
    f = census.FamilySpec(args.na, args.nb, args.nc)
    n = args.na + args.nb + args.nc + 1
    if n > args.max_n:
        raise InputError(f"{n} vertices exceeds --max-n {args.max_n}")
    threads = _threads(args)
    row = census.family_row(args.na, args.nb, args.nc, threads=threads, max_n=args.max_n)
    shown = census.FamilySpec(args.na, args.nb, args.nc, args.opposite)
    detail = census.enumerate_structures(enumerate_basis(census.family_quiver(shown)),
                                         max_n=args.max_n, threads=threads)
    payload = {
        "family": [args.na, args.nb, args.nc], "opposite": args.opposite,
        "structures": row.structures, "regular": row.regular, "regularOpposite": row.regular_op,
        "predicted": row.predicted, "predictedOpposite": row.predicted_op,
        "matches": row.matches, "census": _census_payload(detail),
    }
    lines = [
        f"{'quiver':<14}{'structures':>11}{'regular':>9}{'regular op':>12}",
        f"{f.label:<14}{row.structures:>11}{row.regular:>9}{row.regular_op:>12}",
        f"{'predicted':<14}{'':>11}{row.predicted:>9}{row.predicted_op:>12}",
        "enumeration matches the closed formulas" if row.matches
        else "enumeration differs from the closed formulas",
    ]
    spec = ProblemSpec(f.label.replace("(", "_").replace(")", "").replace(",", "_"),
                       census.family_quiver(f))
    return spec_digest(spec), Result(payload, lines, 0 if row.matches else 1)


COMMANDS: dict[str, Callable] = {
    "check": cmd_check, "borel": cmd_borel, "reedy": cmd_reedy, "modules": cmd_modules,
    "regularity": cmd_regularity, "ext": cmd_ext, "verify-borel": cmd_verify_borel,
    "truncate": cmd_truncate, "quotient": cmd_quotient, "census": cmd_census,
}


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="qborel", description="Exact Borel subalgebras of monomial quiver algebras.")
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="emit a JSON report")
    common.add_argument("--threads", type=int, default=None, help="worker threads (default QB_THREADS or 1)")
    common.add_argument("--max-n", type=int, default=10, dest="max_n", help="vertex cap for censuses")
    inp = argparse.ArgumentParser(add_help=False)
    g = inp.add_mutually_exclusive_group(required=True)
    g.add_argument("--input", help="problem file ('-' for stdin)")
    g.add_argument("--spec", help="problem text given inline")
    sub = p.add_subparsers(dest="command", required=True)
    for name in ("check", "borel", "reedy", "modules", "census"):
        sub.add_parser(name, parents=[common, inp])
    r = sub.add_parser("regularity", parents=[common, inp])
    r.add_argument("--hereditary-only", action="store_true", dest="hereditary_only")
    e = sub.add_parser("ext", parents=[common, inp])
    e.add_argument("--i", default=None)
    e.add_argument("--j", default=None)
    v = sub.add_parser("verify-borel", parents=[common, inp])
    v.add_argument("--span", default=None, help="comma-separated spanning elements, e.g. 'e_1,gamma+alpha.beta'")
    t = sub.add_parser("truncate", parents=[common, inp])
    t.add_argument("--cutoff", default=None, help="keep this vertex and everything above it")
    q = sub.add_parser("quotient", parents=[common, inp])
    q.add_argument("--gens", required=True, help="comma-separated paths generating the ideal")
    f = sub.add_parser("family", parents=[common])
    f.add_argument("--na", type=int, required=True)
    f.add_argument("--nb", type=int, required=True)
    f.add_argument("--nc", type=int, required=True)
    f.add_argument("--opposite", action="store_true")
    return p


def _read_spec(args) -> ProblemSpec:
    if args.spec is not None:
        return parse_spec(args.spec)
    if args.input == "-":
        return parse_spec(sys.stdin.read())
    return load_spec(args.input)


def run(argv: list[str] | None = None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    args = build_parser().parse_args(argv)
    try:
        if args.command == "family":
            digest, res = cmd_family(args)
        else:
            spec = _read_spec(args)
            digest = spec_digest(spec)
            res = COMMANDS[args.command](Context(spec), args)
    except (InputError, QuiverError) as exc:
        print(f"error: {exc}", file=err)
        return 2
    if args.json:
        out.write(dumps_report(make_report(args.command, digest, res.payload)))
    else:
        out.write("\n".join(res.lines) + "\n")
    return res.code


def main(argv: list[str] | None = None) -> None:
    sys.exit(run(argv))


if __name__ == "__main__":
    main()
