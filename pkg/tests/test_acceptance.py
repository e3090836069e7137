"""Acceptance suite: one test per criterion, exact integer comparisons throughout."""

import itertools
import time
from functools import lru_cache

from helpers import fixture, random_instances
from qborel.borel import (borel_min_basis, normal_splitting_kernel_violation, ordered, quotient,
                          reedy_factorize, right_module_decomposition, truncate_check)
from qborel.census import D_TABLE, FamilySpec, enumerate_structures, family_quiver, family_row
from qborel.homalg import (SpannedSubalgebra, check_quasi_hereditary, costandard_basis,
                           delta_presentation, ext1_dim, standard_basis, verify_exact_borel)
from qborel.quiver import VertexOrder, enumerate_basis
from qborel.regularity import (dim_ext_delta_delta, dim_ext_delta_simple, e_prime,
                               regular_borel_criterion, regular_borel_hereditary, regular_verdict)

TABLE = {
    (1, 1, 1): (13, 12, 8),
    (2, 1, 1): (42, 36, 23),
    (3, 1, 1): (138, 112, 70),
    (1, 2, 1): (37, 33, 20),
    (1, 3, 1): (112, 98, 57),
    (1, 2, 2): (106, 90, 48),
    (2, 2, 1): (130, 104, 60),
    (1, 3, 2): (322, 266, 134),
    (2, 3, 1): (416, 320, 177),
    (3, 2, 1): (453, 334, 188),
    (1, 4, 2): (1020, 828, 404),
    (2, 4, 1): (1368, 1026, 555),
    (4, 2, 1): (1584, 1098, 609),
}
E8_SECONDS = 300.0
SMALL_SECONDS = 10.0


@lru_cache(maxsize=None)
def row(na, nb, nc):
    t = time.perf_counter()
    r = family_row(na, nb, nc)
    return r, time.perf_counter() - t


def names(paths):
    return sorted(str(p) for p in paths)


def test_criterion_1_census_tables():
    wrong, slow = [], []
    for key, expected in TABLE.items():
        r, seconds = row(*key)
        got = (r.structures, r.regular, r.regular_op)
        if got != expected:
            wrong.append(f"Q{key}: got {got}, expected {expected}")
        limit = E8_SECONDS if sum(key) + 1 == 8 else SMALL_SECONDS
        if seconds > limit:
            slow.append(f"Q{key}: {seconds:.1f}s > {limit}s")
    assert not slow, slow
    assert not wrong, "\n".join(wrong)


def test_criterion_2_formula_matches_enumeration():
    wrong = []
    for na, nb, nc in itertools.product(range(4), repeat=3):
        r, _ = row(na, nb, nc)
        if r.regular != r.predicted:
            wrong.append(f"Q({na},{nb},{nc}): enumerated {r.regular}, formula {r.predicted}")
        if r.regular_op != r.predicted_op:
            wrong.append(f"Q({na},{nb},{nc})^op: enumerated {r.regular_op}, formula {r.predicted_op}")
    assert not wrong, f"{len(wrong)} of 128 cases differ:\n" + "\n".join(wrong)


def test_criterion_3_d_type_closed_forms():
    wrong = []
    for n in (1, 2, 3):
        a, _ = row(n, 1, 1)
        b, _ = row(1, n, 1)
        got = {
            "total_n11": a.structures, "regular_n11": a.regular, "regular_n11_op": a.regular_op,
            "total_1n1": b.structures, "regular_1n1": b.regular, "regular_1n1_op": b.regular_op,
        }
        for name, value in got.items():
            if value != D_TABLE[name](n):
                wrong.append(f"{name}(n={n}): enumerated {value}, closed form {D_TABLE[name](n)}")
    assert not wrong, "\n".join(wrong)


def test_criterion_4_counterexample_fixture():
    _, A, o = fixture("fixA")
    assert names(borel_min_basis(A, o).paths) == names(A.quiver.parse_path(x) for x in
                                                       ["e_1", "e_2", "e_3", "alpha", "gamma"])
    assert names(p for p, _ in right_module_decomposition(A, o)) == ["beta", "e_1", "e_2", "e_3"]
    assert dim_ext_delta_delta(A, o, "1", "3") == 2
    assert ext1_dim(A, o, "1", "3", "delta") == 2
    for v in (regular_borel_hereditary(A, o), regular_borel_criterion(A, o)):
        assert not v.ok
        assert [str(p) for p in v.witness[:2]] == ["gamma", "beta"]
    bmin = SpannedSubalgebra.from_paths(A, borel_min_basis(A, o).paths)
    assert verify_exact_borel(A, o, bmin).ok
    twisted = SpannedSubalgebra.from_expressions(A, ["e_1", "e_2", "e_3", "alpha", "gamma+alpha.beta"])
    assert verify_exact_borel(A, o, twisted).ok


def test_criterion_5_running_example():
    _, A, o = fixture("fixB")
    ctx = ordered(A, o)
    e2 = [A.basis[k] for k in ctx.e_indices("2")]
    assert names(p for p in e2 if p.target == "3") == ["alpha.beta"]
    pres = delta_presentation(A, o, "2")
    killers = {str(p): [] for _, p in pres.p1}
    for _, q, p in pres.p2:
        killers[str(p)].append(str(q))
    assert killers == {"alpha.beta": ["gamma"], "alpha'": []}
    assert sorted(v for v, _ in pres.p1) == ["3", "4"]
    assert [v for v, *_ in pres.p2] == ["5"]
    assert pres.apex == "2"


def test_criterion_6_regularity_and_quotients():
    _, A, o = fixture("fixE")

    def pairs(i, j):
        return [(str(x.p), str(x.q)) for x in e_prime(A, o, i, j)]

    assert pairs("1", "2") == [("alpha", "e_2")]
    assert pairs("2", "3") == [("gamma", "e_3")]
    assert pairs("2", "4") == [("gamma", "beta.gamma")]
    assert regular_verdict(A, o).ok
    for gen in ("gamma", "e_3"):
        res = quotient(A, o, [gen])
        assert not regular_verdict(res.algebra, res.order).ok, gen


def test_criterion_7_property_suites():
    # (a)-(c) on seeded random acyclic monomial algebras
    qh_seen = 0
    for A, chain in random_instances(200):
        o = VertexOrder.total(chain)
        qh = check_quasi_hereditary(A, o).ok
        assert qh == reedy_factorize(A, o).ok, (A, chain)
        if not qh:
            continue
        qh_seen += 1
        for a, b in itertools.combinations(chain, 2):
            assert dim_ext_delta_delta(A, o, a, b) == ext1_dim(A, o, a, b, "delta")
            assert dim_ext_delta_simple(A, o, a, b) == ext1_dim(A, o, a, b, "simple")
        assert A.dim == sum(standard_basis(A, o, v).dim * costandard_basis(A, o, v).dim
                            for v in A.vertices)
    assert qh_seen >= 100

    # (d) the normal-splitting kernel is a right ideal
    for name in ("fixA", "fixB", "fixD", "fixE", "sec5"):
        _, A, o = fixture(name)
        assert reedy_factorize(A, o).ok, name
        assert normal_splitting_kernel_violation(A, o) is None, name

    # (e) truncation at every upward-closed cutoff
    for name in ("fixA", "fixB", "fixD"):
        _, A, o = fixture(name)
        for cutoff in range(len(A.vertices)):
            assert truncate_check(A, o, cutoff).equal, (name, cutoff)

    # (f) the two regularity tests agree on every order of every small family quiver
    checked = 0
    for na, nb, nc in itertools.product(range(6), repeat=3):
        if na + nb + nc + 1 > 6:
            continue
        for opposite in (False, True):
            A = enumerate_basis(family_quiver(FamilySpec(na, nb, nc, opposite)))
            for chain in itertools.permutations(A.vertices):
                o = VertexOrder.total(chain)
                assert regular_borel_hereditary(A, o).ok == regular_borel_criterion(A, o).ok, chain
                checked += 1
    assert checked == 34406
