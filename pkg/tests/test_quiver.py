import itertools
import random

import pytest
from hypothesis import given, settings, strategies as st

from helpers import fixture, random_acyclic_quiver
from qborel.quiver import (BoundQuiver, CyclicOrder, InfiniteDimensional, MalformedQuiver,
                           NotComposable, VertexOrder, enumerate_basis, factors, ideal_contains,
                           max_vertex, path_product, reduce_relations)


def brute_basis(q, max_len=12):
    """All paths avoiding the relations, by plain depth-first search."""
    rels = [r.arrows for r in q.relations]

    def bad(word):
        return any(tuple(word[i:i + len(r)]) == r for r in rels for i in range(len(word)))

    out = {(v, ()) for v in q.vertices}
    stack = [(a.target, (a.name,)) for a in q.arrows]
    while stack:
        v, word = stack.pop()
        if bad(word):
            continue
        assert len(word) <= max_len
        out.add((q.arrow_map[word[0]].source, word))
        stack += [(a.target, word + (a.name,)) for a in q.arrows_from(v)]
    return out


def test_basis_fix_a():
    _, A, _ = fixture("fixA")
    assert sorted(str(p) for p in A.basis) == ["alpha", "alpha.beta", "beta", "e_1", "e_2", "e_3", "gamma"]
    assert A.dim == 7


def test_relations_cut_basis():
    _, A, _ = fixture("fixB")
    assert A.lookup(A.quiver.parse_path("alpha.beta.gamma")) is None
    assert A.lookup(A.quiver.parse_path("alpha'.beta'.gamma")) is not None
    assert A.dim == len(brute_basis(A.quiver))


def test_cycle_with_relations_is_finite():
    _, A, _ = fixture("fixC")
    assert sorted(str(p) for p in A.basis) == ["a", "b", "e_1", "e_2"]


def test_infinite_dimensional_detected():
    q = BoundQuiver(["1", "2"], [("a", "1", "2"), ("b", "2", "1")], [("a", "b")])
    A = enumerate_basis(q)
    assert A.dim == 5  # e_1, e_2, a, b, b.a
    with pytest.raises(InfiniteDimensional):
        enumerate_basis(BoundQuiver(["1", "2"], [("a", "1", "2"), ("b", "2", "1")]))


def test_malformed_inputs():
    with pytest.raises(MalformedQuiver):
        BoundQuiver(["1", "1"], [])
    with pytest.raises(MalformedQuiver):
        BoundQuiver(["1"], [("a", "1", "2")])
    with pytest.raises(MalformedQuiver):
        BoundQuiver(["1", "2"], [("a", "1", "2")], [("a",)])
    q = BoundQuiver(["1", "2"], [("a", "1", "2"), ("b", "1", "2")])
    with pytest.raises(NotComposable):
        q.path(["a", "b"])


def test_product_convention():
    _, A, _ = fixture("fixA")
    q = A.quiver
    alpha, beta = q.parse_path("alpha"), q.parse_path("beta")
    assert str(path_product(beta, alpha, A)) == "alpha.beta"
    with pytest.raises(NotComposable):
        path_product(alpha, beta, A)
    assert path_product(q.trivial("3"), alpha, A) == alpha


def test_product_zero_in_ideal():
    _, A, _ = fixture("fixE")
    q = A.quiver
    assert path_product(q.parse_path("gamma"), q.parse_path("alpha"), A) is None
    assert ideal_contains(A, q.parse_path("alpha.gamma"))
    assert not ideal_contains(A, q.parse_path("beta.gamma"))


def test_reduce_relations_drops_redundant():
    q = BoundQuiver(["1", "2", "3", "4"], [("a", "1", "2"), ("b", "2", "3"), ("c", "3", "4")])
    ab, abc = q.path(["a", "b"]), q.path(["a", "b", "c"])
    assert reduce_relations([ab, abc]) == frozenset([ab])


def test_max_vertex_and_order():
    _, A, o = fixture("fixA")
    assert max_vertex(A.quiver.parse_path("alpha.beta"), o) == "3"
    with pytest.raises(CyclicOrder):
        VertexOrder(["1", "2"], [("1", "2"), ("2", "1")])
    partial = VertexOrder(["a", "b", "c"], [("a", "c"), ("b", "c")])
    assert not partial.is_total and not partial.comparable("a", "b")
    assert len(list(partial.linear_extensions())) == 2


def test_opposite_is_involutive():
    _, A, _ = fixture("fixB")
    assert A.quiver.opposite().opposite() == A.quiver
    assert A.opposite.dim == A.dim


@pytest.mark.parametrize("seed", range(25))
def test_basis_matches_brute_force(seed):
    q = random_acyclic_quiver(random.Random(seed))
    A = enumerate_basis(q)
    assert {p.key for p in A.basis} == brute_basis(q)


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 10 ** 6))
def test_basis_factor_closed(seed):
    A = enumerate_basis(random_acyclic_quiver(random.Random(seed)))
    for p in A.basis:
        for f in factors(p, A.quiver):
            assert A.lookup(f) is not None


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 10 ** 6))
def test_product_associative(seed):
    A = enumerate_basis(random_acyclic_quiver(random.Random(seed)))
    idx = range(A.dim)
    for a, b, c in itertools.islice(itertools.product(idx, idx, idx), 3000):
        ab = A.product_index(a, b)
        bc = A.product_index(b, c)
        left = None if ab is None else A.product_index(ab, c)
        right = None if bc is None else A.product_index(a, bc)
        if A.basis[c].target == A.basis[b].source and A.basis[b].target == A.basis[a].source:
            assert left == right
