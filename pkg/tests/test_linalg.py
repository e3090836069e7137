import itertools
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from qborel.linalg import RationalMatrix, format_fraction, rank, same_span


def det(m):
    """Leibniz determinant, used as a rank oracle through minors."""
    n = len(m)
    total = Fraction(0)
    for perm in itertools.permutations(range(n)):
        inv = sum(1 for i in range(n) for j in range(i + 1, n) if perm[i] > perm[j])
        term = Fraction(-1 if inv % 2 else 1)
        for i in range(n):
            term *= m[i][perm[i]]
        total += term
    return total


def minor_rank(m):
    rows, cols = len(m), len(m[0]) if m else 0
    for k in range(min(rows, cols), 0, -1):
        for rs in itertools.combinations(range(rows), k):
            for cs in itertools.combinations(range(cols), k):
                if det([[m[r][c] for c in cs] for r in rs]):
                    return k
    return 0


small = st.lists(st.lists(st.integers(-3, 3), min_size=3, max_size=3), min_size=1, max_size=4)


@settings(max_examples=150, deadline=None)
@given(small)
def test_rank_matches_minors(rows):
    m = [[Fraction(x) for x in r] for r in rows]
    assert RationalMatrix(rows, cols=3).rank() == minor_rank(m)


@settings(max_examples=80, deadline=None)
@given(small)
def test_nullspace_dimension(rows):
    M = RationalMatrix(rows, cols=3)
    null = M.nullspace()
    assert len(null) == 3 - M.rank()
    for v in null:
        assert not any(M.mul_vector(v).values())


def test_fractions_and_sparse_rows():
    M = RationalMatrix([{0: Fraction(1, 2), 2: 1}, {0: 1, 2: 2}])
    assert M.shape == (2, 3)
    assert M.rank() == 1
    assert rank([{0: 1}, {1: 1}, {0: 1, 1: 1}]) == 2
    assert same_span([{0: 1}, {1: 1}], [{0: 1, 1: 1}, {0: 1, 1: -1}])
    assert not same_span([{0: 1}], [{1: 1}])
    assert format_fraction(Fraction(-3, 4)) == "-3/4"
    with pytest.raises(ValueError):
        RationalMatrix([{5: 1}], cols=2)


def test_rref_pivots():
    rows, pivots = RationalMatrix([[0, 2, 4], [1, 1, 1]]).rref()
    assert pivots == [0, 1]
    assert rows[1] == {1: 1, 2: 2}
