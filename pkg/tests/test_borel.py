import pytest

from helpers import fixture
from qborel.borel import (ReedyError, borel_max_basis, borel_min_basis, delta_sub_basis,
                          idempotent_check, is_direction_preserving, multiplicative_closure,
                          normal_splitting, quotient, reedy_factorize, right_minimal_dp_paths,
                          right_module_decomposition, truncate_check)
from qborel.quiver import QuiverError, VertexOrder


def names(paths):
    return sorted(str(p) for p in paths)


def test_borel_subalgebras_fix_a():
    _, A, o = fixture("fixA")
    assert names(borel_min_basis(A, o).paths) == ["alpha", "e_1", "e_2", "e_3", "gamma"]
    assert names(borel_max_basis(A, o).paths) == ["alpha", "alpha.beta", "e_1", "e_2", "e_3", "gamma"]
    assert names(delta_sub_basis(A, o).paths) == ["beta", "e_1", "e_2", "e_3"]
    for B in (borel_min_basis(A, o), borel_max_basis(A, o), delta_sub_basis(A, o)):
        assert B.closure_violation() is None


def test_right_minimal_uses_interior_bound():
    _, A, o = fixture("fixB")
    rm = right_minimal_dp_paths(A, o)
    assert names(rm[("2", "3")]) == ["alpha.beta"]
    assert names(rm[("2", "4")]) == ["alpha'"]
    q = A.quiver
    assert is_direction_preserving(q.parse_path("alpha.beta"), o)
    assert not is_direction_preserving(q.parse_path("alpha"), o)


def test_bmin_generated_by_right_minimal_paths():
    for name in ("fixA", "fixB", "fixD", "fixE", "sec5"):
        _, A, o = fixture(name)
        rm = right_minimal_dp_paths(A, o)
        gens = [A.trivial_index(v) for v in A.vertices]
        gens += [A.lookup(p) for ps in rm.values() for p in ps]
        closed = multiplicative_closure(A, gens)
        assert sorted(closed) == sorted(A.lookup(p) for p in borel_min_basis(A, o).paths), name


def test_reedy_factorization_fix_a():
    _, A, o = fixture("fixA")
    fac = reedy_factorize(A, o)
    assert fac.ok
    c, b = fac.factor(A.quiver.parse_path("alpha.beta"))
    assert (str(c), str(b)) == ("beta", "alpha")
    assert right_module_decomposition(A, o) == [
        (A.quiver.parse_path("e_1"), 1), (A.quiver.parse_path("e_2"), 2),
        (A.quiver.parse_path("e_3"), 2), (A.quiver.parse_path("beta"), 2)]
    assert sum(d for _, d in right_module_decomposition(A, o)) == A.dim


def test_reedy_failure_fix_c():
    _, A, o = fixture("fixC")
    res = reedy_factorize(A, o)
    assert not res.ok
    assert str(res.witness) == "a.b"
    with pytest.raises(ReedyError):
        right_module_decomposition(A, o)


def test_normal_splitting():
    _, A, o = fixture("fixA")
    q = A.quiver
    assert normal_splitting(A, o, q.parse_path("alpha")) == q.parse_path("alpha")
    assert normal_splitting(A, o, q.parse_path("beta")) is None
    assert normal_splitting(A, o, q.parse_path("alpha.beta")) is None


def test_truncation_and_idempotents():
    _, A, o = fixture("fixB")
    for cutoff in range(5):
        rep = truncate_check(A, o, cutoff)
        assert rep.equal and rep.counterexample is None
    assert idempotent_check(A, o, ["1", "3", "5"]).equal
    with pytest.raises(QuiverError):
        truncate_check(A, o, 9)


def test_truncation_can_fail_for_non_upward_sets():
    # keeping 1 and 2 but dropping the peak 3 loses the factorisation of alpha.beta
    _, A, o = fixture("fixA")
    rep = idempotent_check(A, o, ["1", "2"])
    assert not rep.equal
    assert str(rep.counterexample) == "alpha.beta"


def test_quotients_fix_e():
    _, A, o = fixture("fixE")
    res = quotient(A, o, ["gamma"])
    assert names(res.algebra.basis) == ["alpha", "beta", "e_1", "e_2", "e_3", "e_4"]
    assert res.compatible
    res = quotient(A, o, ["e_3"])
    assert names(res.algebra.basis) == ["alpha", "beta", "e_1", "e_2", "e_4"]
    assert res.order == VertexOrder.total(["1", "2", "4"])
