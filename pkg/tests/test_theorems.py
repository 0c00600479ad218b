import pytest

from hochwerk import catalog
from hochwerk.algebra import ground_field
from hochwerk.bimodule import Bimodule, direct_sum
from hochwerk.errors import HypothesisViolated
from hochwerk.linalg import RatMatrix
from hochwerk.theorems import (phi0_bound, trace_space, trace_split_maps, verify_cor_3_2,
                               verify_cor_3_4, verify_cor_3_5, verify_thm_3_1, verify_thm_3_3,
                               verify_thm_3_6, verify_thm_3_8)
from hochwerk.triangular import (build_triangular, t_as_bimodule,
                                 t_dual_bimodule)


@pytest.fixture(scope="module")
def td3():
    q = ground_field()
    return build_triangular(q, Bimodule.regular(q), q)


@pytest.fixture(scope="module")
def td_m2():
    # A = M2, B = Q, M = Q^2 columns
    return build_triangular(catalog.matrix_algebra(2), catalog.column_module(2), ground_field())


@pytest.fixture(scope="module")
def td_zero():
    a, b = catalog.dual_numbers(), catalog.diagonal(2)
    return build_triangular(a, Bimodule.zero(a, b), b)


def test_trace_spaces():
    assert trace_space(catalog.truncated_polynomial(3)).dim == 3
    assert trace_space(catalog.matrix_algebra(2)).dim == 1
    assert trace_space(catalog.upper_triangular(2)).dim == 2
    tr = trace_space(catalog.matrix_algebra(2))
    # the surviving functional is the matrix trace E11 + E22
    assert tr.space.basis == [[1, 0, 0, 1]]


def test_trace_split_t3(td3):
    split = trace_split_maps(td3)
    assert split.forward.shape == (2, 2) and split.backward.shape == (2, 2)
    assert split.forward @ split.backward == RatMatrix.identity(2)
    assert split.traces_kill_m and split.commutator_identity


def test_trace_split_zero_m(td_zero):
    split = trace_split_maps(td_zero)
    assert split.forward == RatMatrix.identity(4)


def test_thm_3_1(td3, td_m2, td_zero):
    r = verify_thm_3_1(td3, t_dual_bimodule(td3), 3)
    assert r.ok and r.lhs == (2, 0, 0, 0)
    assert verify_thm_3_1(td_m2, t_dual_bimodule(td_m2), 2).ok
    assert verify_thm_3_1(td_zero, t_as_bimodule(td_zero), 2).ok
    with pytest.raises(HypothesisViolated):
        verify_thm_3_1(td3, t_as_bimodule(td3), 1)


def test_cor_3_2(td3, td_m2):
    r = verify_cor_3_2(td3)
    assert r.ok and r.details["weakly_amenable"] == {"T": True, "A": True, "B": True}
    assert verify_cor_3_2(td_m2).ok
    q = ground_field()
    td = build_triangular(catalog.dual_numbers(), Bimodule.zero(catalog.dual_numbers(), q), q)
    r = verify_cor_3_2(td)
    assert r.ok and r.details["weakly_amenable"]["A"] is False and r.details["iff_holds"]


def test_thm_3_3_and_cor_3_4(td3, td_zero):
    r = verify_thm_3_3(td3, t_as_bimodule(td3), 3)
    assert r.ok and r.lhs == (2, 0, 0, 0)
    with pytest.raises(HypothesisViolated):
        verify_thm_3_3(td3, t_dual_bimodule(td3), 1)
    r = verify_cor_3_4(td3, 3)
    assert r.ok and r.lhs == (2, 0, 0, 0) and r.details["H(A,A)"] == [1, 0, 0, 0]
    assert verify_cor_3_4(td_zero, 2).ok


def test_cor_3_4_one_corner():
    q2, q = catalog.diagonal(2), ground_field()
    # only the first idempotent of Q^2 acts nontrivially on M = Q
    m = Bimodule(q2, q, 1, [RatMatrix.identity(1), RatMatrix.zeros(1, 1)], [RatMatrix.identity(1)])
    td = build_triangular(q2, m, q)
    r = verify_cor_3_4(td, 3)
    assert r.ok and r.lhs == (3, 0, 0, 0)


def test_cor_3_5(td3, td_zero):
    r = verify_cor_3_5(td3, nesting=1, max_degree=2)
    assert r.ok and set(r.lhs) == {0}
    assert r.details["M_corners"] == [0, 1, 0, 0]
    assert verify_cor_3_5(td_zero, nesting=0, max_degree=1).ok


def test_thm_3_6(td3, td_m2, td_zero):
    r = verify_thm_3_6(td3)
    assert r.ok and r.lhs == (2,)
    r = verify_thm_3_6(td_m2)
    assert r.ok and r.details["tau"] == {"T": 2, "A": 1, "B": 1}
    r = verify_thm_3_6(td_zero)
    assert r.lhs == (4,) and r.ok


def test_thm_3_8_vacuous():
    q = ground_field()
    r = verify_thm_3_8(q, Bimodule.regular(q), 2)
    d = r.details
    assert d["same_degree_holds"] and d["shifted_degree_holds"] and r.ok
    assert all(d[k] == 0 for k in ("H^n(T,T)", "H^n(A,B(M))", "H^{n-1}(A,B(M))"))


def test_thm_3_8_separates_candidates(t3):
    m = direct_sum(catalog.simple_module(t3, 0), catalog.simple_module(t3, 2))
    r = verify_thm_3_8(t3, m, 2)
    d = r.details
    assert d["full_vanishing"]
    assert d["shifted_degree_holds"] and not d["same_degree_holds"]
    assert r.ok


def test_thm_3_8_flags_missing_vanishing():
    d = catalog.dual_numbers()
    r = verify_thm_3_8(d, catalog.simple_module(d, 0), 2)
    assert r.details["H^{n-1}(A,A)"] != 0
    assert not r.details["full_vanishing"]
    assert r.ok  # reported, not asserted


def test_thm_3_8_requires_left_module(t3):
    with pytest.raises(HypothesisViolated):
        verify_thm_3_8(t3, Bimodule.regular(t3), 2)


def test_phi0_without_corner_vanishing(td3, td_m2):
    for td in (td3, td_m2):
        for x in (t_as_bimodule(td), t_dual_bimodule(td),
                  direct_sum(t_as_bimodule(td), t_dual_bimodule(td))):
            assert phi0_bound(td, x).ok
