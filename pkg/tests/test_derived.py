import pytest

from hochwerk import catalog
from hochwerk.algebra import ground_field
from hochwerk.bimodule import direct_sum, dual, left_module
from hochwerk.derived import (bar_homology, bar_resolution, ext_dim, ext_via_hochschild,
                              hom_dim, tensor_dim, tor_dim)
from hochwerk.errors import AlgebraMismatch
from hochwerk.linalg import RatMatrix


def t3_modules():
    t3 = catalog.upper_triangular(2)
    s1 = catalog.simple_module(t3, 0)
    s2 = catalog.simple_module(t3, 2)
    p = catalog.column_module(2, upper=True)  # projective cover of s2
    return t3, s1, s2, p


def test_ground_field_bar():
    q = ground_field()
    m = left_module(q, [RatMatrix.identity(1)])
    bar = bar_resolution(q, m, 3)
    assert bar.exact and bar.dims == (2, 2, 2, 2, 2)
    assert bar_homology(bar) == (0, 0, 0, 0, 0)


def test_bar_terms_are_modules():
    from hochwerk.bimodule import validate_bimodule
    t3, s1, _, _ = t3_modules()
    bar = bar_resolution(t3, s1, 1)
    for n in range(2):
        # free over the unitization, so the unit of T3 does not act as 1
        assert validate_bimodule(bar.term_as_module(n), require_unital=False)


def test_bar_exact_on_non_unital_algebra():
    z = catalog.zero_product(1)
    m = left_module(z, [RatMatrix.zeros(2, 2)])
    assert bar_homology(bar_resolution(z, m, 2)) == (0, 0, 0, 0)


def test_ext_over_t3():
    t3, s1, s2, p = t3_modules()
    assert [ext_dim(t3, s1, s2, n) for n in range(3)] == [0, 0, 0]
    assert [ext_dim(t3, s2, s1, n) for n in range(3)] == [0, 1, 0]
    assert [ext_dim(t3, s1, s1, n) for n in range(3)] == [1, 0, 0]
    assert hom_dim(t3, p, s1) == 0 and hom_dim(t3, p, s2) == 1


def test_ext_dual_numbers_is_periodic():
    d = catalog.dual_numbers()
    k = catalog.simple_module(d, 0)
    assert [ext_dim(d, k, k, n) for n in range(4)] == [1, 1, 1, 1]
    assert [tor_dim(d, dual(k), k, n) for n in range(4)] == [1, 1, 1, 1]


def test_ext_matches_hochschild():
    t3, s1, s2, p = t3_modules()
    s = direct_sum(s1, s2)
    for n in range(3):
        assert ext_dim(t3, s, s, n) == ext_via_hochschild(t3, s, s, n)
        assert ext_dim(t3, p, s, n) == ext_via_hochschild(t3, p, s, n)


def test_projective_has_no_higher_ext():
    t3, s1, s2, p = t3_modules()
    for y in (s1, s2, p):
        assert ext_dim(t3, p, y, 1) == 0
        assert ext_dim(t3, p, y, 2) == 0


def test_tor_dual_to_ext():
    # (Y* ⊗_E M)* = Hom_E(M, Y) degreewise on the resolution
    t3, s1, s2, p = t3_modules()
    for m in (s1, s2, p):
        for y in (s1, s2):
            for n in range(3):
                assert tor_dim(t3, dual(y), m, n) == ext_dim(t3, m, y, n)


def test_tensor_degree_zero():
    t3, s1, s2, _ = t3_modules()
    assert tensor_dim(dual(s1), s1) == tor_dim(t3, dual(s1), s1, 0) == 1


def test_mismatched_modules():
    t3, s1, _, _ = t3_modules()
    q = ground_field()
    with pytest.raises(AlgebraMismatch):
        bar_resolution(q, s1, 1)
    with pytest.raises(AlgebraMismatch):
        tor_dim(q, dual(s1), s1, 0)
    with pytest.raises(ValueError):
        ext_dim(t3, s1, s1, -1)
