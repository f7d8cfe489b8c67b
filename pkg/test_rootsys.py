"""
Tests for the root system and gradation layer.
Run with pytest, or directly: python test_rootsys.py
"""

import pytest
from sympy import Rational

from errors import DomainError
from rootsys import (
    Root, RootSystem, build_a1, build_g2, compositions, enumerate_gradations, epsilon_gram, gradation,
    gradation_to_json, graded_dimensions, grading_function, sl_flag_gradation,
)


def _names(roots):
    return {r.name() for r in roots}


def test_g2_gram_matches_epsilon_model():
    g2 = build_g2()
    assert g2.gram == epsilon_gram()
    assert g2.inner(Root((1, 0)), Root((1, 0))) == Rational(2, 3)
    assert g2.inner(Root((0, 1)), Root((0, 1))) == 2


def test_g2_cartan_matrix_and_maximal_root():
    g2 = build_g2()
    assert g2.cartan_matrix().tolist() == [[2, -1], [-3, 2]]
    assert g2.maximal_root() == Root((3, 2))
    assert len(g2.roots()) == 12
    assert g2.inner(Root((1, 0)), g2.maximal_root()) == 0


def test_root_names():
    assert Root((3, 2)).name() == "3*a1+2*a2"
    assert Root((0, 1)).name() == "a2"
    assert Root((-1, 0)).name() == "-a1"
    assert (-Root((2, 1))).coeffs == (-2, -1)


def test_zero_root_rejected():
    with pytest.raises(DomainError):
        Root((0, 0))


def test_invalid_gram_rejected():
    with pytest.raises(DomainError):
        RootSystem(name='bad', rank=2, gram=[[2, 1], [0, 2]], positive_roots=())
    with pytest.raises(DomainError):
        RootSystem(name='bad', rank=2, gram=[[2, 1], [1, 2]], positive_roots=())


def test_grading_function_values():
    g2 = build_g2()
    delta = Root((3, 2))
    assert grading_function(g2, {2}, delta) == 2
    assert grading_function(g2, {1}, delta) == 3
    assert grading_function(g2, {1, 2}, delta) == 5
    assert grading_function(g2, {2}, Root((-1, 0))) == 0


def test_grading_function_rejects_non_roots():
    g2 = build_g2()
    with pytest.raises(DomainError):
        grading_function(g2, {1}, Root((1, 2)))
    with pytest.raises(DomainError):
        gradation(g2, {3})


def test_contact_gradation_level_sets():
    """pi1 = {a2}: depth 2 with the maximal root alone in degree 2."""
    grad = gradation(build_g2(), {2})
    assert grad.depth == 2
    assert _names(grad.level(2)) == {"3*a1+2*a2"}
    assert _names(grad.level(1)) == {"a2", "a1+a2", "2*a1+a2", "3*a1+a2"}
    assert _names(grad.level(0)) == {"a1", "-a1"}
    assert _names(grad.level(-2)) == {"-3*a1-2*a2"}


def test_short_root_gradation_level_sets():
    grad = gradation(build_g2(), {1})
    assert grad.depth == 3
    assert _names(grad.level(1)) == {"a1", "a1+a2"}
    assert _names(grad.level(2)) == {"2*a1+a2"}
    assert _names(grad.level(3)) == {"3*a1+a2", "3*a1+2*a2"}
    assert _names(grad.level(0)) == {"a2", "-a2"}


def test_borel_gradation_is_the_height():
    grad = gradation(build_g2(), {1, 2})
    assert grad.depth == 5
    assert _names(grad.level(1)) == {"a1", "a2"}
    for i in range(2, 6):
        assert len(grad.level(i)) == 1
    assert grad.level(0) == ()


def test_graded_dimensions():
    g2 = build_g2()
    assert graded_dimensions(g2, {2}) == {-2: 1, -1: 4, 0: 4, 1: 4, 2: 1}
    assert list(graded_dimensions(g2, {1}).values()) == [2, 1, 2, 4, 2, 1, 2]
    dims = graded_dimensions(g2, {1, 2})
    assert dims[0] == 2 and dims[1] == 2 and dims[-1] == 2
    assert all(dims[i] == 1 and dims[-i] == 1 for i in range(2, 6))
    assert sum(dims.values()) == 14


def test_enumerate_gradations_order():
    grads = enumerate_gradations(build_g2())
    assert [sorted(g.pi1) for g in grads] == [[1], [2], [1, 2]]


def test_gradation_to_json():
    doc = gradation_to_json(gradation(build_g2(), {2}))
    assert doc['pi1'] == ['a2']
    assert doc['depth'] == 2
    assert doc['levels']['2'] == ['3*a1+2*a2']


def test_a1():
    a1 = build_a1()
    assert a1.cartan_matrix().tolist() == [[2]]
    assert graded_dimensions(a1, {1}) == {-1: 1, 0: 1, 1: 1}


def test_sl_flag_small_tables():
    assert sl_flag_gradation((1, 1)).table == {-1: 1, 0: 1, 1: 1}
    table = sl_flag_gradation((2, 1)).table
    assert table == {-1: 2, 0: 4, 1: 2}


def test_sl_flag_full_flag_is_height_grading():
    table = sl_flag_gradation((1, 1, 1, 1)).table
    assert table == {-3: 1, -2: 2, -1: 3, 0: 3, 1: 3, 2: 2, 3: 1}


def test_sl_flag_bracket_closure_all_compositions():
    for n in range(2, 6):
        for dims in compositions(n):
            sl = sl_flag_gradation(dims)
            assert sl.violations == 0, dims
            assert sum(sl.table.values()) == n * n - 1
            assert sl.checked_pairs == (n * n - 1) ** 2


def test_sl_flag_rejects_bad_dims():
    with pytest.raises(DomainError):
        sl_flag_gradation((0, 2))
    with pytest.raises(DomainError):
        sl_flag_gradation((1,))


def test_compositions():
    assert compositions(1) == [(1,)]
    assert sorted(compositions(3)) == [(1, 1, 1), (1, 2), (2, 1), (3,)]
    assert len(compositions(5)) == 16


if __name__ == "__main__":
    import sys
    sys.exit(pytest.main([__file__, "-v"]))
