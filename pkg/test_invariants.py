"""
Tests for the invariant forms on m and the twelve 5-forms.
"""

import pytest

from errors import DomainError
from exterior import ExteriorForm, derivation_extend, in_span, wedge_all
from g2rep import DIM, ad_operator
from invariants import (
    EXPECTED_DIMENSIONS, GENERATOR_NAMES, PRODUCTS, conformal_weights, dimension_ladder, generator,
    invariant_basis, is_invariant, product, solver_basis, twelve_five_forms,
)


def test_dimension_ladder():
    assert dimension_ladder() == {1: 2, 2: 4, 3: 6, 4: 9, 5: 12}
    assert EXPECTED_DIMENSIONS == dimension_ladder()


def test_degree_one_invariants_are_e_delta():
    assert list(solver_basis(1)) == [ExteriorForm.basis(DIM, (4,)), ExteriorForm.basis(DIM, (9,))]


def test_generators_are_invariant():
    for name in GENERATOR_NAMES:
        nf = generator(name)
        assert is_invariant(nf.form), name
        assert in_span(nf.form, solver_basis(nf.form.degree)), name


def test_omega2_coefficient_pattern():
    w2 = generator('w2').form
    pairs = [(0, 5), (1, 6), (2, 7), (3, 8)]
    assert [w2.coefficient(p) for p in pairs] == [3, 1, 1, 3]
    assert len(w2) == 4


def test_omega_plus_minus_two():
    wp = generator('w+2').form
    assert wp.coefficient((1, 2)) == 1
    assert wp.coefficient((0, 3)) == -3
    wm = generator('w-2').form
    assert wm.coefficient((6, 7)) == 1
    assert wm.coefficient((5, 8)) == -3


def test_omega4_has_six_terms():
    w4 = generator('w4').form
    assert len(w4) == 6
    assert all(c == 1 for _, c in w4.items())


def test_hdelta_weights():
    weights = conformal_weights()
    assert weights['E_d'] == 2
    assert weights['E_-d'] == -2
    assert weights['w2'] == 0
    assert weights['w+4'] == 4
    assert weights['w-4'] == -4
    assert weights['w+2^w-2^E_d'] == 2
    assert weights['w+4^E_-d'] == 2
    assert weights['w4^E_-d'] == -2


def test_e_delta_wedge_e_minus_delta_is_invariant():
    form = generator('E_d').form ^ generator('E_-d').form
    assert is_invariant(form)


def test_invariant_basis_each_degree():
    for k, expected in EXPECTED_DIMENSIONS.items():
        named = invariant_basis(k)
        assert len(named) == expected
        assert len(PRODUCTS[k]) == expected


def test_invariant_basis_rejects_bad_degree():
    with pytest.raises(DomainError):
        invariant_basis(0)
    with pytest.raises(DomainError):
        invariant_basis(6)
    with pytest.raises(DomainError):
        generator('w6')


def test_twelve_five_forms_order_and_names():
    forms = twelve_five_forms()
    assert len(forms) == 12
    assert forms[0].name == 'w+2^w-2^E_d'
    assert forms[1].name == 'w+2^w-2^E_-d'
    assert forms[10].name == 'w4^E_d'
    assert forms[11].label == 'ω⁴∧E_{−δ}'
    for nf in forms:
        assert nf.form.degree == 5


def test_omega2_squared_relation():
    """w2^w2 = -6 w4 - 2 w+2^w-2."""
    w2 = generator('w2').form
    lhs = w2 ^ w2
    rhs = generator('w4').form.scale(-6) + product(['w+2', 'w-2']).form.scale(-2)
    assert lhs == rhs


def test_non_invariant_form_detected():
    assert not is_invariant(ExteriorForm.basis(DIM, (0,)))
    assert not is_invariant(ExteriorForm.basis(DIM, (1, 2)))


def test_products_are_wedges_in_order():
    nf = product(['w+4', 'E_d'])
    assert nf.form == wedge_all([generator('w+4').form, generator('E_d').form])
    assert nf.name == 'w+4^E_d'


def test_invariants_are_killed_by_cartan():
    h = ad_operator('H_a1').matrix
    for nf in twelve_five_forms():
        assert derivation_extend(h, nf.form).is_zero()
