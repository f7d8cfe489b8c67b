"""
Tests for the module m, its stabilizer action and the invariant pairing.
"""

import random

import pytest
from sympy import Matrix

from errors import DomainError, NotAnEigenvectorError
from exterior import ExteriorForm, derivation_extend
from g2rep import (
    DEGREES, DIM, MBASIS, OPERATOR_NAMES, ad_operator, all_operators, basis_vector, bi_lagrangian_splitting,
    check_sl2_triple, dual_index, is_ad_invariant, is_isotropic, pairing, pairing_matrix, weight_of,
    weight_of_index,
)


def test_basis_labels():
    assert [b.ascii for b in MBASIS] == [
        'E_g0', 'E_g1', 'E_g2', 'E_g3', 'E_d', 'E_-g0', 'E_-g1', 'E_-g2', 'E_-g3', 'E_-d']
    assert DEGREES == (1, 1, 1, 1, 2, -1, -1, -1, -1, -2)
    assert MBASIS[4].root.coeffs == (3, 2)
    assert all(dual_index(dual_index(i)) == i for i in range(DIM))


def test_sl2_triple_from_structure_constants():
    results = check_sl2_triple()
    assert results == {'[e,f]=h': True, '[h,e]=2e': True, '[h,f]=-2f': True}


def test_cartan_weights():
    h = ad_operator('H_a1')
    assert h.matrix.is_diagonal()
    assert [h.matrix[i, i] for i in range(DIM)] == [-3, -1, 1, 3, 0, 3, 1, -1, -3, 0]
    hd = ad_operator('H_d')
    assert [hd.matrix[i, i] for i in range(DIM)] == list(DEGREES)
    assert hd.matrix == Matrix.diag(*DEGREES)


def test_h_delta_is_central():
    hd = ad_operator('H_d').matrix
    for op in all_operators():
        assert hd * op.matrix == op.matrix * hd


def test_operator_aliases_and_unknown_names():
    assert ad_operator('e').name == 'E_a1'
    assert ad_operator('H_delta').name == 'H_d'
    with pytest.raises(DomainError):
        ad_operator('E_a2')
    assert [op.name for op in all_operators()] == list(OPERATOR_NAMES)


def test_pairing_values():
    assert pairing(4, 9) == 2
    assert pairing(9, 4) == -2
    assert [pairing(i, i + 5) for i in range(4)] == [1, 3, 3, 1]
    assert pairing(1, 2) == 0
    with pytest.raises(DomainError):
        pairing(0, 10)


def test_pairing_is_symplectic():
    omega = pairing_matrix()
    assert omega.T == -omega
    assert omega.det() != 0


def test_pairing_ad_invariant_under_all_operators():
    for op in all_operators():
        assert is_ad_invariant(op), op.name


def test_unit_pairing_is_not_invariant():
    unit = Matrix.zeros(DIM, DIM)
    for i in range(5):
        unit[i, i + 5] = DEGREES[i]
        unit[i + 5, i] = -DEGREES[i]
    assert not is_ad_invariant(ad_operator('E_a1'), unit)


def test_pairing_invariance_on_random_vectors():
    """Omega(Xv, w) + Omega(v, Xw) = 0 for 200 random integer pairs."""
    rng = random.Random(7)
    omega = pairing_matrix()
    ops = all_operators()
    for _ in range(200):
        op = rng.choice(ops)
        v = Matrix([rng.randint(-4, 4) for _ in range(DIM)])
        w = Matrix([rng.randint(-4, 4) for _ in range(DIM)])
        lhs = (op.matrix * v).T * omega * w + v.T * omega * (op.matrix * w)
        assert lhs[0, 0] == 0


def test_bi_lagrangian_splitting():
    pos, neg = bi_lagrangian_splitting()
    assert pos == (0, 1, 2, 3, 4)
    assert neg == (5, 6, 7, 8, 9)
    assert is_isotropic(pos) and is_isotropic(neg)
    assert not is_isotropic((0, 5))


def test_weights():
    assert weight_of_index(4, ad_operator('H_d')) == 2
    assert weight_of_index(0, ad_operator('H_a1')) == -3
    assert weight_of(['2', 0, 0, 0, 0, 0, 0, 0, 0, 0], ad_operator('H_d')) == 1
    assert weight_of(basis_vector(9), ad_operator('H_d')) == -2
    assert weight_of(basis_vector(2), ad_operator('H_a1')) == 1


def test_e_a1_extended_to_a_two_form():
    e = ad_operator('E_a1').matrix
    assert e[1, 0] == 1
    image = derivation_extend(e, ExteriorForm.basis(DIM, (0, 3)))
    assert image == ExteriorForm.basis(DIM, (1, 3))


def test_weight_of_errors():
    h = ad_operator('H_a1')
    with pytest.raises(NotAnEigenvectorError):
        weight_of([0] * DIM, h)
    with pytest.raises(NotAnEigenvectorError):
        weight_of([1, 1, 0, 0, 0, 0, 0, 0, 0, 0], h)
    with pytest.raises(NotAnEigenvectorError):
        weight_of(basis_vector(0), ad_operator('E_a1'))


def test_operator_json():
    doc = ad_operator('E_a1').to_json()
    assert doc['name'] == 'E_a1'
    assert doc['matrix'][1][0] == '1'
    assert doc['matrix'][3][2] == '3'
