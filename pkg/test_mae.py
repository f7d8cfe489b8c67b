"""
Tests for the Lagrangian-plane restriction, the minors and the equation catalogue.
"""

import itertools
import random

import pytest
from sympy.polys.domains import QQ

from errors import DomainError
from exterior import U_RING, ExteriorForm, evaluate_poly, poly_ratio, poly_total_degree, u
from mae import (
    COVECTOR_DIM, LITERAL, DarbouxDictionary, catalogue, entry_names, example_form, find_entry, make_entry, minor,
    minor_decomposition, minor_symbol, plucker_coordinates, plucker_evaluate, published_polynomials,
    q1_from_minors, q1_poly, q2_from_minors, q3_from_minors, q3_poly, render_minors, restrict_to_lagrangian,
)
from invariants import twelve_five_forms

IDENTITY_POINT = [1 if i == j else 0 for i in range(5) for j in range(i, 5)]


def _entry(name):
    return find_entry(name, catalogue())


def random_point(rng):
    return [QQ(rng.randint(-4, 4), rng.randint(1, 3)) for _ in range(15)]


# --- minors ------------------------------------------------------------------------

def test_two_by_two_minors():
    assert minor_symbol('124', '124') == u(0, 0) * u(3, 3) - u(0, 3) ** 2
    assert minor_symbol('034', '124') == u(0, 1) * u(2, 3) - u(0, 2) * u(1, 3)
    assert minor_symbol('034', '034') == u(1, 1) * u(2, 2) - u(1, 2) ** 2
    assert minor_symbol('234', '014') == u(0, 2) * u(1, 3) - u(1, 2) * u(0, 3)
    assert minor_symbol('134', '024') == u(0, 1) * u(2, 3) - u(1, 2) * u(0, 3)


def test_minor_at_identity():
    assert evaluate_poly(minor_symbol('4', '4'), IDENTITY_POINT) == 1
    assert evaluate_poly(minor((), ()), IDENTITY_POINT) == 1
    assert poly_total_degree(minor((), ())) == 5


def test_minor_transpose_symmetry():
    for size in range(1, 5):
        subsets = list(itertools.combinations(range(5), size))
        for rows, cols in itertools.product(subsets, repeat=2):
            assert minor(rows, cols) == minor(cols, rows)


def test_minor_errors():
    with pytest.raises(DomainError):
        minor((0, 1), (2,))
    with pytest.raises(DomainError):
        minor(range(5), range(5))
    with pytest.raises(DomainError):
        minor((5,), (0,))


def test_q1_minor_identity():
    assert q1_from_minors() == q1_poly()


def test_q3_minor_identity():
    assert q3_from_minors() == q3_poly()


def test_q2_minor_expansion():
    expected = u(4, 4) * (u(0, 3) + u(1, 2)) - u(0, 4) * u(3, 4) - u(1, 4) * u(2, 4)
    assert q2_from_minors() == expected


# --- restriction ---------------------------------------------------------------------

def test_restriction_of_u44_form():
    form = ExteriorForm.basis(COVECTOR_DIM, (0, 1, 2, 3, 9))
    assert restrict_to_lagrangian(form) == u(4, 4)


def test_restriction_of_all_dx_and_all_du():
    assert restrict_to_lagrangian(ExteriorForm.basis(COVECTOR_DIM, range(5))) == U_RING.one
    assert restrict_to_lagrangian(ExteriorForm.basis(COVECTOR_DIM, range(5, 10))) == minor((), ())


def test_example_form_restricts_to_scaled_determinant():
    assert restrict_to_lagrangian(example_form(7)) == minor((), ()) * 7
    assert restrict_to_lagrangian(example_form(QQ(-1, 2))) == minor((), ()) * QQ(-1, 2)


def test_restriction_errors():
    with pytest.raises(DomainError):
        restrict_to_lagrangian(ExteriorForm.basis(COVECTOR_DIM, (0, 1, 2, 3)))
    with pytest.raises(DomainError):
        restrict_to_lagrangian(ExteriorForm.basis(8, (0, 1, 2, 3, 4)))


def test_degree_law_property():
    """A decomposable 5-form with q du-factors restricts to a nonzero homogeneous polynomial of degree q."""
    rng = random.Random(21)
    for _ in range(200):
        idx = tuple(sorted(rng.sample(range(COVECTOR_DIM), 5)))
        q = sum(1 for i in idx if i >= 5)
        poly = restrict_to_lagrangian(ExteriorForm.basis(COVECTOR_DIM, idx, rng.choice([1, -2, 3])))
        assert poly
        assert poly_total_degree(poly) == q


def test_linearity_property():
    rng = random.Random(22)
    for _ in range(200):
        a, b = rng.randint(-3, 3), rng.randint(-3, 3)
        w1 = ExteriorForm.basis(COVECTOR_DIM, rng.sample(range(COVECTOR_DIM), 5))
        w2 = ExteriorForm.basis(COVECTOR_DIM, rng.sample(range(COVECTOR_DIM), 5))
        lhs = restrict_to_lagrangian(w1.scale(a) + w2.scale(b))
        rhs = restrict_to_lagrangian(w1) * a + restrict_to_lagrangian(w2) * b
        assert lhs == rhs


# --- Pluecker viewpoint -------------------------------------------------------------

def test_plucker_coordinates_at_origin():
    coords = plucker_coordinates([0] * 15)
    assert coords == {(0, 1, 2, 3, 4): 1}


def test_plucker_evaluation_matches_restriction():
    rng = random.Random(23)
    entries = catalogue()
    for k in range(24):
        point = random_point(rng)
        entry = entries[k % len(entries)]
        assert plucker_evaluate(entry.form, point) == evaluate_poly(entry.poly, point)


def test_plucker_rejects_bad_input():
    with pytest.raises(DomainError):
        plucker_coordinates([0] * 14)
    with pytest.raises(DomainError):
        plucker_evaluate(ExteriorForm.basis(COVECTOR_DIM, (0, 1)), [0] * 15)


# --- catalogue ------------------------------------------------------------------------

def test_catalogue_has_twelve_entries_in_form_order():
    entries = catalogue()
    assert len(entries) == 12
    assert [e.name for e in entries] == [nf.name for nf in twelve_five_forms()]


def test_short_names():
    entries = catalogue()
    shorts = {e.short_name: i for i, e in enumerate(entries) if e.short_name}
    assert shorts == {'Q1': 0, 'L1': 2, 'Q2': 3, 'L2': 7, 'D': 9, 'Q3': 10}


def test_q1_and_q3_exact_up_to_sign():
    assert poly_ratio(_entry('Q1').poly, q1_poly()) in (1, -1)
    assert poly_ratio(_entry('Q3').poly, q3_poly()) in (1, -1)


def test_published_polynomials_up_to_scalar():
    published = published_polynomials()
    for short in ('Q1', 'L1', 'Q2', 'L2', 'D', 'Q3'):
        assert poly_ratio(_entry(short).poly, published[short]) is not None, short
    assert poly_ratio(_entry('w-4^E_d').poly, published['M44']) is not None


def test_linear_entries():
    assert abs(poly_ratio(_entry('L1').poly, u(0, 3) + u(1, 2))) == 6
    assert _entry('L2').poly == u(4, 4)


def test_degrees_follow_du_count():
    degrees = [e.degree() for e in catalogue()]
    assert degrees == [2, 3, 1, 2, 3, 4, 0, 1, 4, 5, 2, 3]


def test_trivial_entry_and_discrepancy_notes():
    constant = _entry('w+4^E_d')
    assert constant.is_trivial()
    assert constant.poly == U_RING.one
    assert constant.note
    assert _entry('D').note
    assert sum(1 for e in catalogue() if e.note) == 2


def test_entry_lookup():
    assert _entry('Q1').name == 'w+2^w-2^E_d'
    assert _entry('w4^E_d').short_name == 'Q3'
    with pytest.raises(DomainError):
        find_entry('Q7')
    names = entry_names()
    assert names[:6] == ['Q1', 'L1', 'Q2', 'L2', 'D', 'Q3']
    assert len(names) == 18


def test_entry_json():
    doc = _entry('L2').to_json('json')
    assert doc['short_name'] == 'L2'
    assert doc['degree'] == 1
    assert doc['expanded'] == 'u44'
    assert doc['minors'] == 'u44'
    assert doc['poly'] == [{'monomial': ['u44'], 'coeff': '1'}]
    assert 'minors' not in _entry('L2').to_json('expanded')


def test_literal_dictionary_loses_l1():
    nf = next(nf for nf in twelve_five_forms() if nf.name == 'w+2^w2^E_d')
    assert not make_entry(nf, LITERAL, with_minors=False).poly


def test_dictionary_validation():
    with pytest.raises(DomainError):
        DarbouxDictionary('bad', (1, 1, 1))
    with pytest.raises(DomainError):
        DarbouxDictionary('bad', (2,) * 10)


def test_minor_rendering_recombines():
    for entry in catalogue():
        degree = entry.degree()
        if degree is None or degree < 2:
            continue
        decomposition = minor_decomposition(entry.poly)
        assert decomposition, entry.name
        total = U_RING.zero
        for c, rows, cols in decomposition:
            total += minor(rows, cols) * c
        assert total == entry.poly
        assert entry.minor_expr.count('M^') + entry.minor_expr.count('det(u)') == len(decomposition)


def test_render_minors_small_cases():
    assert render_minors(U_RING.one * 3) == '3'
    assert render_minors(u(4, 4)) == 'u44'
    assert render_minors(minor((), ())) == 'det(u)'
    assert render_minors(U_RING.zero) is None
    assert render_minors(u(0, 0) ** 2 + u(1, 1)) is None
