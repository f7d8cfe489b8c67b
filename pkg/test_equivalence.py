"""
Tests for the contact-plane maps, the classification and the symbol analysis.
"""

import random

import pytest
from sympy import Matrix, eye
from sympy.polys.domains import QQ

from errors import DomainError
from equivalence import (
    act_on_equation, block_diagonal, chart_rank_count, check_tau_identities, classify, compose, conformal_map,
    SympMap, euler_sum, identity, point_from_matrix, rank_profile, sample_points, same_equation, separate,
    solve_variable, symbol, symplectic_form_matrix, tau, tau_conjugate, xi,
)
from exterior import ExteriorForm, U_NAMES, evaluate_poly, pullback, u
from g2rep import DEGREES
from mae import COVECTOR_DIM, N, catalogue, find_entry, plucker_evaluate, q1_poly, restrict_to_lagrangian
from parakahler import random_invertible
from utils import to_qq


def _entry(name):
    return find_entry(name, catalogue())


# --- maps ------------------------------------------------------------------------------

def test_tau_and_xi_are_symplectic():
    assert tau().is_symplectic()
    assert xi().is_symplectic()
    assert identity().is_symplectic()
    J = symplectic_form_matrix()
    assert tau().matrix.T * J * tau().matrix == J


def test_tau_squares_to_minus_identity():
    t = tau().matrix
    assert t * t == -eye(COVECTOR_DIM)


def test_xi_fixes_all_but_the_last_pair():
    x = xi().matrix
    one_form = ExteriorForm.basis(COVECTOR_DIM, (1,))
    assert pullback(x, one_form) == one_form
    assert pullback(x, ExteriorForm.basis(COVECTOR_DIM, (4,))) == ExteriorForm.basis(COVECTOR_DIM, (9,))
    assert pullback(x, ExteriorForm.basis(COVECTOR_DIM, (9,))) == -ExteriorForm.basis(COVECTOR_DIM, (4,))
    block = (x * x)[[4, 9], [4, 9]]
    assert block == -eye(2)


def test_tau_sends_dx_to_du_and_du_to_minus_dx():
    t = tau().matrix
    for i in range(N):
        assert pullback(t, ExteriorForm.basis(COVECTOR_DIM, (i,))) == ExteriorForm.basis(COVECTOR_DIM, (i + N,))
        assert pullback(t, ExteriorForm.basis(COVECTOR_DIM, (i + N,))) == -ExteriorForm.basis(COVECTOR_DIM, (i,))


def test_tau_on_the_u44_form():
    form = ExteriorForm.basis(COVECTOR_DIM, (0, 1, 2, 3, 9))
    image = pullback(tau().matrix, form)
    assert image.ratio_to(ExteriorForm.basis(COVECTOR_DIM, (4, 5, 6, 7, 8))) is not None


def test_bad_map_shape():
    with pytest.raises(DomainError):
        SympMap('bad', eye(4))
    with pytest.raises(DomainError):
        block_diagonal(Matrix([[1, 1], [1, 1]]))
    with pytest.raises(DomainError):
        conformal_map(0)


def test_compose_order_matches_pullback():
    form = _entry('Q1').form
    both = compose(tau(), xi())
    assert pullback(both.matrix, form) == pullback(xi().matrix, pullback(tau().matrix, form))


def test_block_diagonal_is_symplectic_and_conjugates_tau():
    """diag(A, A^-T) tau = tau diag(A^-T, A) for 20 random invertible A."""
    rng = random.Random(31)
    t = tau().matrix
    for _ in range(20):
        A = random_invertible(5, rng, 2)
        g = block_diagonal(A)
        g_bar = tau_conjugate(A)
        assert g.is_symplectic()
        assert g_bar.is_symplectic()
        assert g.matrix * t == t * g_bar.matrix


def test_conformal_map_scales_every_equation():
    lam = QQ(3, 2)
    S = conformal_map(lam)
    assert S.is_symplectic()
    for nf_entry in catalogue():
        image = pullback(S.matrix, nf_entry.form)
        weight = nf_entry.form.weight(DEGREES)
        assert image == nf_entry.form.scale(lam ** weight)


def test_identity_action_keeps_entry():
    entry = _entry('Q3')
    assert act_on_equation(identity(), entry).poly == entry.poly


def test_tau_on_l2_gives_m44_entry():
    image = act_on_equation(tau(), _entry('L2'))
    assert same_equation(image.poly, _entry('w-4^E_d').poly)


def test_tau_on_q1_gives_its_sibling():
    image = act_on_equation(tau(), _entry('Q1'))
    assert same_equation(image.poly, _entry('w+2^w-2^E_-d').poly)


def test_xi_takes_l1_to_q2():
    image = act_on_equation(xi(), _entry('L1'))
    assert same_equation(image.poly, _entry('Q2').poly)


def test_two_action_routes_agree():
    """Restriction of the pulled-back form agrees with Pluecker evaluation of it."""
    rng = random.Random(32)
    for S in (tau(), xi()):
        for entry in catalogue():
            form = pullback(S.matrix, entry.form)
            point = [QQ(rng.randint(-3, 3), rng.randint(1, 2)) for _ in U_NAMES]
            assert evaluate_poly(restrict_to_lagrangian(form), point) == plucker_evaluate(form, point)


def test_tau_identities_hold():
    assert check_tau_identities() == []


# --- classification --------------------------------------------------------------------

def test_six_classes_under_tau():
    partition = classify(catalogue(), [tau()])
    assert len(partition.classes) == 6
    assert sorted(partition.representatives) == sorted(['Q1', 'L1', 'Q2', 'D', 'L2', 'Q3'])
    assert partition.trivial == ('w+4^E_d',)
    assert partition.unmatched == ()


def test_four_representatives_under_tau_and_xi():
    partition = classify(catalogue(), [tau(), xi()])
    assert partition.representatives == ['Q1', 'L1', 'L2', 'Q3']
    assert set(partition.class_of('L2').members) == {'L2', 'w-4^E_d', 'D'}
    assert 'Q2' in partition.class_of('L1').members


def test_no_generators_gives_singletons():
    partition = classify(catalogue(), [])
    assert len(partition.classes) == 11
    assert all(len(c.members) == 1 for c in partition.classes)


def test_partition_json():
    doc = classify().to_json()
    assert doc['generators'] == ['tau', 'xi']
    assert doc['representatives'] == ['Q1', 'L1', 'L2', 'Q3']


# --- symbol ---------------------------------------------------------------------------------

def test_symbol_of_l1_is_constant_rank_four():
    F = _entry('L1').poly
    rng = random.Random(33)
    for _ in range(100):
        point = [QQ(rng.randint(-5, 5)) for _ in U_NAMES]
        assert symbol(F, point).rank == 4


def test_symbol_of_q1_at_origin_vanishes():
    smb = symbol(q1_poly(), [0] * 15)
    assert smb.rank == 0
    assert smb.matrix.is_zero_matrix


def test_symbol_halves_off_diagonal_derivatives():
    smb = symbol(u(0, 3) + u(1, 2), [0] * 15)
    assert smb.matrix[0, 3] == QQ.to_sympy(QQ(1, 2))
    assert smb.matrix[3, 0] == smb.matrix[0, 3]
    smb = symbol(u(4, 4), [0] * 15)
    assert smb.matrix[4, 4] == 1
    assert smb.rank == 1


def test_symbol_rejects_short_points():
    with pytest.raises(DomainError):
        symbol(q1_poly(), [0] * 3)


def test_q1_sampling_chart():
    F = _entry('Q1').poly
    assert U_NAMES[solve_variable(F)] == 'u00'
    points = sample_points(F, 100, seed=0, include_seeds=False)
    assert len(points) == 100
    assert all(evaluate_poly(F, p) == 0 for p in points)


def test_q1_generic_rank_is_four():
    assert chart_rank_count(_entry('Q1'), 4, samples=100, seed=0) >= 95


def test_sampling_is_deterministic():
    F = _entry('Q3').poly
    assert sample_points(F, 10, seed=5) == sample_points(F, 10, seed=5)


def test_euler_identity_for_quadratic_entries():
    rng = random.Random(34)
    for name in ('Q1', 'Q3'):
        F = _entry(name).poly
        for _ in range(20):
            point = [QQ(rng.randint(-4, 4), rng.randint(1, 3)) for _ in U_NAMES]
            assert euler_sum(F, point) == 2 * evaluate_poly(F, point)


def test_rank_profiles():
    l1 = rank_profile(_entry('L1'), samples=20)
    assert l1.is_constant() and l1.attained == [4]
    q1 = rank_profile(_entry('Q1'), samples=20)
    assert 0 in q1.attained and 4 in q1.attained


def test_point_from_matrix():
    m = Matrix(5, 5, lambda i, j: i + j)
    point = point_from_matrix(m)
    assert point[U_NAMES.index('u34')] == 7


# --- separation ---------------------------------------------------------------------------

def test_q1_and_l1_are_separated():
    report = separate(_entry('Q1'), _entry('L1'), samples=50, seed=0)
    assert report.verdict == 'separated'
    assert report.ranks['L1'] == [4]
    assert 0 in report.ranks['Q1']
    witness = [to_qq(report.witness[n]) for n in U_NAMES]
    assert evaluate_poly(q1_poly(), witness) == 0
    assert symbol(q1_poly(), witness).rank < 4


def test_identical_entries_are_inconclusive():
    report = separate(_entry('L1'), _entry('L1'), samples=10)
    assert report.verdict == 'inconclusive'


def test_l2_and_d_are_inconclusive():
    report = separate(_entry('L2'), _entry('D'), samples=10)
    assert report.verdict == 'inconclusive'
    assert report.to_json()['pair'] == ['L2', 'D']
