"""
Invariant forms on the G2 orbit module m.

Computes the spaces of sl2-invariant k-forms (k = 1..5) with the exterior
solver, names the eight generators and their products, and assembles the
twelve invariant 5-forms that define the Monge-Ampere equations.
"""

import logging
from dataclasses import dataclass
from functools import lru_cache
from typing import Dict, List, Sequence, Tuple

from errors import CertificateError, DomainError
from exterior import ExteriorForm, derivation_extend, in_span, joint_invariants, span_rank, wedge_all
from g2rep import DEGREES, DIM, MBASIS, ad_operator

logger = logging.getLogger(__name__)

EXPECTED_DIMENSIONS: Dict[int, int] = {1: 2, 2: 4, 3: 6, 4: 9, 5: 12}

# MBasis positions
A = (0, 1, 2, 3)
D_PLUS = 4
B = (5, 6, 7, 8)
D_MINUS = 9


@dataclass(frozen=True)
class NamedForm:
    """An invariant form with its ASCII and unicode names and its H_d weight."""

    name: str
    label: str
    form: ExteriorForm
    hdelta_weight: int

    def to_json(self) -> Dict:
        doc = self.form.to_json()
        doc.update({'name': self.name, 'hdelta_weight': self.hdelta_weight})
        return doc


def _form(terms: Sequence[Tuple[int, Tuple[int, ...]]]) -> ExteriorForm:
    out = None
    for coeff, indices in terms:
        term = ExteriorForm.basis(DIM, indices, coeff)
        out = term if out is None else out + term
    return out


def _omega2_half(g: Sequence[int]) -> ExteriorForm:
    # E_{g1}^E_{g2} - 3 E_{g0}^E_{g3}
    return _form([(1, (g[1], g[2])), (-3, (g[0], g[3]))])


def _build_generators() -> Dict[str, Tuple[str, ExteriorForm]]:
    omega2 = _form([(3, (A[0], B[0])), (1, (A[1], B[1])), (1, (A[2], B[2])), (3, (A[3], B[3]))])
    omega4 = _form([
        (1, (A[0], A[1], B[0], B[1])),
        (1, (A[0], A[2], B[0], B[2])),
        (1, (A[0], A[3], B[1], B[2])),
        (1, (A[1], A[2], B[0], B[3])),
        (1, (A[1], A[3], B[1], B[3])),
        (1, (A[2], A[3], B[2], B[3])),
    ])
    return {
        'E_d': ('E_δ', ExteriorForm.basis(DIM, (D_PLUS,))),
        'E_-d': ('E_{−δ}', ExteriorForm.basis(DIM, (D_MINUS,))),
        'w+2': ('ω₊²', _omega2_half(A)),
        'w-2': ('ω₋²', _omega2_half(B)),
        'w2': ('ω²', omega2),
        'w+4': ('ω₊⁴', ExteriorForm.basis(DIM, A)),
        'w-4': ('ω₋⁴', ExteriorForm.basis(DIM, B)),
        'w4': ('ω⁴', omega4),
    }


GENERATOR_NAMES: Tuple[str, ...] = ('E_d', 'E_-d', 'w+2', 'w-2', 'w2', 'w+4', 'w-4', 'w4')
_GENERATORS = _build_generators()

# products spanning each invariant space, as tuples of generator names
PRODUCTS: Dict[int, Tuple[Tuple[str, ...], ...]] = {
    1: (('E_d',), ('E_-d',)),
    2: (('E_d', 'E_-d'), ('w+2',), ('w-2',), ('w2',)),
    3: (('E_d', 'w+2'), ('E_d', 'w-2'), ('E_-d', 'w+2'), ('E_-d', 'w-2'), ('E_d', 'w2'), ('E_-d', 'w2')),
    4: (('E_d', 'E_-d', 'w+2'), ('E_d', 'E_-d', 'w-2'), ('E_d', 'E_-d', 'w2'),
        ('w+2', 'w-2'), ('w+2', 'w2'), ('w-2', 'w2'),
        ('w+4',), ('w-4',), ('w4',)),
    5: (('w+2', 'w-2', 'E_d'), ('w+2', 'w-2', 'E_-d'),
        ('w+2', 'w2', 'E_d'), ('w+2', 'w2', 'E_-d'),
        ('w-2', 'w2', 'E_d'), ('w-2', 'w2', 'E_-d'),
        ('w+4', 'E_d'), ('w+4', 'E_-d'),
        ('w-4', 'E_d'), ('w-4', 'E_-d'),
        ('w4', 'E_d'), ('w4', 'E_-d')),
}


def hdelta_weight(form: ExteriorForm) -> int:
    weight = form.weight(DEGREES)
    if weight is None:
        raise CertificateError('H_d eigenform', 'form mixes H_d weights')
    return int(weight)


def generator(name: str) -> NamedForm:
    """One of the eight generators E_d, E_-d, w+2, w-2, w2, w+4, w-4, w4."""
    if name not in _GENERATORS:
        raise DomainError(f"unknown generator {name!r}; expected one of {', '.join(GENERATOR_NAMES)}")
    label, form = _GENERATORS[name]
    return NamedForm(name=name, label=label, form=form, hdelta_weight=hdelta_weight(form))


def product(names: Sequence[str]) -> NamedForm:
    """Wedge product of generators, in the given order."""
    parts = [generator(n) for n in names]
    form = wedge_all(p.form for p in parts)
    return NamedForm(
        name='^'.join(names),
        label='∧'.join(p.label for p in parts),
        form=form,
        hdelta_weight=hdelta_weight(form),
    )


def sl2_operators() -> List:
    return [ad_operator('E_a1').matrix, ad_operator('E_-a1').matrix]


@lru_cache(maxsize=None)
def solver_basis(k: int) -> Tuple[ExteriorForm, ...]:
    """Echelon basis of the k-forms annihilated by E_a1 and E_-a1."""
    _check_degree(k)
    return tuple(joint_invariants(sl2_operators(), k, DIM))


def _check_degree(k: int):
    if k not in EXPECTED_DIMENSIONS:
        raise DomainError(f"degree must be in 1..5, got {k}")


def is_invariant(form: ExteriorForm, include_cartan: bool = True) -> bool:
    """Exact re-substitution check under E_a1, E_-a1 and optionally H_a1."""
    ops = sl2_operators()
    if include_cartan:
        ops.append(ad_operator('H_a1').matrix)
    return all(derivation_extend(X, form).is_zero() for X in ops)


def invariant_basis(k: int) -> List[NamedForm]:
    """
    Named basis of the invariant k-forms.

    The named products are checked against the solver: each must lie in the
    computed kernel, be annihilated by H_a1 as well, and together they must be
    linearly independent and as many as the kernel dimension.

    Raises:
        DomainError: if k is not in 1..5
        CertificateError: if a named form is not invariant or the spans differ
    """
    _check_degree(k)
    kernel = solver_basis(k)
    named = [product(names) for names in PRODUCTS[k]]

    for nf in named:
        if not in_span(nf.form, kernel):
            raise CertificateError('generator membership', f"{nf.name} is not in the invariant space of degree {k}")
        if not is_invariant(nf.form):
            raise CertificateError('re-substitution', f"{nf.name} is not annihilated by H_a1")

    rank = span_rank([nf.form for nf in named])
    if rank != len(kernel) or rank != len(named):
        raise CertificateError('product closure', f"degree {k}: rank {rank}, kernel {len(kernel)}, named {len(named)}")

    logger.info(f"degree {k}: {len(named)} named invariants span the solver kernel")
    return named


def twelve_five_forms() -> List[NamedForm]:
    """The twelve invariant 5-forms, paired as (..^E_d, ..^E_-d)."""
    forms = invariant_basis(5)
    if len(forms) != 12:
        raise CertificateError('dimension ladder', f"expected 12 five-forms, got {len(forms)}")
    return forms


def dimension_ladder() -> Dict[int, int]:
    """Kernel dimension for every degree 1..5."""
    return {k: len(solver_basis(k)) for k in EXPECTED_DIMENSIONS}


def conformal_weights() -> Dict[str, int]:
    """H_d weight of the eight generators and the twelve 5-forms."""
    weights = {name: generator(name).hdelta_weight for name in GENERATOR_NAMES}
    for names in PRODUCTS[5]:
        nf = product(names)
        weights[nf.name] = nf.hdelta_weight
    return weights


def labels(unicode: bool = False) -> List[str]:
    return [label.unicode if unicode else label.ascii for label in MBASIS]
