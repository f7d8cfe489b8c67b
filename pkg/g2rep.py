"""
The 10-dimensional module m spanned by the root vectors E_{+-g_i}, E_{+-d}
(g_i = a2 + i*a1, d = 3a1 + 2a2), the action of the stabilizer algebra
R*H_d + sl2 on it, and the invariant symplectic pairing.

Matrices act on coordinate columns: column j holds the image of basis vector j.
"""

import logging
from dataclasses import dataclass
from functools import lru_cache
from typing import Dict, List, Sequence, Tuple

from sympy import ImmutableMatrix, Matrix, Rational, zeros
from sympy.polys.domains import QQ

from errors import DomainError, NotAnEigenvectorError
from rootsys import Root, build_g2
from utils import matrix_to_strings, to_qq

logger = logging.getLogger(__name__)

DIM = 10


@dataclass(frozen=True)
class BasisLabel:
    index: int
    ascii: str
    unicode: str
    root: Root
    degree: int

    @property
    def is_positive(self) -> bool:
        return self.degree > 0


def _build_labels() -> Tuple[BasisLabel, ...]:
    subscripts = '₀₁₂₃'
    labels = []
    for i in range(4):
        labels.append(BasisLabel(i, f"E_g{i}", f"E_{{γ{subscripts[i]}}}", Root((i, 1)), 1))
    labels.append(BasisLabel(4, "E_d", "E_δ", Root((3, 2)), 2))
    for i in range(4):
        labels.append(BasisLabel(5 + i, f"E_-g{i}", f"E_{{−γ{subscripts[i]}}}", Root((-i, -1)), -1))
    labels.append(BasisLabel(9, "E_-d", "E_{−δ}", Root((-3, -2)), -2))
    return tuple(labels)


MBASIS: Tuple[BasisLabel, ...] = _build_labels()
DEGREES: Tuple[int, ...] = tuple(label.degree for label in MBASIS)
POSITIVE_INDICES: Tuple[int, ...] = tuple(range(5))
NEGATIVE_INDICES: Tuple[int, ...] = tuple(range(5, 10))


def dual_index(i: int) -> int:
    """Index of E_{-b} for the basis vector E_b."""
    return (i + 5) % 10


# [E_{+-a1}, E_b] = N * E_{b +- a1}; keys are (source index, target index)
E_A1_TABLE: Dict[Tuple[int, int], int] = {
    (0, 1): 1, (1, 2): 2, (2, 3): 3,
    (6, 5): -3, (7, 6): -2, (8, 7): -1,
}
E_MINUS_A1_TABLE: Dict[Tuple[int, int], int] = {
    (1, 0): 3, (2, 1): 2, (3, 2): 1,
    (5, 6): -1, (6, 7): -2, (7, 8): -3,
}

OPERATOR_NAMES: Tuple[str, ...] = ('H_d', 'H_a1', 'E_a1', 'E_-a1')
_ALIASES = {
    'H_delta': 'H_d', 'Hδ': 'H_d', 'H_δ': 'H_d',
    'H_α1': 'H_a1', 'H_alpha1': 'H_a1',
    'E_α1': 'E_a1', 'E_alpha1': 'E_a1', 'e': 'E_a1',
    'E_−α1': 'E_-a1', 'E_-alpha1': 'E_-a1', 'f': 'E_-a1',
    'h': 'H_a1',
}


@dataclass(frozen=True)
class AdOperator:
    """Matrix of ad_X restricted to m for X in the stabilizer algebra."""

    name: str
    matrix: ImmutableMatrix

    def to_json(self) -> Dict:
        return {'name': self.name, 'matrix': matrix_to_strings(self.matrix)}


def _from_table(table: Dict[Tuple[int, int], int]) -> ImmutableMatrix:
    m = zeros(DIM, DIM)
    for (source, target), n in table.items():
        m[target, source] = n
    return ImmutableMatrix(m)


@lru_cache(maxsize=None)
def ad_operator(name: str) -> AdOperator:
    """
    Matrix of one of H_d, H_a1, E_a1, E_-a1 acting on m.

    H_d acts by the degrees (+-1 on E_{+-g_i}, +-2 on E_{+-d}); H_a1 acts on E_b
    by 2(a1, b)/(a1, a1) = 3(a1, b); E_{+-a1} act through the structure constants.

    Raises:
        DomainError: for an unknown operator name
    """
    canonical = _ALIASES.get(name, name)
    if canonical not in OPERATOR_NAMES:
        raise DomainError(f"unknown operator {name!r}; expected one of {', '.join(OPERATOR_NAMES)}")

    if canonical == 'H_d':
        matrix = ImmutableMatrix.diag(*DEGREES)
    elif canonical == 'H_a1':
        g2 = build_g2()
        a1 = g2.simple_roots()[0]
        scale = 2 / g2.inner(a1, a1)
        matrix = ImmutableMatrix.diag(*[scale * g2.inner(a1, label.root) for label in MBASIS])
    elif canonical == 'E_a1':
        matrix = _from_table(E_A1_TABLE)
    else:
        matrix = _from_table(E_MINUS_A1_TABLE)

    return AdOperator(name=canonical, matrix=matrix)


def all_operators() -> List[AdOperator]:
    return [ad_operator(name) for name in OPERATOR_NAMES]


def sl2_triple() -> Tuple[ImmutableMatrix, ImmutableMatrix, ImmutableMatrix]:
    """(e, f, h) matrices of E_a1, E_-a1, H_a1."""
    return ad_operator('E_a1').matrix, ad_operator('E_-a1').matrix, ad_operator('H_a1').matrix


def check_sl2_triple() -> Dict[str, bool]:
    """Exact checks of [e,f]=h, [h,e]=2e, [h,f]=-2f."""
    e, f, h = sl2_triple()
    return {
        '[e,f]=h': e * f - f * e == h,
        '[h,e]=2e': h * e - e * h == 2 * e,
        '[h,f]=-2f': h * f - f * h == -2 * f,
    }


@lru_cache(maxsize=None)
def pairing_matrix() -> ImmutableMatrix:
    """
    The invariant symplectic pairing on m.

    Omega(E_b, E_{-b}) = deg(b) * 2/(b, b) for positive b, antisymmetrized:
    values 1, 3, 3, 1 on the g-pairs and 2 on the d-pair. The weighting by
    2/(b, b) is what makes the pairing ad-invariant for the structure
    constants above; unit weights on the g-pairs are not.
    """
    g2 = build_g2()
    m = zeros(DIM, DIM)
    for label in MBASIS[:5]:
        value = label.degree * 2 / g2.inner(label.root, label.root)
        j = dual_index(label.index)
        m[label.index, j] = value
        m[j, label.index] = -value
    return ImmutableMatrix(m)


def pairing(i: int, j: int) -> Rational:
    """
    Omega_Z(E_i, E_j) on basis indices 0..9.

    The normalization is the ad-invariant one from pairing_matrix, so
    pairing(1, 6) = (E_g1, E_-g1) = 3, not 1. Unit weights on the four
    g-pairs fail X^T Omega + Omega X = 0 for E_a1.
    """
    if not (0 <= i < DIM and 0 <= j < DIM):
        raise DomainError(f"basis indices must lie in 0..9, got ({i}, {j})")
    return pairing_matrix()[i, j]


def is_ad_invariant(op: AdOperator, omega: ImmutableMatrix = None) -> bool:
    """Omega(Xv, w) + Omega(v, Xw) = 0 for all v, w, i.e. X^T Omega + Omega X = 0."""
    omega = pairing_matrix() if omega is None else omega
    return (op.matrix.T * omega + omega * op.matrix).is_zero_matrix


def bi_lagrangian_splitting() -> Tuple[Tuple[int, ...], Tuple[int, ...]]:
    """Indices of the positive and negative halves, each isotropic for the pairing."""
    return POSITIVE_INDICES, NEGATIVE_INDICES


def is_isotropic(indices: Sequence[int], omega: ImmutableMatrix = None) -> bool:
    omega = pairing_matrix() if omega is None else omega
    return all(omega[i, j] == 0 for i in indices for j in indices)


def basis_vector(i: int) -> List[int]:
    return [int(k == i) for k in range(DIM)]


def weight_of(vector: Sequence, op: AdOperator):
    """
    Eigenvalue of op on vector.

    Raises:
        NotAnEigenvectorError: if vector is zero or not an eigenvector
    """
    v = Matrix([QQ.to_sympy(to_qq(x)) for x in vector])
    if v.shape != (DIM, 1):
        raise DomainError(f"vector must have {DIM} entries")
    if v.is_zero_matrix:
        raise NotAnEigenvectorError("the zero vector has no weight")

    image = op.matrix * v
    pivot = next(i for i in range(DIM) if v[i] != 0)
    eigenvalue = image[pivot] / v[pivot]
    if image != eigenvalue * v:
        raise NotAnEigenvectorError(f"vector is not an eigenvector of {op.name}")
    return int(eigenvalue) if eigenvalue.is_integer else eigenvalue


def weight_of_index(i: int, op: AdOperator):
    return weight_of(basis_vector(i), op)
