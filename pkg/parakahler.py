"""
Pointwise linear algebra of para-Kaehler / bi-Lagrangian structures on a
single vector space.

A para-complex operator I (I^2 = 1, trace 0) and a metric g with isotropic
eigenspaces determine the Kaehler form omega(v, w) = g(v, Iw); conversely a
symplectic form with Lagrangian eigenspaces determines g(v, w) = -omega(Iv, w).
"""

import logging
import random
from dataclasses import dataclass
from typing import List, Tuple

from sympy import ImmutableMatrix, Matrix, Rational, diag, eye, zeros

from errors import DomainError, PreconditionError

logger = logging.getLogger(__name__)

SYMMETRIC = 'symmetric'
ANTISYMMETRIC = 'antisymmetric'


@dataclass(frozen=True)
class ParaComplexOp:
    """Involution of an even-dimensional space with eigenspaces of equal dimension."""

    I: ImmutableMatrix

    def __post_init__(self):
        op = ImmutableMatrix(self.I)
        object.__setattr__(self, 'I', op)
        rows, cols = op.shape
        if rows != cols or rows % 2:
            raise PreconditionError(f"para-complex operator must be 2n x 2n, got {rows}x{cols}")
        if op * op != eye(rows):
            raise PreconditionError("para-complex operator must satisfy I^2 = 1")
        if op.trace() != 0:
            raise PreconditionError("para-complex operator must have trace 0")

    @property
    def size(self) -> int:
        return self.I.shape[0]

    def eigenspace(self, sign: int) -> List[Matrix]:
        """Basis of the +1 or -1 eigenspace."""
        return (self.I - sign * eye(self.size)).nullspace()


@dataclass(frozen=True)
class BilinearForm:
    """A bilinear form given by its Gram matrix, tagged symmetric or antisymmetric."""

    matrix: ImmutableMatrix
    kind: str

    def __post_init__(self):
        m = ImmutableMatrix(self.matrix)
        object.__setattr__(self, 'matrix', m)
        if self.kind not in (SYMMETRIC, ANTISYMMETRIC):
            raise DomainError(f"unknown form kind {self.kind!r}")
        if m.shape[0] != m.shape[1]:
            raise DomainError("form matrix must be square")
        expected = m if self.kind == SYMMETRIC else -m
        if m.T != expected:
            raise DomainError(f"matrix is not {self.kind}")

    def __call__(self, v, w) -> Rational:
        return (Matrix(v).T * self.matrix * Matrix(w))[0, 0]

    def is_nondegenerate(self) -> bool:
        return self.matrix.det() != 0


def _check_sizes(form: BilinearForm, op: ParaComplexOp):
    if form.matrix.shape[0] != op.size:
        raise DomainError(f"form is {form.matrix.shape[0]}-dimensional, operator {op.size}-dimensional")


def eigenspaces_isotropic(form: BilinearForm, op: ParaComplexOp) -> bool:
    """Both eigenspaces of I are isotropic for form, i.e. I^T B I = -B."""
    return op.I.T * form.matrix * op.I == -form.matrix


def kaehler_form(g: BilinearForm, op: ParaComplexOp) -> BilinearForm:
    """
    Kaehler form omega(v, w) = g(v, I w).

    Args:
        g: Symmetric nondegenerate form
        op: Para-complex operator

    Returns:
        Antisymmetric nondegenerate form vanishing on each eigenspace of I

    Raises:
        PreconditionError: if g is degenerate or the eigenspaces are not g-isotropic
    """
    if g.kind != SYMMETRIC:
        raise DomainError("kaehler_form expects a symmetric form")
    _check_sizes(g, op)
    if not g.is_nondegenerate():
        raise PreconditionError("metric is degenerate")
    if not eigenspaces_isotropic(g, op):
        raise PreconditionError("eigenspaces of I are not isotropic for g")
    omega = BilinearForm(g.matrix * op.I, ANTISYMMETRIC)
    logger.debug(f"kaehler form computed on a {op.size}-dimensional space")
    return omega


def metric_from_symplectic(omega: BilinearForm, op: ParaComplexOp) -> BilinearForm:
    """
    Metric g(v, w) = -omega(I v, w), Gram matrix -I^T Omega.

    This is the inverse of kaehler_form: omega = g(., I.) and g = -omega(I., .)
    on compatible pairs.

    Raises:
        PreconditionError: if omega is degenerate or the eigenspaces are not Lagrangian
    """
    if omega.kind != ANTISYMMETRIC:
        raise DomainError("metric_from_symplectic expects an antisymmetric form")
    _check_sizes(omega, op)
    if not omega.is_nondegenerate():
        raise PreconditionError("symplectic form is degenerate")
    if not eigenspaces_isotropic(omega, op):
        raise PreconditionError("eigenspaces of I are not Lagrangian for omega")
    return BilinearForm(-op.I.T * omega.matrix, SYMMETRIC)


def is_para_hermitian(omega: BilinearForm, op: ParaComplexOp) -> bool:
    """omega(I v, I w) = -omega(v, w)."""
    return eigenspaces_isotropic(omega, op)


# --- random compatible structures -------------------------------------------

def random_invertible(n: int, rng: random.Random, bound: int = 3) -> Matrix:
    """Random invertible integer matrix with entries in [-bound, bound]."""
    while True:
        m = Matrix(n, n, lambda i, j: rng.randint(-bound, bound))
        if m.det() != 0:
            return m


def random_structure(n: int, rng: random.Random) -> Tuple[ParaComplexOp, BilinearForm, BilinearForm]:
    """
    A random compatible triple (I, omega, g) on a 2n-dimensional space.

    I = C diag(1^n, -1^n) C^-1 and omega = C^-T [[0, P], [-P^T, 0]] C^-1 for random
    invertible C and P, so the eigenspaces are Lagrangian by construction.
    """
    c = random_invertible(2 * n, rng)
    c_inv = c.inv()
    op = ParaComplexOp(c * diag(*([1] * n + [-1] * n)) * c_inv)

    p = random_invertible(n, rng)
    seed = zeros(2 * n, 2 * n)
    seed[:n, n:] = p
    seed[n:, :n] = -p.T
    omega = BilinearForm(c_inv.T * seed * c_inv, ANTISYMMETRIC)
    g = metric_from_symplectic(omega, op)
    return op, omega, g
