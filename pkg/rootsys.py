"""
Root systems with exact rational inner products, the G2 instance, and the
fundamental gradations determined by subsets of simple roots.

Roots are kept in simple-root coordinates, so the grading function is a dot
product with the indicator vector of the chosen subset.
"""

import itertools
import logging
from dataclasses import dataclass, field
from typing import Dict, FrozenSet, Iterable, List, Sequence, Tuple

from sympy import ImmutableMatrix, Matrix, Rational

from errors import DomainError

logger = logging.getLogger(__name__)


@dataclass(frozen=True, order=True)
class Root:
    """A root written as integer coefficients over the simple roots."""

    coeffs: Tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, 'coeffs', tuple(int(c) for c in self.coeffs))
        if not any(self.coeffs):
            raise DomainError("a root must be a nonzero vector")

    @property
    def rank(self) -> int:
        return len(self.coeffs)

    def is_positive(self) -> bool:
        return all(c >= 0 for c in self.coeffs)

    def __neg__(self) -> 'Root':
        return Root(tuple(-c for c in self.coeffs))

    def name(self) -> str:
        """ASCII rendering such as "3*a1+2*a2" or "-a1"."""
        parts = []
        for i, c in enumerate(self.coeffs, 1):
            if c == 0:
                continue
            sign = '-' if c < 0 else '+'
            magnitude = abs(c)
            term = f"a{i}" if magnitude == 1 else f"{magnitude}*a{i}"
            parts.append(sign + term)
        text = ''.join(parts)
        return text[1:] if text.startswith('+') else text

    def __str__(self) -> str:
        return self.name()


@dataclass(frozen=True)
class RootSystem:
    """
    A reduced root system given by its Gram matrix on the simple roots and its
    ordered positive roots.
    """

    name: str
    rank: int
    gram: ImmutableMatrix
    positive_roots: Tuple[Root, ...]

    def __post_init__(self):
        gram = ImmutableMatrix(self.gram)
        object.__setattr__(self, 'gram', gram)
        if self.rank < 1 or gram.shape != (self.rank, self.rank):
            raise DomainError(f"gram must be {self.rank}x{self.rank}")
        if gram != gram.T:
            raise DomainError("gram matrix must be symmetric")
        for i in range(self.rank):
            if not gram[i, i] > 0:
                raise DomainError("gram matrix must have positive diagonal")
        for i, j in itertools.product(range(self.rank), repeat=2):
            a_ij = 2 * gram[i, j] / gram[j, j]
            if i == j and a_ij != 2:
                raise DomainError("Cartan integers must be 2 on the diagonal")
            if i != j and (not a_ij.is_integer or a_ij > 0):
                raise DomainError(f"Cartan integer ({i + 1},{j + 1}) = {a_ij} is not a nonpositive integer")
        for root in self.positive_roots:
            if root.rank != self.rank or not root.is_positive():
                raise DomainError(f"{root} is not a positive root of rank {self.rank}")

    def simple_roots(self) -> Tuple[Root, ...]:
        return tuple(Root(tuple(int(i == j) for j in range(self.rank))) for i in range(self.rank))

    def roots(self) -> Tuple[Root, ...]:
        """All roots: the positive ones in stored order, then their negatives."""
        return self.positive_roots + tuple(-r for r in self.positive_roots)

    def contains(self, alpha: Root) -> bool:
        return alpha in self.positive_roots or -alpha in self.positive_roots

    def inner(self, a: Root, b: Root) -> Rational:
        """Exact inner product (a, b) from the Gram matrix."""
        va = Matrix([a.coeffs])
        vb = Matrix(b.coeffs)
        return (va * self.gram * vb)[0, 0]

    def cartan_matrix(self) -> ImmutableMatrix:
        """Cartan integers 2(a_i, a_j)/(a_j, a_j)."""
        return ImmutableMatrix(self.rank, self.rank,
                               lambda i, j: 2 * self.gram[i, j] / self.gram[j, j])

    def maximal_root(self) -> Root:
        """The positive root with the largest height."""
        return max(self.positive_roots, key=lambda r: (sum(r.coeffs), r.coeffs))


@dataclass(frozen=True)
class Gradation:
    """A fundamental gradation: level sets of the grading function on R."""

    pi1: FrozenSet[int]
    level_sets: Dict[int, Tuple[Root, ...]] = field(hash=False, compare=False)
    depth: int = 0

    def level(self, i: int) -> Tuple[Root, ...]:
        return self.level_sets.get(i, ())


def epsilon_gram() -> ImmutableMatrix:
    """
    Gram matrix of the G2 simple roots derived from the three-vector model.

    The vectors e1, e2, e3 satisfy e1 + e2 + e3 = 0 with (ei, ei) = 2/3 and
    (ei, ej) = -1/3; the simple roots are a1 = -e2 and a2 = e2 - e3.
    """
    eps = Matrix(3, 3, lambda i, j: Rational(2, 3) if i == j else Rational(-1, 3))
    # columns: a1, a2 in e-coordinates
    simple = Matrix([[0, 0], [-1, 1], [0, -1]])
    return ImmutableMatrix(simple.T * eps * simple)


def build_g2() -> RootSystem:
    """
    The G2 root system with simple roots {a1 (short), a2 (long)}.

    Positive roots are listed as a1, a2, a1+a2, 2a1+a2, 3a1+a2, 3a1+2a2, and the
    maximal root is 3a1+2a2.
    """
    gram = ImmutableMatrix([[Rational(2, 3), -1], [-1, 2]])
    derived = epsilon_gram()
    if gram != derived:
        # the printed (a1, a2) = 1 contradicts the three-vector model
        raise DomainError(f"G2 gram mismatch: {gram} vs {derived}")
    positive = tuple(Root(c) for c in [(1, 0), (0, 1), (1, 1), (2, 1), (3, 1), (3, 2)])
    return RootSystem(name='G2', rank=2, gram=gram, positive_roots=positive)


def build_a1() -> RootSystem:
    """The rank-one system A1."""
    return RootSystem(name='A1', rank=1, gram=ImmutableMatrix([[2]]), positive_roots=(Root((1,)),))


def _check_pi1(rs: RootSystem, pi1: Iterable[int]) -> FrozenSet[int]:
    pi1 = frozenset(int(i) for i in pi1)
    bad = [i for i in pi1 if not 1 <= i <= rs.rank]
    if bad:
        raise DomainError(f"simple-root indices {sorted(bad)} out of range 1..{rs.rank}")
    return pi1


def grading_function(rs: RootSystem, pi1: Iterable[int], alpha: Root) -> int:
    """
    Degree d(alpha) = sum of k_i over the simple roots a_i in pi1.

    Args:
        rs: Root system
        pi1: 1-based indices of the simple roots of degree 1
        alpha: A root of rs

    Returns:
        Integer degree

    Raises:
        DomainError: if alpha is not a root of rs
    """
    pi1 = _check_pi1(rs, pi1)
    if not isinstance(alpha, Root) or alpha.rank != rs.rank or not rs.contains(alpha):
        raise DomainError(f"{alpha} is not a root of {rs.name}")
    return sum(alpha.coeffs[i - 1] for i in pi1)


def gradation(rs: RootSystem, pi1: Iterable[int]) -> Gradation:
    """Level sets of the grading function defined by pi1."""
    pi1 = _check_pi1(rs, pi1)
    levels: Dict[int, List[Root]] = {}
    for alpha in rs.roots():
        levels.setdefault(grading_function(rs, pi1, alpha), []).append(alpha)
    level_sets = {i: tuple(levels[i]) for i in sorted(levels)}
    depth = max((abs(i) for i in level_sets), default=0)
    logger.debug(f"{rs.name} gradation pi1={sorted(pi1)} depth={depth}")
    return Gradation(pi1=pi1, level_sets=level_sets, depth=depth)


def enumerate_gradations(rs: RootSystem) -> List[Gradation]:
    """One gradation per nonempty subset of simple roots, ordered by subset size then indices."""
    indices = range(1, rs.rank + 1)
    subsets = [frozenset(c) for k in range(1, rs.rank + 1) for c in itertools.combinations(indices, k)]
    gradations = [gradation(rs, s) for s in subsets]
    logger.info(f"{rs.name}: {len(gradations)} fundamental gradations")
    return gradations


def graded_dimensions(rs: RootSystem, pi1: Iterable[int]) -> Dict[int, int]:
    """dim g^i for every degree, with the Cartan subalgebra counted in degree 0."""
    grad = gradation(rs, pi1)
    dims = {i: len(roots) for i, roots in grad.level_sets.items()}
    dims[0] = dims.get(0, 0) + rs.rank
    return {i: dims[i] for i in sorted(dims)}


def gradation_to_json(grad: Gradation) -> Dict:
    """{"pi1": ["a2"], "levels": {"1": ["a2", ...], ...}}"""
    return {
        'pi1': [f"a{i}" for i in sorted(grad.pi1)],
        'depth': grad.depth,
        'levels': {str(i): [r.name() for r in roots] for i, roots in grad.level_sets.items()},
    }


# --- sl(V) flag gradations -------------------------------------------------

@dataclass(frozen=True)
class SlGradation:
    """Graded dimension table of sl(n) for a block decomposition of V."""

    dims: Tuple[int, ...]
    table: Dict[int, int] = field(hash=False, compare=False)
    checked_pairs: int = 0
    violations: int = 0

    @property
    def n(self) -> int:
        return sum(self.dims)

    def to_json(self) -> Dict:
        return {
            'flag': list(self.dims),
            'dimensions': {str(i): d for i, d in self.table.items()},
            'checked_pairs': self.checked_pairs,
            'violations': self.violations,
        }


def _bracket(x: Dict[Tuple[int, int], int], y: Dict[Tuple[int, int], int]) -> Dict[Tuple[int, int], int]:
    """Commutator of two sparse matrices given as {(row, col): entry}."""
    out: Dict[Tuple[int, int], int] = {}
    for (a, b), s in x.items():
        for (c, d), t in y.items():
            if b == c:
                out[(a, d)] = out.get((a, d), 0) + s * t
            if d == a:
                out[(c, b)] = out.get((c, b), 0) - s * t
    return {k: v for k, v in out.items() if v}


def sl_flag_gradation(dims: Sequence[int]) -> SlGradation:
    """
    Gradation of sl(V) attached to V = V_1 + ... + V_k with dim V_j = dims[j-1].

    The matrix unit E_ab has degree block(a) - block(b); the diagonal traceless
    part sits in degree 0. Every bracket of two basis elements is checked to land
    in the expected degree.

    Args:
        dims: Positive block sizes

    Returns:
        SlGradation with dim g^i for i = -(k-1)..(k-1) and the bracket check counts

    Raises:
        DomainError: if the blocks are invalid or sum to less than 2
    """
    dims = tuple(int(d) for d in dims)
    if not dims or any(d < 1 for d in dims):
        raise DomainError(f"flag dimensions must be positive integers, got {dims}")
    n = sum(dims)
    if n < 2:
        raise DomainError(f"sl(V) needs dim V >= 2, got {n}")

    k = len(dims)
    block = [j for j, d in enumerate(dims) for _ in range(d)]

    basis: List[Tuple[int, Dict[Tuple[int, int], int]]] = []
    for a, b in itertools.product(range(n), repeat=2):
        if a != b:
            basis.append((block[a] - block[b], {(a, b): 1}))
    for a in range(n - 1):
        basis.append((0, {(a, a): 1, (a + 1, a + 1): -1}))

    table = {i: 0 for i in range(-(k - 1), k)}
    for degree, _ in basis:
        table[degree] += 1

    violations = 0
    checked = 0
    for (i, x), (j, y) in itertools.product(basis, repeat=2):
        checked += 1
        bracket = _bracket(x, y)
        if abs(i + j) >= k:
            if bracket:
                violations += 1
            continue
        if any(block[a] - block[b] != i + j for (a, b) in bracket):
            violations += 1

    if violations:
        logger.error(f"sl flag {dims}: {violations} bracket violations")
    logger.debug(f"sl flag {dims}: table {table}, {checked} pairs checked")
    return SlGradation(dims=dims, table=table, checked_pairs=checked, violations=violations)


def compositions(n: int) -> List[Tuple[int, ...]]:
    """All ordered compositions of n into positive parts."""
    out = []
    for cuts in itertools.product([False, True], repeat=n - 1):
        parts, size = [], 1
        for cut in cuts:
            if cut:
                parts.append(size)
                size = 1
            else:
                size += 1
        parts.append(size)
        out.append(tuple(parts))
    return out
