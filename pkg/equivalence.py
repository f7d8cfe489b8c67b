"""
Linear contact equivalences of the Monge-Ampere catalogue.

Symplectic maps of the contact plane act on 5-forms by covector substitution
(c_i -> S c_i = sum_j S[j, i] c_j), hence on the equations. The
partition of the catalogue under the total Legendre map tau and the partial
map xi, and the symbol-rank invariant that keeps Q1 and L1 apart, live here.
"""

import logging
import random
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence, Tuple

from sympy import ImmutableMatrix, Matrix, eye, zeros
from sympy.polys.domains import QQ
from sympy.polys.matrices import DomainMatrix

from errors import DomainError
from exterior import (
    U_GENS, U_INDEX_PAIRS, U_NAMES, PolyU, evaluate_poly, poly_ratio, poly_total_degree, pullback,
)
from g2rep import DEGREES
from mae import COVECTOR_DIM, N, MAEEntry, catalogue, restrict_to_lagrangian
from utils import format_rational, matrix_to_strings, to_qq

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class SympMap:
    """A 10x10 rational matrix acting on covectors (dx0..dx4, du0..du4) by columns."""

    name: str
    matrix: ImmutableMatrix

    def __post_init__(self):
        m = ImmutableMatrix(self.matrix)
        object.__setattr__(self, 'matrix', m)
        if m.shape != (COVECTOR_DIM, COVECTOR_DIM):
            raise DomainError(f"a contact-plane map is {COVECTOR_DIM}x{COVECTOR_DIM}, got {m.shape}")

    def is_symplectic(self) -> bool:
        J = symplectic_form_matrix()
        return self.matrix.T * J * self.matrix == J

    def to_json(self) -> Dict:
        return {'name': self.name, 'matrix': matrix_to_strings(self.matrix), 'symplectic': self.is_symplectic()}


def symplectic_form_matrix() -> ImmutableMatrix:
    """J = [[0, id], [-id, 0]], pairing dx^i with du_i."""
    m = zeros(COVECTOR_DIM, COVECTOR_DIM)
    for j in range(N):
        m[j, j + N] = 1
        m[j + N, j] = -1
    return ImmutableMatrix(m)


def identity() -> SympMap:
    return SympMap('id', ImmutableMatrix(eye(COVECTOR_DIM)))


def tau() -> SympMap:
    """Total Legendre map: dx^i -> du_i, du_i -> -dx^i; the transpose of J."""
    return SympMap('tau', symplectic_form_matrix().T)


def xi() -> SympMap:
    """Partial Legendre map in the last coordinate: dx^4 -> du_4, du_4 -> -dx^4, the rest fixed."""
    m = Matrix(eye(COVECTOR_DIM))
    m[4, 4] = 0
    m[9, 9] = 0
    m[9, 4] = 1
    m[4, 9] = -1
    return SympMap('xi', ImmutableMatrix(m))


def compose(first: SympMap, second: SympMap) -> SympMap:
    """
    The map acting on equations as `first` followed by `second`.

    pullback(S1*S2, w) = pullback(S1, pullback(S2, w)), so the matrix is
    second * first.
    """
    return SympMap(f"{first.name}*{second.name}", second.matrix * first.matrix)


def block_diagonal(A) -> SympMap:
    """diag(A, (A^-1)^T): the linear change of base coordinates lifted to the contact plane."""
    A = Matrix(A)
    if A.shape != (N, N):
        raise DomainError(f"block_diagonal expects a {N}x{N} matrix")
    if A.det() == 0:
        raise DomainError("block_diagonal expects an invertible matrix")
    m = zeros(COVECTOR_DIM, COVECTOR_DIM)
    m[:N, :N] = A
    m[N:, N:] = A.inv().T
    return SympMap('diag(A,A^-T)', ImmutableMatrix(m))


def tau_conjugate(A) -> SympMap:
    """
    g_bar = diag((A^-1)^T, A), the map with diag(A, (A^-1)^T) * tau = tau * g_bar.
    """
    A = Matrix(A)
    g = block_diagonal(A)
    m = zeros(COVECTOR_DIM, COVECTOR_DIM)
    m[:N, :N] = g.matrix[N:, N:]
    m[N:, N:] = A
    return SympMap('diag(A^-T,A)', ImmutableMatrix(m))


def conformal_map(lam) -> SympMap:
    """
    diag(lam^deg) over the module degrees, carried to covectors.

    The dictionary only changes signs index by index, so the diagonal map is
    the same on both sides.
    """
    lam = to_qq(lam)
    if not lam:
        raise DomainError("conformal_map needs a nonzero scale")
    entries = [QQ.to_sympy(lam ** d) for d in DEGREES]
    return SympMap(f"conformal({format_rational(lam)})", ImmutableMatrix.diag(*entries))


def act_on_equation(S: SympMap, entry: MAEEntry) -> MAEEntry:
    """The equation of pullback(S, form)."""
    form = pullback(S.matrix, entry.form)
    poly = restrict_to_lagrangian(form)
    return MAEEntry(name=f"{S.name}({entry.name})", label=entry.label, form=form, poly=poly)


def same_equation(p: PolyU, q: PolyU) -> bool:
    """Equal zero sets: proportional by a nonzero rational."""
    return poly_ratio(p, q) is not None


# --- partition -----------------------------------------------------------------

@dataclass(frozen=True)
class EquivalenceClass:
    members: Tuple[str, ...]
    representative: str

    def to_json(self) -> Dict:
        return {'members': list(self.members), 'representative': self.representative}


@dataclass(frozen=True)
class Partition:
    generators: Tuple[str, ...]
    classes: Tuple[EquivalenceClass, ...]
    trivial: Tuple[str, ...]
    unmatched: Tuple[str, ...] = ()

    @property
    def representatives(self) -> List[str]:
        return [c.representative for c in self.classes]

    def class_of(self, name: str) -> Optional[EquivalenceClass]:
        for c in self.classes:
            if name in c.members:
                return c
        return None

    def to_json(self) -> Dict:
        return {
            'generators': list(self.generators),
            'classes': [c.to_json() for c in self.classes],
            'representatives': self.representatives,
            'trivial': list(self.trivial),
            'unmatched': list(self.unmatched),
        }


class _UnionFind:
    def __init__(self, n: int):
        self.parent = list(range(n))

    def find(self, i: int) -> int:
        while self.parent[i] != i:
            self.parent[i] = self.parent[self.parent[i]]
            i = self.parent[i]
        return i

    def union(self, i: int, j: int):
        a, b = self.find(i), self.find(j)
        if a != b:
            self.parent[max(a, b)] = min(a, b)


def _match(poly: PolyU, entries: Sequence[MAEEntry]) -> Optional[int]:
    for k, e in enumerate(entries):
        if same_equation(poly, e.poly):
            return k
    return None


def classify(entries: Sequence[MAEEntry] = None, generators: Sequence[SympMap] = None) -> Partition:
    """
    Finest partition with e ~ S(e) for every generator S.

    Constant polynomials define no equation: they get their own excluded
    class and never link two nontrivial entries. Images that match no entry
    are reported as unmatched.
    """
    entries = list(catalogue() if entries is None else entries)
    generators = list((tau(), xi()) if generators is None else generators)
    uf = _UnionFind(len(entries))
    trivial = {k for k, e in enumerate(entries) if e.is_trivial()}
    unmatched = []

    for k, e in enumerate(entries):
        for j in range(k):
            if k not in trivial and j not in trivial and same_equation(e.poly, entries[j].poly):
                uf.union(j, k)

    for S in generators:
        for k, e in enumerate(entries):
            if k in trivial:
                continue
            image = act_on_equation(S, e)
            j = _match(image.poly, entries)
            if j is None:
                logger.warning(f"{S.name} maps {e.display_name} outside the catalogue")
                unmatched.append(image.name)
            elif j not in trivial:
                uf.union(k, j)

    groups: Dict[int, List[int]] = {}
    for k in range(len(entries)):
        if k not in trivial:
            groups.setdefault(uf.find(k), []).append(k)

    classes = []
    for root in sorted(groups):
        members = groups[root]
        rep = min(members, key=lambda k: (poly_total_degree(entries[k].poly), k))
        classes.append(EquivalenceClass(
            members=tuple(entries[k].display_name for k in members),
            representative=entries[rep].display_name,
        ))

    partition = Partition(
        generators=tuple(S.name for S in generators),
        classes=tuple(classes),
        trivial=tuple(entries[k].display_name for k in sorted(trivial)),
        unmatched=tuple(unmatched),
    )
    logger.info(f"classify under {{{', '.join(partition.generators)}}}: {len(classes)} classes, "
                f"representatives {', '.join(partition.representatives)}")
    return partition


# the tau-identities stated for the catalogue, as pairs of form names
TAU_IDENTITIES: Tuple[Tuple[str, str], ...] = (
    ('w+2^w-2^E_d', 'w+2^w-2^E_-d'),
    ('w+4^E_-d', 'w-4^E_d'),
    ('w+2^w2^E_d', 'w-2^w2^E_-d'),
    ('w+2^w2^E_-d', 'w-2^w2^E_d'),
    ('w4^E_d', 'w4^E_-d'),
    ('w+4^E_d', 'w-4^E_-d'),
)


def check_tau_identities(entries: Sequence[MAEEntry] = None) -> List[Tuple[str, str]]:
    """Pairs whose forms tau does not exchange up to a scalar; each mismatch is logged."""
    entries = list(catalogue() if entries is None else entries)
    by_name = {e.name: e for e in entries}
    t = tau()
    mismatches = []
    for source, target in TAU_IDENTITIES:
        image = pullback(t.matrix, by_name[source].form)
        if image.ratio_to(by_name[target].form) is None:
            logger.warning(f"tau({source}) is not a multiple of {target}")
            mismatches.append((source, target))
    return mismatches


# --- the symbol --------------------------------------------------------------------

@dataclass(frozen=True)
class SymbolMatrix:
    matrix: ImmutableMatrix
    rank: int

    def to_json(self) -> Dict:
        return {'matrix': matrix_to_strings(self.matrix), 'rank': self.rank}


def _point(point: Sequence) -> List:
    values = [to_qq(x) for x in point]
    if len(values) != len(U_NAMES):
        raise DomainError(f"a point needs {len(U_NAMES)} coordinates, got {len(values)}")
    return values


def symbol(F: PolyU, point: Sequence) -> SymbolMatrix:
    """
    Symmetrized gradient of F at a point: s_ii = dF/du_ii, s_ij = s_ji = dF/du_ij / 2.
    """
    values = _point(point)
    rows = [[QQ.zero] * N for _ in range(N)]
    for k, (i, j) in enumerate(U_INDEX_PAIRS):
        d = evaluate_poly(F.diff(U_GENS[k]), values)
        if i == j:
            rows[i][i] = d
        else:
            rows[i][j] = rows[j][i] = d / 2
    rank = DomainMatrix(rows, (N, N), QQ).rank()
    matrix = ImmutableMatrix([[QQ.to_sympy(x) for x in r] for r in rows])
    return SymbolMatrix(matrix=matrix, rank=rank)


def euler_sum(F: PolyU, point: Sequence):
    """sum_{i<=j} u_ij dF/du_ij at the point; deg(F)*F(point) for homogeneous F."""
    values = _point(point)
    return sum((values[k] * evaluate_poly(F.diff(U_GENS[k]), values) for k in range(len(U_NAMES))), QQ.zero)


def point_from_matrix(m) -> List:
    """Upper triangle of a symmetric 5x5 matrix in U_NAMES order."""
    return [to_qq(m[i][j] if isinstance(m, list) else m[i, j]) for i, j in U_INDEX_PAIRS]


def point_to_json(point: Sequence) -> Dict[str, str]:
    return {name: format_rational(x) for name, x in zip(U_NAMES, point)}


def solve_variable(F: PolyU) -> Optional[int]:
    """First variable (in U_NAMES order) in which F has degree exactly one."""
    for k, g in enumerate(U_GENS):
        if F.degree(g) == 1:
            return k
    return None


def _seed_points() -> List[List]:
    zero = [QQ.zero] * len(U_NAMES)
    points = [zero]
    for k in range(len(U_NAMES)):
        p = list(zero)
        p[k] = QQ.one
        points.append(p)
    vectors = [[1, 0, 0, 0, 0], [1, 1, 0, 0, 0], [0, 1, 1, 0, 0], [1, 0, 0, 1, 0],
               [1, 1, 1, 1, 1], [1, -1, 1, -1, 0], [0, 0, 0, 0, 1], [2, 0, -1, 0, 1]]
    for v in vectors:
        points.append([QQ(v[i] * v[j]) for i, j in U_INDEX_PAIRS])
    return points


def _random_rational(rng: random.Random):
    return QQ(rng.randint(-6, 6), rng.randint(1, 3))


def sample_points(F: PolyU, count: int, seed: int = 0, include_seeds: bool = True) -> List[List]:
    """
    Rational points on {F = 0}.

    The deterministic seed list (origin, elementary matrices, rank-one
    matrices vv^T) is filtered to points on the hypersurface; then `count`
    random points are produced by fixing every other coordinate and solving
    F for its first degree-one variable.
    """
    points = [p for p in _seed_points() if evaluate_poly(F, p) == 0] if include_seeds else []
    k = solve_variable(F)
    if k is None:
        logger.debug("no degree-one variable to solve for; using seed points only")
        return points

    slope = F.diff(U_GENS[k])
    rng = random.Random(seed)
    produced = 0
    attempts = 0
    while produced < count and attempts < 50 * max(count, 1):
        attempts += 1
        p = [_random_rational(rng) for _ in U_NAMES]
        p[k] = QQ.zero
        a = evaluate_poly(slope, p)
        if not a:
            continue
        p[k] = -evaluate_poly(F, p) / a
        points.append(p)
        produced += 1
    return points


@dataclass
class RankProfile:
    name: str
    ranks: List[int]
    witnesses: Dict[int, List] = field(default_factory=dict)

    @property
    def attained(self) -> List[int]:
        return sorted(set(self.ranks))

    def is_constant(self) -> bool:
        return len(set(self.ranks)) == 1


def rank_profile(entry: MAEEntry, samples: int = 100, seed: int = 0) -> RankProfile:
    """Symbol ranks over the seed points and `samples` random points of the hypersurface."""
    profile = RankProfile(name=entry.display_name, ranks=[])
    for p in sample_points(entry.poly, samples, seed):
        r = symbol(entry.poly, p).rank
        profile.ranks.append(r)
        profile.witnesses.setdefault(r, p)
    logger.debug(f"{profile.name}: ranks {profile.attained} over {len(profile.ranks)} points")
    return profile


@dataclass(frozen=True)
class SeparationReport:
    pair: Tuple[str, str]
    ranks: Dict[str, List[int]]
    verdict: str
    witness: Optional[Dict[str, str]] = None

    def to_json(self) -> Dict:
        return {'pair': list(self.pair), 'ranks': self.ranks, 'verdict': self.verdict, 'witness': self.witness}


def separate(e1: MAEEntry, e2: MAEEntry, samples: int = 100, seed: int = 0,
             partition: Partition = None) -> SeparationReport:
    """
    Try to prove e1 and e2 inequivalent by symbol rank.

    Verdict "separated" when one hypersurface has constant symbol rank r on
    its samples and the other attains r and also a rank below r (rank is
    invariant under the congruence induced by the linear action). Entries in
    one class of the {tau, xi} partition are "inconclusive" by definition.
    """
    pair = (e1.display_name, e2.display_name)
    partition = classify() if partition is None else partition
    c1, c2 = partition.class_of(pair[0]), partition.class_of(pair[1])
    if same_equation(e1.poly, e2.poly) or (c1 is not None and c1 == c2):
        logger.info(f"{pair[0]} and {pair[1]} lie in one class; nothing to separate")
        return SeparationReport(pair=pair, ranks={}, verdict='inconclusive')

    p1, p2 = rank_profile(e1, samples, seed), rank_profile(e2, samples, seed)
    ranks = {pair[0]: p1.attained, pair[1]: p2.attained}
    for constant, other in ((p1, p2), (p2, p1)):
        if not constant.is_constant() or not constant.ranks:
            continue
        r = constant.ranks[0]
        drops = [x for x in other.attained if x < r]
        if r in other.attained and drops:
            witness = point_to_json(other.witnesses[drops[0]])
            logger.info(f"{constant.name} has constant symbol rank {r}; {other.name} drops to {drops[0]}")
            return SeparationReport(pair=pair, ranks=ranks, verdict='separated', witness=witness)
    return SeparationReport(pair=pair, ranks=ranks, verdict='inconclusive')


def chart_rank_count(entry: MAEEntry, rank: int, samples: int = 100, seed: int = 0) -> int:
    """How many of the random on-hypersurface samples (seed points excluded) have the given symbol rank."""
    points = sample_points(entry.poly, samples, seed, include_seeds=False)
    return sum(1 for p in points if symbol(entry.poly, p).rank == rank)