"""
Monge-Ampere equations from invariant 5-forms.

A 5-form on the contact plane (covectors dx0..dx4, du0..du4) restricts to the
Lagrangian plane spanned by l_i = e_i + sum_j u_ij f_j; the value is a
polynomial F(u) in the Hessian entries, and {F = 0} is the equation. The
restriction of a decomposable term is a 5x5 determinant of pairings, expanded
by cofactors.
"""

import itertools
import logging
from dataclasses import dataclass
from functools import lru_cache
from typing import Dict, List, Optional, Sequence, Tuple

from sympy.polys.domains import QQ
from sympy.polys.matrices import DomainMatrix

from errors import DomainError
from exterior import (
    U_NAMES, U_RING, ExteriorForm, PolyU, basis_indices, dm_rows,
    poly_ratio, poly_terms, poly_to_json, poly_to_str, u,
)
from invariants import NamedForm, twelve_five_forms
from utils import format_rational, to_qq

logger = logging.getLogger(__name__)

N = 5
COVECTOR_DIM = 2 * N
COVECTOR_LABELS: Tuple[str, ...] = tuple(f"dx{i}" for i in range(N)) + tuple(f"du{i}" for i in range(N))
COVECTOR_LABELS_UNICODE: Tuple[str, ...] = (
    tuple(f"dx{'⁰¹²³⁴'[i]}" for i in range(N)) + tuple(f"du{'₀₁₂₃₄'[i]}" for i in range(N))
)


@dataclass(frozen=True)
class DarbouxDictionary:
    """
    Identification of the module basis with covectors: E_{g_i} -> dx^i,
    E_d -> dx^4, E_{-g_i} -> s_i du_i, E_{-d} -> s_4 du_4.

    The signs are the only freedom; "alternating" (+, -, +, -, +) on the
    du-side reproduces the published equation table, "literal" uses all +.
    """

    name: str
    signs: Tuple[int, ...]

    def __post_init__(self):
        if len(self.signs) != COVECTOR_DIM or any(s not in (1, -1) for s in self.signs):
            raise DomainError("a dictionary needs 10 signs in {+1, -1}")

    def to_covectors(self, form: ExteriorForm) -> ExteriorForm:
        terms = {}
        for idx, c in form.items():
            sign = 1
            for i in idx:
                sign *= self.signs[i]
            terms[idx] = c * sign
        return ExteriorForm(COVECTOR_DIM, form.degree, terms)


ALTERNATING = DarbouxDictionary('alternating', (1, 1, 1, 1, 1, 1, -1, 1, -1, 1))
LITERAL = DarbouxDictionary('literal', (1,) * COVECTOR_DIM)
DICTIONARIES: Dict[str, DarbouxDictionary] = {d.name: d for d in (ALTERNATING, LITERAL)}


def get_dictionary(name: str) -> DarbouxDictionary:
    if name not in DICTIONARIES:
        raise DomainError(f"unknown dictionary {name!r}; expected one of {', '.join(DICTIONARIES)}")
    return DICTIONARIES[name]


# --- determinants ------------------------------------------------------------

def cofactor_det(rows: Sequence[Sequence]):
    """Determinant by Laplace expansion along the first row, skipping zero entries."""
    n = len(rows)
    if n == 0:
        return U_RING.one
    if n == 1:
        return rows[0][0]
    if n == 2:
        return rows[0][0] * rows[1][1] - rows[0][1] * rows[1][0]
    total = U_RING.zero
    for j in range(n):
        entry = rows[0][j]
        if not entry:
            continue
        sub = [row[:j] + row[j + 1:] for row in rows[1:]]
        term = entry * cofactor_det(sub)
        total = total + term if j % 2 == 0 else total - term
    return total


def symbolic_hessian() -> List[List[PolyU]]:
    return [[u(i, j) for j in range(N)] for i in range(N)]


def _check_removed(indices: Sequence[int]) -> Tuple[int, ...]:
    indices = tuple(sorted(set(int(i) for i in indices)))
    if any(i < 0 or i >= N for i in indices):
        raise DomainError(f"minor indices must lie in 0..{N - 1}, got {indices}")
    return indices


def minor(rows_removed: Sequence[int], cols_removed: Sequence[int]) -> PolyU:
    """
    Determinant of the symmetric matrix (u_ij) with the given rows and columns
    deleted. With nothing removed this is det(u).

    In the M^{sup}_{sub} notation, sub lists removed rows and sup removed columns.

    Raises:
        DomainError: on unequal deletion counts or more than four deletions
    """
    rows_removed = _check_removed(rows_removed)
    cols_removed = _check_removed(cols_removed)
    if len(rows_removed) != len(cols_removed):
        raise DomainError("a minor needs as many removed rows as removed columns")
    if len(rows_removed) > N - 1:
        raise DomainError("at most four rows and columns can be removed")
    hessian = symbolic_hessian()
    keep_rows = [i for i in range(N) if i not in rows_removed]
    keep_cols = [j for j in range(N) if j not in cols_removed]
    return cofactor_det([[hessian[i][j] for j in keep_cols] for i in keep_rows])


def minor_symbol(sup: str, sub: str) -> PolyU:
    """M^{sup}_{sub} with index strings such as "034" and "124"."""
    return minor(rows_removed=[int(c) for c in sub], cols_removed=[int(c) for c in sup])


def minor_label(rows_removed: Sequence[int], cols_removed: Sequence[int]) -> str:
    if not rows_removed:
        return "det(u)"
    sup = ''.join(str(i) for i in cols_removed)
    sub = ''.join(str(i) for i in rows_removed)
    return f"M^{{{sup}}}_{{{sub}}}"


# --- restriction ---------------------------------------------------------------

def pairing_rows(idx: Sequence[int]) -> List[List[PolyU]]:
    """Rows c_k(l_0), ..., c_k(l_4) for each covector c_k in idx."""
    rows = []
    for c in idx:
        if c < N:
            rows.append([U_RING.one if i == c else U_RING.zero for i in range(N)])
        else:
            rows.append([u(i, c - N) for i in range(N)])
    return rows


def restrict_to_lagrangian(omega: ExteriorForm) -> PolyU:
    """
    F(u) = omega(l_0, ..., l_4) for l_i = e_i + sum_j u_ij f_j.

    Raises:
        DomainError: if omega is not a 5-form on the 10 covectors
    """
    if omega.dim != COVECTOR_DIM or omega.degree != N:
        raise DomainError(f"expected a {N}-form in dimension {COVECTOR_DIM}, "
                          f"got degree {omega.degree} in dimension {omega.dim}")
    total = U_RING.zero
    for idx, c in omega.items():
        total += cofactor_det(pairing_rows(idx)) * c
    return total


def example_form(c=1) -> ExteriorForm:
    """c * du0^du1^du2^du3^du4, which restricts to c*det(u)."""
    return ExteriorForm.basis(COVECTOR_DIM, range(N, 2 * N), c)


def _point_matrix(point: Sequence) -> List[List[object]]:
    values = [to_qq(x) for x in point]
    if len(values) != len(U_NAMES):
        raise DomainError(f"a point needs {len(U_NAMES)} coordinates, got {len(values)}")
    flat = dict(zip(U_NAMES, values))
    return [[flat[f"u{min(i, j)}{max(i, j)}"] for j in range(N)] for i in range(N)]


def plucker_coordinates(point: Sequence) -> Dict[Tuple[int, ...], object]:
    """
    Plucker vector of the Lagrangian plane at a rational symmetric u.

    The plane is the row space of the 5x10 matrix [I | u]; coordinate I is the
    5x5 minor on columns I.
    """
    hessian = _point_matrix(point)
    frame = [[QQ.one if i == j else QQ.zero for j in range(N)] + hessian[i] for i in range(N)]
    coords = {}
    for idx in basis_indices(COVECTOR_DIM, N):
        block = [[frame[i][c] for c in idx] for i in range(N)]
        value = DomainMatrix(block, (N, N), QQ).det()
        if value:
            coords[idx] = value
    return coords


def plucker_evaluate(omega: ExteriorForm, point: Sequence):
    """<omega, Plucker(L)>: the linear functional whose zero set is the hyperplane section."""
    if omega.dim != COVECTOR_DIM or omega.degree != N:
        raise DomainError("plucker_evaluate expects a 5-form on the contact plane")
    coords = plucker_coordinates(point)
    return sum((c * coords.get(idx, QQ.zero) for idx, c in omega.items()), QQ.zero)


# --- minor notation ---------------------------------------------------------------

def _minor_candidates(size: int) -> List[Tuple[Tuple[int, ...], Tuple[int, ...]]]:
    """(rows_removed, cols_removed) pairs of the given removal size, one per transpose pair."""
    subsets = list(itertools.combinations(range(N), size))
    out = []
    for a, rows_removed in enumerate(subsets):
        for cols_removed in subsets[a:]:
            out.append((rows_removed, cols_removed))
    # diagonal (principal) minors last so off-diagonal ones are preferred as pivots
    out.sort(key=lambda rc: rc[0] == rc[1])
    return out


def minor_decomposition(poly: PolyU) -> Optional[List[Tuple[object, Tuple[int, ...], Tuple[int, ...]]]]:
    """
    Express a homogeneous polynomial as a rational combination of minors of
    matching size, or return None.
    """
    degrees = {sum(m) for m, _ in poly_terms(poly)}
    if len(degrees) != 1:
        return None
    degree = degrees.pop()
    if degree == 0:
        return None
    removed = N - degree
    if removed == 0:
        c = poly_ratio(poly, minor((), ()))
        return [(c, (), ())] if c is not None else None

    candidates = _minor_candidates(removed)
    columns = [minor(r, c) for r, c in candidates]
    monomials = sorted({m for p in columns + [poly] for m, _ in poly_terms(p)})
    row_of = {m: i for i, m in enumerate(monomials)}
    ncols = len(columns) + 1
    rows: Dict[int, Dict[int, object]] = {}
    for col, p in enumerate(columns + [poly]):
        for m, c in poly_terms(p):
            rows.setdefault(row_of[m], {})[col] = c
    reduced, pivots = DomainMatrix(rows, (len(monomials), ncols), QQ).rref()
    if ncols - 1 in pivots:
        return None
    reduced = dm_rows(reduced)
    solution = []
    for r, pc in enumerate(pivots):
        value = reduced[r][ncols - 1]
        if value:
            solution.append((value, candidates[pc][0], candidates[pc][1]))
    return solution


def render_minors(poly: PolyU) -> Optional[str]:
    """Best-effort M-notation; None when no decomposition is found."""
    if not poly:
        return None
    degrees = {sum(m) for m, _ in poly_terms(poly)}
    if degrees == {0}:
        return format_rational(poly_terms(poly)[0][1])
    if degrees == {1}:
        return poly_to_str(poly)
    decomposition = minor_decomposition(poly)
    if not decomposition:
        return None
    pieces = []
    for value, rows_removed, cols_removed in decomposition:
        label = minor_label(rows_removed, cols_removed)
        negative = value < 0
        magnitude = format_rational(-value if negative else value)
        text = label if magnitude == '1' else f"{magnitude}*{label}"
        pieces.append(('- ' if negative else '+ ') + text)
    out = ' '.join(pieces)
    return out[2:] if out.startswith('+ ') else out


# --- the catalogue -----------------------------------------------------------------

SHORT_NAMES: Dict[str, str] = {
    'w+2^w-2^E_d': 'Q1',
    'w+2^w2^E_d': 'L1',
    'w+2^w2^E_-d': 'Q2',
    'w-4^E_-d': 'D',
    'w+4^E_-d': 'L2',
    'w4^E_d': 'Q3',
}

# rows whose directly computed value differs from the published table
TABLE_NOTES: Dict[str, str] = {
    'w+4^E_d': 'published table lists det(u_ij) for this row; the all-dx form restricts to a constant',
    'w-4^E_-d': 'published table lists the empty equation for this row; the all-du form restricts to det(u_ij)',
}


@dataclass(frozen=True)
class MAEEntry:
    """A Monge-Ampere equation: its 5-form on the contact plane and the polynomial F."""

    name: str
    label: str
    form: ExteriorForm
    poly: PolyU
    short_name: Optional[str] = None
    minor_expr: Optional[str] = None
    note: Optional[str] = None

    @property
    def display_name(self) -> str:
        return self.short_name or self.name

    def is_trivial(self) -> bool:
        """Constant polynomials define no equation."""
        return all(sum(m) == 0 for m, _ in poly_terms(self.poly))

    def degree(self) -> Optional[int]:
        degrees = {sum(m) for m, _ in poly_terms(self.poly)}
        return degrees.pop() if len(degrees) == 1 else None

    def to_json(self, fmt: str = 'json') -> Dict:
        doc = {
            'name': self.name,
            'short_name': self.short_name,
            'degree': self.degree(),
            'form': self.form.to_json(),
            'poly': poly_to_json(self.poly),
        }
        if fmt in ('expanded', 'json'):
            doc['expanded'] = poly_to_str(self.poly)
        if fmt in ('minors', 'json'):
            doc['minors'] = self.minor_expr
        if self.note:
            doc['note'] = self.note
        return doc


def make_entry(nf: NamedForm, dictionary: DarbouxDictionary = ALTERNATING, with_minors: bool = True) -> MAEEntry:
    form = dictionary.to_covectors(nf.form)
    poly = restrict_to_lagrangian(form)
    entry = MAEEntry(
        name=nf.name,
        label=nf.label,
        form=form,
        poly=poly,
        short_name=SHORT_NAMES.get(nf.name),
        minor_expr=render_minors(poly) if with_minors else None,
        note=TABLE_NOTES.get(nf.name),
    )
    if entry.note:
        logger.warning(f"{entry.name}: {entry.note}")
    logger.debug(f"{entry.name}: F = {poly_to_str(poly)}")
    return entry


@lru_cache(maxsize=None)
def catalogue(dictionary: str = 'alternating') -> Tuple[MAEEntry, ...]:
    """The twelve equations in the order of the invariant 5-forms."""
    d = get_dictionary(dictionary)
    entries = tuple(make_entry(nf, d) for nf in twelve_five_forms())
    logger.info(f"catalogue ({d.name} dictionary): {len(entries)} equations")
    return entries


def find_entry(name: str, entries: Sequence[MAEEntry] = None) -> MAEEntry:
    """Look up an entry by short name (Q1, L1, ...) or form name (w+2^w-2^E_d, ...)."""
    entries = catalogue() if entries is None else entries
    for entry in entries:
        if name in (entry.name, entry.short_name):
            return entry
    raise DomainError(f"unknown equation {name!r}; valid names: {', '.join(entry_names(entries))}")


def entry_names(entries: Sequence[MAEEntry] = None) -> List[str]:
    entries = catalogue() if entries is None else entries
    names = [e.short_name for e in entries if e.short_name]
    return names + [e.name for e in entries]


# published polynomials, exact

def q1_poly() -> PolyU:
    return (3 * u(0, 3) ** 2 + 3 * u(1, 2) ** 2 - 10 * u(0, 2) * u(1, 3) - 3 * u(1, 1) * u(2, 2)
            + 10 * u(0, 1) * u(2, 3) - 3 * u(0, 0) * u(3, 3))


def q3_poly() -> PolyU:
    return (2 * u(0, 2) * u(1, 3) + u(1, 1) * u(2, 2) + 2 * u(0, 1) * u(2, 3) + u(0, 0) * u(3, 3)
            - u(0, 3) ** 2 - 4 * u(1, 2) * u(0, 3) - u(1, 2) ** 2)


def q1_from_minors() -> PolyU:
    return 10 * minor_symbol('034', '124') - 3 * (minor_symbol('034', '034') + minor_symbol('124', '124'))


def q3_from_minors() -> PolyU:
    return (2 * minor_symbol('234', '014') + 2 * minor_symbol('134', '024')
            + minor_symbol('034', '034') + minor_symbol('124', '124'))


def q2_from_minors() -> PolyU:
    return minor_symbol('123', '012') + minor_symbol('023', '013')


def l1_poly() -> PolyU:
    return u(0, 3) + u(1, 2)


def l2_poly() -> PolyU:
    return u(4, 4)


def published_polynomials() -> Dict[str, PolyU]:
    """The published left-hand sides, keyed by short name (up to a scalar each)."""
    return {
        'Q1': q1_poly(),
        'L1': l1_poly(),
        'Q2': q2_from_minors(),
        'L2': l2_poly(),
        'D': minor((), ()),
        'Q3': q3_poly(),
        'M44': minor_symbol('4', '4'),
    }
