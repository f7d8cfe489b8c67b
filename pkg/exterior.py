"""
Exact exterior algebra over an ordered basis.

Forms are sparse maps from strictly increasing index tuples to coefficients,
which are either rationals (sympy QQ elements) or polynomials in the fifteen
symmetric Hessian variables u_ij (elements of U_RING). The invariant solver
builds the stacked derivation system as a sparse DomainMatrix over QQ and
reads the kernel off its reduced row echelon form.
"""

import itertools
import logging
import math
from typing import Dict, Iterable, List, Mapping, Optional, Sequence, Tuple, Union


from sympy.polys.domains import QQ
from sympy.polys.matrices import DomainMatrix
from sympy.polys.orderings import lex
from sympy.polys.rings import PolyElement, ring

from errors import DomainError
from utils import format_rational, to_qq

logger = logging.getLogger(__name__)

MultiIndex = Tuple[int, ...]

# --- the polynomial ring Q[u_ij], i <= j --------------------------------------

U_INDEX_PAIRS: Tuple[Tuple[int, int], ...] = tuple((i, j) for i in range(5) for j in range(i, 5))
U_NAMES: Tuple[str, ...] = tuple(f"u{i}{j}" for i, j in U_INDEX_PAIRS)
U_RING, *U_GENS = ring(','.join(U_NAMES), QQ, lex)

_SUBSCRIPTS = str.maketrans('0123456789', '₀₁₂₃₄₅₆₇₈₉')
_SUPERSCRIPTS = str.maketrans('0123456789', '⁰¹²³⁴⁵⁶⁷⁸⁹')

PolyU = PolyElement


def u(i: int, j: int) -> PolyU:
    """The variable u_ij, canonicalized so that u_ji = u_ij."""
    if not (0 <= i < 5 and 0 <= j < 5):
        raise DomainError(f"u index ({i}, {j}) out of range 0..4")
    a, b = min(i, j), max(i, j)
    return U_GENS[U_INDEX_PAIRS.index((a, b))]


def u_variable_index(name: str) -> int:
    """Position of a variable name such as "u03" (or "u30") in U_NAMES."""
    if len(name) != 3 or name[0] != 'u' or not name[1:].isdigit():
        raise DomainError(f"not a Hessian variable: {name!r}")
    i, j = int(name[1]), int(name[2])
    u(i, j)
    return U_INDEX_PAIRS.index((min(i, j), max(i, j)))


def poly_terms(p: PolyU) -> List[Tuple[Tuple[int, ...], object]]:
    """Terms of p in the ring's (lex) order."""
    return p.terms()


def _monomial_names(monom: Tuple[int, ...]) -> List[str]:
    names = []
    for name, exponent in zip(U_NAMES, monom):
        names.extend([name] * exponent)
    return names


def poly_to_json(p: PolyU) -> List[Dict]:
    """[{"monomial": ["u01", "u23"], "coeff": "p/q"}, ...]"""
    return [{'monomial': _monomial_names(m), 'coeff': format_rational(c)} for m, c in poly_terms(p)]


def poly_to_str(p: PolyU, unicode: bool = False) -> str:
    """Render a polynomial such as "3*u03^2 - 10*u02*u13" (or with subscripts in unicode mode)."""
    if not p:
        return "0"
    pieces = []
    for monom, coeff in poly_terms(p):
        factors = []
        for name, exponent in zip(U_NAMES, monom):
            if not exponent:
                continue
            if unicode:
                factor = 'u' + name[1:].translate(_SUBSCRIPTS)
                if exponent > 1:
                    factor += str(exponent).translate(_SUPERSCRIPTS)
            else:
                factor = name if exponent == 1 else f"{name}^{exponent}"
            factors.append(factor)
        negative = coeff < 0
        magnitude = format_rational(-coeff if negative else coeff)
        if factors:
            body = '*'.join(factors) if not unicode else ''.join(factors)
            if magnitude != '1':
                body = f"{magnitude}*{body}" if not unicode else f"{magnitude}{body}"
        else:
            body = magnitude
        pieces.append((negative, body))
    text = ('-' if pieces[0][0] else '') + pieces[0][1]
    minus = ' − ' if unicode else ' - '
    for negative, body in pieces[1:]:
        text += (minus if negative else ' + ') + body
    return text


def evaluate_poly(p: PolyU, point: Sequence) -> object:
    """Value of p at 15 rationals given in U_NAMES order."""
    values = [to_qq(x) for x in point]
    if len(values) != len(U_NAMES):
        raise DomainError(f"a point needs {len(U_NAMES)} coordinates, got {len(values)}")
    total = QQ.zero
    for monom, coeff in poly_terms(p):
        term = coeff
        for value, exponent in zip(values, monom):
            if exponent:
                term *= value ** exponent
        total += term
    return total


def poly_ratio(p: PolyU, q: PolyU):
    """The rational c with p = c*q, or None when p is not a multiple of q."""
    if not q:
        return QQ.one if not p else None
    monom, q_coeff = poly_terms(q)[0]
    c = p.get(monom, QQ.zero) / q_coeff
    if not c or p != q * c:
        return None
    return c


def poly_total_degree(p: PolyU) -> Optional[int]:
    """Common total degree of all terms, or None for the zero / inhomogeneous polynomial."""
    degrees = {sum(m) for m, _ in poly_terms(p)}
    return degrees.pop() if len(degrees) == 1 else None


# --- forms --------------------------------------------------------------------

Scalar = Union[PolyElement, object]


def _coerce(c) -> Scalar:
    if isinstance(c, PolyElement):
        return c
    return to_qq(c)


def sort_with_sign(seq: Sequence[int]) -> Tuple[int, Optional[MultiIndex]]:
    """(sign, sorted tuple) of a wedge of basis covectors; (0, None) on a repeated index."""
    if len(set(seq)) != len(seq):
        return 0, None
    inversions = sum(1 for a, b in itertools.combinations(seq, 2) if a > b)
    return (-1 if inversions % 2 else 1), tuple(sorted(seq))


class ExteriorForm:
    """
    A k-form on a dim-dimensional space with rational or polynomial coefficients.

    Forms are immutable by convention; arithmetic returns new forms. `a ^ b` is
    the wedge product.
    """

    __slots__ = ('dim', 'degree', '_terms')

    def __init__(self, dim: int, degree: int, terms: Optional[Mapping[MultiIndex, object]] = None):
        if dim < 0 or degree < 0:
            raise DomainError("dimension and degree must be nonnegative")
        self.dim = dim
        self.degree = degree
        clean: Dict[MultiIndex, Scalar] = {}
        for idx, c in (terms or {}).items():
            idx = tuple(idx)
            if len(idx) != degree or any(i < 0 or i >= dim for i in idx):
                raise DomainError(f"multi-index {idx} invalid for a {degree}-form in dimension {dim}")
            if any(a >= b for a, b in zip(idx, idx[1:])):
                raise DomainError(f"multi-index {idx} is not strictly increasing")
            c = _coerce(c)
            if c:
                clean[idx] = c
        self._terms = clean

    @classmethod
    def basis(cls, dim: int, indices: Sequence[int], coeff=1) -> 'ExteriorForm':
        """c_{i1} ^ ... ^ c_{ik} for indices in any order (sign applied)."""
        sign, idx = sort_with_sign(tuple(indices))
        if not sign:
            return cls(dim, len(indices))
        return cls(dim, len(indices), {idx: _coerce(coeff) * sign})

    @classmethod
    def zero(cls, dim: int, degree: int) -> 'ExteriorForm':
        return cls(dim, degree)

    @property
    def terms(self) -> Dict[MultiIndex, Scalar]:
        return dict(self._terms)

    def items(self) -> List[Tuple[MultiIndex, Scalar]]:
        return sorted(self._terms.items())

    def coefficient(self, idx: Sequence[int]) -> Scalar:
        return self._terms.get(tuple(idx), QQ.zero)

    def is_zero(self) -> bool:
        return not self._terms

    def __len__(self) -> int:
        return len(self._terms)

    def _check_compatible(self, other: 'ExteriorForm'):
        if not isinstance(other, ExteriorForm):
            raise DomainError(f"expected an ExteriorForm, got {type(other).__name__}")
        if other.dim != self.dim:
            raise DomainError(f"ambient dimensions differ: {self.dim} vs {other.dim}")

    def __add__(self, other: 'ExteriorForm') -> 'ExteriorForm':
        self._check_compatible(other)
        if other.is_zero():
            return self
        if self.is_zero():
            return other
        if other.degree != self.degree:
            raise DomainError("cannot add forms of different degrees")
        terms = dict(self._terms)
        for idx, c in other._terms.items():
            terms[idx] = terms.get(idx, QQ.zero) + c
        return ExteriorForm(self.dim, self.degree, terms)

    def __neg__(self) -> 'ExteriorForm':
        return ExteriorForm(self.dim, self.degree, {idx: -c for idx, c in self._terms.items()})

    def __sub__(self, other: 'ExteriorForm') -> 'ExteriorForm':
        return self + (-other)

    def scale(self, c) -> 'ExteriorForm':
        c = _coerce(c)
        return ExteriorForm(self.dim, self.degree, {idx: c * v for idx, v in self._terms.items()})

    def __mul__(self, c) -> 'ExteriorForm':
        if isinstance(c, ExteriorForm):
            return NotImplemented
        return self.scale(c)

    __rmul__ = __mul__

    def __xor__(self, other: 'ExteriorForm') -> 'ExteriorForm':
        return wedge(self, other)

    def __eq__(self, other) -> bool:
        if not isinstance(other, ExteriorForm):
            return NotImplemented
        if self.dim != other.dim:
            return False
        if self.is_zero() and other.is_zero():
            return True
        return self.degree == other.degree and self._terms == other._terms

    __hash__ = None

    def has_polynomial_coefficients(self) -> bool:
        return any(isinstance(c, PolyElement) for c in self._terms.values())

    def ratio_to(self, other: 'ExteriorForm'):
        """The rational c with self = c*other, or None."""
        self._check_compatible(other)
        if other.is_zero():
            return QQ.one if self.is_zero() else None
        idx, oc = other.items()[0]
        c = self.coefficient(idx) / oc
        if not c or self != other.scale(c):
            return None
        return c

    def weight(self, diagonal: Sequence[int]) -> Optional[int]:
        """Common total weight of all terms under a diagonal operator, None if mixed or zero."""
        weights = {sum(diagonal[i] for i in idx) for idx in self._terms}
        return weights.pop() if len(weights) == 1 else None

    def to_json(self) -> Dict:
        terms = []
        for idx, c in self.items():
            coeff = poly_to_json(c) if isinstance(c, PolyElement) else format_rational(c)
            terms.append({'idx': list(idx), 'coeff': coeff})
        return {'degree': self.degree, 'dim': self.dim, 'terms': terms}

    def render(self, labels: Sequence[str], unicode: bool = False) -> str:
        """Human-readable rendering with basis labels."""
        if self.is_zero():
            return "0"
        wedge_sign = '∧' if unicode else '^'
        pieces = []
        for idx, c in self.items():
            body = wedge_sign.join(labels[i] for i in idx) or '1'
            if isinstance(c, PolyElement):
                pieces.append(f"({poly_to_str(c, unicode)})*{body}")
                continue
            negative = c < 0
            magnitude = format_rational(-c if negative else c)
            text = body if magnitude == '1' else f"{magnitude}*{body}"
            pieces.append(('- ' if negative else '+ ') + text)
        out = ' '.join(pieces)
        return out[2:] if out.startswith('+ ') else out

    def __repr__(self) -> str:
        return f"ExteriorForm(dim={self.dim}, degree={self.degree}, terms={self.items()})"


def wedge(a: ExteriorForm, b: ExteriorForm) -> ExteriorForm:
    """
    Wedge product with shuffle signs.

    A result whose degree exceeds the ambient dimension is the zero form.
    """
    a._check_compatible(b)
    degree = a.degree + b.degree
    terms: Dict[MultiIndex, Scalar] = {}
    if degree <= a.dim:
        for i_idx, x in a._terms.items():
            i_set = set(i_idx)
            for j_idx, y in b._terms.items():
                if i_set.intersection(j_idx):
                    continue
                crossings = sum(1 for i in i_idx for j in j_idx if i > j)
                idx = tuple(sorted(i_idx + j_idx))
                value = x * y
                if crossings % 2:
                    value = -value
                terms[idx] = terms.get(idx, QQ.zero) + value
    return ExteriorForm(a.dim, degree, terms)


def wedge_all(forms: Iterable[ExteriorForm]) -> ExteriorForm:
    forms = list(forms)
    if not forms:
        raise DomainError("wedge_all needs at least one form")
    out = forms[0]
    for f in forms[1:]:
        out = wedge(out, f)
    return out


def _matrix_rows(X, n: int) -> List[List[object]]:
    """Square matrix as nested lists of QQ elements, checking its size."""
    rows = X.tolist() if hasattr(X, 'tolist') else [list(r) for r in X]
    if len(rows) != n or any(len(r) != n for r in rows):
        raise DomainError(f"operator must be {n}x{n}")
    return [[to_qq(x) for x in r] for r in rows]


def derivation_extend(X, omega: ExteriorForm) -> ExteriorForm:
    """
    Leibniz extension of a linear map to forms.

    X(v1 ^ ... ^ vk) = sum_i v1 ^ ... ^ X(vi) ^ ... ^ vk, with X acting on basis
    vectors through its columns: X e_j = sum_i X[i, j] e_i.

    Raises:
        DomainError: if X does not match the ambient dimension
    """
    rows = _matrix_rows(X, omega.dim)
    images = [[(i, rows[i][j]) for i in range(omega.dim) if rows[i][j]] for j in range(omega.dim)]

    terms: Dict[MultiIndex, Scalar] = {}
    for idx, c in omega._terms.items():
        for p, j in enumerate(idx):
            for i, x in images[j]:
                sign, new = sort_with_sign(idx[:p] + (i,) + idx[p + 1:])
                if not sign:
                    continue
                value = c * x if sign > 0 else -(c * x)
                terms[new] = terms.get(new, QQ.zero) + value
    return ExteriorForm(omega.dim, omega.degree, terms)


def pullback(S, omega: ExteriorForm) -> ExteriorForm:
    """
    Substitute every basis covector c_i by S c_i = sum_j S[j, i] c_j and re-expand.

    Columns give the images, as in derivation_extend, so
    pullback(S1*S2, w) = pullback(S1, pullback(S2, w)).

    Raises:
        DomainError: if S is singular or of the wrong size
    """
    rows = _matrix_rows(S, omega.dim)
    if DomainMatrix(rows, (omega.dim, omega.dim), QQ).det() == 0:
        raise DomainError("pullback requires an invertible matrix")

    images = [ExteriorForm(omega.dim, 1, {(j,): rows[j][i] for j in range(omega.dim) if rows[j][i]})
              for i in range(omega.dim)]

    result = ExteriorForm.zero(omega.dim, omega.degree)
    for idx, c in omega._terms.items():
        if not idx:
            result = result + ExteriorForm(omega.dim, 0, {(): c})
            continue
        product = wedge_all(images[i] for i in idx)
        result = result + product.scale(c)
    return result


# --- linear algebra over Q on coefficient vectors ------------------------------

def basis_indices(n: int, k: int) -> List[MultiIndex]:
    """Lexicographically ordered multi-indices of length k in range(n)."""
    return list(itertools.combinations(range(n), k))


def form_to_vector(form: ExteriorForm, position: Mapping[MultiIndex, int]) -> Dict[int, object]:
    if form.has_polynomial_coefficients():
        raise DomainError("only rational forms can be treated as vectors")
    return {position[idx]: c for idx, c in form._terms.items()}


def _primitive(values: Dict[int, object]) -> Dict[int, object]:
    """Scale a nonzero rational vector to integer entries with content 1 and positive leading entry."""
    lcm = 1
    for v in values.values():
        lcm = lcm * int(v.denominator) // math.gcd(lcm, int(v.denominator))
    ints = {k: int(v.numerator) * (lcm // int(v.denominator)) for k, v in values.items()}
    content = 0
    for x in ints.values():
        content = math.gcd(content, abs(x))
    lead = ints[min(ints)]
    sign = -1 if lead < 0 else 1
    return {k: QQ(sign * x // content) for k, x in ints.items()}


def dm_rows(matrix: DomainMatrix) -> List[List[object]]:
    """Entries of a DomainMatrix as nested lists of domain elements."""
    try:
        return matrix.to_list()
    except AttributeError:
        return [list(row) for row in matrix.to_ddm()]


def _rref_rows(rows: List[Dict[int, object]], ncols: int) -> Tuple[List[List[object]], Tuple[int, ...]]:
    matrix = DomainMatrix({r: dict(row) for r, row in enumerate(rows) if row}, (len(rows), ncols), QQ)
    reduced, pivots = matrix.rref()
    return dm_rows(reduced), tuple(pivots)


def echelon_basis(vectors: List[Dict[int, object]], ncols: int) -> List[Dict[int, object]]:
    """Reduced echelon basis of the span, each vector made primitive."""
    vectors = [v for v in vectors if v]
    if not vectors:
        return []
    reduced, pivots = _rref_rows(vectors, ncols)
    out = []
    for r in range(len(pivots)):
        row = {c: x for c, x in enumerate(reduced[r]) if x}
        out.append(_primitive(row))
    return out


def span_rank(forms: Sequence[ExteriorForm]) -> int:
    """Dimension of the span of rational forms of one degree."""
    forms = [f for f in forms if not f.is_zero()]
    if not forms:
        return 0
    dim, degree = forms[0].dim, forms[0].degree
    position = {idx: p for p, idx in enumerate(basis_indices(dim, degree))}
    rows = [form_to_vector(f, position) for f in forms]
    return DomainMatrix(dict(enumerate(rows)), (len(rows), len(position)), QQ).rank()


def in_span(form: ExteriorForm, basis: Sequence[ExteriorForm]) -> bool:
    """Exact membership of a rational form in the span of basis."""
    if form.is_zero():
        return True
    return span_rank(list(basis) + [form]) == span_rank(basis)


def invariance_system(ops: Sequence, degree: int, dim: int) -> Tuple[DomainMatrix, List[MultiIndex]]:
    """
    Stacked linear system whose kernel is the space of k-forms annihilated by every op.

    Column p holds the images of the p-th basis k-form; row blocks correspond to ops.
    """
    indices = basis_indices(dim, degree)
    position = {idx: p for p, idx in enumerate(indices)}
    rows: Dict[int, Dict[int, object]] = {}
    for block, X in enumerate(ops):
        _matrix_rows(X, dim)
        offset = block * len(indices)
        for col, idx in enumerate(indices):
            image = derivation_extend(X, ExteriorForm(dim, degree, {idx: 1}))
            for out_idx, c in image._terms.items():
                rows.setdefault(offset + position[out_idx], {})[col] = c
    shape = (len(ops) * len(indices), len(indices))
    return DomainMatrix(rows, shape, QQ), indices


def joint_invariants(ops: Sequence, degree: int, dim: int) -> List[ExteriorForm]:
    """
    Basis of the k-forms annihilated by the derivation extension of every op.

    The basis is the reduced row echelon basis of the kernel (multi-indices in
    lexicographic order), each vector rescaled to primitive integers with a
    positive leading coefficient.
    """
    if degree < 0 or degree > dim:
        return []
    for X in ops:
        _matrix_rows(X, dim)
    system, indices = invariance_system(ops, degree, dim)
    ncols = len(indices)

    if system.shape[0] == 0:
        kernel = [{p: QQ.one} for p in range(ncols)]
        rank = 0
    else:
        reduced, pivots = system.rref()
        rank = len(pivots)
        rows = dm_rows(reduced)
        pivot_set = set(pivots)
        kernel = []
        for free in range(ncols):
            if free in pivot_set:
                continue
            vector = {free: QQ.one}
            for r, pc in enumerate(pivots):
                if rows[r][free]:
                    vector[pc] = -rows[r][free]
            kernel.append(vector)

    basis = echelon_basis(kernel, ncols)
    logger.info(f"invariants: {len(ops)} operators, degree {degree}, dim {dim}: "
                f"rank {rank}, kernel {len(basis)} of {ncols}")
    return [ExteriorForm(dim, degree, {indices[p]: c for p, c in v.items()}) for v in basis]


def check_kernel_certificate(ops: Sequence, basis: Sequence[ExteriorForm]) -> bool:
    """Every basis form is annihilated by every op."""
    return all(derivation_extend(X, f).is_zero() for X in ops for f in basis)


def check_completeness_certificate(ops: Sequence, degree: int, dim: int, basis: Sequence[ExteriorForm]) -> bool:
    """dim(kernel) + rank(system) = binom(dim, degree), with rank computed independently."""
    system, indices = invariance_system(ops, degree, dim)
    rank = system.rank() if system.shape[0] else 0
    return len(basis) + rank == math.comb(dim, degree) and span_rank(basis) == len(basis)


def _diagonal(H, n: int) -> List[int]:
    rows = _matrix_rows(H, n)
    if any(rows[i][j] for i in range(n) for j in range(n) if i != j):
        raise DomainError("eigen_filter requires a diagonal operator")
    return [rows[i][i] for i in range(n)]


def eigen_filter(H, weight, forms: Sequence[ExteriorForm]) -> List[ExteriorForm]:
    """
    Basis of the span of the weight-`weight` components of the given forms.

    The weight of a term is the sum of the diagonal entries of H over its
    multi-index.

    Raises:
        DomainError: if H is not diagonal
    """
    forms = [f for f in forms]
    if not forms:
        return []
    dim, degree = forms[0].dim, forms[0].degree
    diagonal = _diagonal(H, dim)
    weight = to_qq(weight)

    indices = basis_indices(dim, degree)
    position = {idx: p for p, idx in enumerate(indices)}
    components = []
    for f in forms:
        part = {idx: c for idx, c in f._terms.items() if sum(diagonal[i] for i in idx) == weight}
        components.append(form_to_vector(ExteriorForm(dim, degree, part), position))
    basis = echelon_basis(components, len(indices))
    return [ExteriorForm(dim, degree, {indices[p]: c for p, c in v.items()}) for v in basis]
