'''Iterated residues of logarithmic forms on general arrangements, and the toric residue rule.'''
import logging
from dataclasses import dataclass
from fractions import Fraction
from typing import NamedTuple, Tuple

import sympy as sp

from arrangement_moduli.exactcore import (ArrangementModuliError, RationalMatrix, determinant, nullspace, rank,
                                          from_sympy, subsets, sympy_rational)
from arrangement_moduli.grassmann import is_general_position

LOGGER = logging.getLogger(__name__)

SYMBOLIC = 'symbolic'
DETERMINANT = 'determinant'


class OnDegenerate(ArrangementModuliError):
    def __str__(self):
        return 'residues are only defined here for arrangements in general position'


@dataclass(frozen=True)
class LogForm:
    """The wedge over m of sum_j factors[m][j] dF_j/F_j; every factor has coordinate sum zero."""
    factors: Tuple[Tuple[Fraction, ...], ...]

    def __post_init__(self):
        if not self.factors:
            raise ValueError('a log form needs at least one factor')
        lengths = {len(f) for f in self.factors}
        if len(lengths) != 1:
            raise ValueError(f'factors have different lengths {sorted(lengths)}')
        for factor in self.factors:
            if sum(factor) != 0:
                raise ValueError(f'factor {[str(x) for x in factor]} does not have coordinate sum zero')

    @classmethod
    def of(cls, factors):
        return cls(tuple(tuple(Fraction(x) for x in f) for f in factors))

    @classmethod
    def basis_wedge(cls, n, subset):
        """e_{s_1} - e_n wedge ... wedge e_{s_k} - e_n for s in subset of 0..n-2."""
        factors = []
        for s in subset:
            factor = [0] * n
            factor[s] = 1
            factor[n - 1] = -1
            factors.append(factor)
        return cls.of(factors)

    @property
    def n(self):
        return len(self.factors[0])

    @property
    def degree(self):
        return len(self.factors)

    def swapped(self, first, second):
        factors = list(self.factors)
        factors[first], factors[second] = factors[second], factors[first]
        return LogForm(tuple(factors))


@dataclass(frozen=True)
class CharacterVector:
    m: Tuple[int, ...]

    def __post_init__(self):
        if sum(self.m) != 0:
            raise ValueError(f'character {list(self.m)} does not lie in the sum-zero lattice')


def toric_residue(m, i):
    """Residue of dchi^m/chi^m along the divisor of the facet x_i = 1: the pairing <e_i, m>."""
    return m.m[i]


def _check_inputs(a, form, subset):
    if form.n != a.n:
        raise ValueError(f'log form has {form.n} coefficients for {a.n} hyperplanes')
    if form.degree != a.r - 1:
        raise ValueError(f'log form has degree {form.degree}, residues at points need degree {a.r - 1}')
    if len(subset) != a.r - 1 or len(set(subset)) != len(subset) or any(not 0 <= i < a.n for i in subset):
        raise ValueError(f'I={[i + 1 for i in subset]} is not an (r-1)-subset of 1..{a.n}')


def residue_determinant(form, subset):
    """det(lambda^(m)_{i_l}): the residue at B_I read off the leading coefficients."""
    return determinant([[factor[i] for i in subset] for factor in form.factors])


def _fraction(value):
    value = sp.sympify(value)
    if not value.is_Rational:
        raise ArithmeticError(f'residue {value} is not rational')
    return from_sympy(value)


def _chart(point):
    """A coordinate hyperplane at infinity missing the point: the last one when possible."""
    r = len(point)
    k = r - 1 if point[-1] != 0 else next(i for i in range(r) if point[i] != 0)
    if k != r - 1:
        LOGGER.debug(f'point {[str(x) for x in point]} is at infinity in the last chart; using x_{k + 1} = 1')
    return tuple(int(i == k) for i in range(r))


def _local_coefficients(a, subset):
    """
    Coefficients of every F_j in the basis (F_{i_1}, ..., F_{i_{r-1}}, l) of linear forms, where
    l is a coordinate not vanishing at B_I. In the chart l = 1 the forms F_{i_k} are local
    coordinates at B_I and F_j = sum_k c_jk u_k + c_j.
    """
    rows = [a.forms.row(i) for i in subset]
    point = nullspace(rows, a.r)[0]
    basis = sp.Matrix([[sympy_rational(x) for x in row] for row in rows + [_chart(point)]])
    transposed = basis.T
    return [list(transposed.LUsolve(sp.Matrix([sympy_rational(x) for x in a.forms.row(j)]))) for j in range(a.n)]


def _residue_line(a, form, subset):
    u = sp.Symbol('u')
    coefficients = _local_coefficients(a, subset)
    factor = form.factors[0]
    g = sum(sympy_rational(factor[j]) * c[0] / (c[0] * u + c[1]) for j, c in enumerate(coefficients) if factor[j])
    return sp.residue(sp.apart(sp.together(g), u), u, 0)


def _residue_plane(a, form, subset):
    u, v = sp.symbols('u v')
    coefficients = _local_coefficients(a, subset)
    local = [c[0] * u + c[1] * v + c[2] for c in coefficients]
    first, second = form.factors
    terms = []
    for j in range(a.n):
        if not first[j]:
            continue
        for k in range(a.n):
            if not second[k] or j == k:
                continue
            wedge = coefficients[j][0] * coefficients[k][1] - coefficients[j][1] * coefficients[k][0]
            if wedge:
                terms.append(sympy_rational(first[j]) * sympy_rational(second[k]) * wedge / (local[j] * local[k]))
    density = sp.Add(*terms)
    # residue along u = F_{i_1} first, then along v = F_{i_2}
    along_u = sp.cancel(u * density).subs(u, 0)
    return sp.residue(sp.cancel(along_u), v, 0)


def iterated_residue(a, form, subset, method=SYMBOLIC):
    subset = tuple(subset)
    _check_inputs(a, form, subset)
    if not is_general_position(a):
        raise OnDegenerate()
    if method == DETERMINANT:
        return residue_determinant(form, subset)
    if method != SYMBOLIC:
        raise ValueError(f'unknown residue method {method!r}')
    if a.r == 2:
        value = _residue_line(a, form, subset)
    elif a.r == 3:
        value = _residue_plane(a, form, subset)
    else:
        raise ValueError(f'symbolic residues are implemented for r <= 3, got r={a.r}')
    return _fraction(value)


def inclusion_matrix(r, n):
    """Coordinates of the wedges of e_i - e_n, i < n, in the basis e_I of the (r-1)th exterior power of k^n."""
    rows = []
    for wedge in subsets(n - 1, r - 1):
        form = LogForm.basis_wedge(n, wedge)
        rows.append([residue_determinant(form, subset) for subset in subsets(n, r - 1)])
    return RationalMatrix.from_rows(rows, len(subsets(n, r - 1)))


def residue_matrix(a, method=None):
    if method is None:
        method = SYMBOLIC if a.r <= 3 else DETERMINANT
    if method == DETERMINANT and a.r > 3:
        LOGGER.warning(f'r={a.r}: residues come from the determinant formula, validated symbolically only for r <= 3')
    if not is_general_position(a):
        raise OnDegenerate()
    columns = subsets(a.n, a.r - 1)
    rows = []
    for wedge in subsets(a.n - 1, a.r - 1):
        form = LogForm.basis_wedge(a.n, wedge)
        rows.append([iterated_residue(a, form, subset, method) for subset in columns])
    return RationalMatrix.from_rows(rows, len(columns))


class ResidueReport(NamedTuple):
    matrix: RationalMatrix
    method: str
    matches_inclusion: bool
    rank: int
    oracle_agrees: bool

    @property
    def passed(self):
        return self.matches_inclusion and self.rank == self.matrix.rows and self.oracle_agrees


def residue_report(a, method=None):
    matrix = residue_matrix(a, method)
    used = method or (SYMBOLIC if a.r <= 3 else DETERMINANT)
    expected = inclusion_matrix(a.r, a.n)
    oracle_agrees = True
    if used == SYMBOLIC:
        oracle_agrees = matrix == residue_matrix(a, DETERMINANT)
    report = ResidueReport(matrix, used, matrix == expected, rank(matrix), oracle_agrees)
    LOGGER.info(f'Residue matrix {matrix.rows}x{matrix.cols} for ({a.r},{a.n}): rank {report.rank}, '
                f'matches inclusion: {report.matches_inclusion}')
    return report


def verify_residue_theorem(a, method=None):
    return residue_report(a, method).passed


def residue_sum(a, form):
    """Sum over the n points of the line of the residues of a one-form; zero by the residue theorem."""
    if a.r != 2:
        raise ValueError(f'residue sums are taken on the projective line, got r={a.r}')
    _check_inputs(a, form, (0,))
    if not is_general_position(a):
        raise OnDegenerate()
    points = [nullspace([a.forms.row(j)], 2)[0] for j in range(a.n)]
    # l = c x_1 + x_2 with l nonzero at every point; c = 0 is the last coordinate chart
    c = next(c for c in range(len(points) + 1) if all(c * p[0] + p[1] != 0 for p in points))
    basis = sp.Matrix([(1, 0), (c, 1)]).T
    x = sp.Symbol('x')
    factor = form.factors[0]
    g = 0
    roots = []
    for j in range(a.n):
        coeffs = basis.LUsolve(sp.Matrix([sympy_rational(y) for y in a.forms.row(j)]))
        roots.append(-coeffs[1] / coeffs[0])
        if factor[j]:
            g += sympy_rational(factor[j]) * coeffs[0] / (coeffs[0] * x + coeffs[1])
    partial = sp.apart(sp.together(g), x)
    residues = [_fraction(sp.residue(partial, x, root)) for root in roots]
    LOGGER.debug(f'residues at the {a.n} points: {[str(v) for v in residues]}')
    return sum(residues, Fraction(0))
