'''Exact rational matrices, fraction-free elimination and Pluecker coordinates.'''
import logging
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import combinations
from math import gcd, lcm
from typing import Sequence, Tuple

import sympy as sp

LOGGER = logging.getLogger(__name__)


class ArrangementModuliError(Exception):
    """Base class for every error raised by this package."""


class RankDeficient(ArrangementModuliError):
    def __init__(self, expected, actual, message="matrix does not have full rank"):
        self.expected = expected
        self.actual = actual
        self.message = message
        super().__init__(self.message)

    def __str__(self):
        return f'{self.message}: rank {self.actual}, expected {self.expected}'


@lru_cache(maxsize=None)
def subsets(n, r):
    """Lexicographically ordered r-subsets of range(n)."""
    return tuple(combinations(range(n), r))


@lru_cache(maxsize=None)
def subset_index(n, r):
    return {s: i for i, s in enumerate(subsets(n, r))}


@dataclass(frozen=True)
class RationalMatrix:
    rows: int
    cols: int
    entries: Tuple[Fraction, ...]

    def __post_init__(self):
        if len(self.entries) != self.rows * self.cols:
            raise ValueError(f'{self.rows}x{self.cols} matrix needs {self.rows * self.cols} entries, got {len(self.entries)}')

    @classmethod
    def from_rows(cls, rows, cols=None):
        rows = [list(row) for row in rows]
        if cols is None:
            cols = len(rows[0]) if rows else 0
        for row in rows:
            if len(row) != cols:
                raise ValueError(f'ragged row of length {len(row)}, expected {cols}')
        return cls(len(rows), cols, tuple(Fraction(x) for row in rows for x in row))

    @classmethod
    def identity(cls, size):
        return cls.from_rows([[1 if i == j else 0 for j in range(size)] for i in range(size)], size)

    def __getitem__(self, key):
        i, j = key
        if not (0 <= i < self.rows and 0 <= j < self.cols):
            raise IndexError(f'entry ({i}, {j}) outside a {self.rows}x{self.cols} matrix')
        return self.entries[i * self.cols + j]

    def row(self, i):
        return self.entries[i * self.cols:(i + 1) * self.cols]

    def column(self, j):
        return tuple(self.entries[i * self.cols + j] for i in range(self.rows))

    def to_rows(self):
        return [list(self.row(i)) for i in range(self.rows)]

    def transpose(self):
        return RationalMatrix.from_rows([self.column(j) for j in range(self.cols)], self.rows)

    def stack(self, other):
        if isinstance(other, RationalMatrix):
            extra = other.to_rows()
        else:
            extra = [list(other)]
        return RationalMatrix.from_rows(self.to_rows() + extra, self.cols)

    def submatrix(self, rows, cols):
        return RationalMatrix.from_rows([[self[i, j] for j in cols] for i in rows], len(cols))

    def scale_columns(self, factors):
        return RationalMatrix.from_rows(
            [[x * Fraction(f) for x, f in zip(self.row(i), factors)] for i in range(self.rows)], self.cols)

    def __matmul__(self, other):
        if self.cols != other.rows:
            raise ValueError(f'cannot multiply {self.rows}x{self.cols} by {other.rows}x{other.cols}')
        columns = [other.column(j) for j in range(other.cols)]
        return RationalMatrix.from_rows(
            [[sum((a * b for a, b in zip(self.row(i), col)), Fraction(0)) for col in columns]
             for i in range(self.rows)], other.cols)

    def apply(self, vector):
        return tuple(sum((a * Fraction(b) for a, b in zip(self.row(i), vector)), Fraction(0))
                     for i in range(self.rows))


def _integer_rows(rows):
    """Clear denominators row by row. Returns integer rows and the positive factor applied to each."""
    result = []
    factors = []
    for row in rows:
        scale = 1
        for x in row:
            scale = lcm(scale, Fraction(x).denominator)
        result.append([int(Fraction(x) * scale) for x in row])
        factors.append(scale)
    return result, factors


def _bareiss_echelon(m):
    """Fraction-free forward elimination in place. Returns (rank, pivot columns, sign of row swaps)."""
    nrows = len(m)
    ncols = len(m[0]) if m else 0
    prev = 1
    sign = 1
    rank = 0
    pivots = []
    for c in range(ncols):
        if rank == nrows:
            break
        pivot = next((i for i in range(rank, nrows) if m[i][c] != 0), None)
        if pivot is None:
            continue
        if pivot != rank:
            m[rank], m[pivot] = m[pivot], m[rank]
            sign = -sign
        p = m[rank][c]
        for i in range(rank + 1, nrows):
            lead = m[i][c]
            for j in range(c + 1, ncols):
                m[i][j] = (p * m[i][j] - lead * m[rank][j]) // prev
            m[i][c] = 0
        prev = p
        pivots.append(c)
        rank += 1
    return rank, pivots, sign


def _as_rows(m):
    if isinstance(m, RationalMatrix):
        return m.to_rows()
    return [list(row) for row in m]


def rank(m):
    rows = _as_rows(m)
    if not rows or not rows[0]:
        return 0
    integer, _ = _integer_rows(rows)
    result, _, _ = _bareiss_echelon(integer)
    return result


def determinant(m):
    rows = _as_rows(m)
    size = len(rows)
    if size == 0:
        return Fraction(1)
    if any(len(row) != size for row in rows):
        raise ValueError('determinant needs a square matrix')
    integer, factors = _integer_rows(rows)
    full, _, sign = _bareiss_echelon(integer)
    if full < size:
        return Fraction(0)
    scale = 1
    for f in factors:
        scale *= f
    return Fraction(sign * integer[size - 1][size - 1], scale)


def minor(m, rows, cols):
    rows = list(rows)
    cols = list(cols)
    if len(rows) != len(cols):
        raise ValueError(f'minor needs as many rows as columns, got {len(rows)} and {len(cols)}')
    if len(rows) > min(m.rows, m.cols):
        raise IndexError(f'a {len(rows)}x{len(rows)} minor does not fit in a {m.rows}x{m.cols} matrix')
    for i in rows:
        if not 0 <= i < m.rows:
            raise IndexError(f'row {i} out of range')
    for j in cols:
        if not 0 <= j < m.cols:
            raise IndexError(f'column {j} out of range')
    return determinant([[m[i, j] for j in cols] for i in rows])


def sympy_rational(x):
    x = Fraction(x)
    return sp.Rational(x.numerator, x.denominator)


def sympy_matrix(rows, cols):
    return sp.Matrix(len(rows), cols, [sympy_rational(x) for row in rows for x in row])


def from_sympy(value):
    return Fraction(int(value.p), int(value.q))


def row_reduce(m):
    """Reduced row echelon form over the rationals. Returns (nonzero rows, pivot columns)."""
    rows = _as_rows(m)
    if not rows or not rows[0]:
        return [], []
    reduced, pivots = sympy_matrix(rows, len(rows[0])).rref()
    return [[from_sympy(x) for x in reduced.row(i)] for i in range(len(pivots))], list(pivots)


def nullspace(m, cols=None):
    """Basis of {x : m x = 0}, one vector per free column."""
    rows = _as_rows(m)
    if cols is None:
        cols = len(rows[0]) if rows else 0
    if not rows:
        return [tuple(Fraction(int(i == j)) for j in range(cols)) for i in range(cols)]
    return [tuple(from_sympy(x) for x in vector) for vector in sympy_matrix(rows, cols).nullspace()]


def primitive(vector):
    """Scale a rational vector to the primitive integer vector on the same ray."""
    vector = [Fraction(x) for x in vector]
    scale = 1
    for x in vector:
        scale = lcm(scale, x.denominator)
    ints = [int(x * scale) for x in vector]
    g = 0
    for x in ints:
        g = gcd(g, x)
    if g == 0:
        return tuple(ints)
    return tuple(x // g for x in ints)


@dataclass(frozen=True)
class PlueckerVector:
    r: int
    n: int
    coords: Tuple[Fraction, ...]

    def __post_init__(self):
        if len(self.coords) != len(subsets(self.n, self.r)):
            raise ValueError(f'G({self.r},{self.n}) needs {len(subsets(self.n, self.r))} coordinates, got {len(self.coords)}')
        if all(x == 0 for x in self.coords):
            raise ValueError('a Pluecker vector cannot be identically zero')

    @property
    def subsets(self):
        return subsets(self.n, self.r)

    def __getitem__(self, subset):
        return self.coords[subset_index(self.n, self.r)[tuple(subset)]]

    def value(self, sequence):
        """Alternating extension of the coordinates to arbitrary index sequences."""
        sequence = list(sequence)
        if len(set(sequence)) < len(sequence):
            return Fraction(0)
        sign = 1
        for i in range(len(sequence)):
            for j in range(i + 1, len(sequence)):
                if sequence[i] > sequence[j]:
                    sign = -sign
        return sign * self[tuple(sorted(sequence))]

    def items(self):
        return zip(self.subsets, self.coords)

    def normalized(self):
        lead = next(x for x in self.coords if x != 0)
        return PlueckerVector(self.r, self.n, tuple(x / lead for x in self.coords))


def maximal_minors(m):
    if rank(m) < m.rows:
        raise RankDeficient(m.rows, rank(m))
    top = range(m.rows)
    return PlueckerVector(m.rows, m.cols, tuple(minor(m, top, s) for s in subsets(m.cols, m.rows)))


def _relation_holds(p, first, second):
    total = Fraction(0)
    for k, j in enumerate(second):
        rest = second[:k] + second[k + 1:]
        term = p.value(first + (j,)) * p.value(rest)
        total += term if k % 2 == 0 else -term
    return total == 0


def pluecker_relations_ok(p, full=False):
    """Check the three-term Pluecker relations, or every quadratic Grassmann-Pluecker relation when full is set."""
    r, n = p.r, p.n
    if r < 2 or n - r < 2:
        # no relations: G(r,n) is a projective space
        return True
    if full:
        for first in combinations(range(n), r - 1):
            for second in combinations(range(n), r + 1):
                if not _relation_holds(p, first, second):
                    LOGGER.debug(f'Pluecker relation fails for {first} / {second}')
                    return False
        return True
    for common in combinations(range(n), r - 2):
        rest = [i for i in range(n) if i not in common]
        for a, b, c, d in combinations(rest, 4):
            if not _relation_holds(p, common + (a,), common + (b, c, d)):
                LOGGER.debug(f'three-term relation fails for {common} with {(a, b, c, d)}')
                return False
    return True


def same_point(p, q):
    """Projective equality of two Pluecker vectors."""
    if (p.r, p.n) != (q.r, q.n):
        return False
    return p.normalized().coords == q.normalized().coords


def dot(u: Sequence, v: Sequence) -> Fraction:
    return sum((Fraction(a) * Fraction(b) for a, b in zip(u, v)), Fraction(0))
