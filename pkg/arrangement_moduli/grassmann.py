'''Hyperplane arrangements and their points on Grassmannians.'''
import logging
from dataclasses import dataclass
from fractions import Fraction

from arrangement_moduli.exactcore import (ArrangementModuliError, PlueckerVector, RankDeficient,
                                          RationalMatrix, maximal_minors, nullspace, rank, row_reduce)

LOGGER = logging.getLogger(__name__)


class OnHyperplane(ArrangementModuliError):
    def __init__(self, point, index, message="point lies on a hyperplane of the arrangement"):
        self.point = point
        self.index = index
        self.message = message
        super().__init__(self.message)

    def __str__(self):
        return f'{self.message}: F_{self.index + 1}({", ".join(str(x) for x in self.point)}) = 0'


class ZeroScale(ArrangementModuliError):
    def __str__(self):
        return f'torus element has a zero coordinate: {self.args[0] if self.args else ""}'


class SamplingFailed(ArrangementModuliError):
    pass


@dataclass(frozen=True)
class Arrangement:
    """n linear forms on k^r; row i of forms holds the coefficients of F_i."""
    r: int
    n: int
    forms: RationalMatrix

    def __post_init__(self):
        if (self.forms.rows, self.forms.cols) != (self.n, self.r):
            raise ValueError(f'forms must be {self.n}x{self.r}, got {self.forms.rows}x{self.forms.cols}')
        if self.n < self.r:
            raise ValueError(f'an arrangement needs n >= r, got n={self.n}, r={self.r}')
        actual = rank(self.forms)
        if actual < self.r:
            raise RankDeficient(self.r, actual, message="forms do not span")

    @classmethod
    def from_rows(cls, rows):
        forms = RationalMatrix.from_rows(rows)
        return cls(forms.cols, forms.rows, forms)


def is_general_position(a):
    return all(x != 0 for x in gm_point(a).coords)


def dependent_subsets(a):
    """r-subsets of hyperplanes with linearly dependent forms."""
    p = gm_point(a)
    return [s for s, x in p.items() if x == 0]


def gm_point(a):
    return maximal_minors(a.forms.transpose())


def form_values(a, u):
    if len(u) != a.r:
        raise ValueError(f'point needs {a.r} coordinates, got {len(u)}')
    return a.forms.apply(u)


def _checked_values(a, u):
    values = form_values(a, u)
    for i, value in enumerate(values):
        if value == 0:
            raise OnHyperplane(u, i)
    return values


def gm_translate(a, u):
    """r x n matrix whose row space is diag(F(u))^-1 applied to the image of the forms."""
    values = _checked_values(a, u)
    return a.forms.transpose().scale_columns([1 / v for v in values])


def contains_e(w):
    return rank(w.stack([1] * w.cols)) == w.rows


def quotient_by_e(w):
    """Image of the row space of w in h = k^n/k.e, in the basis given by the images of e_1..e_{n-1}."""
    last = w.cols - 1
    images = [[row[i] - row[last] for i in range(last)] for row in w.to_rows()]
    reduced, _ = row_reduce(images)
    return RationalMatrix.from_rows(reduced, last)


def gauss_point(a, u):
    if a.r < 2:
        raise ValueError('the Gauss map needs r >= 2')
    plane = quotient_by_e(gm_translate(a, u))
    if plane.rows != a.r - 1:
        raise RankDeficient(a.r - 1, plane.rows, message="translated plane does not contain e")
    return maximal_minors(plane)


def gauss_point_kernel(a, u):
    """Annihilator in h of the kernel of lambda -> sum lambda_i dF_i / F_i(u) on h*."""
    if a.r < 2:
        raise ValueError('the Gauss map needs r >= 2')
    values = _checked_values(a, u)
    last = a.n - 1
    base = [x / values[last] for x in a.forms.row(last)]
    columns = [[x / values[i] - y for x, y in zip(a.forms.row(i), base)] for i in range(last)]
    differential = RationalMatrix.from_rows(columns, a.r).transpose()
    kernel = nullspace(differential, last)
    plane = nullspace(kernel, last) if kernel else [
        tuple(Fraction(int(i == j)) for j in range(last)) for i in range(last)]
    if len(plane) != a.r - 1:
        raise RankDeficient(a.r - 1, len(plane), message="differential of the forms degenerates at the point")
    return maximal_minors(RationalMatrix.from_rows(plane, last))


def torus_act(t, p):
    t = tuple(Fraction(x) for x in t)
    if len(t) != p.n:
        raise ValueError(f'torus element needs {p.n} coordinates, got {len(t)}')
    if any(x == 0 for x in t):
        raise ZeroScale(t)
    coords = []
    for s, x in p.items():
        for i in s:
            x *= t[i]
        coords.append(x)
    return PlueckerVector(p.r, p.n, tuple(coords))


def torus_act_matrix(t, w):
    if any(Fraction(x) == 0 for x in t):
        raise ZeroScale(tuple(t))
    return w.scale_columns(t)


def random_general_arrangement(r, n, rng, bound=9):
    """Integer forms with every r x r minor nonzero, resampled until that holds."""
    for attempt in range(1000):
        rows = [[rng.randint(-bound, bound) for _ in range(r)] for _ in range(n)]
        forms = RationalMatrix.from_rows(rows, r)
        if rank(forms) < r:
            continue
        a = Arrangement(r, n, forms)
        if is_general_position(a):
            LOGGER.debug(f'Sampled general arrangement ({r},{n}) after {attempt + 1} attempts')
            return a
    raise SamplingFailed(f'could not sample a general position arrangement for ({r},{n})')


def random_point_off(a, rng, bound=20):
    """A point with every F_i nonzero."""
    for _ in range(1000):
        u = tuple(Fraction(rng.randint(-bound, bound), rng.randint(1, bound)) for _ in range(a.r))
        if any(x != 0 for x in u) and all(v != 0 for v in form_values(a, u)):
            return u
    raise SamplingFailed(f'could not sample a point off the arrangement with coordinates bounded by {bound}')
