'''Graded pieces of stable toric algebras glued along a subdivision.'''
import logging
from fractions import Fraction
from typing import Dict, List, NamedTuple, Tuple

from arrangement_moduli.exactcore import ArrangementModuliError, rank
from arrangement_moduli.matroid import polytope_of

LOGGER = logging.getLogger(__name__)


class BadGluing(ArrangementModuliError):
    def __init__(self, larger, middle, smaller, weight):
        self.larger = larger
        self.middle = middle
        self.smaller = smaller
        self.weight = weight
        super().__init__(larger, middle, smaller, weight)

    def __str__(self):
        chain = ' > '.join(str(sorted(i + 1 for i in face)) for face in (self.larger, self.middle, self.smaller))
        return f'gluing data fails the cocycle condition on {chain} at weight {list(self.weight)}'


class NotIdentityGluing(BadGluing):
    def __init__(self, t):
        self.t = t
        ArrangementModuliError.__init__(self, t)

    def __str__(self):
        return 'the Stanley product rule only holds for identity gluing data'


def character(a, t):
    """a(t) = prod t_i ** a_i."""
    value = Fraction(1)
    for exponent, x in zip(a, t):
        if exponent:
            value *= Fraction(x) ** exponent
    return value


class GluingData:
    """
    Torus elements t_{sigma tau} in (Q*)^n for pairs of faces tau within sigma, keyed by vertex sets.

    Pairs not listed explicitly come from the face potentials as s_tau / s_sigma when potentials
    are given, and are the identity otherwise.
    """

    def __init__(self, n, pairs=None, potentials=None):
        self.n = n
        self.pairs = {key: tuple(Fraction(x) for x in value) for key, value in (pairs or {}).items()}
        self.potentials = {key: tuple(Fraction(x) for x in value) for key, value in (potentials or {}).items()}
        for value in list(self.pairs.values()) + list(self.potentials.values()):
            if len(value) != n or any(x == 0 for x in value):
                raise ValueError(f'gluing element {value} is not in (Q*)^{n}')

    @classmethod
    def identity(cls, n):
        return cls(n)

    @property
    def is_identity(self):
        ones = (Fraction(1),) * self.n
        return all(v == ones for v in self.pairs.values()) and len(set(self.potentials.values())) <= 1

    def element(self, larger, smaller):
        larger = frozenset(getattr(larger, 'vertices', larger))
        smaller = frozenset(getattr(smaller, 'vertices', smaller))
        if larger == smaller:
            return (Fraction(1),) * self.n
        value = self.pairs.get((larger, smaller))
        if value is not None:
            return value
        if larger in self.potentials and smaller in self.potentials:
            return tuple(b / a for a, b in zip(self.potentials[larger], self.potentials[smaller]))
        return (Fraction(1),) * self.n


def random_gluing(s, rng):
    """Coboundary gluing data from random potentials on every face; satisfies the cocycle condition."""
    potentials = {}
    for face in s.glued.faces:
        potentials[face.vertices] = tuple(
            Fraction(rng.choice((-1, 1)) * rng.randint(1, 9), rng.randint(1, 9)) for _ in range(s.n))
    return GluingData(s.n, potentials=potentials)


def weight_level(a, r):
    total = sum(a)
    if total % r:
        return None
    return total // r


def in_cone(s, face, a):
    d = weight_level(a, s.r)
    if d is None or any(x < 0 for x in a):
        return False
    if d == 0:
        return not any(a)
    return s.face_hull(face).contains(tuple(Fraction(x, d) for x in a))


def _compositions(total, bounds):
    if not bounds:
        if total == 0:
            yield ()
        return
    low, high = bounds[0]
    rest_low = sum(b[0] for b in bounds[1:])
    rest_high = sum(b[1] for b in bounds[1:])
    for x in range(max(low, total - rest_high), min(high, total - rest_low) + 1):
        for tail in _compositions(total - x, bounds[1:]):
            yield (x,) + tail


def cone_lattice_points(p, d):
    """Lattice points a with a/d in p, by bounding box and exact membership."""
    if d == 0:
        return [(0,) * p.ambient]
    bounds = [(min(v[i] for v in p.vertices) * d, max(v[i] for v in p.vertices) * d) for i in range(p.ambient)]
    sums = {sum(v) for v in p.vertices}
    if len(sums) == 1:
        candidates = _compositions(sums.pop() * d, bounds)
    else:
        candidates = _compositions_any(bounds)
    return [a for a in candidates if p.contains(tuple(Fraction(x, d) for x in a))]


def _compositions_any(bounds):
    if not bounds:
        yield ()
        return
    low, high = bounds[0]
    for x in range(low, high + 1):
        for tail in _compositions_any(bounds[1:]):
            yield (x,) + tail


def outside_points(s, dmax, count, rng):
    """Nonnegative weights with coordinate sum r*d, d in 1..dmax, lying outside the cone over the base."""
    points = []
    for _ in range(100 * count):
        if len(points) == count:
            break
        d = rng.randint(1, dmax)
        total = s.r * d
        cuts = sorted(rng.randint(0, total) for _ in range(s.n - 1))
        a = tuple(b - c for b, c in zip(cuts + [total], [0] + cuts))
        if not s.base.contains(tuple(Fraction(x, d) for x in a)):
            points.append(a)
    if len(points) < count:
        LOGGER.warning(f'Only found {len(points)} of {count} requested points outside the cone')
    return points


def faces_containing(s, a):
    faces = [face for face in s.glued.faces if in_cone(s, face, a)]
    return faces, min(faces, key=lambda face: face.dim) if faces else None


def check_cocycle_at(s, t, a, faces, carrier):
    for larger in faces:
        for middle in faces:
            if not (carrier.vertices <= middle.vertices <= larger.vertices):
                continue
            lhs = character(a, t.element(middle, carrier)) * character(a, t.element(larger, middle))
            if lhs != character(a, t.element(larger, carrier)):
                raise BadGluing(larger.vertices, middle.vertices, carrier.vertices, a)


def graded_dim(s, t, a):
    """Dimension of the weight-a piece: the kernel of the signed, character-scaled difference map."""
    a = tuple(a)
    faces, carrier = faces_containing(s, a)
    if carrier is None:
        return 0
    check_cocycle_at(s, t, a, faces, carrier)
    poset = s.glued
    cells = [face for face in faces if face.dim == s.dim]
    walls = [face for face in faces if face.dim == s.dim - 1 and not s.on_boundary(face)]
    matrix = []
    for wall in walls:
        row = []
        for cell in cells:
            if wall in poset.covers[cell]:
                row.append(poset.incidence(cell, wall) * character(a, t.element(cell, wall)))
            else:
                row.append(0)
        matrix.append(row)
    kernel = len(cells) - (rank(matrix) if matrix else 0)
    if LOGGER.isEnabledFor(logging.DEBUG):
        LOGGER.debug(f'weight {a}: {len(cells)} cells, {len(walls)} walls, kernel {kernel}')
    return kernel


def check_cocycle(s, t, level=1):
    """Cocycle condition for every chain of faces, on the lattice points of the smallest face up to level."""
    poset = s.glued
    below = {face: [g for g in poset.faces if g.vertices <= face.vertices] for face in poset.faces}
    for smaller in poset.faces:
        # level-1 lattice points of a 0/1 face are its vertices
        points = [s.base.vertices[i] for i in sorted(smaller.vertices)]
        if level > 1:
            polytope = s.base.subpolytope(smaller.vertices)
            points += [a for d in range(2, level + 1) for a in cone_lattice_points(polytope, d)]
        for larger in poset.faces:
            if not smaller.vertices <= larger.vertices:
                continue
            for middle in below[larger]:
                if not smaller.vertices <= middle.vertices:
                    continue
                for a in points:
                    lhs = character(a, t.element(middle, smaller)) * character(a, t.element(larger, middle))
                    if lhs != character(a, t.element(larger, smaller)):
                        raise BadGluing(larger.vertices, middle.vertices, smaller.vertices, a)
    return True


class HilbertReport(NamedTuple):
    counts: Dict[int, int]
    outside: int
    failures: List[Tuple[Tuple[int, ...], int, int]]

    @property
    def passed(self):
        return not self.failures

    def __bool__(self):
        return self.passed


def hilbert_check(s, t, dmax, outside=50, rng=None):
    """graded_dim is 1 on every cone point of level <= dmax and 0 on sampled points outside the cone."""
    check_cocycle(s, t)
    counts = {}
    failures = []
    for d in range(dmax + 1):
        points = cone_lattice_points(s.base, d)
        counts[d] = len(points)
        for a in points:
            k = graded_dim(s, t, a)
            if k != 1:
                failures.append((a, k, 1))
    sampled = outside_points(s, dmax, outside, rng) if rng is not None and outside else []
    for a in sampled:
        k = graded_dim(s, t, a)
        if k != 0:
            failures.append((a, k, 0))
    LOGGER.info(f'Hilbert check over levels 0..{dmax}: {counts}, {len(sampled)} outside, {len(failures)} failures')
    return HilbertReport(counts, len(sampled), failures)


def stanley_product(a, b, s, t=None):
    """a + b when some maximal cell's cone holds both, None (zero) otherwise. t defaults to the identity."""
    if t is not None and not t.is_identity:
        raise NotIdentityGluing(t)
    for cell in s.glued.of_dim(s.dim):
        if in_cone(s, cell, a) and in_cone(s, cell, b):
            return tuple(x + y for x, y in zip(a, b))
    return None


def saturation_failures(p, d):
    """Level-d lattice points of the cone over p that are not sums of d vertices of p."""
    vertices = sorted(p.vertices)
    memo = {}

    def decomposable(a, k):
        if k == 0:
            return not any(a)
        key = (a, k)
        if key not in memo:
            memo[key] = False
            for v in vertices:
                if all(x >= y for x, y in zip(a, v)):
                    rest = tuple(x - y for x, y in zip(a, v))
                    if (k == 1 or p.contains(tuple(Fraction(x, k - 1) for x in rest))) and decomposable(rest, k - 1):
                        memo[key] = True
                        break
        return memo[key]

    return [a for a in cone_lattice_points(p, d) if not decomposable(a, d)]


def white_check(m, d):
    failures = saturation_failures(polytope_of(m), d)
    if failures:
        LOGGER.info(f'{len(failures)} level-{d} points are not sums of bases, e.g. {failures[0]}')
    return not failures
