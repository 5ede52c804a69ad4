'''Polyhedral subdivisions of lattice polytopes, matroid decompositions and their strata.'''
import logging
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from typing import Dict, FrozenSet, List, NamedTuple, Tuple

from arrangement_moduli.exactcore import ArrangementModuliError, determinant, primitive, rank, subset_index
from arrangement_moduli.matroid import is_matroid_subpolytope
from arrangement_moduli.polytope import (Face, LatticePolytope, affine_dim, direction_basis, extreme_rays,
                                         hull_inequalities, poset_from_vertex_sets)

LOGGER = logging.getLogger(__name__)

INTERIOR = 'interior'
POSITIVE_BOUNDARY = 'x=1 boundary'
NEGATIVE_BOUNDARY = 'x=0'


class InvalidSubdivision(ArrangementModuliError):
    def __init__(self, report, message="cells do not form a polyhedral subdivision"):
        self.report = report
        self.message = message
        super().__init__(message)

    def __str__(self):
        return f'{self.message}: {self.report.failures}'


class NotMatroidal(ArrangementModuliError):
    pass


class BadIndex(ArrangementModuliError):
    pass


class NotUnique(ArrangementModuliError):
    def __init__(self, subset, cells):
        self.subset = subset
        self.cells = cells
        super().__init__(subset, cells)

    def __str__(self):
        return f'{len(self.cells)} maximal cells contain the face for I={[i + 1 for i in self.subset]}, expected one'


class NotSimplicial(ArrangementModuliError):
    pass


class NotUnimodular(ArrangementModuliError):
    pass


def support(vertex):
    return tuple(i for i, x in enumerate(vertex) if x)


@dataclass(frozen=True)
class Subdivision:
    base: LatticePolytope
    cells: Tuple[FrozenSet[int], ...]

    def __post_init__(self):
        for cell in self.cells:
            if any(not 0 <= i < len(self.base.vertices) for i in cell):
                raise BadIndex(f'cell {sorted(cell)} refers to a vertex outside the base polytope')

    @classmethod
    def of(cls, base, cells):
        """Canonical form: cells as frozensets sorted by their sorted vertex lists; repeats are kept."""
        return cls(base, tuple(sorted((frozenset(cell) for cell in cells), key=sorted)))

    @property
    def n(self):
        return self.base.ambient

    @property
    def r(self):
        return sum(self.base.vertices[0])

    @property
    def dim(self):
        return self.base.dim

    def label(self, index):
        return support(self.base.vertices[index])

    def index_of(self, subset):
        return subset_index(self.n, self.r)[tuple(sorted(subset))]

    def cell_polytope(self, k):
        return self.base.subpolytope(self.cells[k])

    @cached_property
    def base_facets(self):
        return self.base.facets()

    @cached_property
    def glued(self):
        """Face poset of the complex: all faces of all cells, oriented as induced by the base."""
        vertex_sets = set()
        for k, cell in enumerate(self.cells):
            local = sorted(cell)
            for face in self.cell_polytope(k).face_poset.faces:
                vertex_sets.add(frozenset(local[i] for i in face.vertices))
        top = direction_basis(self.base.vertices, range(len(self.base.vertices)))
        maximal = {}
        for vertices in vertex_sets:
            if len(vertices) > self.dim and affine_dim([self.base.vertices[i] for i in vertices]) == self.dim:
                maximal[Face(self.dim, vertices)] = top
        poset = poset_from_vertex_sets(self.base.vertices, vertex_sets, maximal)
        for face in poset.of_dim(self.dim - 1):
            if not self.on_boundary(face):
                continue
            cell = next(c for c in poset.of_dim(self.dim) if face.vertices < c.vertices)
            basis = poset.orientation(face)
            if poset.induced_sign(cell, face, basis) < 0:
                flipped = (tuple(-x for x in basis[0]),) + tuple(basis[1:])
                poset.orient(face, flipped)
        return poset

    def on_boundary(self, face):
        return any(face.vertices <= facet for facet in self.base_facets)

    def in_coordinate_hyperplane(self, face, value):
        """Coordinates i with x_i = value on every vertex of the face."""
        return [i for i in range(self.n) if all(self.base.vertices[v][i] == value for v in face.vertices)]

    @cached_property
    def _hulls(self):
        return {}

    def face_hull(self, face):
        hull = self._hulls.get(face.vertices)
        if hull is None:
            hull = hull_inequalities([self.base.vertices[i] for i in sorted(face.vertices)])
            self._hulls[face.vertices] = hull
        return hull


def trivial_subdivision(p):
    return Subdivision.of(p, [range(len(p.vertices))])


def random_heights(p, rng, bound=10 ** 6):
    return tuple(Fraction(rng.randint(0, bound)) for _ in p.vertices)


def regular_subdivision(p, heights):
    """Cells are the projections of the lower facets of conv{(v, w(v))}."""
    heights = tuple(Fraction(x) for x in heights)
    if len(heights) != len(p.vertices):
        raise ValueError(f'need {len(p.vertices)} heights, got {len(heights)}')
    frame = p.frame
    lifted = [frame.project(v) + (w,) for v, w in zip(p.vertices, heights)]
    if affine_dim(lifted) == p.dim:
        LOGGER.info('Heights are affine on the polytope; the subdivision is trivial')
        return trivial_subdivision(p)
    rays = extreme_rays([(1,) + point for point in lifted])
    cells = [zeros for ray, zeros in rays if ray[-1] > 0]
    LOGGER.info(f'Regular subdivision with {len(cells)} cells from {len(rays)} lifted facets')
    return Subdivision.of(p, cells)


def pulling_triangulation(p, order=None):
    """
    Triangulation obtained by pulling vertices in the given order (default: index order).
    Returns simplices as sorted tuples of vertex indices of p.
    """
    priority = {v: k for k, v in enumerate(order if order is not None else range(len(p.vertices)))}
    poset = p.face_poset
    memo = {}

    def triangulate(face):
        if face in memo:
            return memo[face]
        if face.dim == 0:
            result = [tuple(face.vertices)]
        else:
            apex = min(face.vertices, key=lambda v: priority[v])
            result = [(apex,) + simplex for facet in poset.covers[face] if apex not in facet.vertices
                      for simplex in triangulate(facet)]
        memo[face] = result
        return result

    top = poset.of_dim(p.dim)[0]
    return [tuple(sorted(simplex)) for simplex in triangulate(top)]


def normalized_volume(p, frame):
    """Sum of |det| over a pulling triangulation, measured in the coordinates of frame."""
    total = Fraction(0)
    for simplex in pulling_triangulation(p):
        points = [frame.project(p.vertices[i]) for i in simplex]
        origin = points[0]
        total += abs(determinant([[a - b for a, b in zip(q, origin)] for q in points[1:]]))
    return total


class ValidationReport(NamedTuple):
    failures: List[Dict]
    cell_volume: Fraction
    base_volume: Fraction

    @property
    def passed(self):
        return not self.failures

    def __bool__(self):
        return self.passed


def _projected_inequalities(s, cell):
    rows = [(1,) + s.base.frame.project(s.base.vertices[i]) for i in sorted(cell)]
    return [ray for ray, _ in extreme_rays(rows)]


def _common_face_failure(s, first, second):
    frame = s.base.frame
    common = s.cells[first] & s.cells[second]
    rows = _projected_inequalities(s, s.cells[first]) + _projected_inequalities(s, s.cells[second])
    rows.append((1,) + (0,) * frame.dim)
    meet = set()
    for ray, _ in extreme_rays(rows):
        if ray[0] > 0:
            meet.add(tuple(Fraction(x, ray[0]) for x in ray[1:]))
    expected = {frame.project(s.base.vertices[i]) for i in common}
    if meet != expected:
        return 'cells overlap beyond their common vertices'
    if common:
        for k in (first, second):
            local = sorted(s.cells[k])
            faces = {frozenset(local[i] for i in face.vertices) for face in s.cell_polytope(k).face_poset.faces}
            if common not in faces:
                return f'common vertices are not a face of cell {k + 1}'
    return None


def validate(s):
    failures = []
    for k, cell in enumerate(s.cells):
        dim = affine_dim([s.base.vertices[i] for i in cell])
        if dim != s.dim:
            failures.append({'check': 'span', 'cell': k, 'dim': dim})
    frame = s.base.frame
    base_volume = normalized_volume(s.base, frame)
    cell_volume = Fraction(0)
    if not any(f['check'] == 'span' for f in failures):
        for k in range(len(s.cells)):
            cell_volume += normalized_volume(s.cell_polytope(k), frame)
        if cell_volume != base_volume:
            failures.append({'check': 'volume', 'cells': cell_volume, 'base': base_volume})
        for first in range(len(s.cells)):
            for second in range(first + 1, len(s.cells)):
                reason = _common_face_failure(s, first, second)
                if reason:
                    failures.append({'check': 'common face', 'cells': (first, second), 'reason': reason})
    for failure in failures:
        LOGGER.debug(f'Subdivision check failed: {failure}')
    return ValidationReport(failures, cell_volume, base_volume)


def is_matroid_decomposition(s):
    report = validate(s)
    if not report.passed:
        raise InvalidSubdivision(report)
    return all(is_matroid_subpolytope(s.r, s.n, [s.label(i) for i in cell]) for cell in s.cells)


def require_matroidal(s):
    if not is_matroid_decomposition(s):
        raise NotMatroidal('every cell of the subdivision must be a matroid polytope')


def classify_boundary_faces(s):
    labels = {}
    for face in s.glued.faces:
        if s.in_coordinate_hyperplane(face, 0):
            labels[face] = NEGATIVE_BOUNDARY
        elif s.in_coordinate_hyperplane(face, 1):
            labels[face] = POSITIVE_BOUNDARY
        else:
            labels[face] = INTERIOR
    return labels


class StratumElement(NamedTuple):
    face: Face
    stratum_dim: int
    # coordinates i with the face inside (x_i = 1)
    marked: Tuple[int, ...]


@dataclass(frozen=True)
class StrataPoset:
    elements: Tuple[StratumElement, ...]
    covers: Tuple[Tuple[Face, Face], ...] = field(default=())

    def of_dim(self, dim):
        return [e for e in self.elements if e.stratum_dim == dim]


def strata_poset(s):
    require_matroidal(s)
    labels = classify_boundary_faces(s)
    codim = s.n - s.r
    elements = []
    for face in s.glued.faces:
        if labels[face] == NEGATIVE_BOUNDARY:
            continue
        element = StratumElement(face, face.dim - codim, tuple(s.in_coordinate_hyperplane(face, 1)))
        if element.stratum_dim < 0:
            raise NotMatroidal(f'{face} gives a stratum of negative dimension')
        elements.append(element)
    kept = {e.face for e in elements}
    covers = tuple((face, facet) for face in sorted(kept) for facet in s.glued.covers[face] if facet in kept)
    LOGGER.info(f'Strata poset has {len(elements)} elements and {len(covers)} covers')
    return StrataPoset(tuple(elements), covers)


def strata_dot(s, poset):
    """Graphviz rendering: one node per stratum, an edge from each stratum to its boundary strata."""
    def name(face):
        return 'f' + '_'.join(str(i + 1) for i in sorted(face.vertices))

    lines = ['digraph strata {', '  rankdir=TB;']
    for element in poset.elements:
        cells = ' '.join(''.join(str(i + 1) for i in s.label(v)) for v in sorted(element.face.vertices))
        marked = ','.join(str(i + 1) for i in element.marked) or '-'
        lines.append(f'  {name(element.face)} [label="dim {element.stratum_dim}\\nI={marked}\\n{cells}"];')
    for face, facet in poset.covers:
        lines.append(f'  {name(face)} -> {name(facet)};')
    lines.append('}')
    return '\n'.join(lines) + '\n'


def gamma_face(r, n, subset):
    subset = tuple(subset)
    if len(subset) != r - 1 or len(set(subset)) != len(subset) or any(not 0 <= i < n for i in subset):
        raise BadIndex(f'I={[i + 1 for i in subset]} is not an (r-1)-subset of 1..{n} for r={r}')
    index = subset_index(n, r)
    vertices = frozenset(index[tuple(sorted(subset + (j,)))] for j in range(n) if j not in subset)
    return Face(n - r, vertices)


class CellReport(NamedTuple):
    cell: int
    vertices: FrozenSet[int]
    gamma: Face
    pivot: int
    generators: Tuple[Tuple[int, ...], ...]
    simplicial: bool
    unimodular: bool


def _cone_rays(generators, width):
    """Extreme rays of the cone spanned by generators in Z^width."""
    if width == 0:
        return []
    if rank(generators) < width:
        raise NotSimplicial(f'quotient cone spanned by {generators} is not full dimensional')
    facets = [ray for ray, _ in extreme_rays(generators)]
    return sorted(ray for ray, _ in extreme_rays(facets))


def cell_containing_gamma(s, subset):
    subset = tuple(sorted(subset))
    gamma = gamma_face(s.r, s.n, subset)
    containing = [k for k, cell in enumerate(s.cells) if gamma.vertices <= cell]
    if len(containing) != 1:
        raise NotUnique(subset, containing)
    k = containing[0]
    pivot = min(j for j in range(s.n) if j not in subset)
    generators = set()
    for v in s.cells[k]:
        label = set(s.label(v))
        missing = tuple(int(i not in label) for i in subset)
        if any(missing):
            generators.add(primitive(missing))
    rays = _cone_rays(sorted(generators), len(subset))
    simplicial = len(rays) == len(subset)
    if not simplicial:
        raise NotSimplicial(f'quotient cone of cell {k + 1} has {len(rays)} rays in dimension {len(subset)}')
    unimodular = abs(determinant(rays)) == 1
    if not unimodular:
        raise NotUnimodular(f'rays {rays} of the quotient cone of cell {k + 1} do not span the lattice')
    vectors = []
    for ray in rays:
        vector = [0] * s.n
        for coefficient, i in zip(ray, subset):
            vector[pivot] += coefficient
            vector[i] -= coefficient
        vectors.append(tuple(vector))
    return CellReport(k, s.cells[k], gamma, pivot, tuple(vectors), simplicial, unimodular)
