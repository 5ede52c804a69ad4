'''Lattice polytopes, exact facet enumeration and oriented face posets.'''
import logging
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from itertools import combinations
from typing import FrozenSet, NamedTuple, Tuple

import cdd

from arrangement_moduli.exactcore import (ArrangementModuliError, determinant, dot, nullspace, primitive,
                                          rank, row_reduce, subsets)

LOGGER = logging.getLogger(__name__)

NUMBER_TYPE = 'fraction'


class BadParams(ArrangementModuliError):
    pass


class NotFacet(ArrangementModuliError):
    def __init__(self, face, other, message="is not a facet of"):
        self.face = face
        self.other = other
        self.message = message
        super().__init__(message)

    def __str__(self):
        return f'{sorted(self.other.vertices)} {self.message} {sorted(self.face.vertices)}'


def extreme_rays(rows):
    """
    Extreme rays of the pointed cone {y : row . y >= 0 for every row}, by cddlib's exact
    double description.

    Returns a list of (ray, zero set) pairs: each ray is a primitive integer vector and its
    zero set holds the indices of the rows vanishing on it.
    """
    rows = [primitive(row) for row in rows]
    if not rows:
        raise ValueError('a cone needs at least one inequality')
    width = len(rows[0])
    found = rank(rows)
    if found < width:
        raise ValueError(f'inequalities of rank {found} do not cut out a pointed cone in dimension {width}')
    # cdd reads a row (b, a) as b + a . y >= 0
    matrix = cdd.Matrix([(0,) + row for row in rows], number_type=NUMBER_TYPE)
    matrix.rep_type = cdd.RepType.INEQUALITY
    generators = cdd.Polyhedron(matrix).get_generators()
    rays = []
    for i in range(generators.row_size):
        generator = generators[i]
        # the apex comes back as a vertex
        if generator[0] != 0:
            continue
        ray = primitive(generator[1:])
        rays.append((ray, frozenset(k for k, row in enumerate(rows) if dot(row, ray) == 0)))
    LOGGER.debug(f'{len(rows)} inequalities in dimension {width}: {len(rays)} extreme rays')
    return rays


class Frame(NamedTuple):
    """Affine coordinates on the hull of a point set: an origin and the pivot coordinates of its direction space."""
    origin: Tuple[Fraction, ...]
    pivots: Tuple[int, ...]

    @property
    def dim(self):
        return len(self.pivots)

    def project(self, point):
        return tuple(Fraction(point[p]) for p in self.pivots)


def affine_frame(points):
    points = [tuple(Fraction(x) for x in point) for point in points]
    origin = points[0]
    differences = [[a - b for a, b in zip(point, origin)] for point in points[1:]]
    if not differences:
        return Frame(origin, ())
    _, pivots = row_reduce(differences)
    return Frame(origin, tuple(pivots))


def affine_dim(points):
    points = list(points)
    if len(points) <= 1:
        return 0
    origin = points[0]
    return rank([[Fraction(a) - Fraction(b) for a, b in zip(point, origin)] for point in points[1:]])


class Inequality(NamedTuple):
    """constant + normal . x >= 0; zeros lists the points on the supporting hyperplane."""
    constant: Fraction
    normal: Tuple[Fraction, ...]
    zeros: FrozenSet[int]

    def evaluate(self, point):
        return self.constant + dot(self.normal, point)


class HullDescription(NamedTuple):
    equalities: Tuple[Tuple[Fraction, Tuple[Fraction, ...]], ...]
    inequalities: Tuple[Inequality, ...]

    def contains(self, point):
        for constant, normal in self.equalities:
            if constant + dot(normal, point) != 0:
                return False
        return all(inequality.evaluate(point) >= 0 for inequality in self.inequalities)

    def tight(self, point):
        return frozenset(k for k, inequality in enumerate(self.inequalities) if inequality.evaluate(point) == 0)


def hull_inequalities(points, frame=None):
    """Equalities of the affine hull and the facet inequalities of conv(points), exactly."""
    points = [tuple(Fraction(x) for x in point) for point in points]
    ambient = len(points[0])
    equalities = tuple((v[0], tuple(v[1:])) for v in nullspace([[1] + list(p) for p in points], ambient + 1))
    if frame is None:
        frame = affine_frame(points)
    if frame.dim == 0:
        return HullDescription(equalities, ())
    rows = [[1] + list(frame.project(point)) for point in points]
    inequalities = []
    for ray, zeros in extreme_rays(rows):
        normal = [Fraction(0)] * ambient
        for coefficient, p in zip(ray[1:], frame.pivots):
            normal[p] = Fraction(coefficient)
        inequalities.append(Inequality(Fraction(ray[0]), tuple(normal), zeros))
    inequalities.sort(key=lambda inequality: sorted(inequality.zeros))
    return HullDescription(equalities, tuple(inequalities))


@dataclass(frozen=True)
class Face:
    dim: int
    vertices: FrozenSet[int]

    @property
    def key(self):
        return (self.dim, tuple(sorted(self.vertices)))

    def __lt__(self, other):
        return self.key < other.key

    def __repr__(self):
        return f'Face(dim={self.dim}, vertices={sorted(self.vertices)})'


def direction_basis(points, indices):
    ordered = sorted(indices)
    origin = points[ordered[0]]
    basis = []
    for i in ordered[1:]:
        candidate = tuple(a - b for a, b in zip(points[i], origin))
        if rank(basis + [candidate]) > len(basis):
            basis.append(candidate)
    return tuple(basis)


class FacePoset:
    """
    Faces of a polytope, or of a polyhedral complex glued along common faces, keyed by vertex index sets.

    points holds the coordinates of every vertex index. Orientations default to a basis built
    from the sorted vertices of each face; overrides replace that basis face by face.
    """

    def __init__(self, points, faces, covers, overrides=None):
        self.points = tuple(tuple(Fraction(x) for x in point) for point in points)
        self.faces = tuple(sorted(faces))
        self.covers = {face: tuple(sorted(covers.get(face, ()))) for face in self.faces}
        self._by_vertices = {face.vertices: face for face in self.faces}
        self._orientation = dict(overrides or {})
        self._pivots = {}

    def __contains__(self, face):
        return face in self.covers

    def __len__(self):
        return len(self.faces)

    def face(self, vertices):
        return self._by_vertices.get(frozenset(vertices))

    def of_dim(self, dim):
        return [face for face in self.faces if face.dim == dim]

    @property
    def top_dim(self):
        return max(face.dim for face in self.faces)

    def orientation(self, face):
        basis = self._orientation.get(face)
        if basis is None:
            basis = direction_basis(self.points, face.vertices)
            self._orientation[face] = basis
        return basis

    def orient(self, face, basis):
        self._orientation[face] = tuple(basis)
        self._pivots.pop(face, None)

    def _face_pivots(self, face):
        pivots = self._pivots.get(face)
        if pivots is None:
            _, pivots = row_reduce(self.orientation(face))
            self._pivots[face] = pivots
        return pivots

    def induced_sign(self, face, facet, basis):
        """Sign of (outward vector, basis) against the orientation of face."""
        outside = min(face.vertices - facet.vertices)
        anchor = min(facet.vertices)
        outward = tuple(a - b for a, b in zip(self.points[anchor], self.points[outside]))
        pivots = self._face_pivots(face)
        vectors = [outward] + list(basis)
        reference = determinant([[v[p] for p in pivots] for v in self.orientation(face)])
        value = determinant([[v[p] for p in pivots] for v in vectors])
        return 1 if (value > 0) == (reference > 0) else -1

    def incidence(self, face, facet):
        if facet not in self.covers.get(face, ()):
            raise NotFacet(face, facet)
        return self.induced_sign(face, facet, self.orientation(facet))

    def boundary_squared_is_zero(self):
        for face in self.faces:
            if face.dim < 2:
                continue
            totals = {}
            for facet in self.covers[face]:
                outer = self.incidence(face, facet)
                for ridge in self.covers[facet]:
                    totals[ridge] = totals.get(ridge, 0) + outer * self.incidence(facet, ridge)
            if any(totals.values()):
                LOGGER.debug(f'boundary of boundary does not vanish on {face}')
                return False
        return True


def euler_characteristic(faces):
    return sum((-1) ** face.dim for face in faces)


def poset_from_vertex_sets(points, vertex_sets, overrides=None):
    """Build a FacePoset from the vertex sets of faces; dims and covers are derived."""
    dims = {}
    for vertices in vertex_sets:
        dims[vertices] = affine_dim([points[i] for i in vertices])
    faces = [Face(dim, vertices) for vertices, dim in dims.items()]
    by_dim = {}
    for face in faces:
        by_dim.setdefault(face.dim, []).append(face)
    covers = {}
    for face in faces:
        covers[face] = [g for g in by_dim.get(face.dim - 1, ()) if g.vertices < face.vertices]
    return FacePoset(points, faces, covers, overrides)


@dataclass(frozen=True)
class LatticePolytope:
    ambient: int
    vertices: Tuple[Tuple[int, ...], ...]

    def __post_init__(self):
        if not self.vertices:
            raise BadParams('a polytope needs at least one vertex')
        if len(set(self.vertices)) != len(self.vertices):
            raise BadParams('polytope vertices must be distinct')
        for vertex in self.vertices:
            if len(vertex) != self.ambient:
                raise BadParams(f'vertex {vertex} does not live in Z^{self.ambient}')

    @cached_property
    def frame(self):
        return affine_frame(self.vertices)

    @property
    def dim(self):
        return self.frame.dim

    @cached_property
    def hull(self):
        return hull_inequalities(self.vertices, self.frame)

    def facets(self):
        return [frozenset(inequality.zeros) for inequality in self.hull.inequalities]

    def contains(self, point):
        return self.hull.contains(tuple(Fraction(x) for x in point))

    def edges(self):
        """Pairs of vertex indices spanning an edge, read off the facet incidences."""
        facets = self.facets()
        everything = frozenset(range(len(self.vertices)))
        result = []
        for u, v in combinations(range(len(self.vertices)), 2):
            smallest = everything
            for facet in facets:
                if u in facet and v in facet:
                    smallest = smallest & facet
            if smallest == {u, v}:
                result.append((u, v))
        return result

    @cached_property
    def face_poset(self):
        facets = self.facets()
        found = {frozenset(range(len(self.vertices)))}
        queue = []
        for facet in facets:
            if facet not in found:
                found.add(facet)
                queue.append(facet)
        while queue:
            face = queue.pop()
            for facet in facets:
                meet = face & facet
                if meet and meet not in found:
                    found.add(meet)
                    queue.append(meet)
        LOGGER.debug(f'Enumerated {len(found)} faces of a {self.dim}-polytope with {len(self.vertices)} vertices')
        return poset_from_vertex_sets(self.vertices, found)

    def subpolytope(self, indices):
        return LatticePolytope(self.ambient, tuple(self.vertices[i] for i in sorted(indices)))


def face_poset(p):
    return p.face_poset


def incidence(poset, face, facet):
    return poset.incidence(face, facet)


def hypersimplex(r, n):
    if not 1 <= r <= n - 1:
        raise BadParams(f'the hypersimplex needs 1 <= r <= n-1, got r={r}, n={n}')
    vertices = tuple(tuple(int(i in s) for i in range(n)) for s in subsets(n, r))
    return LatticePolytope(n, vertices)


def vertex_subset(r, n, index):
    """The r-subset labelling vertex index of the hypersimplex."""
    return subsets(n, r)[index]


def face_of_hyperplane(p, coordinate, value):
    """Vertex indices of p on the hyperplane x_coordinate = value."""
    return frozenset(k for k, vertex in enumerate(p.vertices) if vertex[coordinate] == value)
