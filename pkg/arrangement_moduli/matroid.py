'''Matroids given by their bases, and matroid polytopes.'''
import logging
from dataclasses import dataclass
from itertools import combinations
from typing import FrozenSet, Tuple

from arrangement_moduli.exactcore import ArrangementModuliError, maximal_minors
from arrangement_moduli.polytope import LatticePolytope

LOGGER = logging.getLogger(__name__)


class InvalidMatroid(ArrangementModuliError):
    pass


class OracleDisagreement(ArrangementModuliError):
    """The exchange test and the edge test gave different answers."""


def _as_family(family):
    return frozenset(tuple(sorted(b)) for b in family)


def is_basis_family(n, r, family):
    family = _as_family(family)
    if not family:
        return False
    for basis in family:
        if len(basis) != r or len(set(basis)) != r or any(not 0 <= i < n for i in basis):
            return False
    for first in family:
        for second in family:
            missing = set(second) - set(first)
            for x in set(first) - set(second):
                if not any(tuple(sorted((set(first) - {x}) | {y})) in family for y in missing):
                    LOGGER.debug(f'exchange fails removing {x} from {first} toward {second}')
                    return False
    return True


@dataclass(frozen=True)
class Matroid:
    n: int
    r: int
    bases: FrozenSet[Tuple[int, ...]]

    def __post_init__(self):
        if not is_basis_family(self.n, self.r, self.bases):
            raise InvalidMatroid(f'not the bases of a rank {self.r} matroid on {self.n} elements')

    @classmethod
    def from_bases(cls, n, r, bases):
        return cls(n, r, _as_family(bases))

    @classmethod
    def uniform(cls, r, n):
        return cls(n, r, frozenset(combinations(range(n), r)))

    def sorted_bases(self):
        return sorted(self.bases)


def matroid_from_matrix(m):
    p = maximal_minors(m)
    return Matroid(m.cols, m.rows, frozenset(s for s, x in p.items() if x != 0))


def subset_rank(m, subset):
    subset = set(subset)
    return max(len(subset.intersection(b)) for b in m.bases)


def is_connected(m):
    ground = range(m.n)
    # every split is listed once, with element 0 on the first side
    for size in range(1, m.n):
        for rest in combinations(range(1, m.n), size - 1):
            first = {0, *rest}
            second = set(ground) - first
            if subset_rank(m, first) + subset_rank(m, second) == m.r:
                LOGGER.debug(f'matroid splits as {sorted(first)} + {sorted(second)}')
                return False
    return True


def dual(m):
    ground = set(range(m.n))
    return Matroid(m.n, m.n - m.r, frozenset(tuple(sorted(ground - set(b))) for b in m.bases))


def indicator(n, subset):
    return tuple(int(i in subset) for i in range(n))


def polytope_of(m):
    return LatticePolytope(m.n, tuple(indicator(m.n, b) for b in m.sorted_bases()))


def edge_directions(r, n, vertex_subset):
    """Directions of the edges of conv(vertex_subset) that are not of the form e_i - e_j."""
    family = sorted(_as_family(vertex_subset))
    hull = LatticePolytope(n, tuple(indicator(n, b) for b in family))
    offending = []
    for u, v in hull.edges():
        direction = tuple(a - b for a, b in zip(hull.vertices[u], hull.vertices[v]))
        if sorted(x for x in direction if x) != [-1, 1]:
            offending.append(direction)
    return offending


def is_matroid_subpolytope(r, n, vertex_subset):
    exchange = is_basis_family(n, r, vertex_subset)
    if not _as_family(vertex_subset):
        return exchange
    offending = edge_directions(r, n, vertex_subset)
    if exchange != (not offending):
        LOGGER.error(f'exchange test says {exchange} but edge test found {offending} on {sorted(_as_family(vertex_subset))}')
        raise OracleDisagreement(sorted(_as_family(vertex_subset)))
    if offending:
        LOGGER.debug(f'edge directions {offending} are not of the form e_i - e_j')
    return exchange
