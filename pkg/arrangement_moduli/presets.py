'''Named input documents: generic and special arrangements, trivial and split subdivisions.'''
import logging
import re

from arrangement_moduli.conversion import to_external
from arrangement_moduli.exactcore import ArrangementModuliError, subsets

LOGGER = logging.getLogger(__name__)

ARRANGEMENT = 'arrangement'
SUBDIVISION = 'subdivision'

# three lines, each repeated once, and one extra line through each pairwise meet
NINE_LINES = [
    [1, 0, 0], [0, 1, 0], [0, 0, 1],
    [1, 0, 0], [0, 1, 0], [0, 0, 1],
    [1, 2, 0], [0, 1, 3], [4, 0, 1],
]

PRESET_PATTERN = re.compile(r'^(generic|trivial|split)-(\d+)-(\d+)$')

NAMED_PRESETS = ('generic-2-4', 'generic-3-6', 'nine-lines-3-9', 'split-2-4', 'split-2-5')


class UnknownPreset(ArrangementModuliError):
    pass


def generic_document(r, n):
    """Points on the moment curve: F_i = (1, i, ..., i^(r-1)), all maximal minors Vandermonde."""
    if not 2 <= r <= n:
        raise UnknownPreset(f'generic arrangements need 2 <= r <= n, got r={r}, n={n}')
    return {'name': f'generic-{r}-{n}', 'r': r, 'n': n,
            'forms': [[i ** k for k in range(r)] for i in range(1, n + 1)]}


def nine_lines_document():
    return {'name': 'nine-lines-3-9', 'r': 3, 'n': 9, 'forms': NINE_LINES}


def trivial_document(r, n):
    return {'name': f'trivial-{r}-{n}', 'r': r, 'n': n, 'cells': [[to_external(s) for s in subsets(n, r)]]}


def split_document(r, n):
    """The hypersimplex cut by x_1 + x_2 = 1."""
    if not 2 <= r <= n - 2:
        raise UnknownPreset(f'split subdivisions need 2 <= r <= n-2, got r={r}, n={n}')
    below = [to_external(s) for s in subsets(n, r) if len({0, 1} & set(s)) <= 1]
    above = [to_external(s) for s in subsets(n, r) if len({0, 1} & set(s)) >= 1]
    return {'name': f'split-{r}-{n}', 'r': r, 'n': n, 'cells': [below, above]}


def preset_document(name):
    """Returns (kind, document) for a preset name."""
    if name == 'nine-lines-3-9':
        return ARRANGEMENT, nine_lines_document()
    match = PRESET_PATTERN.match(name)
    if not match:
        raise UnknownPreset(f'unknown preset {name!r}; known: {", ".join(NAMED_PRESETS)}, generic-R-N, trivial-R-N')
    family, r, n = match.group(1), int(match.group(2)), int(match.group(3))
    LOGGER.debug(f'Building preset {family} for r={r}, n={n}')
    if family == 'generic':
        return ARRANGEMENT, generic_document(r, n)
    if family == 'split':
        return SUBDIVISION, split_document(r, n)
    if not 1 <= r <= n - 1:
        raise UnknownPreset(f'trivial subdivisions need 1 <= r <= n-1, got r={r}, n={n}')
    return SUBDIVISION, trivial_document(r, n)
