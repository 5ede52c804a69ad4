'''Reads JSON input documents from paths, URIs or stdin and builds library objects from them.'''
import json
import logging
import sys

import smart_open
from voluptuous import Invalid

from arrangement_moduli.conversion import coerce, format_rational, parse_subset_key, subset_key, to_external, to_internal
from arrangement_moduli.exactcore import ArrangementModuliError, RationalMatrix, subset_index
from arrangement_moduli.grassmann import Arrangement
from arrangement_moduli.matroid import Matroid
from arrangement_moduli.polytope import hypersimplex
from arrangement_moduli.stanley import GluingData
from arrangement_moduli.subdivision import Subdivision

LOGGER = logging.getLogger(__name__)


class ParseError(ArrangementModuliError):
    def __init__(self, location, message="The document was not in the expected format"):
        self.location = location
        self.message = message
        super().__init__(self.message)

    def __str__(self):
        return f'{self.location} could not be parsed: {self.message}'


def get_streamreader(uri, encoding='utf-8'):
    if uri == '-':
        return sys.stdin
    return smart_open.open(uri, 'r', encoding=encoding)


def load_json(uri):
    reader = get_streamreader(uri)
    try:
        text = reader.read()
    finally:
        if reader is not sys.stdin:
            reader.close()
    return loads(text, uri)


def loads(text, location):
    try:
        return json.loads(text)
    except json.JSONDecodeError as err:
        raise ParseError(f'{location}:{err.lineno}:{err.colno}', message=err.msg)


def json_path(path):
    return '$' + ''.join(f'[{p}]' if isinstance(p, int) else f'.{p}' for p in path)


def validated(doc, contract, location):
    try:
        return contract(doc)
    except Invalid as err:
        raise ParseError(f'{location} at {json_path(err.path)}', message=err.msg)


def read_document(uri, contract):
    return validated(load_json(uri), contract, uri)


def _vertex_index(label, r, n):
    subset = to_internal(label, n)
    if len(subset) != r:
        raise ValueError(f'vertex {label} does not have {r} elements')
    return subset_index(n, r)[subset]


def arrangement_from_document(doc, location='document'):
    try:
        rows = [coerce(row) for row in doc['forms']]
        if len(rows) != doc['n']:
            raise ValueError(f'expected {doc["n"]} forms, got {len(rows)}')
        for i, row in enumerate(rows):
            if len(row) != doc['r']:
                raise ValueError(f'form {i + 1} has {len(row)} coefficients, expected {doc["r"]}')
        return Arrangement(doc['r'], doc['n'], RationalMatrix.from_rows(rows, doc['r']))
    except (ValueError, TypeError) as err:
        raise ParseError(location, message=err)


def arrangement_to_document(a):
    return {'r': a.r, 'n': a.n, 'forms': [[format_rational(x) for x in a.forms.row(i)] for i in range(a.n)]}


def matroid_from_document(doc, location='document'):
    try:
        bases = [to_internal(basis, doc['n']) for basis in doc['bases']]
    except ValueError as err:
        raise ParseError(location, message=err)
    return Matroid.from_bases(doc['n'], doc['r'], bases)


def subdivision_from_document(doc, location='document'):
    r, n = doc['r'], doc['n']
    try:
        base = hypersimplex(r, n)
        cells = [[_vertex_index(label, r, n) for label in cell] for cell in doc['cells']]
    except (ValueError, KeyError) as err:
        raise ParseError(location, message=err)
    return Subdivision.of(base, cells)


def subdivision_to_document(s):
    return {
        'r': s.r,
        'n': s.n,
        'cells': [[to_external(s.label(v)) for v in sorted(cell)] for cell in s.cells],
    }


def heights_from_document(doc, location='document'):
    """The base hypersimplex and one height per vertex, in vertex order."""
    r, n = doc['r'], doc['n']
    base = hypersimplex(r, n)
    index = subset_index(n, r)
    heights = [None] * len(base.vertices)
    try:
        for key, value in doc['heights'].items():
            subset = parse_subset_key(key, n)
            if subset not in index:
                raise ValueError(f'{key!r} is not a vertex of the hypersimplex ({r},{n})')
            heights[index[subset]] = coerce([value])[0]
    except ValueError as err:
        raise ParseError(location, message=err)
    missing = [subset_key(s) for s, i in index.items() if heights[i] is None]
    if missing:
        raise ParseError(location, message=f'no height for vertices {missing}')
    return base, tuple(heights)


def heights_to_document(base, heights):
    r = sum(base.vertices[0])
    return {
        'r': r,
        'n': base.ambient,
        'heights': {subset_key([i for i, x in enumerate(v) if x]): format_rational(h)
                    for v, h in zip(base.vertices, heights)},
    }


def gluing_from_document(doc, s, location='document'):
    if doc['n'] != s.n:
        raise ParseError(location, message=f'gluing data for n={doc["n"]} used with a subdivision of n={s.n}')

    def face(labels):
        return frozenset(_vertex_index(label, s.r, s.n) for label in labels)

    try:
        pairs = {(face(p['larger']), face(p['smaller'])): coerce(p['t']) for p in doc.get('pairs', [])}
        potentials = {face(p['face']): coerce(p['s']) for p in doc.get('potentials', [])}
        return GluingData(s.n, pairs, potentials)
    except (ValueError, KeyError) as err:
        raise ParseError(location, message=err)
