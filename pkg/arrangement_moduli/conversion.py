import logging
from fractions import Fraction

LOGGER = logging.getLogger(__name__)


def convert(datum):
    """
    Returns the exact rational for a JSON datum: an int, or a string "p" / "p/q".
    Floats are rejected so that no binary rounding leaks into exact computations.
    """
    if isinstance(datum, bool) or datum is None:
        raise ValueError(f'{datum!r} is not a rational')
    if isinstance(datum, int):
        return Fraction(datum)
    if isinstance(datum, str):
        text = datum.strip()
        if not text:
            raise ValueError('empty string is not a rational')
        try:
            value = Fraction(text)
        except (ValueError, ZeroDivisionError) as err:
            raise ValueError(f'{datum!r} is not a rational: {err}')
        if '.' in text or 'e' in text.lower():
            raise ValueError(f'{datum!r} must be written as p or p/q')
        return value
    raise ValueError(f'{datum!r} of type {type(datum).__name__} is not a rational')


def coerce(data):
    return tuple(convert(x) for x in data)


def format_rational(value):
    value = Fraction(value)
    if value.denominator == 1:
        return str(value.numerator)
    return f'{value.numerator}/{value.denominator}'


def format_vector(values):
    return [format_rational(x) for x in values]


def to_internal(indices, n=None):
    """1-based external indices to a sorted 0-based tuple."""
    result = []
    for i in indices:
        if isinstance(i, bool) or not isinstance(i, int):
            raise ValueError(f'index {i!r} is not an integer')
        if i < 1 or (n is not None and i > n):
            raise ValueError(f'index {i} outside 1..{n}')
        result.append(i - 1)
    if len(set(result)) != len(result):
        raise ValueError(f'repeated index in {list(indices)}')
    LOGGER.debug(f'Converted indices {list(indices)} to {sorted(result)}')
    return tuple(sorted(result))


def to_external(indices):
    return [i + 1 for i in sorted(indices)]


def subset_key(indices):
    """The "i1,...,ir" key used by heights documents."""
    return ','.join(str(i) for i in to_external(indices))


def parse_subset_key(key, n=None):
    try:
        parts = [int(part) for part in key.split(',')]
    except ValueError:
        raise ValueError(f'{key!r} is not a comma separated index list')
    return to_internal(parts, n)
