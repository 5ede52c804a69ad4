'''Provides the contracts for our input documents and the run config'''
import json
import logging

import smart_open
from voluptuous import All, Any, Length, Optional, Range, Required, Schema

LOGGER = logging.getLogger(__name__)

DEFAULT_SEED = 20240601
DEFAULT_DMAX = 3
DEFAULT_OUTSIDE_SAMPLES = 50
DEFAULT_GLUING_SAMPLES = 5

# "p" or "p/q" strings or plain integers; convert() does the exact parsing
RATIONAL = Any(int, str)
INDEX = All(int, Range(min=1))
LABEL = [INDEX]

ARRANGEMENT_CONTRACT = Schema({
    Required('r'): All(int, Range(min=2)),
    Required('n'): All(int, Range(min=2)),
    Required('forms'): All([[RATIONAL]], Length(min=1)),
    Optional('name'): str,
})

MATROID_CONTRACT = Schema({
    Required('r'): All(int, Range(min=1)),
    Required('n'): All(int, Range(min=1)),
    Required('bases'): All([LABEL], Length(min=1)),
    Optional('name'): str,
})

SUBDIVISION_CONTRACT = Schema({
    Required('r'): All(int, Range(min=1)),
    Required('n'): All(int, Range(min=2)),
    Required('cells'): All([All([LABEL], Length(min=1))], Length(min=1)),
    Optional('name'): str,
})

HEIGHTS_CONTRACT = Schema({
    Required('r'): All(int, Range(min=1)),
    Required('n'): All(int, Range(min=2)),
    Required('heights'): {str: RATIONAL},
})

GLUING_CONTRACT = Schema({
    Required('n'): All(int, Range(min=1)),
    Optional('pairs'): [{
        Required('larger'): [LABEL],
        Required('smaller'): [LABEL],
        Required('t'): [RATIONAL],
    }],
    Optional('potentials'): [{
        Required('face'): [LABEL],
        Required('s'): [RATIONAL],
    }],
})

CONFIG_CONTRACT = Schema({
    Optional('seed'): int,
    Optional('dmax'): All(int, Range(min=0)),
    Optional('outside_samples'): All(int, Range(min=0)),
    Optional('gluing_samples'): All(int, Range(min=1)),
    Optional('pretty'): bool,
})


class Config():

    @classmethod
    def dump(cls, config_json, ostream):
        json.dump(config_json, ostream, indent=2)

    @classmethod
    def validate(cls, config_json):
        CONFIG_CONTRACT(config_json)
        return config_json

    @classmethod
    def load(cls, filename):
        with smart_open.open(filename) as fp:  # pylint: disable=invalid-name
            return Config.validate(json.load(fp))

    @classmethod
    def defaults(cls):
        return {
            'seed': DEFAULT_SEED,
            'dmax': DEFAULT_DMAX,
            'outside_samples': DEFAULT_OUTSIDE_SAMPLES,
            'gluing_samples': DEFAULT_GLUING_SAMPLES,
            'pretty': False,
        }

    @classmethod
    def merge(cls, config_json, overrides):
        """Defaults, then the config file, then every override that is not None."""
        merged = cls.defaults()
        merged.update(config_json or {})
        merged.update({key: value for key, value in overrides.items() if value is not None})
        LOGGER.debug(f'Run config: {merged}')
        return merged
