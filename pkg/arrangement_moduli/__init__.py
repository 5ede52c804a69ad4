#!/usr/bin/env python3
import argparse
import hashlib
import json
import logging
import random
import sys
import time
from contextlib import contextmanager
from fractions import Fraction
from math import comb
from typing import NamedTuple

import smart_open
from singer import utils

import arrangement_moduli.conversion as conversion
from arrangement_moduli import format_handler, presets
from arrangement_moduli.configuration import (ARRANGEMENT_CONTRACT, GLUING_CONTRACT, HEIGHTS_CONTRACT,
                                              MATROID_CONTRACT, SUBDIVISION_CONTRACT, Config)
from arrangement_moduli.exactcore import ArrangementModuliError, pluecker_relations_ok, subsets
from arrangement_moduli.grassmann import (contains_e, dependent_subsets, gm_point, gm_translate, is_general_position,
                                          random_general_arrangement, random_point_off)
from arrangement_moduli.homology import (compare_skeleton_conventions, cohomology_report, graded_exactness_check,
                                         skeleton_pair_oracle, wedge_cokernel_dim)
from arrangement_moduli.matroid import Matroid, dual, is_connected, matroid_from_matrix, polytope_of
from arrangement_moduli.polytope import BadParams, hypersimplex
from arrangement_moduli.residue import LogForm, residue_report, residue_sum
from arrangement_moduli.stanley import (GluingData, cone_lattice_points, hilbert_check, random_gluing,
                                        saturation_failures)
from arrangement_moduli.subdivision import (NEGATIVE_BOUNDARY, POSITIVE_BOUNDARY, NotUnique, Subdivision,
                                            cell_containing_gamma, classify_boundary_faces, is_matroid_decomposition,
                                            pulling_triangulation, random_heights, regular_subdivision, strata_dot,
                                            strata_poset, trivial_subdivision, validate)

LOGGER = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_FAILED_CHECK = 1
EXIT_ERROR = 2

DEMO_SIZES = ((2, 4), (2, 5), (3, 5), (3, 6))
DEMO_ARRANGEMENTS = 10
DEMO_TRANSLATES = 20


class RunReport(NamedTuple):
    command: str
    seed: int
    inputs_digest: str
    results: dict
    checks: dict
    timings: dict

    @property
    def passed(self):
        return all(self.checks.values())

    def to_dict(self):
        return {
            'command': self.command,
            'seed': self.seed,
            'inputs_digest': self.inputs_digest,
            'results': self.results,
            'checks': self.checks,
            'passed': self.passed,
            'timings': self.timings,
        }


class Timings(dict):

    @contextmanager
    def timed(self, name):
        start = time.perf_counter()
        try:
            yield
        finally:
            self[name] = round(time.perf_counter() - start, 6)


def inputs_digest(inputs):
    canonical = json.dumps(inputs, sort_keys=True, separators=(',', ':'))
    return hashlib.sha256(canonical.encode('utf-8')).hexdigest()


def _document(args, contract, kind):
    if args.preset:
        found, doc = presets.preset_document(args.preset)
        if found != kind:
            raise format_handler.ParseError(args.preset, message=f'preset is a {found}, expected a {kind}')
        return args.preset, format_handler.validated(doc, contract, args.preset)
    return args.input, format_handler.read_document(args.input, contract)


def _arrangement(args):
    location, doc = _document(args, ARRANGEMENT_CONTRACT, presets.ARRANGEMENT)
    return doc, format_handler.arrangement_from_document(doc, location)


def _subdivision(args):
    location, doc = _document(args, SUBDIVISION_CONTRACT, presets.SUBDIVISION)
    return doc, format_handler.subdivision_from_document(doc, location)


def _failure_document(failure):
    doc = {}
    for key, value in failure.items():
        if isinstance(value, Fraction):
            doc[key] = conversion.format_rational(value)
        elif isinstance(value, tuple):
            doc[key] = [k + 1 for k in value]
        elif key == 'cell':
            doc[key] = value + 1
        else:
            doc[key] = value
    return doc


def _labels(s, vertices):
    return [conversion.to_external(s.label(v)) for v in sorted(vertices)]


def cmd_analyze(args, config):
    doc, a = _arrangement(args)
    timings = Timings()
    with timings.timed('grassmann'):
        p = gm_point(a)
        relations = pluecker_relations_ok(p, full=True)
        dependent = dependent_subsets(a)
    with timings.timed('matroid'):
        m = matroid_from_matrix(a.forms.transpose())
        connected = is_connected(m)
        dual_connected = is_connected(dual(m))
        dimension = polytope_of(m).dim
    LOGGER.info(f'Arrangement ({a.r},{a.n}): {len(m.bases)} bases, connected: {connected}, polytope dim {dimension}')
    results = {
        'general_position': is_general_position(a),
        'dependent_subsets': [conversion.to_external(s) for s in dependent],
        'bases': len(m.bases),
        'connected': connected,
        'polytope_dim': dimension,
        'gm_point': {conversion.subset_key(s): conversion.format_rational(x) for s, x in p.items()},
    }
    checks = {
        'pluecker_relations': relations,
        'dual_connectivity': connected == dual_connected,
    }
    return RunReport('analyze', config['seed'], inputs_digest(doc), results, checks, timings)


def cmd_subdivide(args, config):
    rng = random.Random(config['seed'])
    if args.input != '-' or args.r is None:
        doc = format_handler.read_document(args.input, HEIGHTS_CONTRACT)
        base, heights = format_handler.heights_from_document(doc, args.input)
    else:
        base = hypersimplex(args.r, args.n)
        heights = random_heights(base, rng)
        doc = format_handler.heights_to_document(base, heights)
    timings = Timings()
    with timings.timed('subdivide'):
        s = regular_subdivision(base, heights)
    with timings.timed('validate'):
        report = validate(s)
        matroidal = report.passed and is_matroid_decomposition(s)
    results = {
        'heights': doc,
        'subdivision': format_handler.subdivision_to_document(s),
        'failures': [_failure_document(f) for f in report.failures],
        'matroidal': matroidal,
    }
    return RunReport('subdivide', config['seed'], inputs_digest(doc), results, {'valid': report.passed}, timings)


def cmd_validate(args, config):
    doc, s = _subdivision(args)
    timings = Timings()
    with timings.timed('validate'):
        report = validate(s)
        matroidal = report.passed and is_matroid_decomposition(s)
    results = {
        'cells': len(s.cells),
        'cell_volume': conversion.format_rational(report.cell_volume),
        'base_volume': conversion.format_rational(report.base_volume),
        'failures': [_failure_document(f) for f in report.failures],
        'matroidal': matroidal,
    }
    return RunReport('validate', config['seed'], inputs_digest(doc), results, {'valid': report.passed}, timings)


def _skeleton_checks(r, n):
    comparison = compare_skeleton_conventions(r, n)
    top = skeleton_pair_oracle(r, n)[n - r]
    # for r = 2 the pair sees the n points of B; the sections count is n - 1 after the sequence
    expected_top = comb(n - 1, r - 1) if r >= 3 else n
    return comparison, {
        'skeleton_top': top == expected_top,
        'skeleton_convention': 'n-r-1' in comparison['matches'],
        'wedge_cokernel': wedge_cokernel_dim(r, n) == comb(n - 1, r - 1),
    }


def cmd_cohomology(args, config):
    doc, s = _subdivision(args)
    if s.r < 2:
        raise BadParams(f'cohomology needs r >= 2, got r={s.r}')
    timings = Timings()
    with timings.timed('cohomology'):
        report = cohomology_report(s)
    with timings.timed('skeleton'):
        comparison, skeleton_checks = _skeleton_checks(s.r, s.n)
    results = {
        'hOS': list(report.hOS),
        'hOB': list(report.hOB),
        'hOmega': list(report.hOmega),
        'expected': {name: list(value) for name, value in report.expected.items()},
        'skeleton': comparison,
    }
    checks = dict(report.checks)
    checks.update(skeleton_checks)
    return RunReport('cohomology', config['seed'], inputs_digest(doc), results, checks, timings)


def _gluings(s, count, rng):
    return [GluingData.identity(s.n)] + [random_gluing(s, rng) for _ in range(count - 1)]


def _exactness_failures(s, t, levels):
    failures = []
    for d in range(1, levels + 1):
        for a in cone_lattice_points(s.base, d):
            for boundary in (False, True):
                report = graded_exactness_check(s, t, a, boundary=boundary)
                if not report.passed:
                    failures.append({'weight': list(a), 'boundary': boundary, 'dims': report.dims,
                                     'expected': report.expected})
    return failures


def _hilbert_results(s, gluings, config, rng, timings, prefix=''):
    results = []
    checks = {}
    for k, t in enumerate(gluings):
        with timings.timed(f'{prefix}gluing_{k + 1}'):
            report = hilbert_check(s, t, config['dmax'], config['outside_samples'], rng)
            exactness = _exactness_failures(s, t, min(config['dmax'], 2))
        results.append({
            'counts': report.counts,
            'outside': report.outside,
            'failures': [{'weight': list(a), 'dim': got, 'expected': want} for a, got, want in report.failures],
            'exactness_failures': exactness,
        })
        checks[f'{prefix}gluing_{k + 1}_hilbert'] = report.passed
        checks[f'{prefix}gluing_{k + 1}_exactness'] = not exactness
    return results, checks


def cmd_hilbert(args, config):
    doc, s = _subdivision(args)
    rng = random.Random(config['seed'])
    inputs = {'subdivision': doc, 'dmax': config['dmax']}
    if args.gluing:
        gluing_doc = format_handler.read_document(args.gluing, GLUING_CONTRACT)
        inputs['gluing'] = gluing_doc
        gluings = [format_handler.gluing_from_document(gluing_doc, s, args.gluing)]
    else:
        gluings = _gluings(s, config['gluing_samples'], rng)
    timings = Timings()
    results, checks = _hilbert_results(s, gluings, config, rng, timings)
    return RunReport('hilbert', config['seed'], inputs_digest(inputs), {'gluings': results}, checks, timings)


def _white_levels(m, dmax):
    p = polytope_of(m)
    return {d: [list(a) for a in saturation_failures(p, d)] for d in range(2, dmax + 1)}


def cmd_white(args, config):
    doc = format_handler.read_document(args.input, MATROID_CONTRACT)
    m = format_handler.matroid_from_document(doc, args.input)
    d = args.d if args.d is not None else config['dmax']
    timings = Timings()
    with timings.timed('saturation'):
        levels = _white_levels(m, d)
    checks = {f'level_{k}': not failures for k, failures in levels.items()}
    results = {'levels': {k: {'failures': len(f), 'examples': f[:5]} for k, f in levels.items()}}
    return RunReport('white', config['seed'], inputs_digest({'matroid': doc, 'd': d}), results, checks, timings)


def _matrix_document(matrix):
    return [conversion.format_vector(row) for row in matrix.to_rows()]


def cmd_residues(args, config):
    doc, a = _arrangement(args)
    timings = Timings()
    with timings.timed('residues'):
        report = residue_report(a)
    results = {
        'method': report.method,
        'matrix': _matrix_document(report.matrix),
        'rank': report.rank,
        'expected_rank': comb(a.n - 1, a.r - 1),
    }
    checks = {
        'matches_inclusion': report.matches_inclusion,
        'full_rank': report.rank == report.matrix.rows,
        'oracle_agrees': report.oracle_agrees,
    }
    if a.r == 2:
        with timings.timed('residue_sums'):
            sums = [residue_sum(a, LogForm.basis_wedge(a.n, wedge)) for wedge in subsets(a.n - 1, 1)]
        results['residue_sums'] = conversion.format_vector(sums)
        checks['residue_sums'] = all(x == 0 for x in sums)
    return RunReport('residues', config['seed'], inputs_digest(doc), results, checks, timings)


def cmd_strata(args, config):
    doc, s = _subdivision(args)
    timings = Timings()
    with timings.timed('strata'):
        poset = strata_poset(s)
        labels = classify_boundary_faces(s)
    counts = {}
    for element in poset.elements:
        counts[element.stratum_dim] = counts.get(element.stratum_dim, 0) + 1
    results = {
        'elements': [{'stratum_dim': e.stratum_dim,
                      'marked': conversion.to_external(e.marked),
                      'vertices': _labels(s, e.face.vertices)} for e in poset.elements],
        'counts': {k: counts[k] for k in sorted(counts, reverse=True)},
        'boundary': {
            'positive': sum(1 for label in labels.values() if label == POSITIVE_BOUNDARY),
            'negative': sum(1 for label in labels.values() if label == NEGATIVE_BOUNDARY),
        },
    }
    if args.dot:
        results['dot'] = strata_dot(s, poset)
    return RunReport('strata', config['seed'], inputs_digest(doc), results, {}, timings)


def _subdivision_preset(name):
    _, doc = presets.preset_document(name)
    return format_handler.subdivision_from_document(doc, name)


def _demo_cohomology(results, checks, timings):
    for r, n in DEMO_SIZES:
        with timings.timed(f'cohomology_{r}_{n}'):
            report = cohomology_report(trivial_subdivision(hypersimplex(r, n)))
            _, skeleton = _skeleton_checks(r, n)
        results[f'trivial-{r}-{n}'] = {'hOS': list(report.hOS), 'hOB': list(report.hOB),
                                       'hOmega': list(report.hOmega)}
        checks[f'omega_{r}_{n}'] = report.checks['hOmega']
        checks[f'vanishing_{r}_{n}'] = report.checks['hOS']
        checks.update({f'{name}_{r}_{n}': ok for name, ok in skeleton.items()})
    for name in ('split-2-4', 'split-2-5'):
        with timings.timed(f'cohomology_{name}'):
            report = cohomology_report(_subdivision_preset(name))
        results[name] = {'hOS': list(report.hOS), 'hOmega': list(report.hOmega)}
        checks[f'vanishing_{name}'] = report.checks['hOS']
        checks[f'omega_{name}'] = report.checks['hOmega']


def _demo_arrangements(results, checks, timings, rng):
    for r in (2, 3):
        for n in (4, 5, 6):
            with timings.timed(f'residues_{r}_{n}'):
                reports = [residue_report(random_general_arrangement(r, n, rng)) for _ in range(DEMO_ARRANGEMENTS)]
            checks[f'residues_{r}_{n}'] = all(report.passed for report in reports)
            checks[f'residues_independent_{r}_{n}'] = all(report.matrix == reports[0].matrix for report in reports)
    with timings.timed('gm_translates'):
        translates_ok = True
        for k in range(DEMO_ARRANGEMENTS):
            a = random_general_arrangement(2 + k % 2, 4 + k % 3, rng)
            for _ in range(DEMO_TRANSLATES):
                translates_ok &= contains_e(gm_translate(a, random_point_off(a, rng)))
    checks['gm_translates_contain_e'] = translates_ok


def _demo_sections(results, checks, timings, subdivisions):
    with timings.timed('special_sections'):
        unique = True
        for s in subdivisions:
            for subset in subsets(s.n, s.r - 1):
                try:
                    cell_containing_gamma(s, subset)
                except ArrangementModuliError as err:
                    LOGGER.warning(f'special section for I={conversion.to_external(subset)}: {err}')
                    unique = False
        checks['special_sections'] = unique
        base = hypersimplex(3, 5)
        first = subsets(5, 3).index((2, 3, 4))
        order = [first] + [k for k in range(len(base.vertices)) if k != first]
        pulled = Subdivision.of(base, pulling_triangulation(base, order))
        raised = []
        for subset in subsets(5, 2):
            try:
                cell_containing_gamma(pulled, subset)
            except NotUnique:
                raised.append(conversion.to_external(subset))
            except ArrangementModuliError:
                pass
        results['pulled_not_unique'] = raised
        checks['pulled_not_unique'] = bool(raised)


def _demo_strata(results, checks, timings):
    expected = {(2, 4): {1: 1, 0: 4}, (3, 5): {2: 1, 1: 5, 0: 10}}
    for (r, n), want in expected.items():
        with timings.timed(f'strata_{r}_{n}'):
            poset = strata_poset(trivial_subdivision(hypersimplex(r, n)))
        got = {}
        for element in poset.elements:
            got[element.stratum_dim] = got.get(element.stratum_dim, 0) + 1
        results[f'strata_{r}_{n}'] = got
        checks[f'strata_{r}_{n}'] = got == want


def cmd_demo(args, config):
    rng = random.Random(config['seed'])
    timings = Timings()
    results = {}
    checks = {}
    _demo_cohomology(results, checks, timings)
    _demo_arrangements(results, checks, timings, rng)
    decompositions = [trivial_subdivision(hypersimplex(2, 4)), _subdivision_preset('split-2-4'),
                      _subdivision_preset('split-2-5'), trivial_subdivision(hypersimplex(3, 5))]
    for s in decompositions[:2]:
        name = 'trivial-2-4' if len(s.cells) == 1 else 'split-2-4'
        hilbert, hilbert_checks = _hilbert_results(s, _gluings(s, config['gluing_samples'], rng), config, rng,
                                                   timings, prefix=f'{name}_')
        results[f'hilbert_{name}'] = hilbert
        checks.update(hilbert_checks)
    with timings.timed('white'):
        white_ok = True
        for s in decompositions:
            for cell in s.cells:
                m = Matroid.from_bases(s.n, s.r, [s.label(v) for v in cell])
                white_ok &= not any(_white_levels(m, config['dmax']).values())
        checks['white'] = white_ok
    _demo_sections(results, checks, timings, decompositions)
    _demo_strata(results, checks, timings)
    LOGGER.info(f'Demo finished: {sum(checks.values())} of {len(checks)} checks passed')
    return RunReport('demo', config['seed'], inputs_digest(config), results, checks, timings)


COMMANDS = {
    'analyze': cmd_analyze,
    'subdivide': cmd_subdivide,
    'validate': cmd_validate,
    'cohomology': cmd_cohomology,
    'hilbert': cmd_hilbert,
    'white': cmd_white,
    'residues': cmd_residues,
    'strata': cmd_strata,
    'demo': cmd_demo,
}


def parse_args(argv):
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument('--seed', type=int, help='seed for every random choice, recorded in the report')
    common.add_argument('--dmax', type=int, help='largest level checked')
    common.add_argument('--preset', help='named input instead of a file, e.g. generic-2-4 or split-2-5')
    common.add_argument('--pretty', action='store_true', default=None, help='plain text instead of JSON')
    common.add_argument('--config', help='run config JSON')
    common.add_argument('--output', default='-', help='output file, - for stdout')

    parser = argparse.ArgumentParser(prog='arrangement-moduli',
                                     description='Exact checks on moduli of hyperplane arrangements')
    commands = parser.add_subparsers(dest='command', required=True)
    for name in ('analyze', 'validate', 'cohomology', 'residues'):
        command = commands.add_parser(name, parents=[common])
        command.add_argument('input', nargs='?', default='-')
    subdivide = commands.add_parser('subdivide', parents=[common])
    subdivide.add_argument('input', nargs='?', default='-', help='heights document')
    subdivide.add_argument('--r', type=int)
    subdivide.add_argument('--n', type=int)
    hilbert = commands.add_parser('hilbert', parents=[common])
    hilbert.add_argument('input', nargs='?', default='-')
    hilbert.add_argument('--gluing', help='gluing data document; random gluing data otherwise')
    white = commands.add_parser('white', parents=[common])
    white.add_argument('input', nargs='?', default='-', help='matroid document')
    white.add_argument('--d', type=int, help='largest level, defaults to --dmax')
    strata = commands.add_parser('strata', parents=[common])
    strata.add_argument('input', nargs='?', default='-')
    strata.add_argument('--dot', action='store_true', help='write the Graphviz DOT export instead of JSON')
    commands.add_parser('demo', parents=[common])

    args = parser.parse_args(argv)
    if args.command == 'subdivide' and (args.r is None) != (args.n is None):
        parser.error('--r and --n go together')
    return args


def render_pretty(report):
    lines = [f'command: {report.command}', f'seed: {report.seed}', f'inputs: {report.inputs_digest}']
    width = max((len(name) for name in report.checks), default=0)
    for name, ok in report.checks.items():
        lines.append(f'  {name.ljust(width)}  {"PASS" if ok else "FAIL"}')
    for key, value in report.results.items():
        if key == 'dot':
            continue
        lines.append(f'{key}: {json.dumps(value, separators=(", ", ": "))}')
    for name, seconds in report.timings.items():
        lines.append(f'  {name.ljust(width)}  {seconds:.3f}s')
    lines.append('PASSED' if report.passed else 'FAILED')
    return '\n'.join(lines) + '\n'


def write_report(report, args, config):
    if report.results.get('dot') is not None:
        text = report.results['dot']
    elif config['pretty']:
        text = render_pretty(report)
    else:
        text = json.dumps(report.to_dict(), indent=2) + '\n'
    if args.output == '-':
        sys.stdout.write(text)
    else:
        with smart_open.open(args.output, 'w') as ostream:
            ostream.write(text)


@utils.handle_top_exception(LOGGER)
def main(argv=None):
    args = parse_args(sys.argv[1:] if argv is None else argv)
    config = Config.merge(Config.load(args.config) if args.config else {},
                          {'seed': args.seed, 'dmax': args.dmax, 'pretty': args.pretty})
    LOGGER.info(f'Running {args.command} with seed {config["seed"]}')
    try:
        report = COMMANDS[args.command](args, config)
    except (ArrangementModuliError, OSError) as err:
        LOGGER.error(f'{args.command} failed: {err}')
        return EXIT_ERROR
    write_report(report, args, config)
    if not report.passed:
        failed = [name for name, ok in report.checks.items() if not ok]
        LOGGER.warning(f'{len(failed)} checks failed: {", ".join(failed)}')
        return EXIT_FAILED_CHECK
    return EXIT_OK
