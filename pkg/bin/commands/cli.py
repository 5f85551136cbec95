"""Command-line front end: parse flags and run.json, dispatch, write JSON reports and SVG pictures."""

import argparse
import math
import os

import colorama

from . import __version__, ballcut, billiard, fractional, oscillation, planks, verify
from .utils import config as config_utils, convex, files, messages, parse_actions, parse_string, svg
from .utils.convex import Gauge

COMMANDS = ('billiard', 'cover-check', 'oscillation', 'fractional', 'ball-cut', 'verify-all')
FRACTIONAL_OPS = ('W', 'rho', 'cyl', 'bound', 'mahler', 'sumnorm')

EXIT_OK = 0
EXIT_INPUT = 2
EXIT_PROBE_FAILED = 3
EXIT_NOT_CONVERGED = 4

DEFAULT_TOLERANCES = {
    'reflection': 1e-6,
    'oscillation': 1e-9,
    'cover': 1e-6,
    'fractional': 1e-10,
    'ballcut': 1e-9,
    'oracle': 1e-6,
}

_INPUT_ERRORS = (
    files.InputError,
    convex.DimensionMismatch,
    convex.OriginNotInterior,
    convex.DegenerateBody,
    convex.UnsupportedDimension,
    convex.ParameterError,
    convex.BudgetExceeded,
    convex.NotInscribed,
    convex.BoundaryError,
)
_SOLVER_ERRORS = (convex.FlowStall, convex.MalformedLP)


class RunConfig(object):
    """Everything a command needs: its inputs, seed, tolerances and outputs."""

    def __init__(self, command, seed=0, tolerances=None, out=None, svg=None, quiet=False, color=True, **options):
        if command not in COMMANDS:
            raise convex.ParameterError('unknown command {0!r}'.format(command))
        self.command = command
        self.seed = seed
        self.overrides = {}
        self.tolerances = dict(DEFAULT_TOLERANCES)
        for name, value in (tolerances or {}).items():
            if not isinstance(value, (int, float)) or not math.isfinite(value) or value <= 0:
                raise files.InputError('tolerance {0!r} must be a positive number. Given: {1!r}'.format(name, value))
            self.overrides[name] = self.tolerances[name] = float(value)
        self.out = out
        self.svg = svg
        self.quiet = quiet
        self.color = color
        self.options = options

    def __getattr__(self, name):
        options = self.__dict__.get('options', {})
        if name in options:
            return options[name]
        raise AttributeError(name)

    def input_paths(self):
        return [self.options[name] for name in ('body', 'planks', 'field', 'params') if self.options.get(name)]

    def validate(self):
        for path in self.input_paths():
            if not os.path.isfile(path):
                raise files.InputError('no such file {0!r}'.format(path))
        gauge = self.options.get('gauge')
        if gauge and gauge.startswith('body:') and not os.path.isfile(gauge[len('body:'):]):
            raise files.InputError('no such file {0!r}'.format(gauge[len('body:'):]))


def _add_common_arguments(parser):
    parser.add_argument('-v', '--version', action='version', version='%(prog)s ' + __version__)
    parser.add_argument('--config', metavar='RUN_JSON', help='a run.json file with defaults for these flags')
    parser.add_argument(
        '--tolerance',
        metavar='NAME=VALUE',
        nargs=1,
        action=parse_actions.dict_set('='),
        help='override a named tolerance (repeatable)'
    )
    parser.add_argument('--seed', type=int, help='root seed (default: $BANG_COMMANDS_SEED or 0)')
    parser.add_argument('--out', metavar='FILE', help='write the JSON report here instead of stdout')
    parser.add_argument('--quiet', action='store_true', default=None, help='suppress warnings and stdout reports')
    parser.add_argument('--no-color', dest='color', action='store_false', default=None, help='never color output')


def build_parser(command):
    """Build the argument parser of one command.

    :param str command: one of COMMANDS

    :return argparse.ArgumentParser: the parser
    """

    if command not in COMMANDS:
        raise convex.ParameterError('unknown command {0!r}'.format(command))

    parser = argparse.ArgumentParser(prog=command)
    _add_common_arguments(parser)

    if command == 'billiard':
        parser.description = 'Find the shortest closed billiard trajectory of a body in a gauge.'
        parser.add_argument('--body', required=True, metavar='K_JSON', help='the billiard table')
        parser.add_argument('--gauge', metavar='GAUGE', help='euclidean, diff, or body:B.json (default: euclidean)')
        parser.add_argument('--starts', type=parse_string.as_positive_int, help='number of solver starts')
        parser.add_argument('--svg', metavar='FILE', help='draw the body and the trajectory (2D)')
    elif command == 'cover-check':
        parser.description = 'Verify a plank covering and report its width sums.'
        parser.add_argument('--body', required=True, metavar='K_JSON', help='the body to cover')
        parser.add_argument('--planks', required=True, metavar='PLANKS_JSON', help='the planks')
        parser.add_argument('--threshold', type=parse_string.as_positive_float, help='required multiplicity')
        parser.add_argument('--fractional', action='store_true', default=None, help='use the plank weights')
        parser.add_argument('--svg', metavar='FILE', help='draw the body, the planks and any witness (2D)')
    elif command == 'oscillation':
        parser.description = 'Check an oscillation inequality for a polynomial field.'
        parser.add_argument('--body', required=True, metavar='K_JSON', help='the body')
        parser.add_argument('--field', required=True, metavar='FIELD_JSON', help='the polynomial field')
        parser.add_argument(
            '--variant',
            type=parse_string.as_enum(oscillation.Variant),
            help='ball2x, diff1x or billiard (default: diff1x)'
        )
        parser.add_argument('--gauge', metavar='GAUGE', help='gauge of the billiard variant (default: euclidean)')
        parser.add_argument('--samples', type=parse_string.as_positive_int, help='sample resolution')
        parser.add_argument('--starts', type=parse_string.as_positive_int, help='billiard solver starts for the billiard variant')
    elif command == 'fractional':
        parser.description = 'Evaluate fractional covering constants and probes.'
        parser.add_argument('--op', required=True, choices=FRACTIONAL_OPS, help='the quantity to evaluate')
        parser.add_argument('--params', required=True, metavar='PARAMS_JSON', help='the parameters')
    elif command == 'ball-cut':
        parser.description = 'Cap capacities of the cut unit ball.'
        parser.add_argument('--tau0', type=float, help='the cut parameter in (0, pi)')
        parser.add_argument('--sweep', type=int, help='check additivity at N interior grid points')
        parser.add_argument('--oracle', action='store_true', default=None, help='compare actions with the integrator')
    else:
        parser.description = 'Run the acceptance suite.'
        parser.add_argument(
            '--only',
            type=parse_string.as_delimited_list(','),
            metavar='NAME[,NAME...]',
            help='run only these items'
        )
    return parser


def _setting(args, name, key, default, loaded, as_type=str):
    value = getattr(args, name, None)
    if value is not None:
        return value
    return config_utils.get_config_value(key, default, loaded, as_type)


def _tolerances(args, loaded):
    tolerances = {}
    for key, value in loaded.items():
        if key.startswith('tolerances.'):
            tolerances[key[len('tolerances.'):]] = value
    for name, values in (getattr(args, 'tolerance', None) or {}).items():
        tolerances[name] = values[-1]

    parsed = {}
    for name, value in tolerances.items():
        try:
            parsed[name] = parse_string.as_positive_float(value)
        except (TypeError, ValueError):
            raise files.InputError('tolerance {0!r} must be a positive number. Given: {1!r}'.format(name, value))
    return parsed


def parse_config(command, argv):
    """Parse flags over run.json over the environment over defaults.

    :param str command: one of COMMANDS
    :param list argv: the arguments after the command

    :return RunConfig: the validated configuration
    """

    args = build_parser(command).parse_args(argv)
    loaded = config_utils.load(args.config) if args.config else {}
    section = command.replace('-', '_')

    def setting(name, default, as_type=str):
        return _setting(args, name, section + '.' + name, default, loaded, as_type)

    options = {}
    if command in ('billiard', 'cover-check', 'oscillation'):
        options['body'] = args.body
    if command == 'billiard':
        options['gauge'] = setting('gauge', 'euclidean')
        options['starts'] = setting('starts', billiard.DEFAULT_STARTS, parse_string.as_positive_int)
    elif command == 'cover-check':
        options['planks'] = args.planks
        options['threshold'] = setting('threshold', 1.0, parse_string.as_positive_float)
        options['fractional'] = setting('fractional', False, parse_string.as_bool)
    elif command == 'oscillation':
        options['field'] = args.field
        options['variant'] = setting('variant', oscillation.Variant.DIFF1X, parse_string.as_enum(oscillation.Variant))
        options['gauge'] = setting('gauge', 'euclidean')
        options['samples'] = setting('samples', oscillation.DEFAULT_SAMPLES, parse_string.as_positive_int)
        options['starts'] = setting('starts', billiard.DEFAULT_STARTS, parse_string.as_positive_int)
    elif command == 'fractional':
        options['op'] = args.op
        options['params'] = args.params
    elif command == 'ball-cut':
        options['tau0'] = setting('tau0', None, float)
        options['sweep'] = setting('sweep', None, int)
        options['oracle'] = setting('oracle', False, parse_string.as_bool)
    else:
        options['only'] = setting('only', None, parse_string.as_delimited_list(','))

    config = RunConfig(
        command,
        seed=_setting(args, 'seed', 'seed', 0, loaded, int),
        tolerances=_tolerances(args, loaded),
        out=_setting(args, 'out', section + '.out', None, loaded),
        svg=_setting(args, 'svg', section + '.svg', None, loaded),
        quiet=_setting(args, 'quiet', 'quiet', False, loaded, parse_string.as_bool),
        color=_setting(args, 'color', 'color', True, loaded, parse_string.as_bool),
        **options
    )
    config.validate()
    return config


def _load_body(path):
    return convex.body_from_json(files.load_json(path))


def _load_gauge(spec, K):
    if spec == 'euclidean':
        return Gauge.euclidean(K.dim)
    if spec == 'diff':
        return Gauge.difference(K)
    if spec.startswith('body:'):
        B = _load_body(spec[len('body:'):])
        if B.dim != K.dim:
            raise convex.DimensionMismatch('gauge body has dimension {0}, body {1}'.format(B.dim, K.dim))
        return Gauge.from_body(B)
    raise files.InputError('unknown gauge {0!r}; use euclidean, diff or body:B.json'.format(spec))


def _run_billiard(config):
    K = _load_body(config.body)
    g = _load_gauge(config.gauge, K)
    result = billiard.shortest_trajectory(K, g, starts=config.starts, seed=config.seed)
    tol = config.tolerances['reflection']
    if config.svg:
        svg.draw(config.svg, K, polygon=result.points)
    try:
        certificate = billiard.verify_reflection(result, K, g, tol)
    except convex.BoundaryError as e:
        # raised on the solver's output
        messages.warn('trajectory rejected: ' + e.message, config.quiet)
        return billiard.trajectory_to_json(result), EXIT_PROBE_FAILED

    report = billiard.trajectory_to_json(result, certificate.max_violation)
    if not result.converged:
        messages.warn('the optimizer stopped at its evaluation budget', config.quiet)
        return report, EXIT_NOT_CONVERGED
    if certificate.max_violation > tol:
        messages.warn('reflection law violated by {0!r}'.format(certificate.max_violation), config.quiet)
        return report, EXIT_PROBE_FAILED
    return report, EXIT_OK


def _run_cover_check(config):
    K = _load_body(config.body)
    family = planks.planks_from_json(files.load_json(config.planks))
    if config.fractional:
        report = planks.covering_check(K, family, config.threshold, config.quiet)
    elif config.threshold == 1.0:
        report = planks.bang_report(K, family, config.tolerances['cover'], config.quiet)
    else:
        report = planks.covering_check(K, [plank.with_weight(1.0) for plank in family], config.threshold, config.quiet)
    if config.svg:
        svg.draw(config.svg, K, planks=family, witness=report.witness)

    failed = not report.covered or report.alarm
    return report.to_json(), EXIT_PROBE_FAILED if failed else EXIT_OK


def _run_oscillation(config):
    K = _load_body(config.body)
    F = oscillation.Polynomial.from_json(files.load_json(config.field))
    if F.dim != K.dim:
        raise convex.DimensionMismatch('field has dimension {0}, body {1}'.format(F.dim, K.dim))

    variant = config.variant
    if variant is oscillation.Variant.BALL2X:
        g = Gauge.from_body(K)
    elif variant is oscillation.Variant.DIFF1X:
        g = Gauge.difference(K)
    else:
        g = _load_gauge(config.gauge, K)

    lhs, rhs, ok = oscillation.verify_oscillation_bound(
        F, K, variant, g,
        samples=config.samples,
        tol=config.tolerances['oscillation'],
        starts=config.starts,
        seed=config.seed
    )
    report = {'variant': variant.value, 'lhs': lhs, 'rhs': rhs, 'ok': ok}
    return report, EXIT_OK if ok else EXIT_PROBE_FAILED


def _require(params, name):
    if name not in params:
        raise files.InputError('params need {0!r}'.format(name))
    return params[name]


def _run_fractional(config):
    params = files.load_json(config.params)
    if not isinstance(params, dict):
        raise files.InputError('params must be a JSON object')
    tol = config.tolerances['fractional']
    op = config.op

    if op == 'W':
        n = _require(params, 'n')
        value = fractional.W_constant(n)
        bound = fractional.W_quadrature(n)
        ok = abs(value - bound) <= tol
    elif op == 'rho':
        m = _require(params, 'm')
        x = files.require_finite_vector(_require(params, 'x'), 'x')
        value, bound, ok = fractional.rho_density(m, x), None, True
    elif op == 'cyl':
        n, m = _require(params, 'n'), _require(params, 'm')
        value = fractional.cylinder_bound(n, m)
        bound = fractional.conjecture_cylinder_target(n, m)
        ok = value <= bound + tol
    elif op == 'bound':
        value = fractional.fractional_bang_bound(_require(params, 'k'), _require(params, 'c'))
        bound, ok = None, True
    elif op == 'mahler':
        value, bound, ok = fractional.mahler_product(convex.body_from_json(_require(params, 'body')))
    else:
        vectors = [files.require_finite_vector(v, 'vectors') for v in _require(params, 'vectors')]
        value, bound, ok = fractional.sum_norm_lower(vectors, _require(params, 'c'))

    report = {'value': value, 'bound': bound, 'ok': bool(ok)}
    return report, EXIT_OK if ok else EXIT_PROBE_FAILED


def _cut_entry(tau0, tol):
    c1, c2, total, ok = ballcut.verify_cut_additivity(tau0, tol)
    return {'tau0': tau0, 'c1': c1, 'c2': c2, 'sum': total, 'ok': ok}


def _oracle_report(tau0, tol):
    family = ballcut.admissible_family(tau0, mmax=12)
    errors = [abs(ballcut.characteristic_action(p) - ballcut.arc_action(p)) for p in family]
    largest = max(errors) if errors else 0.0
    return {'checked': len(family), 'max_error': largest, 'ok': bool(largest <= tol)}


def _run_ball_cut(config):
    tol = config.tolerances['ballcut']
    if config.sweep is not None:
        if config.sweep < 1:
            raise convex.ParameterError("'sweep' must be positive. Given: {0!r}".format(config.sweep))
        points = [_cut_entry(math.pi * i / (config.sweep + 1), tol) for i in range(1, config.sweep + 1)]
        report = {'points': points, 'ok': all(point['ok'] for point in points)}
    elif config.tau0 is not None:
        report = _cut_entry(config.tau0, tol)
    else:
        raise files.InputError('ball-cut needs --tau0 or --sweep')

    if config.oracle:
        tau0 = config.tau0 if config.tau0 is not None else math.pi / 3
        report['oracle'] = _oracle_report(tau0, config.tolerances['oracle'])
        report['ok'] = report['ok'] and report['oracle']['ok']
    return report, EXIT_OK if report['ok'] else EXIT_PROBE_FAILED


def _run_verify_all(config):
    summary = verify.verify_all(config.seed, config.only, config.overrides)
    messages.info(summary.table(), config.quiet)
    return summary.to_json(), EXIT_OK if summary.ok else EXIT_PROBE_FAILED


_HANDLERS = {
    'billiard': _run_billiard,
    'cover-check': _run_cover_check,
    'oscillation': _run_oscillation,
    'fractional': _run_fractional,
    'ball-cut': _run_ball_cut,
    'verify-all': _run_verify_all,
}


def _emit(report, config):
    if config.out:
        files.dump_json(report, config.out)
    else:
        messages.info(files.dumps(report).rstrip('\n'), config.quiet)


def run(config):
    """Dispatch a command and write its report.

    :param RunConfig config: the run configuration

    :return int: 0 on success, 2 on input errors, 3 when a probe fails or a covering is incomplete, 4 when an
        optimizer does not converge
    """

    assert isinstance(config, RunConfig), "'config' must be a RunConfig. Given: " + type(config).__name__

    try:
        report, code = _HANDLERS[config.command](config)
    except _INPUT_ERRORS as e:
        messages.error(e.message, exit_=False)
        return EXIT_INPUT
    except _SOLVER_ERRORS as e:
        messages.error(e.message, exit_=False)
        return EXIT_NOT_CONVERGED
    if config.out or config.command != 'verify-all':
        _emit(report, config)
    return code


def main(command, argv):
    """Entry point of the bin scripts."""

    try:
        config = parse_config(command, argv)
    except _INPUT_ERRORS as e:
        messages.error(e.message, exit_=False)
        return EXIT_INPUT
    colorama.init(strip=not config.color)
    return run(config)
