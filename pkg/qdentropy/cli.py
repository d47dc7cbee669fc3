"""
command line interface for qdentropy

    qdentropy estimate sample.txt --estimator vasicek --m 3
    qdentropy estimate sample.txt --estimator kernel --h 0.0333
    qdentropy simulate --dist "normal(0,1)" --n 50 --reps 5000 --seed 1 \
        --estimators vasicek:m=4 wg:m=4 kernel:h=0.0333
    qdentropy contaminate --dist "normal(0,1)" --contaminant uniform --fraction 0.04 ...
    qdentropy bandwidth --dist "exp(1)" --n 50 --reps 500 --grid 0.01:1:30 --seed 1
    qdentropy calibrate --n 35 40 45 50 --reps 20000 --h 0.0333 --seed 1 --out crit.csv
    qdentropy test sample.txt --table crit.csv --alpha 0.05
    qdentropy power --dist uniform --n 50 --table crit.csv --reps 20000 --seed 1
    qdentropy tables --table 3 --reps 5000 --seed 42

exit status: 0 on success, 2 for usage and configuration errors, 3 for unusable data
or a missing calibration, 4 for numerical failures.
"""

# internal python imports
import sys
import json
import logging
import argparse

# local (our) imports
from . import __version__
from .py import dataproc, utils
from .stats import bandwidth, normality, qdf
from .stats.distributions import parse_distribution
from .stats.registry import ESTIMATOR_IDS, EstimatorSpec, parse_estimator
from .sim import harness, tables
from .errors import (ConfigError, DataError, DomainError, EntropyError,
                     MissingCalibration, NumericalError)


logger = logging.getLogger('qdentropy')

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_DATA = 3
EXIT_NUMERICAL = 4


###############################################################################
# helpers
###############################################################################

def _metadata(args, **extra):
    """ what is needed to rerun a command bit for bit """
    meta = dict(version=__version__, command=args.command)
    for key, value in sorted(vars(args).items()):
        if key in ('func', 'command', 'verbose') or value is None:
            continue
        meta[key] = value
    meta.update(extra)
    return meta


def _quadrature(args):
    start = min(qdf.QuadratureConfig().start_nodes, args.quad_max_nodes)
    start -= 1 - start % 2
    return qdf.QuadratureConfig(start_nodes=start,
                                node_budget=args.quad_max_nodes,
                                refinement_tolerance=args.quad_tol)


def _estimator_from_flags(args):
    """ EstimatorSpec from the estimate subcommand flags """
    if args.spec is not None:
        return parse_estimator(args.spec)
    name = args.estimator
    if name in ('kernel', 'parzen-star'):
        if args.h is None:
            raise ConfigError('%s needs --h' % name)
        cfg = qdf.KernelConfig(h=args.h, eps=args.eps, kernel=args.kernel,
                               quadrature=_quadrature(args))
        options = dict(null=args.null) if name == 'parzen-star' else {}
        return EstimatorSpec(name, cfg, options)
    if name == 'parzen-tilde':
        return EstimatorSpec.build(name, eps=args.eps, null=args.null, first_cell=args.first_cell)
    if args.m is None:
        raise ConfigError('%s needs --m' % name)
    return EstimatorSpec.build(name, m=args.m, short_range=args.short_range,
                               symmetric=args.symmetric, strict=args.strict)


def _write_reports(args, reports, meta, published=None):
    text = harness.assemble_table(reports, format=args.format, metadata=meta, published=published)
    dataproc.write_text(args.out, text)


###############################################################################
# subcommands
###############################################################################

def cmd_estimate(args):
    x = dataproc.read_sample(args.file)
    spec = _estimator_from_flags(args)
    logger.info('estimating with %s on n=%d values', spec, len(x))
    est = spec.evaluate(x)
    print(utils.format_sig(est.value))


def _simulation_plan(args, contaminated):
    if getattr(args, 'plan', None):
        plan = dataproc.load_plan(args.plan)
        if contaminated and not plan.contaminated:
            raise ConfigError('plan %s has no contaminant' % args.plan)
        return plan
    for flag in ('dist', 'n', 'reps', 'estimators', 'seed'):
        if getattr(args, flag) is None:
            raise ConfigError('--%s is required without --plan' % flag)
    if contaminated:
        return harness.ExperimentPlan(args.dist, args.n, args.reps, args.estimators, args.seed,
                                      contaminant=args.contaminant, eps=args.fraction)
    return harness.ExperimentPlan(args.dist, args.n, args.reps, args.estimators, args.seed)


def cmd_simulate(args):
    plan = _simulation_plan(args, contaminated=False)
    reports = harness.run_experiment(plan, threads=args.threads, verbose=args.verbose)
    _write_reports(args, reports, plan.metadata())


def cmd_contaminate(args):
    plan = _simulation_plan(args, contaminated=True)
    reports = harness.run_contamination(plan, threads=args.threads, verbose=args.verbose)
    _write_reports(args, reports, plan.metadata())


def cmd_bandwidth(args):
    d = parse_distribution(args.dist)
    grid = bandwidth.BandwidthGrid.parse(args.grid)
    template = qdf.KernelConfig(h=grid.values[0], eps=args.eps, kernel=args.kernel)
    search = bandwidth.grid_search_h(d, args.n, template, grid, reps=args.reps, rng=args.seed,
                                     threads=args.threads, verbose=args.verbose)

    lines = ['# %s: %s' % (k, v) for k, v in _metadata(args).items()]
    try:
        lines.append('# amse_h: %s' % utils.format_sig(bandwidth.amse_bandwidth(d, args.n, args.kernel)))
    except NumericalError as err:
        lines.append('# amse_h: undefined (%s)' % err)
    lines.append('# h_star: %s' % utils.format_sig(search.h_star))
    lines.append('h,mse,failures,disqualified')
    for h, mse, nb, bad in zip(grid.values, search.mse_curve, search.failures, search.disqualified):
        lines.append('%s,%s,%d,%d' % (utils.format_sig(h), utils.format_sig(mse), nb, bad))
    dataproc.write_text(args.out, '\n'.join(lines) + '\n')

    if args.plot:
        import matplotlib
        matplotlib.use('Agg')
        from .py import plot
        fig, _ = plot.mse_curve(search, title='%s, n=%d' % (d, args.n), show=False)
        fig.savefig(args.plot)
        logger.info('wrote %s', args.plot)


def cmd_calibrate(args):
    estimator = args.estimator_spec
    cfg = None
    if estimator is None and args.h is not None:
        cfg = qdf.KernelConfig(h=args.h, eps=args.eps)
    table = normality.calibrate_critical_values(args.n, args.alpha, args.reps, cfg=cfg,
                                                rng=args.seed, estimator=estimator, eps=args.eps,
                                                threads=args.threads, verbose=args.verbose)
    dataproc.save_critical_table(table, args.out, metadata=_metadata(args))
    for rec in table:
        print('n=%d alpha=%s critical_value=%s' % (rec.n, utils.format_sig(rec.alpha),
                                                   utils.format_sig(rec.value)))


def cmd_test(args):
    x = dataproc.read_sample(args.file)
    table = dataproc.load_critical_table(args.table)
    result = normality.test_normality(x, args.alpha, table)
    estimator = table.record(result.n, args.alpha).estimator
    print('# %s' % json.dumps(_metadata(args, estimator=estimator), sort_keys=True))
    print('n=%d statistic=%s critical_value=%s alpha=%s reject=%s'
          % (result.n, utils.format_sig(result.statistic), utils.format_sig(result.critical_value),
             utils.format_sig(result.alpha), 'yes' if result.reject else 'no'))


def cmd_power(args):
    table = dataproc.load_critical_table(args.table)
    power = normality.power_study(args.dist, args.n, args.alpha, args.reps, table, rng=args.seed,
                                  h=args.h, threads=args.threads, verbose=args.verbose)
    print('# %s' % json.dumps(_metadata(args), sort_keys=True))
    print('power=%s' % utils.format_sig(power))


def cmd_tables(args):
    meta = _metadata(args)
    table_id = args.table
    if table_id.lower() == 'crit':
        _, frame = tables.run_critical_table(reps=args.reps or tables.TEST_REPS, seed=args.seed,
                                             eps=args.eps, threads=args.threads, verbose=args.verbose)
    elif table_id.lower() == 'power':
        frame = tables.run_power_table(reps=args.reps or tables.TEST_REPS, seed=args.seed,
                                       eps=args.eps, threads=args.threads, verbose=args.verbose)
    else:
        reports, frame, plan = tables.run_simulation_table(
            table_id, reps=args.reps or tables.SIMULATION_REPS, seed=args.seed, kernel_eps=args.eps,
            threads=args.threads, verbose=args.verbose)
        meta.update(plan.metadata())

    header = ''.join('# %s: %s\n' % (k, v) for k, v in meta.items())
    if args.format == 'json':
        text = json.dumps(dict(metadata=meta, rows=json.loads(frame.to_json(orient='records'))),
                          indent=2) + '\n'
    elif args.format == 'text':
        text = header + frame.to_string(index=False, float_format=utils.format_sig) + '\n'
    else:
        text = header + frame.to_csv(index=False, float_format='%.8g')
    dataproc.write_text(args.out, text)


###############################################################################
# parser
###############################################################################

def build_parser():
    parser = argparse.ArgumentParser(prog='qdentropy',
                                     description='entropy estimation via quantile densities')
    parser.add_argument('--version', action='version', version='%(prog)s ' + __version__)
    sub = parser.add_subparsers(dest='command', metavar='command')
    sub.required = True

    common = argparse.ArgumentParser(add_help=False)
    common.add_argument('--threads', type=int, default=None,
                        help='worker cap (default: QDENTROPY_THREADS or all cores)')
    common.add_argument('--verbose', '-v', action='store_true', help='debug logging and progress bars')

    seeded = argparse.ArgumentParser(add_help=False)
    seeded.add_argument('--seed', type=int, required=True, help='master seed')

    output = argparse.ArgumentParser(add_help=False)
    output.add_argument('--format', choices=harness.FORMATS, default='csv')
    output.add_argument('--out', default=None, help='output file (default stdout)')

    # estimate
    p = sub.add_parser('estimate', parents=[common], help='entropy estimate of a sample file')
    p.add_argument('file', help='one value per line, # starts a comment')
    p.add_argument('--estimator', choices=ESTIMATOR_IDS, default='kernel')
    p.add_argument('--spec', default=None, help='full estimator spec, e.g. "wg:m=4"')
    p.add_argument('--m', type=int, default=None, help='spacing window')
    p.add_argument('--h', type=float, default=None, help='kernel bandwidth')
    p.add_argument('--eps', type=float, default=0.01, help='trimming')
    p.add_argument('--kernel', default='gaussian')
    p.add_argument('--quad-tol', type=float, default=1e-8)
    p.add_argument('--quad-max-nodes', type=int, default=4097)
    p.add_argument('--null', default='normal', help='null shape of the parzen estimators')
    p.add_argument('--first-cell', choices=('clamp', 'extrapolate'), default='clamp')
    p.add_argument('--short-range', action='store_true', help='correa: sum over i = 1..n-m')
    p.add_argument('--symmetric', action='store_true', help='ebrahimi: 1 + (n-i)/m top weights')
    p.add_argument('--strict', action='store_true', help='yousefzadeh: minus sign in X_{n+1;n}')
    p.set_defaults(func=cmd_estimate)

    # simulate / contaminate
    for name, func, help_ in (('simulate', cmd_simulate, 'Monte-Carlo bias, variance and MSE'),
                              ('contaminate', cmd_contaminate, 'the same with contaminated samples')):
        p = sub.add_parser(name, parents=[common, output], help=help_)
        p.add_argument('--plan', default=None, help='json plan file, replaces the flags below')
        p.add_argument('--dist', default=None)
        p.add_argument('--n', type=int, default=None)
        p.add_argument('--reps', type=int, default=None)
        p.add_argument('--estimators', nargs='+', default=None, help='estimator specs')
        p.add_argument('--seed', type=int, default=None, help='master seed (required without --plan)')
        if name == 'contaminate':
            p.add_argument('--contaminant', default='uniform')
            p.add_argument('--fraction', type=float, default=0.04, help='contamination proportion')
        p.set_defaults(func=func)

    # bandwidth
    p = sub.add_parser('bandwidth', parents=[common, seeded], help='MSE grid search for h')
    p.add_argument('--dist', required=True)
    p.add_argument('--n', type=int, required=True)
    p.add_argument('--reps', type=int, default=200)
    p.add_argument('--grid', default='0.001:1:40', help='min:max:count, log spaced')
    p.add_argument('--eps', type=float, default=0.01)
    p.add_argument('--kernel', default='gaussian')
    p.add_argument('--out', default=None)
    p.add_argument('--plot', default=None, help='save the MSE curve to this image file')
    p.set_defaults(func=cmd_bandwidth)

    # calibrate
    p = sub.add_parser('calibrate', parents=[common, seeded], help='critical values of the normality test')
    p.add_argument('--n', type=int, nargs='+', required=True)
    p.add_argument('--alpha', type=float, nargs='+', default=list(normality.DEFAULT_ALPHAS))
    p.add_argument('--reps', type=int, default=20000)
    p.add_argument('--h', type=float, default=None, help='bandwidth (default: tabulated null value)')
    p.add_argument('--eps', type=float, default=0.01)
    p.add_argument('--estimator', dest='estimator_spec', default=None,
                   help='calibrate the statistic of another estimator, e.g. "wg:m=4"')
    p.add_argument('--out', required=True, help='critical value table file')
    p.set_defaults(func=cmd_calibrate)

    # test
    p = sub.add_parser('test', parents=[common], help='test a sample file for normality')
    p.add_argument('file')
    p.add_argument('--table', required=True, help='critical value table file')
    p.add_argument('--alpha', type=float, default=0.05)
    p.set_defaults(func=cmd_test)

    # power
    p = sub.add_parser('power', parents=[common, seeded], help='power against an alternative')
    p.add_argument('--dist', required=True)
    p.add_argument('--n', type=int, required=True)
    p.add_argument('--alpha', type=float, default=0.05)
    p.add_argument('--reps', type=int, default=20000)
    p.add_argument('--table', required=True)
    p.add_argument('--h', type=float, default=None, help='replace the table bandwidth')
    p.set_defaults(func=cmd_power)

    # tables
    p = sub.add_parser('tables', parents=[common, seeded, output], help='reproduce a built-in table')
    p.add_argument('--table', required=True, help='one of %s' % ', '.join(tables.TABLE_IDS))
    p.add_argument('--reps', type=int, default=None)
    p.add_argument('--eps', type=float, default=0.01, help='kernel trimming')
    p.set_defaults(func=cmd_tables)

    return parser


def _report(err):
    print('qdentropy: error: %s: %s' % (type(err).__name__, err), file=sys.stderr)


def main(argv=None):
    """ run the command line; returns the exit status """
    parser = build_parser()
    args = parser.parse_args(argv)

    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.INFO,
                        format='%(levelname)s %(name)s: %(message)s', stream=sys.stderr)

    try:
        args.func(args)
    except ConfigError as err:
        _report(err)
        return EXIT_USAGE
    except (DataError, DomainError, MissingCalibration) as err:
        _report(err)
        return EXIT_DATA
    except NumericalError as err:
        _report(err)
        return EXIT_NUMERICAL
    except EntropyError as err:
        _report(err)
        return EXIT_NUMERICAL
    return EXIT_OK


if __name__ == '__main__':
    sys.exit(main())
