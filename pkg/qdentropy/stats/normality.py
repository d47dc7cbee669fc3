"""
entropy-based test of normality

the statistic compares the entropy of a normal law with the sample variance to an
entropy estimate of the data,

    T = log(sqrt(2 pi s^2)) + 1/2 - H_hat = log(s sqrt(2 pi e)) - H_hat

with s^2 the (1/n) sample variance. The normal law has the largest entropy among
laws with a given variance, so T grows under alternatives and the test rejects for
large T. Critical values are calibrated by simulation under N(0, 1); T is scale
and location invariant so one table serves the whole normal family.
"""

# internal python imports
import math
import logging
from dataclasses import dataclass

# third party imports
import numpy as np

# local (our) imports
from . import qdf
from .bandwidth import BandwidthGrid, grid_search_h
from .distributions import Normal, RngStream, as_sample, parse_distribution, sample
from .registry import EstimatorSpec, parse_estimator
from ..py import utils
from ..errors import ConfigError, DegenerateSample, MissingCalibration


logger = logging.getLogger(__name__)

# MSE-optimal bandwidths of the kernel estimator under N(0, 1)
NORMAL_OPTIMAL_H = {10: 0.157, 20: 0.081, 50: 0.0333}

DEFAULT_ALPHAS = (0.1, 0.05, 0.025, 0.01, 0.005)

MIN_CALIBRATION_REPS = 1000
MIN_TAIL_COUNT = 20


###############################################################################
# types
###############################################################################

def _alpha_key(alpha):
    return round(float(alpha), 12)


@dataclass(frozen=True)
class CriticalValue:
    """ one calibrated entry and how it was obtained """
    n: int
    alpha: float
    value: float
    reps: int
    seed: int
    estimator: str

    @property
    def spec(self):
        return parse_estimator(self.estimator)

    @property
    def h(self):
        tuning = self.spec.tuning
        return tuning.h if isinstance(tuning, qdf.KernelConfig) else float('nan')

    @property
    def eps(self):
        spec = self.spec
        if isinstance(spec.tuning, qdf.KernelConfig):
            return spec.tuning.eps
        return spec.options.get('eps', float('nan'))


class CriticalValueTable:
    """
    critical values of T keyed by (n, alpha)

    for each n the value is nonincreasing in alpha.
    """

    def __init__(self, records=()):
        self._records = {}
        for rec in records:
            self.add(rec)

    def add(self, rec):
        key = (int(rec.n), _alpha_key(rec.alpha))
        self._records[key] = rec
        self._check_monotone(int(rec.n))

    def _check_monotone(self, n):
        rows = sorted((a, r.value) for (m, a), r in self._records.items() if m == n)
        values = [v for _, v in rows]
        if any(b > a for a, b in zip(values[:-1], values[1:])):
            raise ConfigError('critical values for n=%d increase with alpha: %s' % (n, rows))

    def record(self, n, alpha):
        try:
            return self._records[(int(n), _alpha_key(alpha))]
        except KeyError:
            raise MissingCalibration('no critical value calibrated for n=%d, alpha=%g' % (n, alpha))

    def lookup(self, n, alpha):
        return self.record(n, alpha).value

    def __contains__(self, key):
        n, alpha = key
        return (int(n), _alpha_key(alpha)) in self._records

    def __iter__(self):
        return iter(self._records[k] for k in sorted(self._records))

    def __len__(self):
        return len(self._records)

    @property
    def entries(self):
        """ {(n, alpha): critical value} """
        return {k: r.value for k, r in sorted(self._records.items())}


@dataclass(frozen=True)
class TestResult:
    """ outcome of test_normality; reject = statistic >= critical_value """
    statistic: float
    critical_value: float
    alpha: float
    reject: bool
    n: int

    # keep pytest from collecting this class
    __test__ = False


###############################################################################
# statistic
###############################################################################

def null_bandwidth(n, eps=0.01, rng=None, reps=500, grid=None, threads=None, verbose=False):
    """
    bandwidth of the kernel estimator under N(0, 1)

    the tabulated value when n is one of NORMAL_OPTIMAL_H, otherwise a grid search,
    which needs a seed.
    """
    if n in NORMAL_OPTIMAL_H:
        return NORMAL_OPTIMAL_H[n]
    if rng is None:
        raise ConfigError('no tabulated null bandwidth for n=%d; give h or a seed for a grid search' % n)
    logger.info('no tabulated null bandwidth for n=%d, running a grid search', n)
    template = qdf.KernelConfig(h=1.0, eps=eps)
    return grid_search_h(Normal(), n, template, grid or BandwidthGrid.log_spaced(1e-2, 1.0, 25),
                         reps=reps, rng=rng, threads=threads, verbose=verbose).h_star


def _resolve_estimator(cfg=None, estimator=None, h=None):
    if estimator is not None:
        return parse_estimator(estimator)
    if cfg is None:
        if h is None:
            raise ConfigError('the normality statistic needs a KernelConfig, a bandwidth h '
                              'or an estimator spec')
        cfg = qdf.KernelConfig(h=h)
    return EstimatorSpec('kernel', cfg)


def statistic_tn(x, cfg=None, estimator=None, h=None):
    """
    T = log(sqrt(2 pi s^2)) + 1/2 - H_hat

    Parameters:
        x: sample, n >= 2
        cfg: KernelConfig of the kernel entropy estimate
        estimator: EstimatorSpec or spec string, replaces the kernel estimate
        h: bandwidth, shorthand for cfg=KernelConfig(h)

    Raises:
        DegenerateSample: zero sample variance
    """
    spec = _resolve_estimator(cfg, estimator, h)
    sample_ = as_sample(x)
    var = np.var(sample_.values)
    if not var > 0:
        raise DegenerateSample('the normality statistic needs a sample with positive variance')
    return float(np.log(np.sqrt(2 * np.pi * var)) + 0.5 - spec.evaluate(sample_).value)


###############################################################################
# calibration and testing
###############################################################################

def critical_index(alpha, reps):
    """ 0-based index of the ceil(alpha R)-th largest value in an ascending sort """
    return reps - int(math.ceil(alpha * reps - 1e-9))


def calibrate_critical_values(n_list, alpha_list=DEFAULT_ALPHAS, reps=20000, cfg=None,
                              rng=None, estimator=None, eps=0.01, threads=None, verbose=False):
    """
    Monte-Carlo critical values of T under N(0, 1)

    for each n, reps normal samples are drawn (replication r from stream r) and the
    critical value at level alpha is the ceil(alpha reps)-th largest statistic.
    Replication errors propagate.

    Parameters:
        n_list: sample sizes
        alpha_list: levels
        reps: replications, >= 1000 with alpha reps >= 20 for every alpha
        cfg: KernelConfig; default h is null_bandwidth(n) for each n
        rng: RngStream or integer master seed
        estimator: use this entropy estimator instead of the kernel one
        eps: trimming when cfg is not given
    """
    if rng is None:
        raise ConfigError('calibration needs a seed')
    rng = rng if isinstance(rng, RngStream) else RngStream(int(rng))
    if reps < MIN_CALIBRATION_REPS:
        raise ConfigError('calibration needs reps >= %d, got %d' % (MIN_CALIBRATION_REPS, reps))
    for alpha in alpha_list:
        if not 0 < alpha < 1:
            raise ConfigError('levels must be in (0, 1), got %s' % alpha)
        if alpha * reps < MIN_TAIL_COUNT:
            raise ConfigError('alpha=%g with reps=%d leaves fewer than %d tail draws'
                              % (alpha, reps, MIN_TAIL_COUNT))

    table = CriticalValueTable()
    for n in n_list:
        if estimator is not None:
            spec = parse_estimator(estimator)
        else:
            ncfg = cfg or qdf.KernelConfig(h=null_bandwidth(n, eps=eps, rng=rng, threads=threads),
                                           eps=eps)
            spec = EstimatorSpec('kernel', ncfg)
        spec.check(n)

        def one_rep(r):
            return statistic_tn(sample(Normal(), n, rng.child(r)), estimator=spec)

        stats = np.sort(utils.indexed_map(one_rep, reps, threads=threads, verbose=verbose,
                                          desc='calibrate n=%d' % n))
        for alpha in alpha_list:
            value = float(stats[critical_index(alpha, reps)])
            table.add(CriticalValue(n, float(alpha), value, reps, rng.master_seed, str(spec)))
        logger.info('calibrated n=%d with %s: %s', n, spec,
                    ', '.join('%g: %.6g' % (a, table.lookup(n, a)) for a in alpha_list))
    return table


def test_normality(x, alpha, table, cfg=None, estimator=None):
    """
    reject normality at level alpha iff T >= the calibrated critical value

    the statistic uses the estimator recorded in the table unless cfg or estimator
    is given.

    Raises:
        MissingCalibration: (n, alpha) is not in the table
    """
    sample_ = as_sample(x)
    rec = table.record(sample_.n, alpha)
    if cfg is None and estimator is None:
        estimator = rec.spec
    stat = statistic_tn(sample_, cfg=cfg, estimator=estimator)
    return TestResult(stat, rec.value, float(alpha), bool(stat >= rec.value), sample_.n)


# not a test case
test_normality.__test__ = False


def power_study(alternative, n, alpha, reps, table, cfg=None, rng=None, estimator=None,
                h=None, threads=None, verbose=False):
    """
    fraction of reps samples from the alternative on which normality is rejected

    Parameters:
        alternative: Distribution or its text form
        n, alpha: must be calibrated in table
        reps: replications
        table: CriticalValueTable
        cfg / estimator: statistic tuning, default the table's estimator
        rng: RngStream or integer master seed
        h: replace only the bandwidth of the table's kernel estimator
    """
    alternative = parse_distribution(alternative)
    if rng is None:
        raise ConfigError('power study needs a seed')
    rng = rng if isinstance(rng, RngStream) else RngStream(int(rng))
    if reps < 1:
        raise ConfigError('power study needs reps >= 1')
    rec = table.record(n, alpha)

    if cfg is not None or estimator is not None:
        spec = _resolve_estimator(cfg, estimator)
    else:
        spec = rec.spec
    if h is not None:
        spec = spec.with_bandwidth(h)

    def one_rep(r):
        return statistic_tn(sample(alternative, n, rng.child(r)), estimator=spec) >= rec.value

    rejected = utils.indexed_map(one_rep, reps, threads=threads, verbose=verbose,
                                 desc='power %s' % alternative)
    power = float(np.mean(rejected))
    logger.info('power against %s (n=%d, alpha=%g, %s): %.4f', alternative, n, alpha, spec, power)
    return power
