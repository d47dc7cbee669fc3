"""
bandwidth selection for the kernel quantile density estimator

two routes are offered: the asymptotic plug-in bandwidth computed from the analytic
q and q'' of a known law, and a Monte-Carlo grid search minimizing the MSE of the
entropy estimate against the true entropy.
"""

# internal python imports
import logging
from dataclasses import dataclass

# third party imports
import numpy as np

# local (our) imports
from . import qdf
from .distributions import RngStream, parse_distribution, sample, true_entropy
from .kernels import get_kernel
from ..py import utils
from ..errors import ConfigError, NumericalError, SingularCurvature


logger = logging.getLogger(__name__)

# replications allowed to fail before a candidate is dropped
MAX_FAILURE_RATE = 0.01

# t values summarized by amse_bandwidth
SUMMARY_POINTS = (0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8)


@dataclass(frozen=True)
class BandwidthGrid:
    """ strictly increasing positive candidate bandwidths """
    values: tuple

    def __post_init__(self):
        values = tuple(float(v) for v in np.atleast_1d(self.values))
        if len(values) == 0:
            raise ConfigError('bandwidth grid is empty')
        if not all(v > 0 for v in values):
            raise ConfigError('bandwidth candidates must be > 0')
        if any(b <= a for a, b in zip(values[:-1], values[1:])):
            raise ConfigError('bandwidth candidates must be strictly increasing')
        object.__setattr__(self, 'values', values)

    @classmethod
    def log_spaced(cls, lo=1e-3, hi=1.0, count=40):
        return cls(tuple(utils.log_range(lo, hi, count)))

    @classmethod
    def parse(cls, text):
        """ "min:max:count" gives a log-spaced grid """
        try:
            lo, hi, count = str(text).split(':')
            return cls.log_spaced(float(lo), float(hi), int(count))
        except ValueError:
            raise ConfigError('bad grid "%s", expected min:max:count' % text)

    def __len__(self):
        return len(self.values)

    def __iter__(self):
        return iter(self.values)


###############################################################################
# plug-in bandwidth
###############################################################################

def amse_optimal_h(d, t, n, kernel='gaussian'):
    """
    h = { q(t)^2 int K^2 / ( n q''(t)^2 (int x^2 K)^2 ) }^(1/5)

    Parameters:
        d: Distribution or its text form
        t: real or array in (0, 1)
        n: sample size
        kernel: kernel name

    Raises:
        SingularCurvature: q''(t) = 0
    """
    d = parse_distribution(d)
    kernel = get_kernel(kernel)
    if n < 1:
        raise ConfigError('sample size must be >= 1, got %s' % n)

    q = np.asarray(d.qdf(t), dtype=float)
    q2 = np.asarray(d.qdf_second_derivative(t), dtype=float)
    if np.any(q2 == 0):
        raise SingularCurvature('q\'\' vanishes for %s at t=%s, the plug-in bandwidth is undefined'
                                % (d, np.asarray(t)[q2 == 0] if q2.ndim else t))

    h = (q ** 2 * kernel.int_k2 / (n * q2 ** 2 * kernel.int_x2k ** 2)) ** 0.2
    return float(h) if h.ndim == 0 else h


def amse_bandwidth(d, n, kernel='gaussian', points=SUMMARY_POINTS):
    """ median of amse_optimal_h over a few interior t """
    return float(np.median(amse_optimal_h(d, np.asarray(points, dtype=float), n, kernel)))


###############################################################################
# grid search
###############################################################################

@dataclass(frozen=True)
class BandwidthSearch:
    """
    result of grid_search_h

    Parameters:
        grid: the candidates
        mse_curve: MSE per candidate, nan where disqualified
        failures: failed replications per candidate
        disqualified: candidates whose failure rate exceeded MAX_FAILURE_RATE
        h_star: the candidate with the smallest MSE
        reps: replications run
    """
    grid: BandwidthGrid
    mse_curve: np.ndarray
    failures: np.ndarray
    disqualified: np.ndarray
    h_star: float
    reps: int

    def __iter__(self):
        # unpacks as (h_star, mse_curve)
        return iter((self.h_star, self.mse_curve))


def grid_search_h(d, n, cfg=None, grid=None, reps=200, rng=None, threads=None, verbose=False):
    """
    Monte-Carlo MSE of the kernel entropy estimate for each candidate bandwidth

    replication r draws one sample from stream r and evaluates every candidate on it
    (common random numbers), so the curve is deterministic given the seed.

    Parameters:
        d: Distribution or its text form
        n: sample size
        cfg: KernelConfig template (eps, kernel, quadrature); its h is replaced
        grid: BandwidthGrid, default 40 log-spaced points in [1e-3, 1]
        reps: replications, >= 2
        rng: RngStream or integer master seed
        threads: worker cap, see utils.get_nb_threads
        verbose: progress bar
    """
    d = parse_distribution(d)
    grid = grid if isinstance(grid, BandwidthGrid) else (
        BandwidthGrid.log_spaced() if grid is None else BandwidthGrid(grid))
    if reps < 2:
        raise ConfigError('grid search needs reps >= 2, got %s' % reps)
    if rng is None:
        raise ConfigError('grid search needs a seed')
    rng = rng if isinstance(rng, RngStream) else RngStream(int(rng))
    cfg = cfg or qdf.KernelConfig(h=grid.values[0])
    configs = [cfg.replace(h=h) for h in grid]
    truth = true_entropy(d)

    def one_rep(r):
        x = sample(d, n, rng.child(r))
        out = np.full(len(configs), np.nan)
        for k, c in enumerate(configs):
            try:
                out[k] = qdf.entropy_hat(x, c).value
            except NumericalError:
                pass
        return out

    values = np.stack(utils.indexed_map(one_rep, reps, threads=threads, verbose=verbose,
                                        desc='bandwidth %s n=%d' % (d, n)))

    failed = np.isnan(values)
    failures = failed.sum(axis=0)
    disqualified = failures > MAX_FAILURE_RATE * reps
    for h, nb in zip(np.array(grid.values)[disqualified], failures[disqualified]):
        logger.warning('bandwidth h=%.4g disqualified: %d of %d replications failed', h, nb, reps)

    mse_curve = np.full(len(grid), np.nan)
    for k in np.flatnonzero(~disqualified):
        ok = values[~failed[:, k], k]
        mse_curve[k] = np.mean((ok - truth) ** 2)

    if np.all(disqualified):
        raise NumericalError('every bandwidth candidate failed on more than %g%% of replications'
                             % (100 * MAX_FAILURE_RATE))
    best = int(np.nanargmin(mse_curve))
    logger.info('bandwidth search %s n=%d: h*=%.4g, mse %.6g', d, n, grid.values[best], mse_curve[best])
    return BandwidthSearch(grid, mse_curve, failures, disqualified, grid.values[best], reps)
