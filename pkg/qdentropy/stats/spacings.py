"""
entropy estimators built from spacings of order statistics

all estimators take a sample and a window m with 1 <= m <= n/2. Order statistics
with an index outside 1..n are clamped: X_{i;n} = X_{1;n} for i < 1 and
X_{i;n} = X_{n;n} for i > n. Any nonpositive logarithm argument raises
DegenerateSpacings; terms are never skipped.
"""

# internal python imports
import logging
from dataclasses import dataclass

# third party imports
import numpy as np

# local (our) imports
from . import special
from .base import EntropyEstimate
from .distributions import as_sample
from ..errors import DataError, DegenerateSpacings, InvalidWindow, MalformedCdf


logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class SpacingConfig:
    """
    window and variant switches for the spacing estimators

    Parameters:
        m: spacing order, 1 <= m <= n/2 for the sample it is applied to
        correa_short_range: sum Correa's terms over i = 1..n-m instead of 1..n
        ebrahimi_symmetric: use 1 + (n-i)/m in the top branch of Ebrahimi's weights
        yousefzadeh_strict: extrapolate X_{n+1;n} downwards, X_n - n/(n-1) (X_n - X_{n-1})
    """
    m: int
    correa_short_range: bool = False
    ebrahimi_symmetric: bool = False
    yousefzadeh_strict: bool = False

    def __post_init__(self):
        if int(self.m) != self.m or self.m < 1:
            raise InvalidWindow('window m must be a positive integer, got %s' % self.m)
        object.__setattr__(self, 'm', int(self.m))

    def check(self, n):
        if 2 * self.m > n:
            raise InvalidWindow('window m=%d exceeds n/2 for n=%d' % (self.m, n))


###############################################################################
# helpers
###############################################################################

def _prepare(x, m):
    """ sorted data, n and a validated config """
    cfg = m if isinstance(m, SpacingConfig) else SpacingConfig(m)
    xs = as_sample(x).sorted_view
    cfg.check(xs.size)
    return xs, xs.size, cfg


def order_stat(xs, idx):
    """ X_{idx;n} for 1-based (possibly out of range) indices, clamped to 1..n """
    return xs[np.clip(idx, 1, xs.size) - 1]


def _log_positive(arg, what):
    arg = np.asarray(arg, dtype=float)
    bad = ~(arg > 0)
    if np.any(bad):
        raise DegenerateSpacings('%s: %d of %d logarithm arguments are <= 0 (tied observations)'
                                 % (what, int(np.sum(bad)), arg.size))
    return np.log(arg)


def _window_spacings(xs, m):
    """ X_{i+m;n} - X_{i-m;n} for i = 1..n """
    i = np.arange(1, xs.size + 1)
    return order_stat(xs, i + m) - order_stat(xs, i - m)


###############################################################################
# estimators
###############################################################################

def vasicek(x, m):
    """
    H = (1/n) sum_i log( n/(2m) (X_{i+m;n} - X_{i-m;n}) )
    """
    xs, n, cfg = _prepare(x, m)
    m = cfg.m
    value = np.mean(_log_positive(n / (2 * m) * _window_spacings(xs, m), 'vasicek'))
    return EntropyEstimate(float(value), 'vasicek', n, cfg)


def van_es(x, m):
    """
    H = 1/(n-m) sum_{i=1}^{n-m} log( (n+1)/m (X_{i+m;n} - X_{i;n}) )
        + sum_{k=m}^{n} 1/k + log m - log(n+1)

    the average of logs enters with a plus sign; with a minus the estimate
    would not converge to H(X).
    """
    xs, n, cfg = _prepare(x, m)
    m = cfg.m
    if m > n - 1:
        raise InvalidWindow('van Es needs m <= n-1, got m=%d, n=%d' % (m, n))

    spacings = xs[m:] - xs[:n - m]
    logs = _log_positive((n + 1) / m * spacings, 'van es')
    value = np.mean(logs) + np.sum(1.0 / np.arange(m, n + 1)) + np.log(m) - np.log(n + 1)
    return EntropyEstimate(float(value), 'vanes', n, cfg)


def correa(x, m, short_range=None):
    """
    local linear regression estimator over windows of 2m+1 order statistics

    H = -(1/n) sum_i log( sum_j (X_{j;n} - Xbar_i)(j - i) / (n sum_j (X_{j;n} - Xbar_i)^2) )

    with j = i-m..i+m and Xbar_i the window mean. The outer sum runs over i = 1..n,
    or over i = 1..n-m when short_range is set.
    """
    xs, n, cfg = _prepare(x, m)
    m = cfg.m
    if short_range is None:
        short_range = cfg.correa_short_range

    top = n - m if short_range else n
    i = np.arange(1, top + 1)[:, None]
    offsets = np.arange(-m, m + 1)[None, :]
    window = order_stat(xs, i + offsets)
    dev = window - window.mean(axis=1, keepdims=True)

    den = n * np.sum(dev ** 2, axis=1)
    if np.any(~(den > 0)):
        raise DegenerateSpacings('correa: %d windows have zero variance' % int(np.sum(~(den > 0))))
    num = np.sum(dev * offsets, axis=1)

    value = -np.sum(_log_positive(num / den, 'correa')) / n
    return EntropyEstimate(float(value), 'correa', n, cfg)


def wg_correction(n, m):
    """
    the deterministic bias correction c(n, m) added to Vasicek's estimate

    c = -log n + log 2m - (1 - 2m/n) Psi(2m) + Psi(n+1) - (2/n) sum_{i=1}^{m} Psi(i+m-1)
    """
    i = np.arange(1, m + 1)
    return float(-np.log(n) + np.log(2 * m) - (1 - 2 * m / n) * special.digamma(2 * m)
                 + special.digamma(n + 1) - 2 / n * np.sum(special.digamma(i + m - 1)))


def wieczorkowski(x, m):
    """ Vasicek's estimate plus the bias correction wg_correction(n, m) """
    est = vasicek(x, m)
    value = est.value + wg_correction(est.n, est.tuning.m)
    return EntropyEstimate(value, 'wg', est.n, est.tuning)


def ebrahimi_weights(n, m, symmetric=False):
    """
    c_i = 1 + (i-1)/m  for 1 <= i <= m
          2            for m+1 <= i <= n-m
          1 + (n-i)/n  for n-m < i <= n  (1 + (n-i)/m when symmetric)
    """
    i = np.arange(1, n + 1)
    top = 1 + (n - i) / (m if symmetric else n)
    return np.where(i <= m, 1 + (i - 1) / m, np.where(i <= n - m, 2.0, top))


def ebrahimi(x, m, symmetric=None):
    """
    H = (1/n) sum_i log( n/(c_i m) (X_{i+m;n} - X_{i-m;n}) )
    """
    xs, n, cfg = _prepare(x, m)
    m = cfg.m
    if symmetric is None:
        symmetric = cfg.ebrahimi_symmetric

    c = ebrahimi_weights(n, m, symmetric=symmetric)
    value = np.mean(_log_positive(n / (c * m) * _window_spacings(xs, m), 'ebrahimi'))
    return EntropyEstimate(float(value), 'ebrahimi', n, cfg)


def extended_order_stats(xs, strict=False):
    """
    [X_{0;n}, X_{1;n}, ..., X_{n;n}, X_{n+1;n}] with linearly extrapolated ends

    X_{0;n}   = X_{1;n} - n/(n-1) (X_{2;n} - X_{1;n})
    X_{n+1;n} = X_{n;n} + n/(n-1) (X_{n;n} - X_{n-1;n})   (minus sign when strict)
    """
    n = xs.size
    step = n / (n - 1)
    lo = xs[0] - step * (xs[1] - xs[0])
    hi = xs[-1] + (-1 if strict else 1) * step * (xs[-1] - xs[-2])
    return np.concatenate([[lo], xs, [hi]])


def cdf_hat(xs, x, strict=False):
    """
    piecewise-linear cdf estimate used by Yousefzadeh's estimator

    on the cell X_{i;n} <= x <= X_{i+1;n}, i = 1..n-1:

        F(x) = (n-1)/(n(n+1)) ( i + 1/(n-1) + (x - X_{i-1;n})/(X_{i+1;n} - X_{i-1;n})
                                            + (x - X_{i;n})/(X_{i+2;n} - X_{i;n}) )

    which follows the three branches (first cell, middle cells, last cell).
    Points outside [X_{1;n}, X_{n;n}] use the end cells.

    Parameters:
        xs: sorted sample, n >= 4
        x: evaluation points
        strict: extrapolate X_{n+1;n} downwards (see SpacingConfig)
    """
    n = xs.size
    ext = extended_order_stats(xs, strict=strict)
    x = np.asarray(x, dtype=float)
    i = np.clip(np.searchsorted(xs, x, side='right'), 1, n - 1)

    # ext is 0-based on X_{0;n}, so ext[k] = X_{k;n}
    d1 = ext[i + 1] - ext[i - 1]
    d2 = ext[i + 2] - ext[i]
    if np.any(d1 == 0) or np.any(d2 == 0):
        raise DegenerateSpacings('yousefzadeh: tied observations make the cdf estimate undefined')
    inner = i + 1 / (n - 1) + (x - ext[i - 1]) / d1 + (x - ext[i]) / d2
    return (n - 1) / (n * (n + 1)) * inner


def yousefzadeh(x, m, strict=None):
    """
    H = sum_i w_i log( (X_{i+m;n} - X_{i-m;n}) / (F(X_{i+m;n}) - F(X_{i-m;n})) )

    with w_i the normalized cdf increments and F = cdf_hat. Raises MalformedCdf if F
    is not monotone on the data.
    """
    xs, n, cfg = _prepare(x, m)
    m = cfg.m
    if strict is None:
        strict = cfg.yousefzadeh_strict
    if n < 4:
        raise DataError('yousefzadeh needs n >= 4, got %d' % n)

    fx = cdf_hat(xs, xs, strict=strict)
    if np.any(np.diff(fx) < 0):
        raise MalformedCdf('yousefzadeh: cdf estimate decreases on the data (strict=%s)' % strict)

    i = np.arange(1, n + 1)
    hi = np.clip(i + m, 1, n) - 1
    lo = np.clip(i - m, 1, n) - 1
    dx = xs[hi] - xs[lo]
    df = fx[hi] - fx[lo]
    if np.any(~(df > 0)):
        raise MalformedCdf('yousefzadeh: cdf estimate has zero increments over a window')

    weights = df / np.sum(df)
    value = np.sum(weights * _log_positive(dx / df, 'yousefzadeh'))
    return EntropyEstimate(float(value), 'yousefzadeh', n, cfg)
