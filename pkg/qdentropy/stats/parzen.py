"""
location-scale entropy estimators (experimental)

under the null family F(x) = F0((x - mu) / sigma) the density-quantile of the
data is d(t) = f0(Q0(t)) q(t) / sigma. The two estimators here plug in a quantile
density estimate, normalize by

    sigma_hat = int f0(Q0(t)) q_hat(t) dt

and return int log d_hat(t) dt, which tends to 0 when the data follow the null.
Both integrals are trimmed to [eps, 1-eps] with eps-weighted endpoint terms, the
same way as the kernel entropy estimator.

the star variant uses the kernel quantile density; the tilde variant uses the
derivative of the piecewise-linear sample quantile, which is constant on each
cell ((i-1)/n, i/n].
"""

# internal python imports
import logging
from dataclasses import dataclass, field

# third party imports
import numpy as np
import scipy.integrate
import scipy.special

# local (our) imports
from .base import EntropyEstimate
from .distributions import Distribution, Normal, as_sample, parse_distribution
from .qdf import _as_config, _log_qdf, qdf_hat, refined_simpson
from ..errors import ConfigError, DegenerateSpacings, DomainError


logger = logging.getLogger(__name__)

FIRST_CELL_RULES = ('clamp', 'extrapolate')

# Gauss-Legendre nodes per cell for the tilde integrals
_GL_NODES, _GL_WEIGHTS = scipy.special.roots_legendre(8)


@dataclass(frozen=True)
class LocationScaleNull:
    """
    the null family F(x) = F0((x - mu) / sigma)

    Parameters:
        shape: the standardized law F0, Normal(0, 1) by default
    """
    shape: Distribution = field(default_factory=Normal)

    def __post_init__(self):
        object.__setattr__(self, 'shape', parse_distribution(self.shape))

    def density_quantile(self, t):
        """ f0(Q0(t)) """
        return self.shape.pdf(self.shape.quantile(t))

    def log_density_quantile_integral(self, lo, hi):
        """ int_lo^hi log f0(Q0(t)) dt, data-free """
        fn = lambda t: np.log(self.density_quantile(t))
        value, _ = scipy.integrate.quad(fn, lo, hi, limit=200)
        return value


def _as_null(null):
    if null is None:
        return LocationScaleNull()
    if isinstance(null, LocationScaleNull):
        return null
    return LocationScaleNull(null)


###############################################################################
# piecewise-linear sample quantile
###############################################################################

def _padded_order_stats(xs, first_cell):
    """ [X_{0;n}, X_{1;n}, ..., X_{n;n}] """
    if first_cell not in FIRST_CELL_RULES:
        raise ConfigError('first_cell must be one of %s, got "%s"' % (FIRST_CELL_RULES, first_cell))
    n = xs.size
    if first_cell == 'clamp':
        x0 = xs[0]
    else:
        x0 = xs[0] - n / (n - 1) * (xs[1] - xs[0])
    return np.concatenate([[x0], xs])


def _cell_index(t, n):
    """ i with (i-1)/n < t <= i/n """
    return np.clip(np.ceil(t * n).astype(int), 1, n)


def sample_quantile_tilde(x, t, first_cell='clamp'):
    """
    Q(t) = n (i/n - t) X_{i-1;n} + n (t - (i-1)/n) X_{i;n}   for (i-1)/n < t <= i/n

    Parameters:
        x: sample
        t: real or array in (0, 1]
        first_cell: 'clamp' sets X_{0;n} = X_{1;n}; 'extrapolate' continues the
            line through X_{1;n}, X_{2;n} with slope n/(n-1)
    """
    xs = as_sample(x).sorted_view
    t = np.asarray(t, dtype=float)
    if np.any(~(t > 0)) or np.any(~(t <= 1)):
        raise DomainError('sample quantile requires 0 < t <= 1')

    n = xs.size
    ext = _padded_order_stats(xs, first_cell)
    i = _cell_index(t, n)
    out = n * (i / n - t) * ext[i - 1] + n * (t - (i - 1) / n) * ext[i]
    return float(out) if out.ndim == 0 else out


def sample_qdf_tilde(x, first_cell='clamp'):
    """ the slopes n (X_{i;n} - X_{i-1;n}) of the sample quantile on cells i = 1..n """
    xs = as_sample(x).sorted_view
    return xs.size * np.diff(_padded_order_stats(xs, first_cell))


###############################################################################
# estimators
###############################################################################

def parzen_entropy_star(x, null=None, cfg=None, h=None, eps=None):
    """
    trimmed int log d(t) dt with d(t) = f0(Q0(t)) q_hat(t) / sigma_hat and q_hat
    the kernel quantile density estimate

    Parameters:
        x: sample
        null: LocationScaleNull, a Distribution or its text form (default normal)
        cfg: KernelConfig, or give h (and optionally eps) directly

    Raises:
        NonPositiveQdf: q_hat <= 0 at an endpoint or a quadrature node
        QuadratureNotConverged: see qdf.refined_simpson
    """
    null = _as_null(null)
    cfg = _as_config(cfg, h=h, eps=eps)
    sample = as_sample(x)
    eps = cfg.eps
    lo, hi = eps, 1 - eps
    ends = np.array([lo, hi])

    weighted = lambda t: null.density_quantile(t) * qdf_hat(sample, t, cfg)
    log_weighted = lambda t: np.log(null.density_quantile(t)) + _log_qdf(sample, t, cfg)

    # positivity is checked by _log_qdf before the scale integral runs
    end_logs = log_weighted(ends)
    body, nodes = refined_simpson(weighted, lo, hi, cfg.quadrature)
    scale = eps * np.sum(np.exp(end_logs)) + body

    log_body, log_nodes = refined_simpson(log_weighted, lo, hi, cfg.quadrature)
    value = eps * np.sum(end_logs) + log_body - np.log(scale)
    logger.debug('parzen star: sigma_hat %.6g, nodes %d / %d', scale, nodes, log_nodes)
    return EntropyEstimate(float(value), 'parzen-star', sample.n, cfg)


def _cell_pieces(n, lo, hi):
    """ indices and [a, b] limits of the cells ((i-1)/n, i/n] that meet [lo, hi] """
    first, last = _cell_index(np.array([lo, hi]), n)
    i = np.arange(first, last + 1)
    a = np.maximum((i - 1) / n, lo)
    b = np.minimum(i / n, hi)
    keep = b > a
    return i[keep], a[keep], b[keep]


def _tilde_scale(x, null=None, eps=0.01, first_cell='clamp'):
    """
    sigma_hat = eps w(eps) q(eps) + eps w(1-eps) q(1-eps) + int_eps^{1-eps} w q dt

    with w = f0 o Q0 and q the sample quantile slopes. Each cell is integrated
    by Gauss-Legendre since w is smooth inside a cell.
    """
    null = _as_null(null)
    if not 0 < eps < 0.5:
        raise ConfigError('trimming eps must be in (0, 1/2), got %s' % eps)
    sample = as_sample(x)
    n = sample.n
    slopes = sample_qdf_tilde(sample, first_cell)

    i, a, b = _cell_pieces(n, eps, 1 - eps)
    if np.any(~(slopes[i - 1] > 0)):
        bad = i[~(slopes[i - 1] > 0)]
        raise DegenerateSpacings('parzen tilde: zero sample quantile slope on cells %s inside '
                                 '[%g, %g] (tied observations or clamped first cell)'
                                 % (bad.tolist(), eps, 1 - eps))

    half = 0.5 * (b - a)
    t = (0.5 * (a + b))[:, None] + half[:, None] * _GL_NODES[None, :]
    cell_w = half * (null.density_quantile(t) @ _GL_WEIGHTS)

    ends = np.array([eps, 1 - eps])
    end_terms = eps * null.density_quantile(ends) * slopes[_cell_index(ends, n) - 1]
    return float(np.sum(end_terms) + np.sum(cell_w * slopes[i - 1])), (i, a, b, slopes)


def tilde_scale(x, null=None, eps=0.01, first_cell='clamp'):
    """ scale estimate sigma_hat of the tilde estimator """
    return _tilde_scale(x, null, eps=eps, first_cell=first_cell)[0]


def parzen_entropy_tilde(x, null=None, eps=0.01, first_cell='clamp'):
    """
    trimmed int log d(t) dt with d(t) = f0(Q0(t)) q(t) / sigma_hat and q the
    piecewise-constant derivative of the sample quantile

    the integral of log q is a sum over cells, and the data-free integral of
    log f0(Q0(t)) is done once by adaptive quadrature.

    Parameters:
        x: sample
        null: LocationScaleNull, a Distribution or its text form (default normal)
        eps: trimming, 0 < eps < 1/2
        first_cell: rule for X_{0;n}, see sample_quantile_tilde

    Raises:
        DegenerateSpacings: a cell inside [eps, 1-eps] has zero slope
    """
    null = _as_null(null)
    sample = as_sample(x)
    n = sample.n
    scale, (i, a, b, slopes) = _tilde_scale(sample, null, eps=eps, first_cell=first_cell)

    ends = np.array([eps, 1 - eps])
    end_logs = (np.log(null.density_quantile(ends))
                + np.log(slopes[_cell_index(ends, n) - 1]) - np.log(scale))
    body = (np.sum((b - a) * np.log(slopes[i - 1]))
            + null.log_density_quantile_integral(eps, 1 - eps)
            - (1 - 2 * eps) * np.log(scale))

    value = eps * np.sum(end_logs) + body
    tuning = dict(eps=eps, first_cell=first_cell, null=str(null.shape))
    return EntropyEstimate(float(value), 'parzen-tilde', n, tuning)
