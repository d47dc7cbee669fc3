"""
kernel quantile density estimation and the trimmed entropy estimator

for the sample order statistics X_{1;n} <= ... <= X_{n;n} and a convolution kernel K
with bandwidth h, the quantile density estimate has the closed form

    q(t) = qbar(t) + h^-1 [ K((t-1)/h) X_{n;n} - K(t/h) X_{1;n} ]
    qbar(t) = h^-1 sum_{i=1}^{n-1} K((t - i/n)/h) (X_{i+1;n} - X_{i;n})

and the entropy estimate trims the unit interval to [eps, 1-eps]:

    H = eps log q(eps) + eps log q(1-eps) + int_eps^{1-eps} log q(t) dt

the integral uses composite Simpson on a uniform grid, doubling the number of
intervals until two successive values agree to the refinement tolerance.
"""

# internal python imports
import logging
from dataclasses import dataclass, field

# third party imports
import numpy as np
import scipy.integrate

# local (our) imports
from .base import EntropyEstimate
from .distributions import as_sample, parse_distribution
from .kernels import get_kernel
from ..errors import ConfigError, DomainError, NonPositiveQdf, QuadratureNotConverged


logger = logging.getLogger(__name__)

# cap on the size of the (t, i) kernel matrix evaluated at once
_MAX_BLOCK = 2 ** 21


###############################################################################
# configuration
###############################################################################

@dataclass(frozen=True)
class QuadratureConfig:
    """
    Parameters:
        start_nodes: odd number of Simpson nodes on the first pass
        node_budget: refinement stops with an error beyond this many nodes.
            When one doubling of start_nodes exceeds it, a single pass is made
            without refinement.
        refinement_tolerance: absolute change between passes accepted as converged
    """
    start_nodes: int = 129
    node_budget: int = 4097
    refinement_tolerance: float = 1e-8

    def __post_init__(self):
        if self.start_nodes < 3 or self.start_nodes % 2 == 0:
            raise ConfigError('start_nodes must be odd and >= 3, got %s' % self.start_nodes)
        if self.node_budget < 3:
            raise ConfigError('node_budget must be >= 3, got %s' % self.node_budget)
        if not self.refinement_tolerance > 0:
            raise ConfigError('refinement_tolerance must be > 0, got %s' % self.refinement_tolerance)


@dataclass(frozen=True)
class KernelConfig:
    """
    tuning of the kernel quantile density estimator

    Parameters:
        h: bandwidth, h > 0
        eps: trimming, 0 < eps < 1/2
        kernel: kernel name ('gaussian' or 'biweight')
        quadrature: QuadratureConfig for the trimmed integral
    """
    h: float
    eps: float = 0.01
    kernel: str = 'gaussian'
    quadrature: QuadratureConfig = field(default_factory=QuadratureConfig)

    def __post_init__(self):
        if not self.h > 0:
            raise ConfigError('bandwidth h must be > 0, got %s' % self.h)
        if not 0 < self.eps < 0.5:
            raise ConfigError('trimming eps must be in (0, 1/2), got %s' % self.eps)
        get_kernel(self.kernel)

    def replace(self, **kwargs):
        """ copy with some fields changed """
        fields = dict(h=self.h, eps=self.eps, kernel=self.kernel, quadrature=self.quadrature)
        fields.update(kwargs)
        return KernelConfig(**fields)


@dataclass(frozen=True)
class QdfCurve:
    """ quantile density estimate tabulated on a grid of t in [eps, 1-eps] """
    t: np.ndarray
    q: np.ndarray

    def __post_init__(self):
        bad = ~(np.asarray(self.q) > 0)
        if np.any(bad):
            k = int(np.argmax(bad))
            raise NonPositiveQdf(self.t[k], self.q[k])


def _as_config(cfg, h=None, eps=None):
    if cfg is None:
        if h is None:
            raise ConfigError('a bandwidth h or a KernelConfig is required')
        return KernelConfig(h=h) if eps is None else KernelConfig(h=h, eps=eps)
    return cfg


###############################################################################
# estimators
###############################################################################

def empirical_quantile(x, t):
    """
    Q_n(t) = X_{k;n} for (k-1)/n < t <= k/n, i.e. k = ceil(t n)

    Parameters:
        x: sample
        t: real or array in (0, 1]
    """
    xs = as_sample(x).sorted_view
    t = np.asarray(t, dtype=float)
    if np.any(~(t > 0)) or np.any(~(t <= 1)):
        raise DomainError('empirical quantile requires 0 < t <= 1')
    n = xs.size
    k = np.clip(np.ceil(t * n).astype(int), 1, n)
    out = xs[k - 1]
    return float(out) if out.ndim == 0 else out


def qdf_hat(x, t, cfg=None, h=None):
    """
    kernel quantile density estimate at t (closed form, no tail truncation)

    the value may be <= 0; callers decide what to do with it.

    Parameters:
        x: sample
        t: real or array in (0, 1)
        cfg: KernelConfig, or give the bandwidth h directly
    """
    cfg = _as_config(cfg, h=h)
    kernel = get_kernel(cfg.kernel)
    xs = as_sample(x).sorted_view
    n = xs.size
    h = cfg.h

    scalar = np.ndim(t) == 0
    t = np.atleast_1d(np.asarray(t, dtype=float))
    spacings = np.diff(xs)
    grid = np.arange(1, n) / n

    out = np.empty(t.shape, dtype=float)
    block = max(1, _MAX_BLOCK // max(n - 1, 1))
    for start in range(0, t.size, block):
        tb = t[start:start + block]
        out[start:start + block] = kernel((tb[:, None] - grid[None, :]) / h) @ spacings

    out += kernel((t - 1) / h) * xs[-1] - kernel(t / h) * xs[0]
    out /= h
    return float(out[0]) if scalar else out


def qdf_curve(x, cfg, nb_nodes=201):
    """ QdfCurve of the estimate on nb_nodes equispaced points of [eps, 1-eps] """
    t = np.linspace(cfg.eps, 1 - cfg.eps, nb_nodes)
    return QdfCurve(t, qdf_hat(x, t, cfg))


def _log_qdf(x, t, cfg):
    q = qdf_hat(x, t, cfg)
    bad = ~(q > 0)
    if np.any(bad):
        k = int(np.argmax(bad))
        raise NonPositiveQdf(t[k], q[k])
    return np.log(q)


def refined_simpson(fn, lo, hi, quad):
    """
    int_lo^hi fn(t) dt by composite Simpson, doubling the intervals until two
    passes agree to quad.refinement_tolerance

    Parameters:
        fn: vectorized integrand of an array of t
        lo, hi: integration limits
        quad: QuadratureConfig

    Returns:
        (integral, number of nodes used)
    """
    nb_nodes = quad.start_nodes
    t = np.linspace(lo, hi, nb_nodes)
    y = fn(t)
    value = scipy.integrate.simpson(y, dx=(hi - lo) / (nb_nodes - 1))
    if 2 * nb_nodes - 1 > quad.node_budget:
        # no room for a second pass
        return value, nb_nodes

    delta = np.inf
    while True:
        new_nodes = 2 * nb_nodes - 1
        if new_nodes > quad.node_budget:
            raise QuadratureNotConverged(delta, nb_nodes, quad.refinement_tolerance)

        # only the midpoints are new
        mid = 0.5 * (t[:-1] + t[1:])
        y_mid = fn(mid)
        t_new = np.empty(new_nodes)
        y_new = np.empty(new_nodes)
        t_new[0::2], t_new[1::2] = t, mid
        y_new[0::2], y_new[1::2] = y, y_mid

        new_value = scipy.integrate.simpson(y_new, dx=(hi - lo) / (new_nodes - 1))
        delta = abs(new_value - value)
        logger.debug('simpson %d -> %d nodes, change %.3g', nb_nodes, new_nodes, delta)

        t, y, value, nb_nodes = t_new, y_new, new_value, new_nodes
        if delta < quad.refinement_tolerance:
            return value, nb_nodes


def trimmed_log_integral(x, cfg):
    """ int_eps^{1-eps} log q(t) dt, see refined_simpson """
    return refined_simpson(lambda t: _log_qdf(x, t, cfg), cfg.eps, 1 - cfg.eps, cfg.quadrature)


def entropy_hat(x, cfg=None, h=None, eps=None):
    """
    trimmed kernel entropy estimate

    H = eps log q(eps) + eps log q(1-eps) + int_eps^{1-eps} log q(t) dt

    Parameters:
        x: sample, n >= 2
        cfg: KernelConfig, or give h (and optionally eps) directly

    Raises:
        NonPositiveQdf: the estimate is <= 0 at an endpoint or a quadrature node
        QuadratureNotConverged: refinement hit the node budget above tolerance
    """
    cfg = _as_config(cfg, h=h, eps=eps)
    sample = as_sample(x)
    eps = cfg.eps

    ends = _log_qdf(sample, np.array([eps, 1 - eps]), cfg)
    integral, _ = trimmed_log_integral(sample, cfg)
    value = eps * ends[0] + eps * ends[1] + integral
    return EntropyEstimate(float(value), 'kernel', sample.n, cfg)


###############################################################################
# reference quantities
###############################################################################

def translation_bound(cfg, nb_nodes=None):
    """
    sup over the trimmed grid of h^-1 [K((t-1)/h) + K(t/h)]

    shifting the data by b changes q by at most |b| times this amount.
    """
    kernel = get_kernel(cfg.kernel)
    nb_nodes = nb_nodes or cfg.quadrature.node_budget
    t = np.linspace(cfg.eps, 1 - cfg.eps, nb_nodes)
    return float(np.max(kernel((t - 1) / cfg.h) + kernel(t / cfg.h)) / cfg.h)


def trimmed_entropy(d, eps=0.01):
    """ H_eps of law d: eps log q(eps) + eps log q(1-eps) + int log q over [eps, 1-eps] """
    d = parse_distribution(d)
    integral, _ = scipy.integrate.quad(lambda u: np.log(d.qdf(u)), eps, 1 - eps, limit=200)
    return float(eps * np.log(d.qdf(eps)) + eps * np.log(d.qdf(1 - eps)) + integral)


def asymptotic_variance(d, eps=None):
    """
    Var{log q(F(X))} = int_0^1 (log q)^2 du - (int_0^1 log q du)^2

    the variance of the limit law of sqrt(n) (H - H_eps); with eps given the
    integrals run over [eps, 1-eps] instead.
    """
    d = parse_distribution(d)
    lo, hi = (0.0, 1.0) if eps is None else (eps, 1 - eps)
    log_q = lambda u: np.log(d.qdf(u))
    m1, _ = scipy.integrate.quad(log_q, lo, hi, limit=200)
    m2, _ = scipy.integrate.quad(lambda u: log_q(u) ** 2, lo, hi, limit=200)
    return float(m2 - m1 ** 2)
