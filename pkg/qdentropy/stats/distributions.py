"""
test-bed distributions for the entropy estimators

each law knows its quantile function, density, log-density derivatives and exact
entropy. Samples are drawn by inverse transform from seeded, indexable streams so
that replication r of an experiment is a pure function of (master seed, r).
"""

# internal python imports
import re
import logging
from dataclasses import dataclass, field

# third party imports
import numpy as np
import scipy.stats

# local (our) imports
from . import special
from ..errors import ConfigError, DataError, DomainError


logger = logging.getLogger(__name__)


###############################################################################
# laws
###############################################################################

class Distribution(object):
    """
    a univariate law with positive density on its support

    subclasses provide a frozen scipy law (for pdf, cdf, ppf), the first two
    derivatives of the log-density and the closed-form entropy.
    """

    name = None

    def __init__(self, frozen):
        self._frozen = frozen

    # --- basic functions -----------------------------------------------------

    def quantile(self, u):
        """ Q(u) = inf{x : F(x) >= u} for u in (0, 1) """
        u = np.asarray(u, dtype=float)
        if np.any(~(u > 0)) or np.any(~(u < 1)):
            raise DomainError('quantile requires 0 < u < 1')
        return self._frozen.ppf(u)

    def cdf(self, x):
        return self._frozen.cdf(x)

    def pdf(self, x):
        return self._frozen.pdf(x)

    def logpdf(self, x):
        return self._frozen.logpdf(x)

    def logpdf_derivatives(self, x):
        """ (d/dx log f, d^2/dx^2 log f) at x """
        raise NotImplementedError

    def entropy(self):
        """ exact differential entropy in nats """
        raise NotImplementedError

    # --- quantile density ----------------------------------------------------

    def qdf(self, u):
        """ q(u) = dQ/du = 1 / f(Q(u)) """
        return 1.0 / self.pdf(self.quantile(u))

    def qdf_second_derivative(self, u):
        """
        q''(u) = [3 f'(Q)^2 - f''(Q) f(Q)] / f(Q)^5

        with g = (log f)' and g' = (log f)'' this is (2 g^2 - g') / f^3
        """
        x = self.quantile(u)
        g, dg = self.logpdf_derivatives(x)
        return (2 * g ** 2 - dg) / self.pdf(x) ** 3

    # --- text form -----------------------------------------------------------

    def __repr__(self):
        return str(self)

    def __eq__(self, other):
        return type(self) is type(other) and str(self) == str(other)

    def __hash__(self):
        return hash(str(self))


class Normal(Distribution):
    name = 'normal'

    def __init__(self, mean=0.0, sd=1.0):
        if not sd > 0:
            raise ConfigError('normal sd must be > 0, got %s' % sd)
        self.mean = float(mean)
        self.sd = float(sd)
        super().__init__(scipy.stats.norm(loc=self.mean, scale=self.sd))

    def logpdf_derivatives(self, x):
        z = (np.asarray(x, dtype=float) - self.mean) / self.sd
        return -z / self.sd, np.full_like(z, -1.0 / self.sd ** 2)

    def entropy(self):
        return float(np.log(self.sd * np.sqrt(2 * np.pi * np.e)))

    def __str__(self):
        return 'normal(%g,%g)' % (self.mean, self.sd)


class Uniform01(Distribution):
    name = 'uniform'

    def __init__(self):
        super().__init__(scipy.stats.uniform(loc=0.0, scale=1.0))

    def logpdf_derivatives(self, x):
        x = np.asarray(x, dtype=float)
        return np.zeros_like(x), np.zeros_like(x)

    def entropy(self):
        return 0.0

    def __str__(self):
        return 'uniform'


class Weibull(Distribution):
    name = 'weibull'

    def __init__(self, shape=2.0, scale=1.0):
        if not (shape > 0 and scale > 0):
            raise ConfigError('weibull shape and scale must be > 0, got %s, %s' % (shape, scale))
        self.shape = float(shape)
        self.scale = float(scale)
        super().__init__(scipy.stats.weibull_min(self.shape, scale=self.scale))

    def logpdf_derivatives(self, x):
        k, lam = self.shape, self.scale
        x = np.asarray(x, dtype=float)
        g = (k - 1) / x - k * x ** (k - 1) / lam ** k
        dg = -(k - 1) / x ** 2 - k * (k - 1) * x ** (k - 2) / lam ** k
        return g, dg

    def entropy(self):
        k, lam = self.shape, self.scale
        return special.euler_gamma() * (1 - 1 / k) + np.log(lam / k) + 1

    def __str__(self):
        return 'weibull(%g,%g)' % (self.shape, self.scale)


class Exponential(Distribution):
    name = 'exp'

    def __init__(self, rate=1.0):
        if not rate > 0:
            raise ConfigError('exponential rate must be > 0, got %s' % rate)
        self.rate = float(rate)
        super().__init__(scipy.stats.expon(scale=1.0 / self.rate))

    def logpdf_derivatives(self, x):
        x = np.asarray(x, dtype=float)
        return np.full_like(x, -self.rate), np.zeros_like(x)

    def entropy(self):
        return 1 - np.log(self.rate)

    def __str__(self):
        return 'exp(%g)' % self.rate


class StudentT(Distribution):
    name = 't'

    def __init__(self, dof=3.0):
        if not dof >= 1:
            raise ConfigError('student t degrees of freedom must be >= 1, got %s' % dof)
        self.dof = float(dof)
        super().__init__(scipy.stats.t(self.dof))

    def logpdf_derivatives(self, x):
        nu = self.dof
        x = np.asarray(x, dtype=float)
        g = -(nu + 1) * x / (nu + x ** 2)
        dg = -(nu + 1) * (nu - x ** 2) / (nu + x ** 2) ** 2
        return g, dg

    def entropy(self):
        nu = self.dof
        return ((nu + 1) / 2 * (special.digamma((1 + nu) / 2) - special.digamma(nu / 2))
                + 0.5 * np.log(nu) + special.log_beta(nu / 2, 0.5))

    def __str__(self):
        return 't(%g)' % self.dof


class Cauchy(StudentT):
    name = 'cauchy'

    def __init__(self):
        super().__init__(dof=1.0)

    def __str__(self):
        return 'cauchy'


###############################################################################
# text form
###############################################################################

_LAWS = {
    'normal': (Normal, (0, 2)),
    'norm': (Normal, (0, 2)),
    'uniform': (Uniform01, (0, 0)),
    'unif': (Uniform01, (0, 0)),
    'weibull': (Weibull, (1, 2)),
    'exp': (Exponential, (0, 1)),
    'exponential': (Exponential, (0, 1)),
    't': (StudentT, (1, 1)),
    'student': (StudentT, (1, 1)),
    'cauchy': (Cauchy, (0, 0)),
}

_TEXT_RE = re.compile(r'^\s*([a-z]+)\s*(?:\(([^)]*)\))?\s*$')


def parse_distribution(text):
    """
    parse the short text form of a law

    examples: "normal(0,1)", "weibull(2,0.5)", "t(3)", "uniform", "exp(1)", "cauchy"
    """
    if isinstance(text, Distribution):
        return text
    match = _TEXT_RE.match(str(text).lower())
    if match is None or match.group(1) not in _LAWS:
        raise ConfigError('unknown distribution "%s"' % text)

    cls, (min_args, max_args) = _LAWS[match.group(1)]
    args = match.group(2)
    try:
        args = [float(a) for a in args.split(',')] if args and args.strip() else []
    except ValueError:
        raise ConfigError('could not parse parameters of "%s"' % text)
    if not min_args <= len(args) <= max_args:
        raise ConfigError('"%s" takes %d to %d parameters, got %d'
                          % (match.group(1), min_args, max_args, len(args)))
    return cls(*args)


###############################################################################
# samples and random streams
###############################################################################

@dataclass(frozen=True)
class RngStream:
    """
    an addressable random stream

    identical (master_seed, stream_index) pairs give identical variates; distinct
    stream indices are spawned as independent children of the master seed.
    """
    master_seed: int
    stream_index: int = 0

    def __post_init__(self):
        if self.stream_index < 0:
            raise ConfigError('stream index must be nonnegative, got %d' % self.stream_index)

    def generator(self):
        seq = np.random.SeedSequence(self.master_seed, spawn_key=(self.stream_index,))
        return np.random.Generator(np.random.PCG64(seq))

    def child(self, index):
        """ the stream with the same master seed and another index """
        return RngStream(self.master_seed, index)


def open_uniforms(gen, n):
    """ n uniforms strictly inside (0, 1), on a 2^-52 grid offset by half a step """
    return (gen.integers(0, 2 ** 52, size=n) + 0.5) * 2.0 ** -52


@dataclass(frozen=True, eq=False)
class Sample:
    """
    a real data vector and its order statistics

    Parameters:
        values: the observations, n >= 2, all finite
        contaminated: optional boolean mask of draws taken from a contaminant
    """
    values: np.ndarray
    contaminated: np.ndarray = None
    sorted_view: np.ndarray = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        values = np.array(self.values, dtype=float).ravel()
        if values.size < 2:
            raise DataError('a sample needs n >= 2 values, got %d' % values.size)
        if not np.all(np.isfinite(values)):
            raise DataError('sample contains non-finite values')
        values.setflags(write=False)
        sorted_view = np.sort(values)
        sorted_view.setflags(write=False)
        object.__setattr__(self, 'values', values)
        object.__setattr__(self, 'sorted_view', sorted_view)

    @property
    def n(self):
        return self.values.size

    def __len__(self):
        return self.values.size


def as_sample(x):
    """ wrap an array-like as a Sample (Samples pass through) """
    return x if isinstance(x, Sample) else Sample(x)


###############################################################################
# operations
###############################################################################

def quantile(d, u):
    """ Q(u) of law d """
    return parse_distribution(d).quantile(u)


def true_entropy(d):
    """ exact entropy H(X) of law d, in nats """
    return float(parse_distribution(d).entropy())


def sample(d, n, rng):
    """
    n i.i.d. draws from d by inverse transform

    Parameters:
        d: Distribution or its text form
        n: sample size, n >= 2
        rng: RngStream; the output is a deterministic function of (d, n, rng)
    """
    d = parse_distribution(d)
    gen = rng.generator()
    return Sample(d.quantile(open_uniforms(gen, n)))


def sample_contaminated(base, contaminant, eps, n, rng):
    """
    n draws from the mixture (1 - eps) f_base + eps f_contaminant

    the n variate uniforms are drawn first and the n flag uniforms second, so that
    eps = 0 reproduces sample(base, n, rng) bit for bit.
    """
    if not 0 <= eps <= 1:
        raise DomainError('contamination proportion must be in [0, 1], got %s' % eps)
    base = parse_distribution(base)
    contaminant = parse_distribution(contaminant)

    gen = rng.generator()
    u = open_uniforms(gen, n)
    flags = open_uniforms(gen, n) < eps

    values = base.quantile(u)
    if np.any(flags):
        values[flags] = contaminant.quantile(u[flags])
    return Sample(values, contaminated=flags)
