"""
scalar special functions for the entropy estimators

thin, domain-checked wrappers around scipy.special. Only positive real arguments
are supported: the estimators never need the negative axis or complex values.
"""

# third party imports
import numpy as np
import scipy.special

# local (our) imports
from ..errors import DomainError


EULER_GAMMA = float(np.euler_gamma)


def euler_gamma():
    """ Euler's constant 0.5772156649015329 """
    return EULER_GAMMA


def _check_positive(name, *args):
    for a in args:
        a = np.asarray(a, dtype=float)
        if not np.all(np.isfinite(a)) or np.any(a <= 0):
            raise DomainError('%s requires positive finite arguments, got %s' % (name, a))


def digamma(x):
    """
    digamma function, d/dx log Gamma(x)

    Parameters:
        x: positive real or array of positive reals
    """
    _check_positive('digamma', x)
    out = scipy.special.psi(x)
    return float(out) if np.ndim(out) == 0 else out


def log_gamma(x):
    """ log Gamma(x) for x > 0 """
    _check_positive('log_gamma', x)
    out = scipy.special.gammaln(x)
    return float(out) if np.ndim(out) == 0 else out


def log_beta(a, b):
    """ log Beta(a, b) = log Gamma(a) + log Gamma(b) - log Gamma(a + b) """
    _check_positive('log_beta', a, b)
    out = scipy.special.betaln(a, b)
    return float(out) if np.ndim(out) == 0 else out


def harmonic(k):
    """ sum_{i=1}^{k} 1/i, with harmonic(0) = 0 """
    assert k >= 0, 'harmonic number needs k >= 0'
    return float(np.sum(1.0 / np.arange(1, k + 1))) if k > 0 else 0.0
