"""
smoothing kernels for the quantile density estimator

each kernel is a density on the real line with a bounded derivative, together with
the two constants the AMSE bandwidth formula needs.
"""

# internal python imports
from dataclasses import dataclass
from typing import Callable

# third party imports
import numpy as np
import scipy.stats

# local (our) imports
from ..errors import ConfigError


@dataclass(frozen=True)
class Kernel:
    """
    Parameters:
        name: registry name
        pdf: vectorized kernel function K(z)
        int_k2: integral of K(z)^2
        int_x2k: integral of z^2 K(z)
    """
    name: str
    pdf: Callable
    int_k2: float
    int_x2k: float

    def __call__(self, z):
        return self.pdf(z)


def _biweight(z):
    z = np.asarray(z, dtype=float)
    return np.where(np.abs(z) < 1, 15 / 16 * (1 - z ** 2) ** 2, 0.0)


KERNELS = {
    'gaussian': Kernel('gaussian', scipy.stats.norm.pdf, 1 / (2 * np.sqrt(np.pi)), 1.0),
    'biweight': Kernel('biweight', _biweight, 5 / 7, 1 / 7),
}


def get_kernel(name):
    """ look up a kernel by name (Kernel instances pass through) """
    if isinstance(name, Kernel):
        return name
    try:
        return KERNELS[name]
    except KeyError:
        raise ConfigError('unknown kernel "%s", expected one of %s' % (name, sorted(KERNELS)))
