"""
---- qdentropy ----

entropy estimation through the quantile density function.

organization:

the stats folder holds the numerical modules: special functions, the test-bed laws,
the spacing estimators, the kernel quantile density estimator and the entropy
estimate built on it, bandwidth selection, the normality test and the location-scale
estimators. The sim folder runs Monte-Carlo experiments and holds the built-in
reproduction tables.

separately, we have a python utilities folder (py), which contains utility modules in
core python/numpy: threading and formatting helpers, file input and output, plots.
"""

__version__ = '0.1'

from . import errors
from . import py
from .py import utils
from .py import dataproc
from .py import plot

from . import stats
from .stats import *

from . import sim
