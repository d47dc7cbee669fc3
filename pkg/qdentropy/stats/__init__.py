# numerical modules
from . import special
from . import distributions
from . import base
from . import spacings
from . import kernels
from . import qdf
from . import parzen
from . import registry
from . import bandwidth
from . import normality

from .base import EntropyEstimate
from .distributions import (Normal, Uniform01, Weibull, Exponential, StudentT, Cauchy,
                            RngStream, Sample, parse_distribution, quantile, true_entropy,
                            sample, sample_contaminated)
from .spacings import (SpacingConfig, vasicek, van_es, correa, wieczorkowski, ebrahimi,
                       yousefzadeh)
from .qdf import KernelConfig, QuadratureConfig, qdf_hat, entropy_hat
from .registry import EstimatorSpec, parse_estimator
from .bandwidth import BandwidthGrid, amse_optimal_h, grid_search_h
from .normality import (CriticalValueTable, TestResult, statistic_tn,
                        calibrate_critical_values, test_normality, power_study)
from .parzen import (LocationScaleNull, sample_quantile_tilde, parzen_entropy_star,
                     parzen_entropy_tilde)
