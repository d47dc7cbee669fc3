"""
built-in reproduction plans with their published values

simulation tables compare Vasicek, van Es, Correa, Wieczorkowski-Grzegorzewski and
the kernel estimator on 5000 replications of n = 10, 20 or 50 draws. The
critical-value table calibrates the normality statistic under N(0, 1) and the
power table estimates its power against four alternatives, next to the spacing
based statistics.
"""

# internal python imports
import logging
from dataclasses import dataclass, field

# third party imports
import numpy as np
import pandas as pd

# local (our) imports
from . import harness
from ..stats import normality
from ..stats.qdf import KernelConfig
from ..stats.registry import EstimatorSpec
from ..errors import ConfigError


logger = logging.getLogger(__name__)

SIMULATION_REPS = 5000
TEST_REPS = 20000

# estimator labels in table order
LABELS = ('vasicek', 'vanes', 'correa', 'wg', 'kernel')


@dataclass(frozen=True)
class PublishedRow:
    estimate: float
    bias: float
    variance: float
    mse: float


@dataclass(frozen=True)
class SimulationTable:
    """
    a bias / variance / MSE table

    Parameters:
        table_id: short id used by the cli
        distribution: clean law
        n, m, h: sample size, spacing window and kernel bandwidth
        published: {label: PublishedRow}
        contaminant, eps: contamination, if any
    """
    table_id: str
    caption: str
    distribution: str
    n: int
    m: int
    h: float
    published: dict = field(repr=False)
    contaminant: str = None
    eps: float = 0.0

    def estimators(self, kernel_eps=0.01):
        specs = [EstimatorSpec.build(name, m=self.m, label=name) for name in LABELS[:-1]]
        specs.append(EstimatorSpec.build('kernel', h=self.h, eps=kernel_eps, label='kernel'))
        return tuple(specs)

    def plan(self, reps=SIMULATION_REPS, seed=0, kernel_eps=0.01):
        return harness.ExperimentPlan(self.distribution, self.n, reps, self.estimators(kernel_eps),
                                      seed, contaminant=self.contaminant, eps=self.eps,
                                      name=self.table_id)

    @property
    def published_mse(self):
        return {label: row.mse for label, row in self.published.items()}

    @property
    def winner(self):
        """ label with the smallest published MSE """
        return min(self.published, key=lambda k: self.published[k].mse)


def _rows(*values):
    return {label: PublishedRow(*row) for label, row in zip(LABELS, values)}


SIMULATION_TABLES = {t.table_id: t for t in (
    SimulationTable('1', 'N(0,1), n=10, m=3, h=0.157', 'normal(0,1)', 10, 3, 0.157, _rows(
        (0.85912656, -0.55981198, 0.07087153, 0.38419010),
        (1.18654642, -0.23239211, 0.08296761, 0.13689074),
        (1.03589137, -0.38304716, 0.07197488, 0.21862803),
        (1.28060252, -0.13833601, 0.07087153, 0.08993751),
        (1.33450763, -0.08443091, 0.07002134, 0.07707990))),
    SimulationTable('2', 'N(0,1), n=20, m=3, h=0.081', 'normal(0,1)', 20, 3, 0.081, _rows(
        (1.10631536, -0.31262317, 0.03182798, 0.12952939),
        (1.24420922, -0.17472931, 0.03532923, 0.06582424),
        (1.24195337, -0.17698517, 0.03230411, 0.06359555),
        (1.36008222, -0.05885632, 0.03182798, 0.03526021),
        (1.43214893, 0.01321040, 0.02920368, 0.02934899))),
    SimulationTable('3', 'N(0,1), n=50, m=4, h=0.0333', 'normal(0,1)', 50, 4, 0.0333, _rows(
        (1.26025240, -0.15868613, 0.01126393, 0.03643395),
        (1.29349009, -0.12544844, 0.01210094, 0.02782615),
        (1.35839575, -0.06054278, 0.01148899, 0.01514293),
        (1.40287628, -0.01606226, 0.01126393, 0.01151066),
        (1.42053167, 0.00159314, 0.01085020, 0.01084189))),
    SimulationTable('3U', 'uniform, n=50, m=4, h=0.522', 'uniform', 50, 4, 0.522, _rows(
        (-0.142936202, -0.142936202, 0.001730435, 0.022161020),
        (-0.000811817, -0.000811817, 0.003428982, 0.003429298),
        (-0.048455430, -0.048455430, 0.001780981, 0.004128732),
        (-0.0003123278, -0.0003123278, 0.0017304350, 0.0017303596),
        (-0.001503714, -0.001503714, 0.001005806, 0.001007967))),
    SimulationTable('3W', 'Weibull(2,0.5), n=50, m=4, h=0.6104', 'weibull(2,0.5)', 50, 4, 0.6104, _rows(
        (-0.260890919, -0.163204390, 0.009863565, 0.036497265),
        (-0.20651205, -0.10882552, 0.01139025, 0.02323097),
        (-0.163758480, -0.066071951, 0.009953612, 0.014317124),
        (-0.118267044, -0.020580515, 0.009863565, 0.010285150),
        (-0.08547838, 0.01220815, 0.01945246, 0.01959761))),
    SimulationTable('3E', 'exponential(1), n=50, m=4, h=0.712', 'exp(1)', 50, 4, 0.712, _rows(
        (0.85568859, -0.14431141, 0.02233983, 0.04316114),
        (0.92199497, -0.07800503, 0.02313389, 0.02921405),
        (0.95566152, -0.04433848, 0.02266589, 0.02462726),
        (0.998312466, -0.001687534, 0.022339826, 0.022338205),
        (1.31010002, 0.31010002, 0.06795533, 0.16410376))),
    SimulationTable('3T3', 't(3), n=50, m=4, h=0.0336', 't(3)', 50, 4, 0.0336, _rows(
        (1.63721785, -0.13625972, 0.02903662, 0.04759752),
        (1.58175430, -0.19172327, 0.02360710, 0.06036019),
        (1.74658234, -0.02689523, 0.03048823, 0.03120548),
        (1.779841726, 0.006364154, 0.029036620, 0.029071315),
        (1.75882993, -0.01464764, 0.02592497, 0.02613434))),
    SimulationTable('3T5', 't(5), n=50, m=4, h=0.344', 't(5)', 50, 4, 0.344, _rows(
        (1.48096844, -0.14653424, 0.02047265, 0.04194084),
        (1.46376243, -0.16374024, 0.01830929, 0.04511650),
        (1.58556888, -0.04193379, 0.02135329, 0.02310746),
        (1.623592312, -0.003910361, 0.020472653, 0.020483849),
        (1.621348438, -0.006154234, 0.018522682, 0.018556852))),
    SimulationTable('3C', 'Cauchy, n=50, m=4, h=0.0235', 'cauchy', 50, 4, 0.0235, _rows(
        (2.51810441, -0.01291983, 0.09321374, 0.09336202),
        (2.24258072, -0.28844353, 0.05651327, 0.13970163),
        (2.65247722, 0.12145298, 0.09936347, 0.11409442),
        (2.66072829, 0.12970404, 0.09321374, 0.11001824),
        (2.49016605, -0.04085819, 0.07746897, 0.07912286))),
    SimulationTable('4', 'N(0,1) with 4% uniform contamination, n=50, m=4, h=0.0333',
                    'normal(0,1)', 50, 4, 0.0333, _rows(
        (1.24299668, -0.17594185, 0.01115852, 0.04210290),
        (1.27422798, -0.14471055, 0.01143207, 0.03236179),
        (1.34170579, -0.07723274, 0.01160997, 0.01756326),
        (1.38562055, -0.03331798, 0.01115852, 0.01225745),
        (1.40066144, -0.01827709, 0.01054644, 0.01086995)), contaminant='uniform', eps=0.04),
    SimulationTable('5', 'N(0,1) with 10% uniform contamination, n=50, m=4, h=0.0333',
                    'normal(0,1)', 50, 4, 0.0333, _rows(
        (1.22256006, -0.19637848, 0.01245586, 0.05100791),
        (1.24540126, -0.17353727, 0.01355086, 0.04365249),
        (1.32178766, -0.09715087, 0.01243944, 0.02186529),
        (1.36518393, -0.05375460, 0.01245586, 0.01533296),
        (1.37585099, -0.04308754, 0.01219767, 0.01404201)), contaminant='uniform', eps=0.10),
)}


###############################################################################
# normality test tables
###############################################################################

CRITICAL_ALPHAS = (0.1, 0.05, 0.025, 0.01, 0.005)

PUBLISHED_CRITICAL_VALUES = {
    35: (0.03660258, 0.05896114, 0.07819581, 0.1041396, 0.1229790),
    40: (0.03641781, 0.05732028, 0.07655416, 0.1003001, 0.1177802),
    45: (0.03011983, 0.04910612, 0.06554724, 0.0844859, 0.1004404),
    50: (0.02534047, 0.04232442, 0.05874272, 0.07830533, 0.09371921),
}

# bandwidth used for the calibration runs of the critical-value table
CRITICAL_H = 0.0333

POWER_N = 50
POWER_ALPHA = 0.05

# alternative: (kernel bandwidth, published powers of kernel, wg m=4, wg m=8, ebrahimi, yousefzadeh)
POWER_ALTERNATIVES = {
    'uniform': (0.5297, (0.9999, 0.9262, 0.96685, 0.9275, 0.8768)),
    'weibull(2,1)': (0.6555, (0.8264, 0.3297, 0.33795, 0.4211, 0.3444)),
    't(5)': (0.0310, (0.9306, 0.1358, 0.05530, 0.1484, 0.2345)),
    't(3)': (0.0189, (1.0000, 0.3696, 0.18245, 0.3736, 0.5124)),
}

POWER_COMPETITORS = ('wg:m=4', 'wg:m=8', 'ebrahimi:m=4', 'yousefzadeh:m=4')

TABLE_IDS = tuple(SIMULATION_TABLES) + ('crit', 'power')


def get_table(table_id):
    try:
        return SIMULATION_TABLES[str(table_id).upper()]
    except KeyError:
        raise ConfigError('unknown table "%s", expected one of %s' % (table_id, list(TABLE_IDS)))


def compare_to_published(table_id, reports):
    """
    reports next to the published values of a simulation table

    Returns:
        DataFrame with the report columns plus published_mse, mse_ratio and
        the published estimate
    """
    table = get_table(table_id)
    frame = harness.reports_frame(reports, published=table.published_mse)
    frame['published_estimate'] = [table.published[r].estimate if r in table.published else np.nan
                                   for r in frame['estimator']]
    return frame


def run_simulation_table(table_id, reps=SIMULATION_REPS, seed=0, kernel_eps=0.01,
                         threads=None, verbose=False):
    """ (reports, comparison frame, plan) for a simulation table """
    table = get_table(table_id)
    plan = table.plan(reps=reps, seed=seed, kernel_eps=kernel_eps)
    reports = harness.run_experiment(plan, threads=threads, verbose=verbose)
    return reports, compare_to_published(table.table_id, reports), plan


def run_critical_table(reps=TEST_REPS, seed=0, n_list=tuple(PUBLISHED_CRITICAL_VALUES),
                       alphas=CRITICAL_ALPHAS, h=CRITICAL_H, eps=0.01, threads=None, verbose=False):
    """
    calibrate the critical-value table

    Returns:
        (CriticalValueTable, DataFrame with calibrated and published values)
    """
    cfg = KernelConfig(h=h, eps=eps)
    table = normality.calibrate_critical_values(n_list, alphas, reps, cfg=cfg, rng=seed,
                                                threads=threads, verbose=verbose)
    rows = []
    for n in n_list:
        published = PUBLISHED_CRITICAL_VALUES.get(n)
        for alpha in alphas:
            pub = np.nan
            if published and alpha in CRITICAL_ALPHAS:
                pub = published[CRITICAL_ALPHAS.index(alpha)]
            rows.append(dict(n=n, alpha=alpha, critical_value=table.lookup(n, alpha),
                             published=pub))
    return table, pd.DataFrame(rows)


def run_power_table(reps=TEST_REPS, seed=0, eps=0.01, competitors=POWER_COMPETITORS,
                    threads=None, verbose=False):
    """
    power of the level 0.05 tests against the four alternatives at n = 50

    each statistic is calibrated under N(0, 1) with the tuning it is used with, so
    the kernel statistic gets one calibration per alternative bandwidth.

    Returns:
        DataFrame with one row per alternative and a power and a published column
        per statistic
    """
    rows = []
    competitor_tables = {
        spec: normality.calibrate_critical_values([POWER_N], [POWER_ALPHA], reps, rng=seed,
                                                  estimator=spec, threads=threads, verbose=verbose)
        for spec in competitors}

    for alt, (h, published) in POWER_ALTERNATIVES.items():
        kernel = EstimatorSpec.build('kernel', h=h, eps=eps)
        table = normality.calibrate_critical_values([POWER_N], [POWER_ALPHA], reps, rng=seed,
                                                    estimator=kernel, threads=threads,
                                                    verbose=verbose)
        row = dict(alternative=alt, h=h)
        row['kernel'] = normality.power_study(alt, POWER_N, POWER_ALPHA, reps, table, rng=seed + 1,
                                              threads=threads, verbose=verbose)
        row['kernel_published'] = published[0]
        for k, spec in enumerate(competitors):
            row[spec] = normality.power_study(alt, POWER_N, POWER_ALPHA, reps,
                                              competitor_tables[spec], rng=seed + 1,
                                              threads=threads, verbose=verbose)
            if k + 1 < len(published):
                row[spec + '_published'] = published[k + 1]
        rows.append(row)
    return pd.DataFrame(rows)
