"""
Monte-Carlo experiments on the entropy estimators

replication r draws one sample from stream r of the master seed and applies every
estimator of the plan to that same sample. Moments use population (divide by R)
formulas, so mse = variance + bias^2 holds exactly up to rounding.
"""

# internal python imports
import io
import json
import logging
from dataclasses import dataclass, field

# third party imports
import numpy as np
import pandas as pd

# local (our) imports
from .. import __version__
from ..stats.distributions import (RngStream, parse_distribution, sample,
                                   sample_contaminated, true_entropy)
from ..stats.registry import parse_estimator
from ..py import utils
from ..errors import ConfigError, EntropyError


logger = logging.getLogger(__name__)

REPORT_COLUMNS = ('estimator', 'estimate', 'bias', 'variance', 'mse', 'failures')
FORMATS = ('csv', 'json', 'text')


@dataclass(frozen=True)
class ExperimentPlan:
    """
    one Monte-Carlo experiment

    Parameters:
        distribution: law of the clean data (Distribution or its text form)
        n: sample size
        reps: replications, >= 2
        estimators: EstimatorSpecs or spec strings, in report order
        seed: master seed
        contaminant: law of the contaminating draws, with proportion eps
        eps: contamination proportion in [0, 1]
        name: optional label (table id)
    """
    distribution: object
    n: int
    reps: int
    estimators: tuple
    seed: int
    contaminant: object = None
    eps: float = 0.0
    name: str = None

    def __post_init__(self):
        object.__setattr__(self, 'distribution', parse_distribution(self.distribution))
        object.__setattr__(self, 'estimators', tuple(parse_estimator(e) for e in self.estimators))
        if self.contaminant is not None:
            object.__setattr__(self, 'contaminant', parse_distribution(self.contaminant))
        if int(self.n) != self.n or self.n < 2:
            raise ConfigError('plan sample size must be an integer >= 2, got %s' % self.n)
        if int(self.reps) != self.reps or self.reps < 2:
            raise ConfigError('plan needs reps >= 2, got %s' % self.reps)
        if not self.estimators:
            raise ConfigError('plan has no estimators')
        if not 0 <= self.eps <= 1:
            raise ConfigError('contamination proportion must be in [0, 1], got %s' % self.eps)
        if self.eps > 0 and self.contaminant is None:
            raise ConfigError('a contamination proportion needs a contaminant')
        for spec in self.estimators:
            spec.check(self.n)

    @property
    def contaminated(self):
        return self.contaminant is not None

    def draw(self, r):
        """ the sample of replication r """
        rng = RngStream(self.seed, r)
        if self.contaminated:
            return sample_contaminated(self.distribution, self.contaminant, self.eps, self.n, rng)
        return sample(self.distribution, self.n, rng)

    def metadata(self):
        meta = dict(version=__version__, distribution=str(self.distribution), n=self.n,
                    reps=self.reps, seed=self.seed,
                    estimators=[str(e) for e in self.estimators])
        if self.contaminated:
            meta.update(contaminant=str(self.contaminant), eps=self.eps)
        if self.name is not None:
            meta['table'] = self.name
        return meta

    @classmethod
    def from_dict(cls, doc):
        """ plan from a json-like dict (see qdentropy.py.dataproc.load_plan) """
        keys = {'distribution', 'n', 'reps', 'estimators', 'seed', 'contaminant', 'eps', 'name'}
        unknown = set(doc) - keys
        if unknown:
            raise ConfigError('unknown plan keys %s' % sorted(unknown))
        missing = {'distribution', 'n', 'reps', 'estimators', 'seed'} - set(doc)
        if missing:
            raise ConfigError('plan is missing %s' % sorted(missing))
        return cls(**doc)


@dataclass(frozen=True)
class McReport:
    """
    Monte-Carlo summary of one estimator

    bias = mean - true entropy; failures counts errored replications, which are left
    out of the moments.
    """
    estimator_id: str
    mean: float
    bias: float
    variance: float
    mse: float
    failures: int = 0
    reps: int = 0
    label: str = None
    values: np.ndarray = field(default=None, repr=False, compare=False)

    @property
    def eligible(self):
        """ only reports without failures enter table comparisons """
        return self.failures == 0


def summarize(values, truth, spec, reps):
    """ McReport from replication values (nan marks a failure) """
    values = np.asarray(values, dtype=float)
    ok = values[~np.isnan(values)]
    failures = int(values.size - ok.size)
    if ok.size == 0:
        mean = variance = mse = float('nan')
    else:
        mean = float(np.mean(ok))
        variance = float(np.mean((ok - mean) ** 2))
        mse = float(np.mean((ok - truth) ** 2))
    return McReport(spec.estimator, mean, mean - truth, variance, mse, failures, reps,
                    spec.label, values)


def _evaluate_all(plan, r):
    x = plan.draw(r)
    out = np.full(len(plan.estimators), np.nan)
    for k, spec in enumerate(plan.estimators):
        try:
            out[k] = spec.evaluate(x).value
        except EntropyError as err:
            logger.debug('replication %d, %s: %s', r, spec, err)
    return out


def run_experiment(plan, threads=None, verbose=False):
    """
    bias, variance and MSE of every estimator of the plan

    the reference is the entropy of the clean distribution, also for contaminated
    plans. Results do not depend on the thread count.

    Returns:
        list of McReport in plan order
    """
    truth = true_entropy(plan.distribution)
    logger.info('experiment %s: n=%d, reps=%d, seed=%d, H=%.8f', plan.name or plan.distribution,
                plan.n, plan.reps, plan.seed, truth)

    values = np.stack(utils.indexed_map(lambda r: _evaluate_all(plan, r), plan.reps,
                                        threads=threads, verbose=verbose,
                                        desc=str(plan.name or plan.distribution)))

    reports = [summarize(values[:, k], truth, spec, plan.reps)
               for k, spec in enumerate(plan.estimators)]
    for rep in reports:
        if not rep.eligible:
            logger.warning('%s failed on %d of %d replications', rep.label, rep.failures, plan.reps)
    return reports


def run_contamination(plan, threads=None, verbose=False):
    """ run_experiment for a plan with a contaminant; the reference is the clean entropy """
    if not plan.contaminated:
        raise ConfigError('run_contamination needs a plan with a contaminant')
    return run_experiment(plan, threads=threads, verbose=verbose)


###############################################################################
# tables
###############################################################################

def reports_frame(reports, published=None):
    """
    DataFrame with the report columns, in report order

    Parameters:
        reports: list of McReport
        published: optional {label or estimator id: published mse}, adds the
            published_mse and mse_ratio columns
    """
    rows = [dict(estimator=r.label or r.estimator_id, estimate=r.mean, bias=r.bias,
                 variance=r.variance, mse=r.mse, failures=r.failures) for r in reports]
    frame = pd.DataFrame(rows, columns=list(REPORT_COLUMNS))
    if published:
        pub = [published.get(r.label, published.get(r.estimator_id, np.nan)) for r in reports]
        frame['published_mse'] = pub
        frame['mse_ratio'] = frame['mse'] / frame['published_mse']
    return frame


def _rounded(frame, digits):
    out = frame.copy()
    for col in out.columns:
        if col != 'estimator' and col != 'failures':
            out[col] = [float(utils.format_sig(v, digits)) for v in out[col]]
    return out


def assemble_table(reports, format='csv', metadata=None, published=None, digits=8):
    """
    render reports as csv, json or text with 8 significant digits

    csv and text carry the metadata as leading '#' lines; json wraps the rows as
    {"metadata": ..., "rows": [...]}.
    """
    if format not in FORMATS:
        raise ConfigError('unknown table format "%s", expected one of %s' % (format, FORMATS))
    frame = _rounded(reports_frame(reports, published), digits)
    metadata = metadata or {}

    if format == 'json':
        rows = json.loads(frame.to_json(orient='records', double_precision=15))
        return json.dumps(dict(metadata=metadata, rows=rows), indent=2) + '\n'

    header = ''.join('# %s: %s\n' % (k, v) for k, v in metadata.items())
    if format == 'csv':
        return header + frame.to_csv(index=False, float_format='%.{}g'.format(digits))
    return header + frame.to_string(index=False, float_format=lambda v: utils.format_sig(v, digits)) + '\n'


def read_table(text):
    """ parse a csv table written by assemble_table """
    return pd.read_csv(io.StringIO(text), comment='#')
