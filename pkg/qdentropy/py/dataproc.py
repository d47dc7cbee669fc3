''' data input and output for qdentropy: sample files, critical-value tables and plans '''

# built-in
import io
import os
import sys
import json
import logging

# third party
import numpy as np
import pandas as pd

# local
from .utils import format_sig
from ..errors import ConfigError, DataError


logger = logging.getLogger(__name__)

CRITICAL_COLUMNS = ('n', 'alpha', 'critical_value', 'reps', 'seed', 'h', 'eps', 'estimator')


###############################################################################
# samples
###############################################################################

def parse_sample(lines, source='<input>'):
    '''
    one numeric value per line; blank lines and lines starting with '#' are skipped

    whitespace separated values on a line are all read, so "0 1 2 3" is a sample of
    four values.
    '''
    values = []
    for lineno, line in enumerate(lines, start=1):
        line = line.strip()
        if not line or line.startswith('#'):
            continue
        for token in line.replace(',', ' ').split():
            try:
                values.append(float(token))
            except ValueError:
                raise DataError('%s line %d: cannot parse "%s" as a number' % (source, lineno, token))

    values = np.array(values, dtype=float)
    if not np.all(np.isfinite(values)):
        raise DataError('%s: sample contains non-finite values' % source)
    if values.size < 2:
        raise DataError('%s: a sample needs n >= 2 values, got %d' % (source, values.size))
    return values


def read_sample(path):
    ''' read a sample file (see parse_sample) from a path or an open stream '''
    if hasattr(path, 'read'):
        return parse_sample(path.read().splitlines(), getattr(path, 'name', '<stream>'))
    if not os.path.isfile(path):
        raise DataError('sample file %s not found' % path)
    with open(path) as f:
        return parse_sample(f.read().splitlines(), path)


###############################################################################
# critical-value tables
###############################################################################

def critical_table_frame(table):
    ''' DataFrame with CRITICAL_COLUMNS, one row per (n, alpha) '''
    rows = [dict(n=r.n, alpha=r.alpha, critical_value=r.value, reps=r.reps, seed=r.seed,
                 h=r.h, eps=r.eps, estimator=r.estimator) for r in table]
    return pd.DataFrame(rows, columns=list(CRITICAL_COLUMNS))


def save_critical_table(table, path, metadata=None):
    '''
    write a CriticalValueTable as csv with a fixed header

    critical values keep full precision so a reloaded table gives the same decisions;
    alpha, h and eps are informational and get 8 significant digits.

    metadata entries are written as leading '# key: value' lines.
    '''
    frame = critical_table_frame(table)
    for col in ('alpha', 'h', 'eps'):
        frame[col] = [format_sig(v) for v in frame[col]]
    frame['critical_value'] = [repr(float(v)) for v in frame['critical_value']]
    header = ''.join('# %s: %s\n' % (k, v) for k, v in (metadata or {}).items())

    with open(path, 'w') as f:
        f.write(header)
        frame.to_csv(f, index=False)
    logger.info('wrote %d critical values to %s', len(frame), path)


def load_critical_table(path):
    ''' read a table written by save_critical_table '''
    from ..stats.normality import CriticalValue, CriticalValueTable

    if not os.path.isfile(path):
        raise DataError('critical value table %s not found' % path)
    with open(path) as f:
        text = f.read()
    try:
        frame = pd.read_csv(io.StringIO(text), comment='#', float_precision='round_trip')
    except (ValueError, pd.errors.ParserError) as err:
        raise DataError('cannot parse critical value table %s: %s' % (path, err))

    missing = set(CRITICAL_COLUMNS) - set(frame.columns)
    if missing:
        raise DataError('critical value table %s lacks columns %s' % (path, sorted(missing)))

    records = [CriticalValue(int(row.n), float(row.alpha), float(row.critical_value),
                             int(row.reps), int(row.seed), str(row.estimator))
               for row in frame.itertuples(index=False)]
    return CriticalValueTable(records)


###############################################################################
# plans
###############################################################################

def load_plan(path):
    '''
    read an experiment plan from a json file

    example:
        {"distribution": "normal(0,1)", "n": 50, "reps": 5000, "seed": 42,
         "estimators": ["vasicek:m=4", "kernel:h=0.0333"],
         "contaminant": "uniform", "eps": 0.04}
    '''
    from ..sim.harness import ExperimentPlan

    if not os.path.isfile(path):
        raise ConfigError('plan file %s not found' % path)
    with open(path) as f:
        try:
            doc = json.load(f)
        except ValueError as err:
            raise ConfigError('plan file %s is not valid json: %s' % (path, err))
    if not isinstance(doc, dict):
        raise ConfigError('plan file %s must hold a json object' % path)
    return ExperimentPlan.from_dict(doc)


def write_text(path, text):
    ''' write text to path, or to stdout when path is None or '-' '''
    if path is None or path == '-':
        sys.stdout.write(text)
        return
    with open(path, 'w') as f:
        f.write(text)
    logger.info('wrote %s', path)
