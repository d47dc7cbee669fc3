"""
python utilities for qdentropy
"""

# internal python imports
import os
import logging
from multiprocessing.pool import ThreadPool

# third party imports
import numpy as np
from tqdm import tqdm

# local (our) imports
from ..errors import ConfigError


logger = logging.getLogger(__name__)


def get_nb_threads(threads=None):
    """
    Returns the number of worker threads to use. Default is the available parallelism
    unless the QDENTROPY_THREADS environment variable is set.
    """
    if threads is None:
        threads = os.environ.get('QDENTROPY_THREADS')
        threads = int(threads) if threads else (os.cpu_count() or 1)
    threads = int(threads)
    if threads < 1:
        raise ConfigError('number of threads must be >= 1, got %d' % threads)
    return threads


def indexed_map(fn, nb_items, threads=None, verbose=False, desc=None):
    """
    evaluate fn(i) for i in range(nb_items), possibly on several threads

    results come back in index order, so any reduction over them is independent of
    the schedule.

    Parameters:
        fn: callable of one integer index
        nb_items: number of indices
        threads: cap on the worker count (see get_nb_threads)
        verbose: show a tqdm progress bar on stderr
        desc: progress bar label
    """
    threads = min(get_nb_threads(threads), max(nb_items, 1))
    bar = tqdm(total=nb_items, desc=desc, ncols=80, disable=not verbose)

    if threads == 1:
        out = []
        for i in range(nb_items):
            out.append(fn(i))
            bar.update(1)
    else:
        with ThreadPool(processes=threads) as pool:
            out = []
            for res in pool.imap(fn, range(nb_items), chunksize=max(1, nb_items // (8 * threads))):
                out.append(res)
                bar.update(1)
    bar.close()
    return out


def format_sig(x, digits=8):
    """ format a number with a fixed count of significant digits """
    if x is None or (isinstance(x, float) and np.isnan(x)):
        return 'nan'
    return '%.*g' % (digits, x)


def log_range(lo, hi, count):
    """ count log-spaced points in [lo, hi] """
    if not (0 < lo < hi) or count < 1:
        raise ConfigError('log range needs 0 < lo < hi and count >= 1, got %s:%s:%s' % (lo, hi, count))
    if count == 1:
        return np.array([float(lo)])
    return np.exp(np.linspace(np.log(lo), np.log(hi), int(count)))
