import numpy as np
import pytest


def pytest_addoption(parser):
    parser.addoption('--runslow', action='store_true', default=False,
                     help='run the Monte-Carlo checks marked slow')


def pytest_collection_modifyitems(config, items):
    if config.getoption('--runslow'):
        return
    skip_slow = pytest.mark.skip(reason='needs --runslow')
    for item in items:
        if 'slow' in item.keywords:
            item.add_marker(skip_slow)


@pytest.fixture
def normal_scores():
    """ Phi^-1((i - 1/2) / n) for n = 200 """
    from scipy.stats import norm
    n = 200
    return norm.ppf((np.arange(1, n + 1) - 0.5) / n)


@pytest.fixture
def normal_sample():
    import qdentropy as qe
    return qe.sample('normal(0,1)', 50, qe.RngStream(7, 0))
