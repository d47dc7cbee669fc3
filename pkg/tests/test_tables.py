import numpy as np
import pytest

from qdentropy.sim import tables
from qdentropy.stats import spacings
from qdentropy.errors import ConfigError


###############################################################################
# built-in plans
###############################################################################

def test_table_ids():
    assert set(tables.TABLE_IDS) >= {'1', '2', '3', '3U', '3W', '3E', '3T3', '3T5', '3C', '4', '5',
                                     'crit', 'power'}


def test_get_table():
    assert tables.get_table('3u').distribution == 'uniform'
    assert tables.get_table(3).h == 0.0333
    with pytest.raises(ConfigError):
        tables.get_table('99')


def test_table_plan():
    plan = tables.get_table('4').plan(reps=10, seed=3)
    assert plan.contaminated and plan.eps == 0.04 and plan.n == 50
    assert [s.label for s in plan.estimators] == list(tables.LABELS)
    assert plan.estimators[-1].tuning.h == 0.0333
    assert plan.metadata()['table'] == '4'


@pytest.mark.parametrize('table_id,winner', [('1', 'kernel'), ('3', 'kernel'), ('3U', 'kernel'),
                                             ('3W', 'wg'), ('3E', 'wg'), ('3T3', 'kernel'),
                                             ('3T5', 'kernel'), ('3C', 'kernel'), ('4', 'kernel'),
                                             ('5', 'kernel')])
def test_published_winners(table_id, winner):
    assert tables.get_table(table_id).winner == winner


@pytest.mark.parametrize('table_id', ['1', '2', '3', '4', '5'])
def test_published_rows_are_consistent(table_id):
    table = tables.get_table(table_id)
    for row in table.published.values():
        assert row.mse == pytest.approx(row.variance + row.bias ** 2, rel=2e-3)


@pytest.mark.parametrize('table_id,n,m', [('1', 10, 3), ('2', 20, 3), ('3', 50, 4)])
def test_published_wg_correction(table_id, n, m):
    rows = tables.get_table(table_id).published
    assert rows['wg'].estimate - rows['vasicek'].estimate == pytest.approx(
        spacings.wg_correction(n, m), abs=1e-6)


def test_critical_alphas_ordered():
    for values in tables.PUBLISHED_CRITICAL_VALUES.values():
        assert all(a < b for a, b in zip(values[:-1], values[1:]))


def test_small_simulation_table():
    reports, frame, plan = tables.run_simulation_table('1', reps=20, seed=1, threads=1)
    assert len(reports) == 5 and plan.reps == 20
    assert list(frame['estimator']) == list(tables.LABELS)
    assert frame['published_mse'][0] == 0.38419010
    assert frame['published_estimate'][4] == 1.33450763


###############################################################################
# reproduction (Monte-Carlo)
###############################################################################

def _by_label(reports):
    return {r.label: r for r in reports}


@pytest.mark.slow
def test_table_1():
    reports, _, _ = tables.run_simulation_table('1', reps=5000, seed=42)
    rep = _by_label(reports)
    assert rep['vasicek'].mean == pytest.approx(0.8591, abs=0.012)
    assert rep['wg'].mean - rep['vasicek'].mean == pytest.approx(0.42147596, abs=1e-6)
    assert all(rep['kernel'].mse < r.mse for k, r in rep.items() if k != 'kernel')
    assert 0.06 <= rep['kernel'].mse <= 0.09


@pytest.mark.slow
def test_table_3():
    reports, _, _ = tables.run_simulation_table('3', reps=5000, seed=42)
    rep = _by_label(reports)
    assert rep['kernel'].mean == pytest.approx(1.4205, abs=0.01)
    assert rep['kernel'].mse == pytest.approx(0.0108, rel=0.25)
    assert rep['wg'].mean - rep['vasicek'].mean == pytest.approx(0.14262388, abs=1e-6)
    assert rep['wg'].variance == pytest.approx(rep['vasicek'].variance, rel=1e-12)


@pytest.mark.slow
@pytest.mark.parametrize('table_id,mse', [('4', 0.01087), ('5', 0.01404)])
def test_contamination_tables(table_id, mse):
    reports, _, _ = tables.run_simulation_table(table_id, reps=5000, seed=42)
    rep = _by_label(reports)
    assert min(rep, key=lambda k: rep[k].mse) == 'kernel'
    assert rep['kernel'].mse == pytest.approx(mse, rel=0.25)


@pytest.mark.slow
@pytest.mark.parametrize('table_id', ['3U', '3W', '3E', '3T3', '3T5', '3C'])
def test_winner_reproduced(table_id):
    reports, _, _ = tables.run_simulation_table(table_id, reps=5000, seed=42)
    eligible = [r for r in reports if r.eligible]
    winner = min(eligible, key=lambda r: r.mse).label
    assert winner == tables.get_table(table_id).winner


@pytest.mark.slow
def test_power_table():
    frame = tables.run_power_table(reps=20000, seed=7).set_index('alternative')
    assert frame.loc['uniform', 'kernel'] >= 0.99
    assert frame.loc['t(3)', 'kernel'] >= 0.99
    assert frame.loc['t(5)', 'kernel'] >= 0.85
    assert frame.loc['weibull(2,1)', 'kernel'] == pytest.approx(0.8264, abs=0.08)
    assert np.all(frame.filter(like='_published').notna())
