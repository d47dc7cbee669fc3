import json

import numpy as np
import pytest

import qdentropy as qe
from qdentropy.sim import harness
from qdentropy.stats import spacings
from qdentropy.errors import ConfigError, InvalidWindow


ESTIMATORS = ('vasicek:m=3', 'wg:m=3', 'kernel:h=0.081')


@pytest.fixture(scope='module')
def plan():
    return harness.ExperimentPlan('normal(0,1)', 20, 40, ESTIMATORS, seed=1, name='small')


@pytest.fixture(scope='module')
def reports(plan):
    return harness.run_experiment(plan, threads=1)


###############################################################################
# plans
###############################################################################

def test_plan_parses_its_fields(plan):
    assert plan.distribution == qe.Normal()
    assert [s.estimator for s in plan.estimators] == ['vasicek', 'wg', 'kernel']
    assert not plan.contaminated


def test_plan_draw(plan):
    np.testing.assert_array_equal(plan.draw(7).values,
                                  qe.sample('normal(0,1)', 20, qe.RngStream(1, 7)).values)


@pytest.mark.parametrize('kwargs', [
    dict(n=1), dict(n=10.5), dict(reps=1), dict(estimators=()), dict(eps=0.1),
    dict(eps=1.5, contaminant='uniform'), dict(estimators=('gamma:m=3',)),
])
def test_plan_errors(kwargs):
    fields = dict(distribution='normal(0,1)', n=20, reps=10, estimators=ESTIMATORS, seed=0)
    fields.update(kwargs)
    with pytest.raises(ConfigError):
        harness.ExperimentPlan(**fields)


def test_plan_window_checked_against_n():
    with pytest.raises(InvalidWindow):
        harness.ExperimentPlan('normal(0,1)', 10, 10, ('vasicek:m=6',), seed=0)


def test_plan_from_dict():
    doc = dict(distribution='t(3)', n=30, reps=5, estimators=['ebrahimi:m=3'], seed=4,
               contaminant='uniform', eps=0.1)
    plan = harness.ExperimentPlan.from_dict(doc)
    assert plan.contaminated and plan.eps == 0.1
    assert plan.metadata()['contaminant'] == 'uniform'
    with pytest.raises(ConfigError):
        harness.ExperimentPlan.from_dict(dict(doc, colour='red'))
    with pytest.raises(ConfigError):
        harness.ExperimentPlan.from_dict({k: v for k, v in doc.items() if k != 'seed'})


def test_plan_metadata(plan):
    meta = plan.metadata()
    assert meta['version'] == qe.__version__
    assert meta['seed'] == 1 and meta['reps'] == 40 and meta['table'] == 'small'
    assert meta['estimators'] == ['vasicek:m=3', 'wg:m=3', 'kernel:h=0.081,eps=0.01']


def test_estimator_text_keeps_full_precision():
    spec = qe.parse_estimator('kernel:h=0.1').with_bandwidth(1 / 30)
    assert str(spec) == 'kernel:h=0.03333333333333333,eps=0.01'
    assert qe.parse_estimator(str(spec)).tuning == spec.tuning
    tilde = qe.parse_estimator('parzen-tilde:eps=0.0125')
    assert qe.parse_estimator(str(tilde)).options == tilde.options


###############################################################################
# experiments
###############################################################################

def test_summarize():
    spec = qe.parse_estimator('vasicek:m=2')
    rep = harness.summarize([1.0, 2.0, np.nan], 1.0, spec, 3)
    assert rep.mean == 1.5 and rep.bias == 0.5
    assert rep.variance == 0.25 and rep.mse == 0.5
    assert rep.failures == 1 and not rep.eligible
    assert rep.label == 'vasicek:m=2'


def test_reports(reports):
    assert [r.estimator_id for r in reports] == ['vasicek', 'wg', 'kernel']
    for r in reports:
        assert r.failures == 0 and r.reps == 40
        assert r.mse == pytest.approx(r.variance + r.bias ** 2, abs=1e-12)
        assert r.bias == pytest.approx(r.mean - 1.41893853, abs=1e-8)


def test_paired_design(reports):
    vasicek, wg = reports[0], reports[1]
    assert wg.variance == pytest.approx(vasicek.variance, rel=1e-10)
    assert wg.mean - vasicek.mean == pytest.approx(spacings.wg_correction(20, 3), abs=1e-12)


def test_reports_do_not_depend_on_threads(plan, reports):
    again = harness.run_experiment(plan, threads=4)
    for a, b in zip(reports, again):
        assert (a.mean, a.variance, a.mse) == (b.mean, b.variance, b.mse)
        np.testing.assert_array_equal(a.values, b.values)


def test_failures_are_counted():
    plan = harness.ExperimentPlan('normal(0,1)', 20, 5, ('kernel:h=0.0001', 'vasicek:m=3'), seed=2)
    failed, ok = harness.run_experiment(plan, threads=1)
    assert failed.failures == 5 and np.isnan(failed.mean)
    assert ok.failures == 0 and np.isfinite(ok.mse)


def test_contamination_zero_matches_clean(plan, reports):
    mixed = harness.ExperimentPlan('normal(0,1)', 20, 40, ESTIMATORS, seed=1,
                                   contaminant='uniform', eps=0.0)
    for a, b in zip(reports, harness.run_contamination(mixed, threads=1)):
        assert a.mse == b.mse


def test_contamination_uses_clean_truth():
    plan = harness.ExperimentPlan('normal(0,1)', 20, 10, ('vasicek:m=3',), seed=3,
                                  contaminant='uniform', eps=0.5)
    rep, = harness.run_contamination(plan, threads=1)
    assert rep.bias == pytest.approx(rep.mean - qe.true_entropy('normal(0,1)'))


def test_run_contamination_needs_contaminant(plan):
    with pytest.raises(ConfigError):
        harness.run_contamination(plan)


###############################################################################
# rendering
###############################################################################

def test_csv_table(plan, reports):
    text = harness.assemble_table(reports, 'csv', plan.metadata())
    assert text.startswith('# version: ')
    frame = harness.read_table(text)
    assert list(frame.columns) == list(harness.REPORT_COLUMNS)
    assert list(frame['estimator']) == ['vasicek:m=3', 'wg:m=3', 'kernel:h=0.081,eps=0.01']
    assert frame['mse'][0] == pytest.approx(reports[0].mse, rel=1e-7)


def test_json_table(plan, reports):
    doc = json.loads(harness.assemble_table(reports, 'json', plan.metadata()))
    assert doc['metadata']['seed'] == 1
    assert [row['estimator'] for row in doc['rows']] == ['vasicek:m=3', 'wg:m=3',
                                                         'kernel:h=0.081,eps=0.01']
    assert doc['rows'][1]['failures'] == 0


def test_text_table_is_reproducible(plan, reports):
    text = harness.assemble_table(reports, 'text', plan.metadata())
    again = harness.assemble_table(harness.run_experiment(plan, threads=2), 'text', plan.metadata())
    assert text == again
    assert 'wg:m=3' in text


def test_published_columns(reports):
    frame = harness.reports_frame(reports, published={'vasicek:m=3': 0.1})
    assert frame['mse_ratio'][0] == pytest.approx(reports[0].mse / 0.1)
    assert np.isnan(frame['published_mse'][1])


def test_unknown_format(reports):
    with pytest.raises(ConfigError):
        harness.assemble_table(reports, 'xml')
