import json

import pytest

from qdentropy import cli
from qdentropy.sim import harness


@pytest.fixture
def sample_file(tmp_path):
    path = tmp_path / 'sample.txt'
    path.write_text('0 1 2 3\n')
    return str(path)


@pytest.fixture
def normal_file(tmp_path, normal_sample):
    path = tmp_path / 'normal.txt'
    path.write_text('\n'.join('%.17g' % v for v in normal_sample.values) + '\n')
    return str(path)


###############################################################################
# estimate
###############################################################################

def test_estimate_vasicek(sample_file, capsys):
    assert cli.main(['estimate', sample_file, '--estimator', 'vasicek', '--m', '1']) == 0
    assert capsys.readouterr().out == '1.0397208\n'


def test_estimate_spec(sample_file, capsys):
    assert cli.main(['estimate', sample_file, '--spec', 'vasicek:m=1']) == 0
    assert capsys.readouterr().out == '1.0397208\n'


def test_estimate_kernel(normal_file, capsys):
    assert cli.main(['estimate', normal_file, '--h', '0.0333', '--quad-max-nodes', '129']) == 0
    assert 0.5 < float(capsys.readouterr().out) < 2.5


def test_estimate_with_small_node_budget(normal_file, capsys):
    assert cli.main(['estimate', normal_file, '--h', '0.0333', '--quad-max-nodes', '200']) == 0
    assert 0.5 < float(capsys.readouterr().out) < 2.5


def test_estimate_needs_bandwidth(sample_file, capsys):
    assert cli.main(['estimate', sample_file]) == cli.EXIT_USAGE
    assert 'qdentropy: error: ConfigError' in capsys.readouterr().err


def test_estimate_needs_window(sample_file):
    assert cli.main(['estimate', sample_file, '--estimator', 'wg']) == cli.EXIT_USAGE


def test_estimate_bad_data(tmp_path, capsys):
    path = tmp_path / 'bad.txt'
    path.write_text('1\nfoo\n')
    assert cli.main(['estimate', str(path), '--estimator', 'vasicek', '--m', '1']) == cli.EXIT_DATA
    assert 'DataError' in capsys.readouterr().err
    assert cli.main(['estimate', str(tmp_path / 'none.txt'), '--spec', 'vasicek:m=1']) == cli.EXIT_DATA


def test_estimate_ties(tmp_path, capsys):
    path = tmp_path / 'ties.txt'
    path.write_text('1 1 1 1 2 3\n')
    assert cli.main(['estimate', str(path), '--spec', 'vasicek:m=1']) == cli.EXIT_NUMERICAL
    assert 'DegenerateSpacings' in capsys.readouterr().err


###############################################################################
# simulations
###############################################################################

SIMULATE = ['simulate', '--dist', 'normal(0,1)', '--n', '20', '--reps', '10', '--threads', '1',
            '--estimators', 'vasicek:m=3', 'wg:m=3']


def test_simulate_csv(capsys):
    assert cli.main(SIMULATE + ['--seed', '5']) == 0
    frame = harness.read_table(capsys.readouterr().out)
    assert list(frame['estimator']) == ['vasicek:m=3', 'wg:m=3']


def test_simulate_is_reproducible(tmp_path):
    outs = []
    for k, threads in enumerate(('1', '3')):
        out = tmp_path / ('run%d.txt' % k)
        args = SIMULATE + ['--seed', '5', '--format', 'text', '--out', str(out)]
        args[args.index('--threads') + 1] = threads
        assert cli.main(args) == 0
        outs.append(out.read_text())
    assert outs[0] == outs[1]
    assert '# seed: 5' in outs[0]


def test_simulate_needs_seed(capsys):
    assert cli.main(SIMULATE) == cli.EXIT_USAGE


def test_simulate_plan(tmp_path, capsys):
    plan = tmp_path / 'plan.json'
    plan.write_text(json.dumps(dict(distribution='uniform', n=30, reps=5, seed=2,
                                    estimators=['ebrahimi:m=3'])))
    assert cli.main(['simulate', '--plan', str(plan), '--format', 'json']) == 0
    doc = json.loads(capsys.readouterr().out)
    assert doc['metadata']['distribution'] == 'uniform'
    assert doc['rows'][0]['estimator'] == 'ebrahimi:m=3'


def test_contaminate(capsys):
    args = ['contaminate', '--dist', 'normal(0,1)', '--contaminant', 'uniform', '--fraction', '0.1',
            '--n', '20', '--reps', '5', '--seed', '1', '--estimators', 'vasicek:m=3']
    assert cli.main(args) == 0
    out = capsys.readouterr().out
    assert '# contaminant: uniform' in out and '# eps: 0.1' in out


###############################################################################
# bandwidth, calibration, test, power
###############################################################################

def test_bandwidth(tmp_path, capsys):
    out = tmp_path / 'bw.csv'
    args = ['bandwidth', '--dist', 'normal(0,1)', '--n', '30', '--reps', '4', '--grid', '0.05:0.2:3',
            '--seed', '3', '--threads', '1', '--out', str(out)]
    assert cli.main(args) == 0
    text = out.read_text()
    assert '# h_star: ' in text and '# amse_h: ' in text
    assert text.count('\n') >= 4


def test_bandwidth_uniform_amse_undefined(tmp_path):
    out = tmp_path / 'bw.csv'
    args = ['bandwidth', '--dist', 'uniform', '--n', '30', '--reps', '3', '--grid', '0.1:0.4:2',
            '--seed', '3', '--threads', '1', '--out', str(out)]
    assert cli.main(args) == 0
    assert '# amse_h: undefined' in out.read_text()


def test_bandwidth_needs_seed():
    with pytest.raises(SystemExit) as err:
        cli.main(['bandwidth', '--dist', 'exp(1)', '--n', '30'])
    assert err.value.code == 2


@pytest.fixture
def crit_file(tmp_path):
    path = str(tmp_path / 'crit.csv')
    args = ['calibrate', '--n', '50', '--alpha', '0.1', '0.05', '--reps', '1000', '--seed', '4',
            '--estimator', 'wg:m=4', '--threads', '1', '--out', path]
    assert cli.main(args) == 0
    return path


def test_calibrate(crit_file, capsys):
    text = open(crit_file).read()
    assert text.startswith('# version: ')
    assert 'wg:m=4' in text


def test_test(crit_file, normal_file, capsys):
    capsys.readouterr()
    assert cli.main(['test', normal_file, '--table', crit_file, '--alpha', '0.05']) == 0
    header, line = capsys.readouterr().out.splitlines()
    meta = json.loads(header[2:])
    assert meta['version'] and meta['alpha'] == 0.05 and meta['estimator'] == 'wg:m=4'
    assert line.startswith('n=50 statistic=') and 'reject=' in line


def test_test_missing_alpha(crit_file, normal_file, capsys):
    assert cli.main(['test', normal_file, '--table', crit_file, '--alpha', '0.01']) == cli.EXIT_DATA
    assert 'MissingCalibration' in capsys.readouterr().err


def test_power(crit_file, capsys):
    capsys.readouterr()
    args = ['power', '--dist', 'uniform', '--n', '50', '--reps', '50', '--table', crit_file,
            '--seed', '9', '--threads', '1']
    assert cli.main(args) == 0
    out = capsys.readouterr().out.splitlines()
    assert out[0].startswith('# ')
    assert 0 <= float(out[1].split('=')[1]) <= 1


###############################################################################
# tables
###############################################################################

def test_tables(capsys):
    assert cli.main(['tables', '--table', '2', '--reps', '5', '--seed', '1', '--threads', '1']) == 0
    out = capsys.readouterr().out
    assert '# table: 2' in out
    frame = harness.read_table(out)
    assert list(frame['estimator']) == ['vasicek', 'vanes', 'correa', 'wg', 'kernel']
    assert 'published_mse' in frame.columns


def test_tables_unknown(capsys):
    assert cli.main(['tables', '--table', '42', '--seed', '1']) == cli.EXIT_USAGE
