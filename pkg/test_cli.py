import argparse
import json

import pandas as pd
import pytest

import config
from bounds import prob_aqft_lower_bound
from cli import main, manifest_path, parse_int_range
from network import build_aqft
from statevector import RegisterSize


def _manifest(out):
    return json.loads(manifest_path(out).read_text(encoding='utf-8'))


def test_help_lists_flags(capsys):
    assert main(['transform', '--help']) == 0
    text = capsys.readouterr().out
    for flag in ('--L', '--r', '--l', '--m', '--delta', '--seed', '--out', '--trace', '--workers'):
        assert flag in text


def test_missing_register_size_is_usage_error(tmp_path):
    assert main(['transform', '--out', str(tmp_path / 'x.csv')]) == config.EXIT_USAGE


def test_unknown_subcommand_is_usage_error():
    assert main(['plot']) == config.EXIT_USAGE


def test_invalid_value_is_usage_error(tmp_path):
    out = tmp_path / 'x.csv'
    assert main(['transform', '--L', '9', '--r', '10', '--l', '12', '--out', str(out)]) == config.EXIT_USAGE
    assert not out.exists()


def test_io_failure_exit_code(tmp_path):
    out = tmp_path / 'missing' / 'x.csv'
    assert main(['transform', '--L', '4', '--r', '3', '--l', '1', '--out', str(out)]) == config.EXIT_FAILURE


def test_transform_writes_table_and_manifest(tmp_path):
    out = tmp_path / 'fig4.csv'
    status = main(['transform', '--L', '9', '--r', '10', '--l', '9', '--m', '9', '--delta', '0',
                   '--seed', '17', '--out', str(out)])
    assert status == config.EXIT_OK
    df = pd.read_csv(out)
    assert list(df.columns) == config.TRANSFORM_COLUMNS
    assert len(df) == 512
    assert df['is_peak'].sum() == 10

    manifest = _manifest(out)
    assert manifest['subcommand'] == 'transform'
    assert manifest['master_seed'] == 17
    assert manifest['tool_version'] == config.TOOL_VERSION
    assert manifest['parameters']['L'] == 9
    assert manifest['outputs'] == [str(out)]
    assert manifest['duration_s'] >= 0


def test_transform_trace(tmp_path):
    out, trace = tmp_path / 't.csv', tmp_path / 'kicks.jsonl'
    status = main(['transform', '--L', '6', '--r', '5', '--l', '2', '--m', '4', '--delta', '0.2',
                   '--out', str(out), '--trace', str(trace)])
    assert status == config.EXIT_OK
    lines = trace.read_text(encoding='utf-8').splitlines()
    assert len(lines) == 2 * build_aqft(RegisterSize(6), 4).n_b
    assert str(trace) in _manifest(out)['outputs']


def test_seed_from_environment(tmp_path, monkeypatch):
    monkeypatch.setenv(config.SEED_ENV_VAR, '4242')
    out = tmp_path / 'q.csv'
    assert main(['quality', '--L', '6', '--r', '5', '--l', '1', '--delta', '0.1',
                 '--runs', '5', '--out', str(out)]) == config.EXIT_OK
    assert _manifest(out)['master_seed'] == 4242
    df = pd.read_csv(out)
    assert list(df.columns) == config.ENSEMBLE_COLUMNS
    assert len(df) == 1


def _sweep(out, workers, seed='9'):
    return main(['sweep', '--L', '6', '--r', '5', '--l', '3', '--m-values', '2-6',
                 '--deltas', '0.1', '0.3', '--runs', '120', '--seed', seed,
                 '--workers', str(workers), '--out', str(out)])


def test_sweep_csv_identical_across_worker_counts(tmp_path):
    outputs = []
    for workers in (1, 4, 8):
        out = tmp_path / f'sweep_{workers}.csv'
        assert _sweep(out, workers) == config.EXIT_OK
        outputs.append(out.read_bytes())
    assert outputs[0] == outputs[1] == outputs[2]


def test_sweep_same_seed_twice(tmp_path):
    a, b, c = tmp_path / 'a.csv', tmp_path / 'b.csv', tmp_path / 'c.csv'
    _sweep(a, 2)
    _sweep(b, 2)
    _sweep(c, 2, seed='10')
    assert a.read_bytes() == b.read_bytes()
    assert a.read_bytes() != c.read_bytes()
    df = pd.read_csv(a)
    assert list(df.columns) == config.ENSEMBLE_COLUMNS
    assert len(df) == 10


def test_sweep_json_output(tmp_path):
    out, js = tmp_path / 's.csv', tmp_path / 's.json'
    assert main(['sweep', '--L', '5', '--r', '4', '--l', '0', '--m-values', '3,5', '--deltas', '0.2',
                 '--runs', '10', '--out', str(out), '--json', str(js)]) == config.EXIT_OK
    records = json.loads(js.read_text(encoding='utf-8'))
    assert [row['m'] for row in records] == [3, 5]


def test_scaling(tmp_path):
    out = tmp_path / 'fig7.csv'
    assert main(['scaling', '--L-values', '5-7', '--deltas', '0.2', '--runs', '10',
                 '--ratio', '16', '--out', str(out)]) == config.EXIT_OK
    df = pd.read_csv(out)
    assert df['L'].tolist() == [5, 6, 7]
    assert df['r'].tolist() == [2, 4, 8]
    assert (df['m'] == df['L']).all()


def test_bounds_single_row(tmp_path):
    out = tmp_path / 'bounds.csv'
    assert main(['bounds', '--L-range', '16', '--m-range', '7', '--out', str(out)]) == config.EXIT_OK
    df = pd.read_csv(out)
    assert list(df.columns) == config.BOUNDS_COLUMNS
    assert len(df) == 1
    assert df.loc[0, 'prob_aqft_bound'] == pytest.approx(prob_aqft_lower_bound(16, 7).exact, rel=1e-11)


def test_bounds_flags_invalid_rows(tmp_path):
    out = tmp_path / 'bounds.csv'
    assert main(['bounds', '--L-range', '16', '--out', str(out)]) == config.EXIT_OK
    df = pd.read_csv(out)
    assert not df.loc[df['m'] < 6, 'valid'].any()
    assert df.loc[df['m'] >= 6, 'valid'].all()
    assert df.loc[df['m'] < 6, 'run_ratio'].isna().all()


def test_parse_int_range():
    assert parse_int_range('1-4') == [1, 2, 3, 4]
    assert parse_int_range('8,12,16') == [8, 12, 16]
    assert parse_int_range('7') == [7]
    with pytest.raises(argparse.ArgumentTypeError):
        parse_int_range('5-2')
    with pytest.raises(argparse.ArgumentTypeError):
        parse_int_range('a')


def test_bounds_beyond_state_vector_limit(tmp_path):
    out = tmp_path / 'bounds.csv'
    assert main(['bounds', '--L-range', '32', '--out', str(out)]) == config.EXIT_OK
    df = pd.read_csv(out)
    assert len(df) == 32
    assert df.loc[df['m'] == 32, 'valid'].all()
