"""Tests for run configuration, report emission and the command-line entry point"""

import json
import math

import numpy as np
import pandas as pd
import pytest

import config
import main
from src.cli import (
    CommandOutput,
    RunConfig,
    cmd_exponent,
    cmd_leakage,
    cmd_simulate,
    commands,
    load_run_config,
    suffixed,
    write_csv,
    write_json,
)
from src.cli.commands import EXPONENT_COLUMNS, LEAKAGE_COLUMNS, SIMULATION_COLUMNS
from src.errors import ConfigError, GuardExceededError


@pytest.fixture
def quick_overrides():
    return {
        'exponent_kinds': ['fa_types', 'secrecy'],
        'grid_resolution': 12,
        'check_convergence': False,
        'r_w': [0.3, 0.6],
        'r_s': [0.2],
        'n_values': [4, 6],
        'codes': 3,
        'trials': 200,
        'master_seed': 11,
    }


class TestRunConfig:
    """Validation, overrides and provenance hashing"""

    def test_defaults(self):
        run_config = load_run_config()
        assert run_config.master_seed == config.DEFAULT_MASTER_SEED
        assert run_config.source.family == 'dsbs'

    def test_flags_override_the_file(self, tmp_path):
        path = tmp_path / 'run.json'
        path.write_text(json.dumps({'master_seed': 5, 'r_w': [0.4]}), encoding='utf-8')
        run_config = load_run_config(path, {'master_seed': 6, 'r_s': None})
        assert run_config.master_seed == 6
        assert run_config.r_w == [0.4]
        assert run_config.r_s == [0.2]

    @pytest.mark.parametrize('data', [
        {'unknown_field': 1},
        {'r_w': [-0.1]},
        {'n_values': [0]},
        {'metric': {'kind': 'mismatched'}},
        {'source': {'family': 'joint'}},
    ])
    def test_invalid_values_are_config_errors(self, data):
        with pytest.raises(ConfigError):
            load_run_config(overrides=data)

    def test_unreadable_file(self, tmp_path):
        path = tmp_path / 'broken.json'
        path.write_text('{not json', encoding='utf-8')
        with pytest.raises(ConfigError):
            load_run_config(path)

    def test_hash_ignores_output_paths_and_threads(self):
        base = RunConfig()
        assert base.config_hash() == RunConfig(out_csv='a.csv', threads=4).config_hash()
        assert base.config_hash() != RunConfig(master_seed=1).config_hash()

    def test_rate_sweep(self):
        run_config = RunConfig(r_w_sweep={'start': 0.1, 'stop': 0.5, 'steps': 5}, r_s=[0.1, 0.2])
        pairs = run_config.rate_pairs()
        assert len(pairs) == 10
        assert [p.r_w for p in pairs[::2]] == pytest.approx([0.1, 0.2, 0.3, 0.4, 0.5])

    def test_metric_specs_build(self, dsbs_model):
        channel = [[0.8, 0.2], [0.2, 0.8]]
        mismatched = RunConfig(metric={'kind': 'mismatched', 'beta': 2.0, 'channel': channel})
        assert mismatched.metric.build(dsbs_model).describe() == 'mismatched(beta=2)'
        limit = RunConfig(metric={'kind': 'map_limit', 'base': 'min_entropy'})
        assert limit.metric.build(dsbs_model).is_limit


class TestCommands:
    """Rows, columns and provenance of each subcommand"""

    def test_exponent_rows(self, quick_overrides):
        run_config = load_run_config(overrides=quick_overrides)
        output = cmd_exponent(run_config)
        assert len(output.rows) == 4
        assert list(output.frame().columns) == EXPONENT_COLUMNS
        assert all(row['master_seed'] == 11 for row in output.rows)
        assert all(row['config_hash'] == run_config.config_hash() for row in output.rows)
        fa_rows = [row for row in output.rows if row['kind'] == 'fa_types']
        assert fa_rows[0]['value'] == pytest.approx(0.2, abs=1e-9)

    def test_bits_are_a_display_unit(self, quick_overrides):
        nats = cmd_exponent(load_run_config(overrides=quick_overrides))
        bits = cmd_exponent(load_run_config(overrides={**quick_overrides, 'units': 'bits'}))
        for a, b in zip(nats.rows, bits.rows):
            assert b['value'] == pytest.approx(a['value'] / math.log(2))
            assert b['units'] == 'bits'

    def test_leakage_rows(self, quick_overrides):
        output = cmd_leakage(load_run_config(overrides=quick_overrides))
        assert len(output.rows) == 2 * 2 * 3
        assert list(output.frame().columns) == LEAKAGE_COLUMNS
        assert all(0.0 <= row['leakage'] <= min(row['log_m_s'], row['log_m_w']) for row in output.rows)

    def test_csv_is_byte_identical_across_runs(self, quick_overrides, tmp_path):
        run_config = load_run_config(overrides=quick_overrides)
        first, second = tmp_path / 'first.csv', tmp_path / 'second.csv'
        write_csv(cmd_leakage(run_config), first)
        write_csv(cmd_leakage(run_config), second)
        assert first.read_bytes() == second.read_bytes()
        assert b'\r\n' not in first.read_bytes()
        assert list(pd.read_csv(first).columns) == LEAKAGE_COLUMNS

    def test_json_mirrors_the_rows(self, quick_overrides, tmp_path):
        run_config = load_run_config(overrides=quick_overrides)
        output = cmd_exponent(run_config)
        path = tmp_path / 'out.json'
        write_json(output, path, run_config)
        document = json.loads(path.read_text(encoding='utf-8'))
        assert document['schema_version'] == config.CSV_SCHEMA_VERSION
        assert document['config_hash'] == run_config.config_hash()
        assert len(document['rows']) == len(output.rows)
        assert document['details'][0]['argmin']['q_x'] is not None


    def test_rate_sweep_gives_a_monotone_fr_column(self):
        run_config = load_run_config(overrides={
            'exponent_kinds': ['fr_random'], 'grid_resolution': 16, 'check_convergence': False,
            'r_w_sweep': {'start': 0.0, 'stop': math.log(2), 'steps': 9}, 'r_s': [0.2],
        })
        values = [row['value'] for row in cmd_exponent(run_config).rows]
        assert len(values) == 9
        assert all(b >= a - 1e-3 for a, b in zip(values, values[1:]))

    def test_empty_sweep_writes_only_the_header(self, tmp_path):
        run_config = load_run_config(overrides={'r_w_sweep': {'start': 0.1, 'stop': 0.5, 'steps': 0}})
        output = cmd_exponent(run_config)
        assert output.rows == []
        path = tmp_path / 'empty.csv'
        write_csv(output, path)
        assert path.read_text(encoding='utf-8') == ','.join(EXPONENT_COLUMNS) + '\n'

    def test_simulation_csv_replays_byte_for_byte(self, quick_overrides, tmp_path):
        run_config = load_run_config(overrides=quick_overrides)
        first, second = tmp_path / 'first.csv', tmp_path / 'second.csv'
        write_csv(cmd_simulate(run_config), first)
        write_csv(cmd_simulate(run_config), second)
        assert first.read_bytes() == second.read_bytes()
        assert list(pd.read_csv(first).columns) == SIMULATION_COLUMNS

    def test_single_key_never_rejects(self, quick_overrides):
        output = cmd_simulate(load_run_config(overrides={**quick_overrides, 'r_s': [0.0]}))
        assert len(output.rows) == 2 * 2
        assert all(row['fr_errors'] == 0 and row['fr_estimate'] == 0.0 for row in output.rows)

    def test_sweep_checks_guards_before_any_work(self, quick_overrides, monkeypatch):
        def fail(run_config):
            raise AssertionError("exponents computed before the guard check")

        monkeypatch.setattr(commands, 'cmd_exponent', fail)
        run_config = load_run_config(overrides={**quick_overrides, 'n_values': [4, 30]})
        with pytest.raises(GuardExceededError):
            commands.cmd_sweep(run_config)

    def test_json_is_strict_about_infinities(self, quick_overrides, tmp_path):
        output = CommandOutput('exponent', EXPONENT_COLUMNS, rows=[{'value': math.inf}],
                               details=[{'argmin': np.array([np.inf, 1.0]), 'low': -math.inf,
                                         'missing': math.nan, 'count': np.int64(3)}])
        path = tmp_path / 'strict.json'
        write_json(output, path, load_run_config(overrides=quick_overrides))

        def reject(token):
            raise ValueError(f"non-standard JSON constant {token}")

        document = json.loads(path.read_text(encoding='utf-8'), parse_constant=reject)
        assert document['rows'][0]['value'] == 'inf'
        expected = {'argmin': ['inf', 1.0], 'low': '-inf', 'missing': None, 'count': 3}
        assert document['details'][0] == expected
    def test_suffixed_paths(self):
        assert str(suffixed('runs/out.csv', 'leakage')).endswith('out_leakage.csv')


class TestEntryPoint:
    """Exit codes and written files"""

    def test_success_writes_csv(self, tmp_path):
        out = tmp_path / 'leak.csv'
        code = main.main(['leakage', '--n', '4', '--codes', '2', '--grid', '10',
                          '--seed', '3', '--out-csv', str(out)])
        assert code == config.EXIT_OK
        assert len(pd.read_csv(out)) == 2

    def test_config_error_exit_code(self, tmp_path):
        path = tmp_path / 'bad.json'
        path.write_text(json.dumps({'trials': -1}), encoding='utf-8')
        assert main.main(['exponent', '--config', str(path)]) == config.EXIT_CONFIG_ERROR

    def test_guard_violation_exit_code(self):
        assert main.main(['leakage', '--n', '30']) == config.EXIT_GUARD_VIOLATION

    def test_sweep_writes_one_file_per_command(self, tmp_path):
        path = tmp_path / 'sweep.json'
        path.write_text(json.dumps({
            'exponent_kinds': ['fa_types'],
            'grid_resolution': 8,
            'check_convergence': False,
            'n_values': [2, 3, 4],
            'codes': 2,
            'trials': 100,
        }), encoding='utf-8')
        out = tmp_path / 'sweep.csv'
        code = main.main(['sweep', '--config', str(path), '--out-csv', str(out)])
        assert code == config.EXIT_OK
        for command in ('exponent', 'simulate', 'leakage'):
            assert (tmp_path / f'sweep_{command}.csv').exists()
