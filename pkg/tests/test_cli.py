# -*- coding: utf-8; tab-width: 4; indent-tabs-mode: nil; -*-
### BEGIN LICENSE
# Copyright (C) 2026 The latticeprobe developers
# Licensed under the GNU General Public License version 3, as published
# by the Free Software Foundation. See README.md.
### END LICENSE

import json
import os

import pytest

from latticeprobe import cli, plugin
from latticeprobe.latticeprobeconfig import get_default_config_file
from latticeprobe.util import read_csv


def _run(capsys, *argv):
    status = cli.main(list(argv))
    out, err = capsys.readouterr()
    return status, out.splitlines(), err


def _column(rows, index):
    return [float(row[index]) for row in rows]


def test_purities_ghz(capsys):
    status, lines, err = _run(capsys, 'purities', '--family', 'ghz', '--n', '10')
    assert status == 0
    assert lines[0] == 'k,avpur'
    values = [float(line.split(',')[1]) for line in lines[1:]]
    assert len(values) == 11
    assert abs(values[0] - 1) < 1e-12 and abs(values[10] - 1) < 1e-12
    assert all(abs(v - 0.5) < 1e-12 for v in values[1:10])
    assert json.loads(err)['verdict']['violated'] is True


def test_purities_product_phi(capsys):
    status, lines, err = _run(capsys, 'purities', '--family', 'phi', '--phi', '0', '--n', '5')
    assert status == 0
    assert all(abs(float(line.split(',')[1]) - 1) < 1e-12 for line in lines[1:])
    assert json.loads(err)['verdict']['violated'] is False


def test_purities_subsets(capsys):
    status, lines, _ = _run(capsys, 'purities', '--family', 'cluster', '--n', '3', '--subsets')
    assert status == 0
    assert lines[0] == 'mask,size,purity'
    assert len(lines) == 9
    assert lines[1].startswith('000,0,')


@pytest.mark.parametrize('argv', [
    ['purities', '--n', '0'],
    ['purities', '--n', '16'],
    ['purities', '--family', 'bogus'],
    ['variance', '--method', 'magic'],
    ['pj', '--p', '1.5'],
    ['variance', '--n', '3', '--k', '5'],
    ['correct'],
])
def test_invalid_configuration(capsys, argv):
    status, _, err = _run(capsys, *argv)
    assert status == 2
    assert err.startswith('latticeprobe: ')


def test_argument_errors():
    with pytest.raises(SystemExit) as e:
        cli.main(['bogus'])
    assert e.value.code == 2


def test_singular_corrector_exit(capsys):
    status, _, err = _run(capsys, 'simulate', '--n', '3', '--q', '1', '--N', '100')
    assert status == 3
    assert 'Singular' in err


def test_simulate_is_reproducible(tmp_path):
    outputs = []
    for name in ('a', 'b'):
        csv_file, json_file = tmp_path / (name + '.csv'), tmp_path / (name + '.json')
        argv = ['simulate', '--family', 'cluster', '--n', '4', '--p', '0.05', '--q', '0.05',
                '--N', '2000', '--seed', '9', '--output', str(csv_file), '--json', str(json_file)]
        assert cli.main(argv) == 0
        outputs.append((csv_file.read_text(), json_file.read_text()))
    assert outputs[0] == outputs[1]
    header, rows = read_csv(tmp_path / 'a.csv')
    assert header == ['k', 'estimate', 'stderr', 'exact', 'V_over_N']
    assert len(rows) == 5
    summary = json.loads(outputs[0][1])
    assert summary['seed'] == 9 and summary['N'] == 2000


def test_simulate_replicates(tmp_path):
    json_file = tmp_path / 'summary.json'
    argv = ['simulate', '--n', '2', '--N', '500', '--replicates', '3', '--output', str(tmp_path / 'out.csv'),
            '--json', str(json_file)]
    assert cli.main(argv) == 0
    summary = json.loads(json_file.read_text())
    assert len(summary['replicates']) == 3
    assert all(len(run) == 3 for run in summary['replicates'])


def test_pj_then_correct(tmp_path):
    observed = tmp_path / 'observed.csv'
    common = ['--p', '0.1', '--q', '0.05']
    assert cli.main(['pj', '--family', 'cluster', '--n', '4', '--output', str(observed),
                     '--json', str(tmp_path / 'pj.json')] + common) == 0
    header, rows = read_csv(observed)
    assert header == ['i', 'P_exp']
    assert len(rows) == 9

    corrected, exact = tmp_path / 'corrected.csv', tmp_path / 'exact.csv'
    summary = tmp_path / 'correct.json'
    assert cli.main(['correct', '--input', str(observed), '--output', str(corrected),
                     '--json', str(summary)] + common) == 0
    assert cli.main(['purities', '--family', 'cluster', '--n', '4', '--output', str(exact),
                     '--json', str(tmp_path / 'purities.json')]) == 0
    got, want = _column(read_csv(corrected)[1], 1), _column(read_csv(exact)[1], 1)
    assert all(abs(a - b) < 1e-9 for a, b in zip(got, want))
    assert json.loads(summary.read_text())['method'] == 'explicit'


def test_correct_missing_file(tmp_path, capsys):
    status, _, err = _run(capsys, 'correct', '--input', str(tmp_path / 'missing.csv'))
    assert status == 2


def test_physics(capsys):
    status, lines, err = _run(capsys, 'physics', '--U', '0.1')
    assert status == 0
    assert lines[0] == 'quantity,value'
    summary = json.loads(err)
    assert set(summary) == {'t_bs', 'q_bs', 't_l', 'q_l', 'p_l', 'q'}
    assert summary['q_bs'] > 0


def test_variance_command(capsys):
    status, lines, _ = _run(capsys, 'variance', '--family', 'ghz', '--n', '3', '--q', '0.1')
    assert status == 0
    assert lines[0] == 'k,V,bound,method,n,p,q,sigma'
    assert len(lines) == 5
    for line in lines[1:]:
        cells = line.split(',')
        assert float(cells[1]) <= float(cells[2]) + 1e-12


def test_worstcase_command(capsys):
    status, lines, err = _run(capsys, 'worstcase', '--n', '3', '--k', '2', '--q', '0.1')
    assert status == 0
    assert lines[0] == 'k,avpur'
    summary = json.loads(err)
    assert summary['k'] == 2 and summary['constrained'] is True
    assert summary['V_max'] <= summary['bound'] + 1e-9


def test_figure_phi_classes(capsys):
    status, lines, _ = _run(capsys, 'figure', '1', '--n', '6', '--points', '5')
    assert status == 0
    assert lines[0] == 'phi,interior_single,interior_separated,interior_run,end_run'
    assert len(lines) == 6


def test_figure_needs_enough_qubits(capsys):
    status, _, _ = _run(capsys, 'figure', '1', '--n', '4')
    assert status == 2


def test_unknown_figure(capsys):
    status, _, err = _run(capsys, 'figure', '99')
    assert status == 2
    assert 'Unknown figure' in err


def test_unknown_figure_series(capsys):
    status, _, _ = _run(capsys, 'figure', '2', '--which', 'nonsense')
    assert status == 2


def test_profiles_figure_matches_purities(capsys):
    status, figure_lines, _ = _run(capsys, 'figure', '2', '--which', 'ghz')
    assert status == 0
    status, purity_lines, _ = _run(capsys, 'purities', '--family', 'ghz', '--n', '10')
    figure_values = [float(line.split(',')[1]) for line in figure_lines[1:]]
    purity_values = [float(line.split(',')[1]) for line in purity_lines[1:]]
    assert len(figure_values) == len(purity_values) == 11
    assert all(abs(a - b) < 1e-12 for a, b in zip(figure_values, purity_values))


def test_config_file(tmp_path, capsys):
    config = tmp_path / 'run.json'
    config.write_text(json.dumps({'family': 'cluster', 'n': 3, 'unknown': 1}))
    status, lines, _ = _run(capsys, 'purities', '--config', str(config))
    assert status == 0
    assert len(lines) == 5
    # the command line wins over the file
    status, lines, _ = _run(capsys, 'purities', '--config', str(config), '--n', '2')
    assert len(lines) == 4


def test_user_config_file(capsys):
    path = get_default_config_file()
    os.makedirs(os.path.dirname(path))
    with open(path, 'w') as f:
        json.dump({'n': 2}, f)
    status, lines, _ = _run(capsys, 'purities')
    assert status == 0
    assert len(lines) == 4


@pytest.mark.parametrize('text', ['{not json', '[1, 2]', '{"n": "many"}'])
def test_malformed_config(tmp_path, capsys, text):
    config = tmp_path / 'bad.json'
    config.write_text(text)
    status, _, err = _run(capsys, 'purities', '--config', str(config))
    assert status == 2


def test_svg_output(tmp_path, capsys):
    pytest.importorskip('matplotlib')
    svg = tmp_path / 'chart.svg'
    status, _, _ = _run(capsys, 'purities', '--n', '4', '--svg', str(svg))
    assert status == 0
    assert '<svg' in svg.read_text()


def test_figures_are_discoverable():
    names = plugin.discover_figures()
    assert len(names) == 8
    for index in range(1, 9):
        assert plugin.find_figure(index).index == index
