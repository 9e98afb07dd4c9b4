import os
import json
import pytest

import pandas as pd

from diskscale.cli import main, EXIT_YES, EXIT_NO, EXIT_ERROR
from diskscale.fileio import read_instance, read_json, write_solution
from diskscale.harness import bench, BENCH_COLUMNS
from diskscale.geometry import RadiusAssignment
from diskscale.plotutils import render_svg

from tests.conftest import DATA_DIR

P3_INSTANCE = os.path.join(DATA_DIR, 'p3_instance.json')


def run(*argv):
    """Run the command line, returning the exit code"""
    with pytest.raises(SystemExit) as info:
        main(list(argv))
    return info.value.code


def test_solve_yes(capsys, tmp_path):
    out = str(tmp_path / 'sol.json')
    assert run('solve', '--instance', P3_INSTANCE, '--out', out) == EXIT_YES
    report = json.loads(capsys.readouterr().out)
    assert report['answer'] == 'yes'
    assert report['class'] == 'cluster'
    assert report['stats']['routed_from'] == 'auto'
    assert len(report['solution']['scaled']) == 1
    assert os.path.isfile(out)

    assert run('verify', '--instance', P3_INSTANCE, '--solution', out) == EXIT_YES


def test_solve_no(capsys, tmp_path):
    path = str(tmp_path / 'edgeless.json')
    data = read_json(P3_INSTANCE)
    data['k'] = 0
    with open(path, 'w') as f:
        json.dump(data, f)
    assert run('solve', '--instance', path, '--class', 'edgeless', '--algo', 'xp') == EXIT_NO
    assert json.loads(capsys.readouterr().out)['answer'] == 'no'


def test_verify_rejects(tmp_path):
    path = str(tmp_path / 'ones.json')
    write_solution(path, RadiusAssignment.ones(3))
    assert run('verify', '--instance', P3_INSTANCE, '--solution', path) == EXIT_NO


@pytest.mark.parametrize("argv", [
    ('solve', '--instance', P3_INSTANCE, '--class', 'connected', '--algo', 'complete'),
    ('solve',),
    ('solve', '--instance', 'no/such/file.json'),
    ('generate', 'random'),
    ('generate', 'vc-shrink', '--out', 'x.json'),
    ('solve', '--instance', P3_INSTANCE, '--algo', 'magic'),
])
def test_errors_exit_two(argv):
    assert run(*argv) == EXIT_ERROR


def test_generate_random(tmp_path):
    out = str(tmp_path / 'random.json')
    assert run('generate', 'random', '--n', '6', '--k', '2', '--r-min', '1/2', '--r-max', '3/2',
               '--seed', '9', '--class', 'connected', '--out', out) == EXIT_YES
    source = read_instance(out)
    assert source.instance.n == 6
    assert source.instance.k == 2
    assert source.provenance['seed'] == 9
    assert source.cls.value == 'connected'


def test_generate_heavy_p3(tmp_path):
    out = str(tmp_path / 'heavy.json')
    assert run('generate', 'heavy-p3', '--delta', '2', '--theta', '3', '--xi', '3/2', '--out', out) == EXIT_YES
    assert read_instance(out).instance.n == 7


def test_generate_gridtiling_and_transform(tmp_path):
    out = str(tmp_path / 'gt.json')
    assert run('generate', 'gridtiling', '--gt', os.path.join(DATA_DIR, 'gt_2x2.json'), '--out', out) == EXIT_YES
    assert read_instance(out).instance.k == 12

    lt = str(tmp_path / 'lt.json')
    assert run('generate', 'gt-transform', '--gt', os.path.join(DATA_DIR, 'gt_2x2.json'),
               '--mode', 'le-to-lt', '--out', lt) == EXIT_YES
    assert read_json(lt)['eta'] == 8 + 2


def test_plot(tmp_path):
    out = str(tmp_path / 'p3.svg')
    assert run('plot', '--instance', P3_INSTANCE, '--out', out) == EXIT_YES
    with open(out) as f:
        svg = f.read()
    assert svg.count('class="disk"') == 3
    assert svg.count('class="center"') == 3


def test_render_svg_marks_scaled(p3_line):
    svg = render_svg(p3_line, RadiusAssignment.ones(3).with_radius([1], 0.5))
    assert svg.count('class="disk scaled"') == 1
    assert 'data-id="1"' in svg


def test_oracle_compare_command(capsys, tmp_path):
    out = str(tmp_path / 'report.json')
    assert run('oracle-compare', '--trials', '2', '--max-n', '4', '--max-k', '1', '--seed', '3', '--out', out) == EXIT_YES
    report = json.loads(capsys.readouterr().out)
    assert report['mismatches'] == 0
    assert read_json(out) == report


def test_bench_command(tmp_path):
    out = str(tmp_path / 'bench.csv')
    assert run('bench', '--suite', 'complete', '--sizes', '4,6', '--repeats', '1', '--out', out) == EXIT_YES
    df = pd.read_csv(out)
    assert list(df['n']) == [4, 6]
    assert set(df['algo']) == {'complete'}


def test_bench_without_sizes_writes_header_only(tmp_path):
    out = str(tmp_path / 'empty.csv')
    assert run('bench', '--suite', 'complete', '--out', out) == EXIT_YES
    df = pd.read_csv(out)
    assert len(df) == 0
    assert list(df.columns) == BENCH_COLUMNS
    assert bench('xp', []).empty
