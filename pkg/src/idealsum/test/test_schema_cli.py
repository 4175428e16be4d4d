"""
分析配置校验与命令行测试
"""
import io
import json

import pytest
from pydantic import ValidationError
from rich.console import Console

from idealsum.config import AnalysisConfig
from idealsum.config.args import RunConfig, Scale, parse_args
from idealsum.core import Verdict, VerdictStatus
from idealsum.errors import InputError
from idealsum.main import EXIT_ERROR, main
from idealsum.ui import RichUI


def _write_config(tmp_path, name='config.json', **fields):
    path = tmp_path / name
    path.write_text(json.dumps(fields), encoding='utf-8')
    return str(path)


def _generate(tmp_path, corpus, n=2000):
    path = tmp_path / f'{corpus}.txt'
    assert main(['generate', corpus, '--n', str(n), '--output', str(path)]) == 0
    return str(path)


def _run(config_path, input_path, *extra):
    return main(['run', '--config', config_path, '--input', input_path, '--quiet', '--no-rich', *extra])


class TestAnalysisConfig:

    def test_defaults(self):
        config = AnalysisConfig(mode='statistical')
        assert config.matrix.kind == 'cesaro'
        assert config.ideal.kind == 'finite'
        assert config.scale.to_scale().N == 10_000
        assert not config.vector_mode

    def test_unknown_field_rejected(self):
        with pytest.raises(ValidationError):
            AnalysisConfig(mode='statistical', colour='blue')
        with pytest.raises(ValidationError):
            AnalysisConfig(mode='nope')

    def test_mode_requirements(self):
        with pytest.raises(ValidationError):
            AnalysisConfig(mode='cluster')
        with pytest.raises(ValidationError):
            AnalysisConfig(mode='decompose')
        with pytest.raises(ValidationError):
            AnalysisConfig(mode='simons')
        with pytest.raises(ValidationError):
            AnalysisConfig(mode='precauchy', dichotomy=[0.75, 0.25])
        assert AnalysisConfig(mode='cluster', grid=[0.0, 1.0]).grid == [0.0, 1.0]

    def test_simons_dimensions(self):
        space = {'kind': 'pnorm', 'p': 2, 'd': 2}
        with pytest.raises(ValidationError):
            AnalysisConfig(mode='simons', space=space, H=[[1.0, 0.0, 0.0]])
        with pytest.raises(ValidationError):
            AnalysisConfig(mode='simons', space={'kind': 'pnorm', 'p': 2})
        assert AnalysisConfig(mode='simons', space=space).vector_mode

    def test_strong_defaults_to_identity_gauge(self):
        assert AnalysisConfig(mode='strong').gauges.kind == 'identity'

    def test_scale_spec(self):
        with pytest.raises(ValidationError):
            AnalysisConfig(mode='statistical', scale={'eps_list': [0.1, -0.1]})
        with pytest.raises(ValidationError):
            AnalysisConfig(mode='statistical', scale={'N': 0})
        scale = AnalysisConfig(mode='statistical', scale={'N': 500}).scale.to_scale(i_max=3)
        assert (scale.N, scale.i_max) == (500, 3)


class TestArgs:

    def test_run_requires_output_for_csv(self):
        with pytest.raises(InputError):
            RunConfig(command='run', config_path='a.json', input_path='s.txt', csv=True)

    def test_parse_run(self):
        config = parse_args(['run', '--config', 'a.json', '--input', 's.txt', '--scale-N', '500', '--no-rich'])
        assert config.scale_n == 500
        assert not config.enable_rich

    def test_parse_generate(self):
        config = parse_args(['generate', 'vector_sparse', '--dim', '3'])
        assert (config.command, config.corpus, config.dim) == ('generate', 'vector_sparse', 3)


class TestCommandLine:

    def test_statistical_holds(self, tmp_path):
        data = _generate(tmp_path, 'squares')
        config = _write_config(tmp_path, mode='statistical', target=0.0, scale={'N': 2000})
        assert _run(config, data) == 0

    def test_statistical_fails(self, tmp_path):
        data = _generate(tmp_path, 'alternating')
        config = _write_config(tmp_path, mode='statistical', target=0.0, scale={'N': 2000})
        assert _run(config, data) == 1

    def test_signed_matrix_rejected(self, tmp_path):
        data = _generate(tmp_path, 'squares')
        config = _write_config(tmp_path, mode='statistical',
                               matrix={'kind': 'scaled', 'base': {'kind': 'cesaro'}, 'factor': -1.0},
                               scale={'N': 2000})
        assert _run(config, data) == EXIT_ERROR

    def test_invalid_config(self, tmp_path):
        data = _generate(tmp_path, 'squares')
        config = _write_config(tmp_path, mode='cluster', scale={'N': 2000})
        assert _run(config, data) == EXIT_ERROR
        assert _run(str(tmp_path / 'missing.json'), data) == EXIT_ERROR

    def test_short_input(self, tmp_path):
        data = _generate(tmp_path, 'squares', n=100)
        config = _write_config(tmp_path, mode='statistical', target=0.0, scale={'N': 2000})
        assert _run(config, data) == EXIT_ERROR

    def test_usage_error_is_not_inconclusive(self):
        assert main(['run', '--config']) == EXIT_ERROR

    def test_report_is_deterministic(self, tmp_path):
        data = _generate(tmp_path, 'squares')
        config = _write_config(tmp_path, mode='statistical', target=0.0, scale={'N': 2000})
        first, second = tmp_path / 'first.json', tmp_path / 'second.json'
        assert _run(config, data, '--output', str(first), '--csv') == 0
        assert _run(config, data, '--output', str(second)) == 0
        assert first.read_bytes() == second.read_bytes()
        report = json.loads(first.read_text(encoding='utf-8'))
        assert report['status'] == 'holds_at_scale'
        assert report['exit_code'] == 0
        assert report['config']['scale']['N'] == 2000
        header = (tmp_path / 'first.csv').read_text(encoding='utf-8').splitlines()[0]
        assert header.startswith('n,density_eps_')

    def test_vector_mode(self, tmp_path):
        data = _generate(tmp_path, 'vector_alternating')
        config = _write_config(tmp_path, mode='simons', space={'kind': 'polytope', 'vertices': [
            [1, 1], [1, -1], [-1, 1], [-1, -1]]}, ball_samples=500, scale={'N': 2000})
        assert _run(config, data) == 0


def test_rich_ui_renders_verdicts():
    buffer = io.StringIO()
    ui = RichUI({'input_path': '/data/' + 'x' * 60 + '/squares.txt'},
                console=Console(file=buffer, width=120, color_system=None))
    ui.start_ui()
    ui.on_start({'mode': 'statistical', 'scale': {'N': 2000, 'i_max': 64}, 'matrix': {'kind': 'cesaro'}})
    ui.on_verdict('statistically_convergent', Verdict(VerdictStatus.HOLDS, Scale(N=2000), estimate=0.0))
    ui.on_complete({'status': VerdictStatus.HOLDS.value, 'estimate': 0.0, 'exit_code': 0})
    text = buffer.getvalue()
    assert 'statistically_convergent' in text
    assert '成立' in text
    assert 'x' * 60 not in text
    assert RichUI._truncate_path('a' * 10, 40) == 'a' * 10
    assert RichUI._truncate_path('/very/long/' + 'b' * 50 + '/file.txt', 20) == '...' + ('b' * 50 + '/file.txt')[-17:]
