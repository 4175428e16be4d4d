"""
批量分析测试
"""
import json

import pytest

from idealsum import batch
from idealsum.batch import BatchAnalyzer
from idealsum.config import AnalysisConfig
from idealsum.core import generate, write_sequence


@pytest.fixture
def statistical_config():
    return AnalysisConfig(mode='statistical', target=0.0, scale={'N': 2000})


@pytest.fixture
def sequences(tmp_path):
    folder = tmp_path / 'sequences'
    (folder / 'nested').mkdir(parents=True)
    write_sequence(generate('squares', 2000), folder / 'squares.txt')
    write_sequence(generate('alternating', 2000), folder / 'nested' / 'alternating.txt')
    (folder / 'notes.md').write_text('ignored', encoding='utf-8')
    return folder


def test_find_sequence_files(statistical_config, sequences):
    analyzer = BatchAnalyzer(statistical_config)
    assert [f.name for f in analyzer.find_sequence_files(sequences)] == ['squares.txt']
    assert len(analyzer.find_sequence_files(sequences, recursive=True)) == 2


def test_analyze_directory(statistical_config, sequences, tmp_path):
    out = tmp_path / 'reports'
    result = BatchAnalyzer(statistical_config).analyze_directory(str(sequences), str(out), recursive=True)
    assert result['success']
    assert (result['total'], result['processed'], result['failed']) == (2, 2, 0)
    assert result['statuses'] == {'holds_at_scale': 1, 'fails_at_scale': 1}
    report = json.loads((out / 'nested' / 'alternating_report.json').read_text(encoding='utf-8'))
    assert report['exit_code'] == 1


def test_short_file_counts_as_failure(statistical_config, tmp_path):
    folder = tmp_path / 'short'
    folder.mkdir()
    write_sequence(generate('squares', 50), folder / 'short.txt')
    result = BatchAnalyzer(statistical_config).analyze_directory(str(folder), str(tmp_path / 'reports'))
    assert (result['processed'], result['failed']) == (0, 1)


def test_missing_directory(statistical_config, tmp_path):
    result = BatchAnalyzer(statistical_config).analyze_directory(str(tmp_path / 'nope'), str(tmp_path / 'out'))
    assert not result['success']


def test_main_exit_codes(sequences, tmp_path):
    config = tmp_path / 'statistical.json'
    config.write_text(json.dumps({'mode': 'statistical', 'target': 0.0, 'scale': {'N': 2000}}), encoding='utf-8')
    with pytest.raises(SystemExit) as exc:
        batch.main(['--config', str(config), str(sequences), str(tmp_path / 'reports')])
    assert exc.value.code == 0
    with pytest.raises(SystemExit) as exc:
        batch.main(['--config', str(tmp_path / 'missing.json'), str(sequences), str(tmp_path / 'reports')])
    assert exc.value.code == 1
