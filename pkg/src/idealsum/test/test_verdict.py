"""
尺度与判定结果测试
"""
import json
import math

import numpy as np
import pytest

from idealsum.config.args import RunConfig, Scale
from idealsum.core.verdict import RESIDUAL_CAP, Verdict, VerdictStatus, first_witnesses, to_jsonable
from idealsum.errors import InputError, SummabilityError


def test_scale_defaults():
    scale = Scale()
    assert scale.N == 10_000
    assert scale.floor == pytest.approx(0.01)
    assert scale.eps_list[0] == 1.0
    assert scale.eps_effective == pytest.approx((1.0, 0.1, 0.01))
    assert len(scale.eps_skipped) == 4


def test_scale_sorts_and_dedups_eps():
    scale = Scale(N=100, eps_list=(0.1, 1.0, 0.1, 0.5))
    assert scale.eps_list == (1.0, 0.5, 0.1)
    assert scale.eps_effective == (1.0, 0.5, 0.1)


def test_scale_keeps_largest_eps_below_floor():
    """所有阈值都低于分辨率下限时保留最大的一个"""
    scale = Scale(N=4, eps_list=(0.1, 0.01))
    assert scale.eps_effective == (0.1,)


@pytest.mark.parametrize('changes', [
    {'N': 0},
    {'i_max': -1},
    {'eps_list': ()},
    {'eps_list': (0.1, -0.1)},
    {'depth_fraction': 1.0},
    {'slack': 0.5},
    {'tol': 0.0},
])
def test_scale_rejects_invalid(changes):
    with pytest.raises(InputError):
        Scale(**changes)


def test_input_error_is_value_error():
    with pytest.raises(ValueError):
        Scale(N=-5)
    assert issubclass(InputError, SummabilityError)


def test_scale_with_and_to_dict():
    scale = Scale(N=100).with_(N=400)
    data = scale.to_dict()
    assert data['N'] == 400
    assert data['floor'] == pytest.approx(0.05)
    assert isinstance(data['eps_list'], list)


def test_fails_requires_witnesses():
    scale = Scale(N=10)
    with pytest.raises(InputError):
        Verdict(VerdictStatus.FAILS, scale, residual=1.0, name='x')
    verdict = Verdict(VerdictStatus.FAILS, scale, residual=1.0, witnesses=[3], name='x')
    assert verdict.fails
    assert verdict.exit_code == 1


def test_residual_validation():
    scale = Scale(N=10)
    with pytest.raises(InputError):
        Verdict(VerdictStatus.HOLDS, scale, residual=-0.5)
    capped = Verdict(VerdictStatus.INCONCLUSIVE, scale, residual=math.inf)
    assert capped.residual == RESIDUAL_CAP
    assert capped.diagnostics['residual_infinite'] is True


def test_combine():
    scale = Scale(N=10)
    ok = Verdict(VerdictStatus.HOLDS, scale, residual=0.1)
    unsure = Verdict(VerdictStatus.INCONCLUSIVE, scale, residual=0.2)
    bad = Verdict(VerdictStatus.FAILS, scale, residual=0.3, witnesses=[7])

    assert Verdict.combine('c', {'a': ok, 'b': ok}, scale).holds
    assert Verdict.combine('c', {'a': ok, 'b': unsure}, scale).inconclusive
    failed = Verdict.combine('c', {'a': ok, 'b': unsure, 'd': bad}, scale)
    assert failed.fails
    assert failed.witnesses == [7]
    assert failed.residual == pytest.approx(0.3)
    assert set(failed.hypotheses) == {'a', 'b', 'd'}
    assert Verdict.combine('c', {}, scale).inconclusive


def test_no_claim_records_reason():
    scale = Scale(N=10)
    verdict = Verdict.no_claim('thing', scale, 'premises', failing=['x'])
    assert verdict.inconclusive
    assert verdict.exit_code == 2
    assert verdict.diagnostics['refused'] == 'premises'


def test_to_dict_is_json_serializable():
    scale = Scale(N=10)
    verdict = Verdict(VerdictStatus.HOLDS, scale, estimate=complex(1, 2), name='z',
                      diagnostics={'values': np.array([1.0, np.inf, np.nan]), 'n': np.int64(3)})
    data = verdict.to_dict()
    text = json.dumps(data)
    assert data['estimate'] == {'re': 1.0, 'im': 2.0}
    assert data['diagnostics']['values'] == [1.0, 'inf', 'nan']
    assert data['status'] == 'holds_at_scale'
    assert '"n": 3' in text


def test_to_jsonable_real_complex_collapses():
    assert to_jsonable(complex(2.5, 0)) == 2.5
    assert to_jsonable(-math.inf) == '-inf'


def test_first_witnesses_one_based():
    mask = np.array([False, True, False, True, True])
    assert first_witnesses(mask) == [2, 4, 5]
    assert first_witnesses(mask, count=1, offset=10) == [12]


def test_run_config_validation():
    with pytest.raises(InputError):
        RunConfig(command='run', config_path='a.json')
    with pytest.raises(InputError):
        RunConfig(command='run', config_path='a.json', input_path='s.txt', csv=True)
    with pytest.raises(InputError):
        RunConfig(command='generate')
    with pytest.raises(InputError):
        RunConfig(command='generate', corpus='squares', n=0)
    with pytest.raises(InputError):
        RunConfig(command='run', config_path='a.json', input_path='s.txt', seed=2 ** 64)
    config = RunConfig(command='generate', corpus='squares', n=5)
    assert config.dim == 2
