"""
规范函数、族与包络测试
"""
import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from idealsum.config.args import Scale
from idealsum.core import GaugeFactory, get_gauge
from idealsum.core.gauge_base import MODULUS, ORLICZ
from idealsum.core.gauge_family import PowerGaugeFamily, UniformGaugeFamily
from idealsum.core.gauges import CallableGauge, PowerGauge, TableGauge
from idealsum.core.orlicz import (
    delta2_constant, envelope_hypotheses, equicontinuity_delta, lower_envelope, power_gauge, upper_envelope,
    validate_family,
)
from idealsum.errors import GaugeLawError, InputError


def test_power_gauge_kinds():
    assert GaugeFactory.create_gauge('power', p=2).kind == ORLICZ
    assert GaugeFactory.create_gauge('power', p=0.5).kind == MODULUS
    assert get_gauge('identity')(3.0) == 3.0
    with pytest.raises(InputError):
        PowerGauge(0)
    assert power_gauge(3)(2.0) == pytest.approx(8.0)
    with pytest.raises(InputError):
        power_gauge(-1.0)


def test_laws_hold_for_standard_gauges():
    for gauge in (PowerGauge(2), PowerGauge(0.5), get_gauge('exp')):
        report = gauge.check_laws()
        assert report.holds, report.failures
    assert PowerGauge(2).check_laws().subadditive is False


def test_validate_rejects_broken_gauges():
    concave = CallableGauge(np.sqrt, kind=ORLICZ, name='sqrt')
    report = concave.check_laws()
    assert not report.convex
    assert 'convex' in report.failures
    with pytest.raises(GaugeLawError):
        concave.validate()
    square_modulus = CallableGauge(np.square, kind=MODULUS, name='square')
    with pytest.raises(GaugeLawError):
        square_modulus.validate()


def test_table_gauge():
    table = GaugeFactory.create_gauge('table', points=[[1, 1], [2, 4]])
    assert table(0.0) == 0.0
    assert table(2.0) == pytest.approx(4.0)
    # 末端按最后一段斜率线性外推
    assert table(3.0) == pytest.approx(7.0)
    with pytest.raises(GaugeLawError):
        TableGauge([[1, 2], [2, 1]])
    with pytest.raises(InputError):
        TableGauge([[2, 1], [1, 2]])
    with pytest.raises(InputError):
        TableGauge([[1, 1]], kind='other')


def test_delta2():
    assert delta2_constant(PowerGauge(2)) == pytest.approx(4.0)
    assert delta2_constant(PowerGauge(1)) == pytest.approx(2.0)
    with pytest.raises(InputError):
        delta2_constant(PowerGauge(2), [0.0, 1.0])


def test_factory_families():
    family = GaugeFactory.create_family({'kind': 'power_family', 'p_min': 1, 'p_max': 2})
    assert isinstance(family, PowerGaugeFamily)
    assert family.kind == ORLICZ
    uniform = GaugeFactory.create_family({'kind': 'power', 'p': 3})
    assert isinstance(uniform, UniformGaugeFamily)
    assert uniform.uniform.p == 3.0
    assert GaugeFactory.create_family({'kind': 'clipped_linear'}).kind == MODULUS
    assert 'exp' in GaugeFactory.get_available_gauges()
    with pytest.raises(InputError):
        GaugeFactory.create_family({'p': 2})
    with pytest.raises(InputError):
        GaugeFactory.create_gauge('nope')
    with pytest.raises(InputError):
        GaugeFactory.create_gauge('power', q=2)


def test_power_family_exponents():
    family = PowerGaugeFamily(1.0, 2.0, seed=5)
    short = family.exponents(np.arange(1, 10), 0)
    long = family.exponents(np.arange(1, 2000), 0)
    assert np.array_equal(short, long[:9])
    assert np.all((long >= 1.0) & (long <= 2.0))
    cyclic = PowerGaugeFamily(1.0, 2.0)
    assert cyclic.exponents(np.array([15]), 1)[0] == pytest.approx(1.0)
    with pytest.raises(InputError):
        PowerGaugeFamily(2.0, 1.0)


def test_validate_family():
    reports = validate_family(PowerGaugeFamily(1.0, 3.0), Scale(N=100, i_max=4))
    assert all(r.holds for r in reports.values())


def test_envelopes(scale):
    shrinking = GaugeFactory.create_family({'kind': 'scaled_identity'})
    low = lower_envelope(shrinking, 1.0, scale)
    assert low.value == pytest.approx(1.0 / scale.N)
    assert low.scale_dependent
    assert low.argext[0] == scale.N
    high = upper_envelope(shrinking, 1.0, scale)
    assert high.value == pytest.approx(1.0)
    assert not high.scale_dependent
    with pytest.raises(InputError):
        lower_envelope(shrinking, 0.0, scale)


def test_envelope_hypotheses(scale):
    steady = envelope_hypotheses(UniformGaugeFamily(PowerGauge(2)), [0.5, 1.0], scale)
    assert steady['lower_envelope'].holds
    assert steady['upper_envelope'].holds
    assert steady['lower_envelope'].estimate == pytest.approx(0.25)
    drifting = envelope_hypotheses(GaugeFactory.create_family({'kind': 'scaled_identity'}), [1.0], scale)
    assert drifting['lower_envelope'].inconclusive
    assert drifting['upper_envelope'].holds


def test_equicontinuity(scale):
    result = equicontinuity_delta(UniformGaugeFamily(PowerGauge(2)), 0.25, scale)
    assert result.holds
    assert 0.25 <= result.delta <= 0.5
    assert not result.scale_dependent
    clipped = equicontinuity_delta(GaugeFactory.create_family({'kind': 'clipped_linear'}), 0.25, scale)
    assert clipped.scale_dependent
    with pytest.raises(InputError):
        equicontinuity_delta(UniformGaugeFamily(PowerGauge(2)), 0.0, scale)


@settings(max_examples=30, deadline=None)
@given(st.floats(min_value=1.0, max_value=5.0))
def test_power_gauges_above_one_are_orlicz(p):
    report = PowerGauge(p).check_laws(samples=200)
    assert report.holds
    assert report.convex


@settings(max_examples=30, deadline=None)
@given(st.floats(min_value=0.05, max_value=0.99))
def test_power_gauges_below_one_are_moduli(p):
    report = PowerGauge(p).check_laws(samples=200)
    assert report.kind == MODULUS
    assert report.holds
    assert report.subadditive


@settings(max_examples=30, deadline=None)
@given(st.floats(min_value=1e-3, max_value=1e2), st.floats(min_value=1e-3, max_value=1e2))
def test_power_gauge_monotone(a, b):
    F = PowerGauge(1.5)
    lo, hi = min(a, b), max(a, b)
    assert F(lo) <= F(hi)
