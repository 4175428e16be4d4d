"""
序列分析器
按配置构建矩阵族、理想与规范函数族，执行一种分析并生成报告
"""
import json
from typing import Any, Callable, Dict, List, Optional, Tuple, Union

import numpy as np
from pydantic import BaseModel, Field

from idealsum.config.schema import AnalysisConfig, NONNEGATIVE_MODES
from idealsum.errors import InputError
from .banach_sim import (
    FiniteDimSpace, bi_summable_transfer, i_generation_check, simons_sup_check, weak_stat_transfer,
)
from .gauge_base import GaugeFamily
from .gauge_factory import GaugeFactory
from .ideal_base import IdealHandle
from .ideal_core import ideal_cluster_points, prefix_values
from .ideal_factory import IdealFactory
from .ideals import BasedIdeal
from .limsup_cluster import (
    cluster_gauge_sufficient, jbi_cluster_point, limsup_implies_statistical, matrix_limsup_inequality,
)
from .matrix_engine import check_toeplitz_regularity, derived_ideal, family_row_norm_bound
from .matrix_factory import MatrixFactory
from .matrix_family import MatrixFamily
from .orlicz import envelope_hypotheses
from .precauchy import dichotomy_check, pair_mass_series, pre_cauchy, pre_cauchy_plus
from .sequence import SequencePrefix, VectorSequencePrefix
from .sequence_io import format_number
from .summability import (
    ConvergenceRequest, almost_convergence, b_summable, decompose_statistical, exceptional_set,
    statistically_convergent, strong_summable, tauberian_check, variance_characterization, weighted_density,
)
from .verdict import Verdict, VerdictStatus, to_jsonable

# 一次分析的结果: 主判定、附带判定、诊断序列、其余细节
Outcome = Tuple[Verdict, Dict[str, Verdict], Dict[str, np.ndarray], Dict[str, Any]]


class AnalysisReport(BaseModel):
    """
    分析报告

    每个结论的 hypotheses 中都记录了它所依赖的前提判定。
    """
    config: Dict[str, Any] = Field(..., description="回显的分析配置")
    input: Dict[str, Any] = Field(..., description="输入序列的描述")
    status: str = Field(..., description="主判定状态")
    exit_code: int = Field(..., description="退出码")
    verdict: Dict[str, Any] = Field(..., description="主判定")
    verdicts: Dict[str, Any] = Field(default_factory=dict, description="附带判定")
    details: Dict[str, Any] = Field(default_factory=dict, description="模式相关的细节")
    series: Dict[str, List[Any]] = Field(default_factory=dict, description="按 n 排列的诊断序列")

    def to_json(self) -> str:
        """确定性的 JSON 文本（键排序）"""
        return json.dumps(to_jsonable(self.model_dump()), sort_keys=True, indent=2, ensure_ascii=False) + '\n'

    def series_csv(self) -> str:
        """诊断序列的 CSV，第一列为 n，短序列留空"""
        names = sorted(self.series)
        length = max((len(self.series[k]) for k in names), default=0)
        lines = [','.join(['n'] + names)]
        for row in range(length):
            cells = [str(row + 1)]
            for k in names:
                column = self.series[k]
                cells.append(format_number(column[row]) if row < len(column) else '')
            lines.append(','.join(cells))
        return '\n'.join(lines) + '\n'


def _tauberian_functions(preset: str) -> Tuple[Callable, Callable, Callable]:
    """φ、ψ、h 预设"""
    if preset == 'cesaro':
        return (lambda x: 1.0 / np.asarray(x, dtype=float),
                lambda x: 1.0 / np.asarray(x, dtype=float),
                lambda t: np.asarray(t, dtype=float) / (1.0 + np.asarray(t, dtype=float)))
    raise InputError(f"未知的 Tauberian 预设: '{preset}'")


class SequenceAnalyzer:
    """
    序列分析器

    Args:
        config: 分析配置
        progress_callback: 进度回调，None 时输出到控制台
        quiet: 不输出日志
        scale_N: 覆盖窗口长度
        i_max: 覆盖矩阵族指标截断
        seed: 覆盖随机采样种子
    """

    def __init__(self, config: AnalysisConfig, progress_callback=None, quiet: bool = False,
                 scale_N: Optional[int] = None, i_max: Optional[int] = None, seed: Optional[int] = None):
        self.config = config
        self.progress_callback = progress_callback
        self.quiet = quiet
        self.scale = config.scale.to_scale(N=scale_N, i_max=i_max)
        self.seed = config.seed if seed is None else int(seed)

        self.family: Optional[MatrixFamily] = None
        self.ideal: Optional[IdealHandle] = None
        self.gauges: Optional[GaugeFamily] = None

    def _log(self, message: str, level: str = 'info'):
        """输出日志"""
        if self.quiet:
            return
        if self.progress_callback:
            self.progress_callback.on_log(message, level)
        else:
            print(message)

    def _phase(self, phase: str, num: int, total: int):
        if self.progress_callback and not self.quiet:
            self.progress_callback.on_phase_change(phase, num, total)

    def _verdict(self, name: str, verdict: Verdict):
        if self.progress_callback and not self.quiet:
            self.progress_callback.on_verdict(name, verdict)

    def echo(self) -> Dict[str, Any]:
        """回显配置，尺度取实际使用的值"""
        data = self.config.echo()
        data['scale'] = to_jsonable(self.scale.to_dict())
        data['seed'] = self.seed
        return data

    def build(self):
        """
        构建矩阵族、理想与规范函数族

        Raises:
            InputError: 配置不合法，或模式要求非负而矩阵族含负元素
            RefusedError: 导出理想的条件 (+) 不成立
        """
        cfg = self.config
        self.family = MatrixFactory.create_family(cfg.matrix.to_kwargs(), i_max=self.scale.i_max)
        self._log(f"矩阵族: {self.family.name} ({len(self.family)} 个成员)")
        if cfg.mode in NONNEGATIVE_MODES and not self.family.nonnegative:
            raise InputError(f"配置字段 'matrix': 模式 '{cfg.mode}' 要求矩阵族非负，'{self.family.name}' 含有负元素")
        self.ideal = IdealFactory.create_ideal(cfg.ideal.to_kwargs(), self.scale)
        self._log(f"理想: {self.ideal.name}")
        if cfg.gauges is not None:
            self.gauges = GaugeFactory.create_family(cfg.gauges.to_kwargs())
            self._log(f"规范函数族: {self.gauges.name}")
        if self.scale.eps_skipped:
            self._log(f"低于分辨率下限 {self.scale.floor:.3g} 的阈值被跳过: {list(self.scale.eps_skipped)}", 'warning')

    def analyze(self, sequence: Union[SequencePrefix, VectorSequencePrefix]) -> AnalysisReport:
        """
        执行分析

        Args:
            sequence: 标量序列（simons 模式为向量序列）

        Returns:
            分析报告

        Raises:
            InputError: 序列类型与模式不符或短于窗口
        """
        cfg = self.config
        if self.progress_callback and not self.quiet:
            self.progress_callback.on_start(self.echo())

        total = 3
        self._phase('构建', 1, total)
        if self.family is None:
            self.build()
        if cfg.vector_mode != isinstance(sequence, VectorSequencePrefix):
            raise InputError(f"模式 '{cfg.mode}' 需要{'向量' if cfg.vector_mode else '标量'}序列")
        if sequence.N < self.scale.N:
            raise InputError(f"输入序列长度 {sequence.N} 小于窗口 N={self.scale.N}")

        self._phase(f'检验 ({cfg.mode})', 2, total)
        handler = getattr(self, f'_run_{cfg.mode}')
        main, extras, series, details = handler(sequence)
        for name, verdict in extras.items():
            self._verdict(name, verdict)
        self._verdict(cfg.mode, main)

        self._phase('报告', 3, total)
        level = {VerdictStatus.HOLDS: 'success', VerdictStatus.FAILS: 'error'}.get(main.status, 'warning')
        self._log(f"结论 {main.name}: {main.status.value}", level)

        if isinstance(sequence, VectorSequencePrefix):
            described = {'name': sequence.name, 'N': sequence.N, 'dim': sequence.dim}
        else:
            described = {'name': sequence.name, 'N': sequence.N, 'real': sequence.is_real,
                         'metadata': to_jsonable(sequence.metadata)}
        return AnalysisReport(
            config=self.echo(),
            input=described,
            status=main.status.value,
            exit_code=main.exit_code,
            verdict=main.to_dict(),
            verdicts={k: v.to_dict() for k, v in extras.items()},
            details=to_jsonable(details),
            series={k: to_jsonable(np.asarray(v)) for k, v in series.items()},
        )

    # ========== 各模式 ==========

    def _request(self, s: SequencePrefix, gauges: Optional[GaugeFamily] = None) -> ConvergenceRequest:
        return ConvergenceRequest(s, self.family, self.ideal, gauges=gauges, target=self.config.target,
                                  scale=self.scale)

    def _envelope_series(self, values: np.ndarray) -> Dict[str, np.ndarray]:
        n_len = self.family.eval_length(self.scale.N)
        lo, hi = self.family.envelope(values, n_len)
        return {'transform_inf': lo, 'transform_sup': hi}

    def _single_matrix(self):
        if len(self.family) != 1:
            raise InputError(f"配置字段 'matrix': 模式 '{self.config.mode}' 需要单个矩阵，而不是矩阵族")
        return self.family.member(self.family.indices[0])

    def _run_summable(self, s: SequencePrefix) -> Outcome:
        req = self._request(s)
        extras = {'row_norm_bound': family_row_norm_bound(self.family, self.ideal, self.scale)}
        verdict = b_summable(req)
        verdict.hypotheses.update(extras)
        return verdict, extras, self._envelope_series(req.values), {}

    def _run_strong(self, s: SequencePrefix) -> Outcome:
        req = self._request(s, self.gauges)
        verdict = strong_summable(req, self.config.target)
        extras = envelope_hypotheses(self.gauges, self.scale.eps_effective, self.scale)
        # 强可和推出统计收敛（下包络为正时）
        extras['statistical'] = statistically_convergent(req, verdict.estimate)
        verdict.hypotheses.update(extras)
        return verdict, extras, self._envelope_series(req.values), {}

    def _density_series(self, values: np.ndarray, a) -> Dict[str, np.ndarray]:
        series = {}
        for eps in self.scale.eps_effective:
            D = exceptional_set(values, a, eps)
            series[f'density_eps_{eps:g}'] = weighted_density(self.family, D, self.scale.N)
        return series

    def _run_statistical(self, s: SequencePrefix) -> Outcome:
        req = self._request(s)
        verdict = statistically_convergent(req, self.config.target)
        series = self._density_series(req.values, verdict.estimate) if verdict.estimate is not None else {}
        return verdict, {}, series, {'eps_skipped': list(self.scale.eps_skipped)}

    def _comparison_ideal(self) -> IdealHandle:
        if self.config.comparison_ideal is not None:
            return IdealFactory.create_ideal(self.config.comparison_ideal.to_kwargs(), self.scale)
        return derived_ideal(self.family, self.ideal, self.scale)

    def _run_limsup(self, s: SequencePrefix) -> Outcome:
        A = self.family.member(self.family.indices[0])
        J = self._comparison_ideal()
        report = matrix_limsup_inequality(A, self.ideal, J, s, self.scale)
        extras = {'matrix_limsup_inequality': report.verdict, **report.hypotheses}
        details = {'limsup': {'lhs': report.lhs, 'rhs': report.rhs},
                   'liminf': {'lhs': report.lhs_inf, 'rhs': report.rhs_inf},
                   'skipped_sets': report.skipped_sets}
        if self.config.target is None:
            main = extras.pop('matrix_limsup_inequality')
        else:
            main = limsup_implies_statistical(s, self.family, self.ideal, self.config.target, self.scale)
        n_len = A.max_row(self.scale.N)
        series = {'transform': A.apply(prefix_values(s, self.scale), n_len)}
        return main, extras, series, details

    def _run_cluster(self, s: SequencePrefix) -> Outcome:
        cfg = self.config
        extras: Dict[str, Verdict] = {}
        details: Dict[str, Any] = {}
        if cfg.grid is not None:
            J = derived_ideal(self.family, self.ideal, self.scale)
            eps = min(self.scale.eps_effective)
            found = ideal_cluster_points(s, J, cfg.grid, eps, self.scale)
            details['grid_cluster_points'] = found
            details['grid_eps'] = eps
        points = cfg.points if cfg.points is not None else details['grid_cluster_points']
        for a in points:
            extras[f'cluster({a:g})'] = jbi_cluster_point(s, self.family, self.ideal, a, None, self.scale)
            if self.gauges is not None:
                extras[f'gauge_sufficient({a:g})'] = cluster_gauge_sufficient(s, self.family, self.gauges,
                                                                              self.ideal, a, self.scale)
        if not extras:
            main = Verdict.no_claim('cluster_points', self.scale, 'no_cluster_point', grid=cfg.grid)
        else:
            main = Verdict.combine('cluster_points', {k: v for k, v in extras.items() if k.startswith('cluster(')},
                                   self.scale)
        details['criterion'] = {k: v.estimate for k, v in extras.items()}
        return main, extras, {}, details

    def _run_precauchy(self, s: SequencePrefix) -> Outcome:
        cfg = self.config
        check = pre_cauchy_plus if cfg.plus else pre_cauchy
        main = check(s, self.family, self.ideal, None, self.scale)
        extras: Dict[str, Verdict] = {}
        details: Dict[str, Any] = {}
        if cfg.dichotomy is not None:
            alpha, beta = cfg.dichotomy
            report = dichotomy_check(s, self.family, self.ideal, alpha, beta, self.scale)
            extras['dichotomy'] = report.verdict
            details['dichotomy'] = report.to_dict()
        values = prefix_values(s, self.scale)
        n_len = self.family.eval_length(self.scale.N)
        i0 = self.family.indices[0]
        eps = min(self.scale.eps_effective)
        masses, method = pair_mass_series(values, self.family, [(i0, i0)], [eps], n_len, self.scale.N,
                                          budget=self.scale.row_support_budget)
        details['pair_mass_method'] = method
        return main, extras, {f'pair_mass_eps_{eps:g}': masses[0, 0]}, details

    def _run_decompose(self, s: SequencePrefix) -> Outcome:
        if not isinstance(self.ideal, BasedIdeal):
            raise InputError(f"配置字段 'ideal': 分解需要带可数基的理想，'{self.ideal.name}' 没有")
        result = decompose_statistical(s, self.family, self.ideal, self.config.target, self.scale)
        series = {'t': result.t.values, 'disagreement': result.disagreement.indicator()}
        details = result.to_dict()
        details.pop('verdict')
        return result.verdict, dict(result.verdict.hypotheses), series, details

    def _run_tauberian(self, s: SequencePrefix) -> Outcome:
        A = self._single_matrix()
        phi, psi, h = _tauberian_functions(self.config.tauberian.preset)
        report = tauberian_check(s, A, self.ideal, phi, psi, h, self.scale, a=self.config.target)
        extras = {**report.hypotheses, 'premise': report.premise}
        values = prefix_values(s, self.scale)
        n = np.arange(1, values.size, dtype=float)
        series = {'variation_ratio': np.abs(np.diff(values)) / phi(n)}
        return report.conclusion, extras, series, {'variation_constant': report.variation_constant,
                                                   'failing': report.failing}

    def _run_regularity(self, s: SequencePrefix) -> Outcome:
        extras: Dict[str, Verdict] = {}
        for i in self.family.sample_indices():
            report = check_toeplitz_regularity(self.family.member(i), self.scale)
            for key, verdict in report.verdicts().items():
                extras[f'B_{i}{key}'] = verdict
        main = Verdict.combine('toeplitz_regularity', extras, self.scale)
        return main, extras, {}, {}

    def _run_variance(self, s: SequencePrefix) -> Outcome:
        req = self._request(s, self.gauges)
        main = variance_characterization(req, self.config.target)
        return main, dict(main.hypotheses), {}, {}

    def _run_almost(self, s: SequencePrefix) -> Outcome:
        main = almost_convergence(s, self.scale)
        return main, {}, {}, {}

    def _run_simons(self, xs: VectorSequencePrefix) -> Outcome:
        cfg = self.config
        space = FiniteDimSpace.from_spec(cfg.space.to_kwargs())
        if cfg.H is not None:
            H = np.asarray(cfg.H, dtype=float)
        elif space.polytopal_dual:
            H = space.dual_extreme_points
        else:
            raise InputError("配置字段 'H': 对偶球不是多面体时必须给出 H")
        if xs.dim != space.dim:
            raise InputError(f"向量维数 {xs.dim} 与空间维数 {space.dim} 不一致")
        result = simons_sup_check(space, H, xs, self.family, self.ideal, self.scale,
                                  ball_samples=cfg.ball_samples, seed=self.seed)
        extras = {'i_generation': i_generation_check(H, None, space, self.scale, seed=self.seed)}
        if cfg.limit_vector is not None:
            x = np.asarray(cfg.limit_vector, dtype=float)
            extras['weak_stat_transfer'] = weak_stat_transfer(space, H, xs, x, self.family, self.ideal, self.scale,
                                                              gauges=self.gauges, seed=self.seed)
            extras['bi_summable_transfer'] = bi_summable_transfer(space, H, xs, x, self.family, self.ideal,
                                                                  self.scale, seed=self.seed)
        details = {'space': space.descriptor(), **result.to_dict()}
        details.pop('verdict')
        window = xs.vectors[:self.scale.N]
        return result.verdict, extras, {'functional_argmax_ball': window @ result.argmax_ball}, details


__all__ = ['SequenceAnalyzer', 'AnalysisReport']
