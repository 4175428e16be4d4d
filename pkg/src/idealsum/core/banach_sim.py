"""
有限维 Banach 空间上的 Simons 型检验
边界、(I)-生成、sup-limsup 等式与收敛性沿对偶球的传递
"""
import itertools
import math
from dataclasses import dataclass, field
from typing import Any, Dict, List, Mapping, Optional, Sequence, Tuple

import numpy as np
from scipy.optimize import nnls
from scipy.spatial import ConvexHull

from idealsum.config.args import Scale
from idealsum.errors import InputError, RefusedError
from .gauge_base import GaugeFamily
from .ideal_base import IdealHandle
from .ideal_core import prefix_values
from .ideals import BasedIdeal
from .matrix_engine import derived_ideal, family_row_norm_bound
from .matrix_family import MatrixFamily
from .matrix_base import SummabilityMatrix
from .orlicz import envelope_hypotheses, equicontinuity_delta
from .precauchy import pre_cauchy, pre_cauchy_plus
from .sequence import SequencePrefix, VectorSequencePrefix
from .summability import ConvergenceRequest, b_summable, statistically_convergent, strong_summable
from .verdict import Verdict, VerdictStatus, first_witnesses, sample_witnesses

# 凸包成员判定的容差
HULL_TOL = 1e-9

# 对偶极点相对原始顶点的归一化容差
EXTREME_TOL = 1e-12

# p = 1 时对偶极点为 2^d 个符号向量
MAX_SIGN_DIM = 16


class FiniteDimSpace:
    """
    有限维实 Banach 空间 (ℝ^d, ‖·‖)

    范数由对称多面体单位球（顶点列表）或 p-范数给出；对偶球为极多面体或 q-范数球。

    Args:
        kind: 'polytope' 或 'pnorm'
        vertices: 多面体单位球的顶点（kind='polytope'）
        p: 范数指数，可为 math.inf（kind='pnorm'）
        d: 维数（kind='pnorm'）
        name: 名称

    Raises:
        InputError: 多面体不对称、不满维，或参数不合法
    """

    def __init__(self, kind: str, vertices: Optional[Sequence[Sequence[float]]] = None,
                 p: Optional[float] = None, d: Optional[int] = None, name: Optional[str] = None):
        if kind == 'polytope':
            if vertices is None:
                raise InputError("多面体范数需要顶点列表")
            self._init_polytope(np.asarray(vertices, dtype=float))
        elif kind == 'pnorm':
            if p is None or d is None:
                raise InputError("p-范数需要 p 与 d")
            self._init_pnorm(float(p), int(d))
        else:
            raise InputError(f"未知的范数类型: '{kind}'，可用: polytope, pnorm")
        self.kind = kind
        self.name = name or (f'polytope[{len(self.vertices)}]' if kind == 'polytope' else f'l{self.p:g}^{self.dim}')

    @classmethod
    def polytope(cls, vertices: Sequence[Sequence[float]], name: Optional[str] = None) -> 'FiniteDimSpace':
        return cls('polytope', vertices=vertices, name=name)

    @classmethod
    def pnorm(cls, p: float, d: int) -> 'FiniteDimSpace':
        return cls('pnorm', p=p, d=d)

    @classmethod
    def max_norm(cls, d: int) -> 'FiniteDimSpace':
        """ℓ∞ 范数，单位球顶点为全部符号向量"""
        signs = np.array(list(itertools.product((-1.0, 1.0), repeat=d)))
        return cls('polytope', vertices=signs, name=f'max^{d}')

    @classmethod
    def l1_norm(cls, d: int) -> 'FiniteDimSpace':
        """ℓ¹ 范数，单位球顶点为 ±e_i"""
        eye = np.eye(d)
        return cls('polytope', vertices=np.vstack([eye, -eye]), name=f'l1^{d}')

    @classmethod
    def from_spec(cls, spec: Mapping[str, Any]) -> 'FiniteDimSpace':
        """
        由配置字典创建

        Examples:
            FiniteDimSpace.from_spec({'kind': 'pnorm', 'p': 2, 'd': 3})
            FiniteDimSpace.from_spec({'kind': 'polytope', 'vertices': [[1, 0], [-1, 0], [0, 1], [0, -1]]})
        """
        spec = dict(spec)
        kind = spec.pop('kind', None)
        if kind is None:
            raise InputError("空间配置缺少字段 'kind'")
        try:
            return cls(kind, **spec)
        except TypeError as e:
            raise InputError(f"空间配置的参数不合法: {e}")

    def _init_polytope(self, vertices: np.ndarray):
        if vertices.ndim != 2 or vertices.shape[0] < 2:
            raise InputError(f"顶点列表形状不合法: {vertices.shape}")
        d = vertices.shape[1]
        if np.linalg.matrix_rank(vertices) < d:
            raise InputError("多面体单位球不满维")
        for v in vertices:
            if np.min(np.linalg.norm(vertices + v, axis=1)) > HULL_TOL:
                raise InputError(f"多面体单位球不对称: 缺少 {(-v).tolist()}")
        self.dim = d
        self.p = None
        if d == 1:
            radius = float(np.max(np.abs(vertices)))
            self.vertices = np.array([[radius], [-radius]])
            self.dual_extreme_points = np.array([[1.0 / radius], [-1.0 / radius]])
            return
        try:
            hull = ConvexHull(vertices)
        except (RuntimeError, ValueError) as e:
            raise InputError(f"无法计算单位球的凸包: {e}")
        self.vertices = vertices[hull.vertices]
        normals, offsets = hull.equations[:, :-1], hull.equations[:, -1]
        # 原点在内部，offset < 0；单纯形面片会重复给出同一超平面
        extremes = normals / (-offsets[:, None])
        _, keep = np.unique(np.round(extremes, 9), axis=0, return_index=True)
        extremes = extremes[np.sort(keep)]
        extremes /= np.max(extremes @ self.vertices.T, axis=1)[:, None]
        self.dual_extreme_points = extremes

    def _init_pnorm(self, p: float, d: int):
        if not p >= 1:
            raise InputError(f"p-范数要求 p >= 1: {p}")
        if d < 1:
            raise InputError(f"维数必须为正: {d}")
        self.dim = d
        self.p = p
        self.vertices = None
        eye = np.eye(d)
        if math.isinf(p):
            self.dual_extreme_points = np.vstack([eye, -eye])
        elif p == 1.0:
            if d > MAX_SIGN_DIM:
                raise InputError(f"ℓ¹ 的对偶极点有 2^{d} 个，维数上限为 {MAX_SIGN_DIM}")
            self.dual_extreme_points = np.array(list(itertools.product((-1.0, 1.0), repeat=d)))
        else:
            # 严格凸的对偶球，极点为整个单位球面
            self.dual_extreme_points = None

    @property
    def q(self) -> Optional[float]:
        """对偶指数"""
        if self.p is None:
            return None
        if self.p == 1.0:
            return math.inf
        if math.isinf(self.p):
            return 1.0
        return self.p / (self.p - 1.0)

    @property
    def polytopal_dual(self) -> bool:
        return self.dual_extreme_points is not None

    def norm(self, x: np.ndarray) -> np.ndarray:
        """‖x‖，x 可以是 (d,) 或 (m, d)"""
        x = np.asarray(x, dtype=float)
        if self.kind == 'polytope':
            return np.max(x @ self.dual_extreme_points.T, axis=-1)
        return np.linalg.norm(x, ord=self.p, axis=-1)

    def dual_norm(self, y: np.ndarray) -> np.ndarray:
        """‖y‖_*"""
        y = np.asarray(y, dtype=float)
        if self.kind == 'polytope':
            return np.max(y @ self.vertices.T, axis=-1)
        return np.linalg.norm(y, ord=self.q, axis=-1)

    def in_dual_ball(self, y: np.ndarray, tol: float = HULL_TOL) -> np.ndarray:
        return self.dual_norm(y) <= 1.0 + tol

    def sample_dual_ball(self, count: int, seed: int = 0) -> np.ndarray:
        """
        对偶球上的抽样点: 全部极点（若有限）+ 球面随机点 + 内部随机点

        Returns:
            形状为 (m, d) 的数组
        """
        rng = np.random.default_rng(seed)
        parts = []
        if self.polytopal_dual:
            parts.append(self.dual_extreme_points)
        remaining = max(count - sum(len(p) for p in parts), 0)
        if remaining:
            directions = rng.standard_normal((remaining, self.dim))
            boundary = directions / self.dual_norm(directions)[:, None]
            half = remaining // 2
            radii = rng.random(remaining - half) ** (1.0 / self.dim)
            parts.extend([boundary[:half], boundary[half:] * radii[:, None]])
        return np.vstack(parts)

    def descriptor(self) -> Dict[str, Any]:
        if self.kind == 'polytope':
            return {'kind': 'polytope', 'vertices': self.vertices.tolist(), 'name': self.name}
        return {'kind': 'pnorm', 'p': self.p, 'd': self.dim, 'name': self.name}

    def __repr__(self) -> str:
        return f"<FiniteDimSpace: {self.name}>"


def positive_part(t):
    """f(t) = max(t, 0)"""
    if np.ndim(t) == 0:
        return max(float(t), 0.0)
    return np.maximum(np.asarray(t, dtype=float), 0.0)


@dataclass
class SupportFunctional:
    """
    支撑泛函: 对偶球的极点 e 使 ⟨e, x⟩ = ‖x‖

    Attributes:
        vector: 对偶向量
        value: ⟨e, x⟩
        degenerate: x = 0 时任取的对偶单位向量
    """
    vector: np.ndarray
    value: float
    degenerate: bool = False


def support_functional(space: FiniteDimSpace, x: Sequence[float]) -> SupportFunctional:
    """
    取得范数的对偶极点

    多面体取极点列表上的 argmax，p-范数用对偶映射公式。

    Examples:
        # ℓ∞ 平面，x = (3, −1) → e = (1, 0)，值为 3
        support_functional(FiniteDimSpace.max_norm(2), [3, -1])
    """
    x = np.asarray(x, dtype=float)
    if x.shape != (space.dim,):
        raise InputError(f"向量维度 {x.shape} 与空间维度 {space.dim} 不一致")
    if not np.any(x):
        if space.polytopal_dual:
            e = space.dual_extreme_points[0]
        else:
            e = np.eye(space.dim)[0]
        return SupportFunctional(e, 0.0, degenerate=True)
    if space.polytopal_dual:
        values = space.dual_extreme_points @ x
        j = int(np.argmax(values))
        return SupportFunctional(space.dual_extreme_points[j].copy(), float(values[j]))
    p = space.p
    norm = float(np.linalg.norm(x, ord=p))
    e = np.sign(x) * np.abs(x) ** (p - 1.0) / norm ** (p - 1.0)
    return SupportFunctional(e, float(e @ x))


def hull_contains(points: np.ndarray, y: np.ndarray, tol: float = HULL_TOL) -> Tuple[bool, float]:
    """
    y 是否属于 points 的凸包: 非负最小二乘求解 Σ λ_j p_j = y, Σ λ_j = 1

    Returns:
        (是否属于, 残差)
    """
    points = np.atleast_2d(np.asarray(points, dtype=float))
    y = np.asarray(y, dtype=float)
    system = np.vstack([points.T, np.ones(points.shape[0])])
    rhs = np.append(y, 1.0)
    _, residual = nnls(system, rhs)
    return bool(residual <= tol), float(residual)


def _as_vectors(xs, space: Optional[FiniteDimSpace] = None) -> VectorSequencePrefix:
    xs = xs if isinstance(xs, VectorSequencePrefix) else VectorSequencePrefix(np.asarray(xs, dtype=float))
    if space is not None and xs.dim != space.dim:
        raise InputError(f"向量序列维度 {xs.dim} 与空间维度 {space.dim} 不一致")
    return xs


def _as_family(F) -> MatrixFamily:
    return MatrixFamily.single(F) if isinstance(F, SummabilityMatrix) else F


def _check_in_ball(space: FiniteDimSpace, H: np.ndarray, tol: float) -> np.ndarray:
    H = np.atleast_2d(np.asarray(H, dtype=float))
    if H.size == 0:
        raise InputError("对偶点集 H 不能为空")
    if H.shape[1] != space.dim:
        raise InputError(f"对偶点维度 {H.shape[1]} 与空间维度 {space.dim} 不一致")
    outside = ~space.in_dual_ball(H, tol)
    if outside.any():
        j = int(np.argmax(outside))
        raise InputError(f"H 的第 {j + 1} 个点不在对偶单位球内 (‖y‖_* = {float(space.dual_norm(H[j])):.6g})")
    return H


def _functional_values(xs: VectorSequencePrefix, y: np.ndarray, scale: Scale) -> np.ndarray:
    return prefix_values(xs.vectors @ y, scale)


@dataclass
class SimonsResult:
    """
    sup-limsup 检验结果

    Attributes:
        sup_H: max_{e∈H} J-limsup ⟨e, x_n⟩
        sup_ball: 对偶球抽样点上的最大值
        gap: max(sup_ball − sup_H, 0)
        argmax_H: 取得 sup_H 的点
        argmax_ball: 取得 sup_ball 的点
        verdict: gap <= tol 时成立
    """
    sup_H: float
    sup_ball: float
    gap: float
    argmax_H: np.ndarray
    argmax_ball: np.ndarray
    verdict: Verdict
    samples_evaluated: int = 0
    samples_pruned: int = 0

    def to_dict(self) -> Dict[str, Any]:
        return {
            'sup_H': self.sup_H,
            'sup_ball': self.sup_ball,
            'gap': self.gap,
            'argmax_H': self.argmax_H.tolist(),
            'argmax_ball': self.argmax_ball.tolist(),
            'samples_evaluated': self.samples_evaluated,
            'samples_pruned': self.samples_pruned,
            'verdict': self.verdict.to_dict(),
        }


def simons_sup_check(space: FiniteDimSpace, H, xs, F, I: IdealHandle, scale: Scale,
                     ball_samples: int = 10_000, seed: int = 0) -> SimonsResult:
    """
    sup_{e∈H} J_{B,I}-limsup ⟨e, x_n⟩ 与对偶球上同一上确界的比较

    只检验非平凡方向 sup_ball <= sup_H + tol。对偶球用极点、球面与内部随机点抽样；
    max_n ⟨y, x_n⟩ 不超过 sup_H + tol 的抽样点不必计算 J-limsup。

    Raises:
        InputError: H 不在对偶球内或维度不一致
        RefusedError: 矩阵族含负元素、条件 (+) 不成立或行和无界
    """
    F = _as_family(F)
    xs = _as_vectors(xs, space)
    H = _check_in_ball(space, H, scale.tol)
    J = derived_ideal(F, I, scale)
    bound = family_row_norm_bound(F, I, scale)
    if not bound.holds:
        raise RefusedError(f"矩阵族 '{F.name}' 的行和在理想外无界")

    limsups_H = np.array([J.limsup(_functional_values(xs, e, scale), scale) for e in H])
    j = int(np.argmax(limsups_H))
    sup_H = float(limsups_H[j])
    threshold = sup_H + scale.tol

    samples = space.sample_dual_ball(ball_samples, seed=seed)
    window = xs.vectors[:scale.N]
    crude = np.max(window @ samples.T, axis=0)
    candidates = np.flatnonzero(crude > threshold)
    sup_ball, arg_ball = sup_H, H[j]
    for c in candidates:
        value = J.limsup(window @ samples[c], scale)
        if value > sup_ball:
            sup_ball, arg_ball = float(value), samples[c]
    gap = max(sup_ball - sup_H, 0.0)

    diagnostics = {'sup_H': sup_H, 'sup_ball': sup_ball, 'samples': int(len(samples)),
                   'evaluated': int(candidates.size), 'bound': bound.estimate}
    if gap <= scale.tol:
        verdict = Verdict(VerdictStatus.HOLDS, scale, estimate=sup_H, residual=gap, name='simons_sup',
                          diagnostics=diagnostics, hypotheses={'row_norm_bound': bound})
    else:
        above = window @ arg_ball > threshold
        verdict = Verdict(VerdictStatus.FAILS, scale, estimate=sup_H, residual=gap,
                          witnesses=sample_witnesses(first_witnesses(above)), name='simons_sup',
                          diagnostics=diagnostics, hypotheses={'row_norm_bound': bound})
    return SimonsResult(sup_H, sup_ball, gap, np.asarray(H[j]), np.asarray(arg_ball), verdict,
                        samples_evaluated=int(candidates.size), samples_pruned=int(len(samples) - candidates.size))


def _targets(space: FiniteDimSpace, samples: int, seed: int) -> np.ndarray:
    if space.polytopal_dual:
        return space.dual_extreme_points
    return space.sample_dual_ball(2 * samples, seed=seed)[:samples]


def i_generation_check(H, decomposition: Optional[Sequence[Sequence[int]]], space: FiniteDimSpace,
                       scale: Optional[Scale] = None, samples: int = 256, seed: int = 0,
                       tol: float = HULL_TOL) -> Verdict:
    """
    (I)-生成检验

    有限维中 ∪_m conv(H_m) 的闭凸包等于 conv(H_M)；检查对偶球的每个极点都在其中
    （对偶球严格凸时改为抽样的球面点）。

    Args:
        H: 对偶点集，形状 (m, d)
        decomposition: 递增的下标列表 H_1 ⊆ … ⊆ H_M（下标从 0 开始），并集为 H；None 表示 H_1 = H
        space: 空间
        scale: 写入判定的尺度
        samples: 非多面体对偶球的抽样点数

    Raises:
        InputError: 分解不递增或并集不是 H
    """
    scale = scale or Scale()
    H = _check_in_ball(space, H, tol)
    if decomposition is None:
        decomposition = [list(range(len(H)))]
    levels = [sorted({int(k) for k in level}) for level in decomposition]
    if not levels:
        raise InputError("分解不能为空")
    for m in range(1, len(levels)):
        if not set(levels[m - 1]) <= set(levels[m]):
            raise InputError(f"分解不递增: H_{m} ⊄ H_{m + 1}")
    if set(levels[-1]) != set(range(len(H))):
        raise InputError("分解的并集不是 H")

    targets = _targets(space, samples, seed)
    top = H[levels[-1]]
    missing, worst = [], 0.0
    coverage = []
    for t, target in enumerate(targets):
        inside, residual = hull_contains(top, target, tol)
        worst = max(worst, residual)
        if not inside:
            missing.append(t + 1)
    for level in levels:
        pts = H[level]
        coverage.append(int(sum(hull_contains(pts, target, tol)[0] for target in targets)))
    diagnostics = {'targets': int(len(targets)), 'coverage_per_level': coverage,
                   'polytopal': space.polytopal_dual}
    if missing:
        diagnostics['missing'] = [targets[t - 1].tolist() for t in missing[:10]]
        return Verdict(VerdictStatus.FAILS, scale, residual=worst, witnesses=missing[:10],
                       name='i_generation', diagnostics=diagnostics)
    return Verdict(VerdictStatus.HOLDS, scale, residual=worst, name='i_generation', diagnostics=diagnostics)


def _functional_requests(space: FiniteDimSpace, points: np.ndarray, xs: VectorSequencePrefix, x: np.ndarray,
                         F: MatrixFamily, I: IdealHandle, scale: Scale,
                         gauges: Optional[GaugeFamily] = None) -> List[Tuple[np.ndarray, ConvergenceRequest]]:
    out = []
    for y in points:
        seq = SequencePrefix(_functional_values(xs, y, scale), name=f'<y,{xs.name}>')
        out.append((y, ConvergenceRequest(seq, F, I, gauges=gauges, target=float(y @ x), scale=scale)))
    return out


def _transfer(name: str, space: FiniteDimSpace, H: np.ndarray, xs: VectorSequencePrefix, x: np.ndarray,
              F: MatrixFamily, I: IdealHandle, scale: Scale, check, premises: Dict[str, Verdict],
              samples: int, seed: int, gauges: Optional[GaugeFamily] = None) -> Verdict:
    on_H = {f'H[{j}]': check(req) for j, (_, req) in
            enumerate(_functional_requests(space, H, xs, x, F, I, scale, gauges))}
    premises['on_H'] = Verdict.combine('on_H', on_H, scale)
    if not all(v.holds for v in premises.values()):
        failing = [k for k, v in premises.items() if not v.holds]
        return Verdict.no_claim(name, scale, failing[0], hypotheses=premises, failing=failing)
    points = space.sample_dual_ball(samples, seed=seed)
    on_ball = {f'y[{j}]': check(req) for j, (_, req) in
               enumerate(_functional_requests(space, points, xs, x, F, I, scale, gauges))}
    conclusion = Verdict.combine('on_ball', on_ball, scale)
    worst = max(on_ball, key=lambda k: on_ball[k].residual)
    return Verdict(conclusion.status, scale, residual=conclusion.residual, witnesses=conclusion.witnesses,
                   name=name, diagnostics={'samples': int(len(points)), 'worst_sample': worst},
                   hypotheses={**premises, 'on_ball': conclusion})


def _vector(x, space: FiniteDimSpace) -> np.ndarray:
    x = np.asarray(x, dtype=float)
    if x.shape != (space.dim,):
        raise InputError(f"向量维度 {x.shape} 与空间维度 {space.dim} 不一致")
    return x


def weak_stat_transfer(space: FiniteDimSpace, H, xs, x, F, I: IdealHandle, scale: Scale,
                       gauges: Optional[GaugeFamily] = None, samples: int = 64, seed: int = 0) -> Verdict:
    """
    对 H 中每个 e，⟨e, x_n⟩ 统计收敛到 ⟨e, x⟩ ⇒ 对偶球上每个 y 亦然

    给出 gauges 时同时检验强可和的传递（需要包络与在 0 处等度连续），结果记在 hypotheses['strong']。
    """
    F = _as_family(F)
    xs = _as_vectors(xs, space)
    x = _vector(x, space)
    H = _check_in_ball(space, H, scale.tol)
    premises = {'i_generation': i_generation_check(H, None, space, scale, seed=seed)}
    verdict = _transfer('weak_stat_transfer', space, H, xs, x, F, I, scale,
                        lambda req: statistically_convergent(req, req.target), premises, samples, seed)
    if gauges is None:
        return verdict

    hyps = envelope_hypotheses(gauges, scale.eps_effective, scale)
    eq = equicontinuity_delta(gauges, min(scale.eps_effective), scale)
    hyps['equicontinuity'] = Verdict(VerdictStatus.HOLDS, scale, estimate=eq.delta, name='equicontinuity') \
        if eq.holds and not eq.scale_dependent else Verdict.no_claim('equicontinuity', scale, 'equicontinuity')
    hyps['i_generation'] = premises['i_generation']
    verdict.hypotheses['strong'] = _transfer('strong_transfer', space, H, xs, x, F, I, scale,
                                             lambda req: strong_summable(req, req.target), hyps, samples, seed,
                                             gauges=gauges)
    return verdict


def bi_summable_transfer(space: FiniteDimSpace, H, xs, x, F, I: IdealHandle, scale: Scale,
                         samples: int = 64, seed: int = 0) -> Verdict:
    """
    对 H 中每个 e，⟨e, x_n⟩ B^I-可和到 ⟨e, x⟩ ⇒ 对偶球上每个 y 亦然

    矩阵族可以含负元素；前提为 (I)-生成与绝对行和在理想外有界。
    """
    F = _as_family(F)
    xs = _as_vectors(xs, space)
    x = _vector(x, space)
    H = _check_in_ball(space, H, scale.tol)
    premises = {
        'i_generation': i_generation_check(H, None, space, scale, seed=seed),
        'row_norm_bound': family_row_norm_bound(F, I, scale),
    }
    return _transfer('bi_summable_transfer', space, H, xs, x, F, I, scale, b_summable, premises, samples, seed)


def pre_cauchy_transfer(space: FiniteDimSpace, H, xs, F, I: IdealHandle, scale: Scale, plus: bool = False,
                        samples: int = 32, seed: int = 0) -> Verdict:
    """
    对 H 中每个 e，⟨e, x_n⟩ 为（B_+^I-）统计 pre-Cauchy ⇒ 对偶球上每个 y 亦然
    """
    F = _as_family(F)
    xs = _as_vectors(xs, space)
    H = _check_in_ball(space, H, scale.tol)
    check = pre_cauchy_plus if plus else pre_cauchy
    premises = {
        'i_generation': i_generation_check(H, None, space, scale, seed=seed),
        'row_norm_bound': family_row_norm_bound(F, I, scale),
    }
    on_H = {f'H[{j}]': check(_functional_values(xs, e, scale), F, I, None, scale) for j, e in enumerate(H)}
    premises['on_H'] = Verdict.combine('on_H', on_H, scale)
    name = 'pre_cauchy_plus_transfer' if plus else 'pre_cauchy_transfer'
    if not all(v.holds for v in premises.values()):
        failing = [k for k, v in premises.items() if not v.holds]
        return Verdict.no_claim(name, scale, failing[0], hypotheses=premises, failing=failing)
    points = space.sample_dual_ball(samples, seed=seed)
    on_ball = {f'y[{j}]': check(_functional_values(xs, y, scale), F, I, None, scale) for j, y in enumerate(points)}
    conclusion = Verdict.combine('on_ball', on_ball, scale)
    return Verdict(conclusion.status, scale, residual=conclusion.residual, witnesses=conclusion.witnesses,
                   name=name, diagnostics={'samples': int(len(points))},
                   hypotheses={**premises, 'on_ball': conclusion})


def positive_part_criterion(s, F, I: IdealHandle, a: float, scale: Scale) -> Verdict:
    """
    sup_i Σ_k b_nk^{(i)} f(s_k − a) 沿 I 趋于 0 与 {k : s_k > a + ε} ∈ J_{B,I}（对每个 ε）的比对

    前者总蕴含后者；s 有界且行和在理想外有界时两者等价。
    成立表示在当前尺度上两边没有矛盾，失败给出矛盾所在的一侧。

    Raises:
        InputError: 矩阵族含负元素或 s 为复序列
    """
    F = _as_family(F)
    if not F.nonnegative:
        raise InputError(f"矩阵族 '{F.name}' 含有负元素")
    values = prefix_values(s, scale)
    if np.iscomplexobj(values):
        raise InputError("正部判据只对实序列定义")
    values = values.astype(float)
    J = derived_ideal(F, I, scale)
    N = scale.N
    n_len = F.eval_length(N)
    bounded = bool(np.all(np.isfinite(values))) and (not isinstance(s, SequencePrefix) or s.bounded)
    tail = F.tail_error(float(np.max(np.abs(values - a))) if bounded else None, N, n_len)
    mass = F.sup_apply(positive_part(values - a), n_len)
    lhs = I.null_test(np.maximum(mass, 0.0) + tail, scale, name='positive_mass', target=0.0)
    upper = {f'{eps:g}': J.contains(values > a + eps, scale) for eps in scale.eps_effective}
    rhs = Verdict.combine('upper_sets', upper, scale)
    norm_bound = family_row_norm_bound(F, I, scale)
    converse = bounded and norm_bound.holds

    hyps = {'positive_mass': lhs, 'upper_sets': rhs, 'row_norm_bound': norm_bound}
    diagnostics = {'converse_applies': converse, 'a': a}
    if lhs.holds and rhs.fails:
        return Verdict(VerdictStatus.FAILS, scale, residual=rhs.residual, witnesses=rhs.witnesses,
                       name='positive_part_criterion', diagnostics={**diagnostics, 'violated': 'forward'},
                       hypotheses=hyps)
    if converse and rhs.holds and lhs.fails:
        return Verdict(VerdictStatus.FAILS, scale, residual=lhs.residual, witnesses=lhs.witnesses,
                       name='positive_part_criterion', diagnostics={**diagnostics, 'violated': 'converse'},
                       hypotheses=hyps)
    if lhs.inconclusive or rhs.inconclusive:
        return Verdict(VerdictStatus.INCONCLUSIVE, scale, name='positive_part_criterion',
                       diagnostics=diagnostics, hypotheses=hyps)
    diagnostics['agree'] = lhs.status == rhs.status
    return Verdict(VerdictStatus.HOLDS, scale, name='positive_part_criterion', diagnostics=diagnostics,
                   hypotheses=hyps)


@dataclass
class LevelSetMembership:
    """
    y ∈ E_m = {y : Σ_k b_nk^{(i)} f(⟨y, x_k⟩ − c) <= ε 对所有 i 与 n ∈ C_m}

    Attributes:
        member: 是否属于
        worst: C_m 中各行的最大值
        row: 取得最大值的行
    """
    member: bool
    worst: float
    row: int
    level: int = 0
    rows_checked: int = 0
    diagnostics: Dict[str, Any] = field(default_factory=dict)


def simons_level_set_contains(y, xs, F, I: IdealHandle, c: float, eps: float, m: int,
                              scale: Scale) -> LevelSetMembership:
    """
    Simons 证明中的凸水平集成员判定

    C_m 为理想第 m 层的滤子集合，只检查可计算的行。

    Raises:
        InputError: I 没有可数基、ε <= 0 或矩阵族含负元素
    """
    if not isinstance(I, BasedIdeal):
        raise InputError(f"水平集需要带可数基的理想，'{I.name}' 没有")
    if not eps > 0:
        raise InputError(f"ε 必须为正: {eps}")
    F = _as_family(F)
    if not F.nonnegative:
        raise InputError(f"矩阵族 '{F.name}' 含有负元素")
    xs = _as_vectors(xs)
    y = np.asarray(y, dtype=float)
    N = scale.N
    n_len = F.eval_length(N)
    rows = I.base.filter_set(m, n_len).mask
    values = positive_part(_functional_values(xs, y, scale) - c)
    worst = np.zeros(n_len)
    for _, member in F:
        np.maximum(worst, np.real(member.apply(values, n_len)), out=worst)
    masked = np.where(rows, worst, -np.inf)
    if not rows.any():
        return LevelSetMembership(True, 0.0, 0, level=m, rows_checked=0, diagnostics={'empty_filter_set': True})
    r = int(np.argmax(masked))
    top = float(masked[r])
    return LevelSetMembership(top <= eps, top, r + 1, level=m, rows_checked=int(rows.sum()))


__all__ = [
    'FiniteDimSpace',
    'SupportFunctional',
    'SimonsResult',
    'LevelSetMembership',
    'positive_part',
    'support_functional',
    'hull_contains',
    'simons_sup_check',
    'i_generation_check',
    'weak_stat_transfer',
    'bi_summable_transfer',
    'pre_cauchy_transfer',
    'positive_part_criterion',
    'simons_level_set_contains',
]
