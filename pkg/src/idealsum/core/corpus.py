"""
语料序列生成
每个生成器都记录其解析极限，用于测试与验收运行
"""
from dataclasses import dataclass
from typing import Callable, Dict, List, Optional

import numpy as np

from idealsum.errors import InputError
from .sequence import SequencePrefix, VectorSequencePrefix

# n 数组 (从 1 开始) 与随机数生成器 -> 前缀值
Builder = Callable[[np.ndarray, np.random.Generator], np.ndarray]


def _squares(n: np.ndarray, rng: np.random.Generator) -> np.ndarray:
    root = np.floor(np.sqrt(n)).astype(np.int64)
    # 大 n 时 sqrt 的舍入误差
    root += ((root + 1) ** 2 <= n).astype(np.int64)
    root -= (root ** 2 > n).astype(np.int64)
    return (root ** 2 == n).astype(float)


def _periodic2(n: np.ndarray, rng: np.random.Generator) -> np.ndarray:
    return (n % 2 == 1).astype(float)


def _alternating(n: np.ndarray, rng: np.random.Generator) -> np.ndarray:
    return np.where(n % 2 == 0, 1.0, -1.0)


def _harmonic_drift(n: np.ndarray, rng: np.random.Generator) -> np.ndarray:
    return 0.3 + 1.0 / n


def _tauberian_ok(n: np.ndarray, rng: np.random.Generator) -> np.ndarray:
    noise = rng.uniform(-1.0, 1.0, n.size)
    return 0.5 + noise / n


def _density_half(n: np.ndarray, rng: np.random.Generator) -> np.ndarray:
    # {n : ⌊√n⌋ 为偶数}，块长 2k+1 = o(n)，密度为 1/2 但不几乎收敛
    root = np.floor(np.sqrt(n)).astype(np.int64)
    root -= (root ** 2 > n).astype(np.int64)
    return (root % 2 == 0).astype(float)


def _random_bounded(n: np.ndarray, rng: np.random.Generator) -> np.ndarray:
    return rng.uniform(-1.0, 1.0, n.size)


def _sparse_noise(n: np.ndarray, rng: np.random.Generator) -> np.ndarray:
    return 0.3 + _squares(n, rng) * rng.uniform(-1.0, 1.0, n.size)


@dataclass(frozen=True)
class CorpusEntry:
    """
    语料生成器

    Attributes:
        name: 名称
        description: 说明
        limit: 解析意义下的极限说明（统计极限、几乎收敛极限等）
        builder: 生成函数
        seeded: 是否使用随机种子
    """
    name: str
    description: str
    limit: str
    builder: Builder
    seeded: bool = False


CORPORA: Dict[str, CorpusEntry] = {
    'squares': CorpusEntry('squares', '平方数集合的指示序列', '统计极限 0；通常意义发散', _squares),
    'periodic2': CorpusEntry('periodic2', '1,0,1,0,…', '几乎收敛到 1/2；统计意义发散', _periodic2),
    'alternating': CorpusEntry('alternating', '(−1)^n', 'Cesàro 极限 0；统计聚点 ±1', _alternating),
    'harmonic_drift': CorpusEntry('harmonic_drift', '0.3 + 1/n', '通常意义收敛到 0.3', _harmonic_drift),
    'tauberian_ok': CorpusEntry('tauberian_ok', '0.5 + u_n/n，u_n ∈ [−1, 1]', '通常意义收敛到 0.5，变差 O(1/n)',
                                _tauberian_ok, seeded=True),
    'tauberian_violator': CorpusEntry('tauberian_violator', '平方数指示序列（变差不是 O(1/n)）',
                                      '统计极限 0；Tauberian 变差条件不成立', _squares),
    'density_half': CorpusEntry('density_half', '{n : ⌊√n⌋ 为偶数} 的指示序列',
                                'Cesàro 极限 1/2；不几乎收敛', _density_half),
    'random_bounded': CorpusEntry('random_bounded', '[−1, 1] 上的独立均匀序列', '无极限；有界',
                                  _random_bounded, seeded=True),
    'sparse_noise': CorpusEntry('sparse_noise', '0.3 + 平方数位置上的均匀噪声', '统计极限 0.3',
                                _sparse_noise, seeded=True),
}


def available_corpora() -> List[str]:
    """所有语料名称"""
    return list(CORPORA.keys())


def generate(name: str, N: int, seed: Optional[int] = None) -> SequencePrefix:
    """
    生成语料序列前缀

    Args:
        name: 语料名称
        N: 长度
        seed: 随机种子；只对带种子的语料有意义，None 表示 0

    Returns:
        SequencePrefix，metadata 记录名称、极限说明与种子

    Raises:
        InputError: 未知名称或 N < 1

    Examples:
        generate('squares', 10).values   # 1,0,0,1,0,0,0,0,1,0
    """
    if name not in CORPORA:
        raise InputError(f"未知的语料: '{name}'. 可用的语料: {', '.join(available_corpora())}")
    if N < 1:
        raise InputError(f"语料长度必须为正整数: {N}")
    entry = CORPORA[name]
    seed = 0 if seed is None else int(seed)
    rng = np.random.default_rng(seed)
    values = entry.builder(np.arange(1, N + 1), rng)
    metadata = {'corpus': name, 'limit': entry.limit}
    if entry.seeded:
        metadata['seed'] = seed
    return SequencePrefix(values, name=name, bounded=True, metadata=metadata)


def generate_vectors(name: str, N: int, d: int, seed: Optional[int] = None) -> VectorSequencePrefix:
    """
    向量语料

    - 'vector_random': 坐标在 [−1, 1] 上独立均匀
    - 'vector_sparse': x_n = c + 平方数位置上的噪声，c_j = 0.3·(−2/3)^j，统计收敛到 c
    - 'vector_alternating': x_n = (−1)^n c，J-limsup 在 ±c 方向上取到

    Raises:
        InputError: 未知名称或维数不合法
    """
    if N < 1 or d < 1:
        raise InputError(f"向量语料需要 N >= 1 与 d >= 1: N={N}, d={d}")
    rng = np.random.default_rng(0 if seed is None else int(seed))
    n = np.arange(1, N + 1)
    centre = np.array([0.3 * (-2.0 / 3.0) ** j for j in range(d)])
    if name == 'vector_random':
        vectors = rng.uniform(-1.0, 1.0, (N, d))
    elif name == 'vector_sparse':
        mask = _squares(n, rng)[:, None]
        vectors = centre[None, :] + mask * rng.uniform(-1.0, 1.0, (N, d))
    elif name == 'vector_alternating':
        vectors = np.where((n % 2 == 0)[:, None], centre[None, :], -centre[None, :])
    else:
        raise InputError(f"未知的向量语料: '{name}'. 可用的语料: vector_random, vector_sparse, vector_alternating")
    return VectorSequencePrefix(vectors, name=name)


__all__ = [
    'CorpusEntry',
    'CORPORA',
    'available_corpora',
    'generate',
    'generate_vectors',
]
