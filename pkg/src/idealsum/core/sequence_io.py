"""
序列文件读写
每行一个数；向量模式每行 d 个逗号分隔的数
"""
import os
import tempfile
from pathlib import Path
from typing import List, Union

import numpy as np

from idealsum.errors import InputError
from .sequence import SequencePrefix, VectorSequencePrefix

PathLike = Union[str, Path]


def _parse_number(token: str, lineno: int, path: PathLike) -> complex:
    token = token.strip()
    try:
        return float(token)
    except ValueError:
        pass
    try:
        return complex(token.replace(' ', ''))
    except ValueError:
        raise InputError(f"{path}:{lineno}: 无法解析的数值 '{token}'")


def _lines(path: PathLike) -> List[tuple]:
    p = Path(path)
    if not p.is_file():
        raise InputError(f"序列文件不存在: {path}")
    out = []
    with p.open('r', encoding='utf-8') as f:
        for lineno, line in enumerate(f, 1):
            line = line.strip()
            if not line or line.startswith('#'):
                continue
            out.append((lineno, line))
    if not out:
        raise InputError(f"序列文件为空: {path}")
    return out


def read_sequence(path: PathLike) -> SequencePrefix:
    """
    读取标量序列文件

    支持实数与 Python 复数字面量（如 1+2j）；空行与 # 开头的行被忽略。

    Raises:
        InputError: 文件不存在、为空、某行无法解析或含 NaN（信息中给出行号）
    """
    values = []
    for lineno, line in _lines(path):
        value = _parse_number(line, lineno, path)
        if value != value:
            raise InputError(f"{path}:{lineno}: 数值为 NaN")
        values.append(value)
    array = np.asarray(values)
    if np.iscomplexobj(array) and not np.any(array.imag):
        array = array.real
    return SequencePrefix(array, name=Path(path).stem, metadata={'source': str(path)})


def read_vectors(path: PathLike) -> VectorSequencePrefix:
    """
    读取向量序列文件

    Raises:
        InputError: 各行维数不一致或含非有限值
    """
    rows = []
    dim = None
    for lineno, line in _lines(path):
        tokens = line.split(',')
        if dim is None:
            dim = len(tokens)
        elif len(tokens) != dim:
            raise InputError(f"{path}:{lineno}: 维数 {len(tokens)} 与第一行的 {dim} 不一致")
        row = []
        for token in tokens:
            value = _parse_number(token, lineno, path)
            if isinstance(value, complex) or not np.isfinite(value):
                raise InputError(f"{path}:{lineno}: 向量坐标必须是有限实数 '{token.strip()}'")
            row.append(value)
        rows.append(row)
    return VectorSequencePrefix(np.asarray(rows, dtype=float), name=Path(path).stem)


def format_number(value) -> str:
    """最短的可往返十进制表示"""
    if isinstance(value, (complex, np.complexfloating)) and value.imag != 0:
        return repr(complex(value))
    value = float(np.real(value))
    if np.isfinite(value) and value.is_integer() and abs(value) < 1e16:
        return str(int(value))
    return repr(value)


def write_atomic(path: PathLike, text: str):
    """先写同目录的临时文件再替换，保证输出完整"""
    target = Path(path)
    target.parent.mkdir(parents=True, exist_ok=True)
    fd, tmp = tempfile.mkstemp(prefix=f'.{target.name}.', dir=str(target.parent))
    try:
        with os.fdopen(fd, 'w', encoding='utf-8') as f:
            f.write(text)
        os.replace(tmp, target)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def sequence_text(s: Union[SequencePrefix, VectorSequencePrefix]) -> str:
    """序列文件的文本内容"""
    if isinstance(s, VectorSequencePrefix):
        lines = [','.join(format_number(v) for v in row) for row in s.vectors]
    else:
        lines = [format_number(v) for v in s.values]
    return '\n'.join(lines) + '\n'


def write_sequence(s: Union[SequencePrefix, VectorSequencePrefix], path: PathLike):
    write_atomic(path, sequence_text(s))


__all__ = [
    'read_sequence',
    'read_vectors',
    'format_number',
    'write_atomic',
    'sequence_text',
    'write_sequence',
]
