"""统一的参数配置管理"""
import math
from dataclasses import dataclass, field, asdict, replace
from typing import Optional, Tuple, Literal, Dict, Any

from idealsum.errors import InputError


def default_eps_list() -> Tuple[float, ...]:
    """默认阈值列表: 10^0, 10^-1, ..., 10^-6"""
    return tuple(10.0 ** -j for j in range(7))


@dataclass(frozen=True)
class Scale:
    """
    有限截断尺度

    所有判定 (Verdict) 都携带一个 Scale，说明结论只在该截断下成立。
    """
    # 截断窗口
    N: int = 10_000
    # 矩阵族指标截断 i <= i_max
    i_max: int = 64
    # 基的探测层数
    m_max: int = 32
    # 阈值列表（降序）
    eps_list: Tuple[float, ...] = field(default_factory=default_eps_list)
    # 数值容差
    tol: float = 1e-6

    # 有限理想的最深截断点占窗口长度的比例
    depth_fraction: float = 0.5
    # 未决区间: 最深窗口的上确界落在 (ε, slack·ε] 内
    slack: float = 3.0
    # 分辨率下限，None 表示 1/sqrt(N)
    resolution: Optional[float] = None

    # Toeplitz 条件 (iii) 检查的列数
    column_budget: int = 128
    # 条件 (+) 的正下界
    plus_threshold: float = 1e-9
    # 聚点判据 "< 1" 的余量
    cluster_margin: float = 1e-6
    # "不属于 J" 需要的最小残差
    member_margin: float = 1e-3
    # 二重和的行支撑总量上限
    row_support_budget: int = 60_000_000

    def __post_init__(self):
        """参数验证"""
        if self.N < 1:
            raise InputError(f"窗口长度 N 必须为正整数: {self.N}")
        if self.i_max < 0:
            raise InputError(f"i_max 不能为负: {self.i_max}")
        if self.m_max < 1:
            raise InputError(f"m_max 必须为正整数: {self.m_max}")
        if not self.eps_list:
            raise InputError("eps_list 不能为空")
        if any(not (e > 0) for e in self.eps_list):
            raise InputError(f"eps_list 必须全部为正: {self.eps_list}")
        if not (0.0 < self.depth_fraction < 1.0):
            raise InputError(f"depth_fraction 必须在 (0, 1) 内: {self.depth_fraction}")
        if self.slack < 1.0:
            raise InputError(f"slack 不能小于 1: {self.slack}")
        if self.tol <= 0:
            raise InputError(f"tol 必须为正: {self.tol}")

        # 统一为降序 tuple
        object.__setattr__(self, 'eps_list', tuple(sorted({float(e) for e in self.eps_list}, reverse=True)))

    @property
    def floor(self) -> float:
        """分辨率下限"""
        if self.resolution is not None:
            return float(self.resolution)
        return 1.0 / math.sqrt(self.N)

    @property
    def eps_effective(self) -> Tuple[float, ...]:
        """不低于分辨率下限的阈值；若全部低于下限，保留最大的一个"""
        kept = tuple(e for e in self.eps_list if e >= self.floor * (1 - 1e-12))
        return kept or self.eps_list[:1]

    @property
    def eps_skipped(self) -> Tuple[float, ...]:
        """因分辨率不足而跳过的阈值"""
        kept = set(self.eps_effective)
        return tuple(e for e in self.eps_list if e not in kept)

    def with_(self, **changes: Any) -> 'Scale':
        """返回修改了部分字段的新尺度"""
        return replace(self, **changes)

    def to_dict(self) -> Dict[str, Any]:
        """转换为字典"""
        data = asdict(self)
        data['eps_list'] = list(self.eps_list)
        data['floor'] = self.floor
        return data


@dataclass
class RunConfig:
    """命令行运行配置"""
    command: Literal['run', 'generate'] = 'run'

    # run 子命令
    config_path: Optional[str] = None
    input_path: Optional[str] = None
    output_path: Optional[str] = None
    csv: bool = False
    seed: Optional[int] = None
    scale_n: Optional[int] = None
    imax: Optional[int] = None

    # generate 子命令
    corpus: Optional[str] = None
    n: int = 10_000
    dim: int = 2

    # UI设置
    enable_rich: bool = True
    quiet: bool = False

    def __post_init__(self):
        """参数验证"""
        if self.command not in ('run', 'generate'):
            raise InputError(f"未知的子命令: {self.command}")

        if self.command == 'run':
            if not self.config_path or not self.input_path:
                raise InputError("run 需要 --config 和 --input")
            if self.csv and not self.output_path:
                raise InputError("--csv 需要同时给出 --output")
        else:
            if not self.corpus:
                raise InputError("generate 需要语料名称")
            if self.n < 1:
                raise InputError(f"--n 必须为正整数: {self.n}")
            if self.dim < 1:
                raise InputError(f"--dim 必须为正整数: {self.dim}")

        if self.scale_n is not None and self.scale_n < 1:
            raise InputError(f"--scale-N 必须为正整数: {self.scale_n}")
        if self.imax is not None and self.imax < 0:
            raise InputError(f"--imax 不能为负: {self.imax}")
        if self.seed is not None and not (0 <= self.seed < 2 ** 64):
            raise InputError(f"--seed 必须是 u64: {self.seed}")


def parse_args(argv=None) -> RunConfig:
    """解析命令行参数"""
    import argparse

    parser = argparse.ArgumentParser(
        prog='idealsum',
        description='序列可和性分析工具 - 理想收敛、矩阵族统计收敛与 Orlicz 强可和性的有限尺度检验',
        formatter_class=argparse.RawDescriptionHelpFormatter,
        epilog="""
示例:
  # 生成平方数指示序列
  idealsum generate squares --n 10000 --output squares.txt

  # 生成三维向量序列
  idealsum generate vector_sparse --n 5000 --dim 3 --output xs.txt

  # 用 Cesàro 矩阵检验统计收敛
  idealsum run --config statistical.json --input squares.txt --output report.json

  # 同时导出 CSV 序列，并缩小窗口
  idealsum run --config statistical.json --input squares.txt --output report.json --csv --scale-N 2000

  # 指定矩阵族截断
  idealsum run --config almost.json --input periodic.txt --imax 128

  # 禁用Rich UI
  idealsum run --config statistical.json --input squares.txt --no-rich
        """
    )

    subparsers = parser.add_subparsers(dest='command', required=True)

    # run 子命令
    run_parser = subparsers.add_parser('run', help='对序列文件执行一次分析')
    run_parser.add_argument('--config', type=str, required=True, help='分析配置 JSON 路径')
    run_parser.add_argument('--input', type=str, required=True, help='序列文件路径（每行一个数，向量模式为逗号分隔）')
    run_parser.add_argument('--output', type=str, default=None, help='报告 JSON 输出路径 [默认: 标准输出]')
    run_parser.add_argument('--csv', action='store_true', help='额外导出诊断序列 CSV（与报告同名）')
    run_parser.add_argument('--seed', type=int, default=None, help='随机采样种子 (u64)')
    run_parser.add_argument('--scale-N', dest='scale_n', type=int, default=None, help='覆盖窗口长度 N')
    run_parser.add_argument('--imax', type=int, default=None, help='覆盖矩阵族指标截断 i_max')
    run_parser.add_argument('--no-rich', action='store_true', help='禁用Rich终端UI')
    run_parser.add_argument('--quiet', action='store_true', help='不输出过程日志')

    # generate 子命令
    gen_parser = subparsers.add_parser('generate', help='生成语料序列文件')
    gen_parser.add_argument('name', type=str, help='语料名称')
    gen_parser.add_argument('--n', type=int, default=10_000, help='序列长度 [默认: 10000]')
    gen_parser.add_argument('--seed', type=int, default=None, help='随机种子 (u64)')
    gen_parser.add_argument('--dim', type=int, default=2, help='向量语料的维数 [默认: 2]')
    gen_parser.add_argument('--output', type=str, default=None, help='输出路径 [默认: 标准输出]')

    args = parser.parse_args(argv)

    if args.command == 'run':
        return RunConfig(
            command='run',
            config_path=args.config,
            input_path=args.input,
            output_path=args.output,
            csv=args.csv,
            seed=args.seed,
            scale_n=args.scale_n,
            imax=args.imax,
            enable_rich=not args.no_rich,
            quiet=args.quiet,
        )

    return RunConfig(
        command='generate',
        corpus=args.name,
        n=args.n,
        dim=args.dim,
        seed=args.seed,
        output_path=args.output,
    )
