#!/usr/bin/env python3
"""
批量分析模块
用同一份分析配置检验目录中的多个序列文件
"""
import argparse
import sys
import traceback
from datetime import datetime
from pathlib import Path
from typing import Any, Dict, List, Optional

from pydantic import ValidationError

from idealsum.config.schema import AnalysisConfig
from idealsum.core.analyzer import SequenceAnalyzer
from idealsum.core.sequence_io import read_sequence, read_vectors, write_atomic
from idealsum.errors import SummabilityError


class BatchAnalyzer:
    """批量序列分析器"""

    # 支持的序列文件格式
    SUPPORTED_FORMATS = {'.txt', '.csv', '.dat'}

    def __init__(
        self,
        config: AnalysisConfig,
        scale_N: Optional[int] = None,
        i_max: Optional[int] = None,
        seed: Optional[int] = None,
        output_suffix: str = '_report',
    ):
        """
        初始化批量分析器

        Args:
            config: 分析配置，对每个文件使用同一份
            scale_N: 覆盖窗口长度
            i_max: 覆盖矩阵族指标截断
            seed: 覆盖随机采样种子
            output_suffix: 报告文件后缀
        """
        self.config = config
        self.scale_N = scale_N
        self.i_max = i_max
        self.seed = seed
        self.output_suffix = output_suffix

    def find_sequence_files(self, input_dir: Path, recursive: bool = False) -> List[Path]:
        """
        查找目录中的所有序列文件

        Args:
            input_dir: 输入目录路径
            recursive: 是否递归查找子目录

        Returns:
            按路径排序的文件列表
        """
        candidates = input_dir.rglob('*') if recursive else input_dir.iterdir()
        return sorted(f for f in candidates if f.is_file() and f.suffix.lower() in self.SUPPORTED_FORMATS)

    def analyze_single_file(self, sequence_file: Path, output_file: Path) -> Optional[Dict[str, Any]]:
        """
        分析单个序列文件并写出报告

        Returns:
            {'status', 'exit_code'}，失败返回 None
        """
        try:
            if self.config.vector_mode:
                sequence = read_vectors(sequence_file)
            else:
                sequence = read_sequence(sequence_file)
            analyzer = SequenceAnalyzer(self.config, progress_callback=None, quiet=True,
                                        scale_N=self.scale_N, i_max=self.i_max, seed=self.seed)
            report = analyzer.analyze(sequence)
            write_atomic(output_file, report.to_json())
            return {'status': report.status, 'exit_code': report.exit_code}

        except SummabilityError as e:
            print(f"✗ 分析失败: {e}")
            return None
        except Exception as e:
            print(f"✗ 分析失败: {e}")
            traceback.print_exc()
            return None

    def analyze_directory(self, input_dir: str, output_dir: str, recursive: bool = False) -> Dict[str, Any]:
        """
        批量分析目录中的所有序列文件

        Args:
            input_dir: 输入目录
            output_dir: 报告输出目录
            recursive: 是否递归处理子目录

        Returns:
            批量统计信息
        """
        input_path = Path(input_dir)
        output_path = Path(output_dir)

        # 检查输入目录
        if not input_path.exists():
            print(f"错误: 输入目录不存在: {input_dir}")
            return {'success': False, 'error': '输入目录不存在'}

        if not input_path.is_dir():
            print(f"错误: 输入路径不是目录: {input_dir}")
            return {'success': False, 'error': '输入路径不是目录'}

        output_path.mkdir(parents=True, exist_ok=True)

        sequence_files = self.find_sequence_files(input_path, recursive)
        if not sequence_files:
            print(f"在目录 {input_dir} 中未找到序列文件")
            return {'success': True, 'processed': 0, 'failed': 0, 'total': 0, 'statuses': {}}

        print(f"找到 {len(sequence_files)} 个序列文件")
        print("=" * 60)

        total_files = len(sequence_files)
        processed_files = 0
        failed_files = 0
        statuses: Dict[str, int] = {}
        start_time = datetime.now()

        for i, sequence_file in enumerate(sequence_files, 1):
            print(f"\n[{i}/{total_files}] 分析: {sequence_file.name}")

            # 保持目录结构
            relative = sequence_file.relative_to(input_path)
            output_file = output_path / relative.parent / f"{sequence_file.stem}{self.output_suffix}.json"
            output_file.parent.mkdir(parents=True, exist_ok=True)

            result = self.analyze_single_file(sequence_file, output_file)
            if result is not None:
                processed_files += 1
                statuses[result['status']] = statuses.get(result['status'], 0) + 1
                print(f"✓ 完成: {output_file.name}")
                print(f"  结论: {result['status']}")
            else:
                failed_files += 1

        duration = datetime.now() - start_time

        print("\n" + "=" * 60)
        print("批量分析完成！")
        print(f"总文件数: {total_files}")
        print(f"成功分析: {processed_files}")
        print(f"分析失败: {failed_files}")
        for status, count in sorted(statuses.items()):
            print(f"  {status}: {count}")
        print(f"总耗时: {duration}")
        print("=" * 60)

        return {
            'success': True,
            'total': total_files,
            'processed': processed_files,
            'failed': failed_files,
            'statuses': statuses,
            'duration': str(duration),
        }


def main(argv=None):
    """命令行入口函数"""
    parser = argparse.ArgumentParser(
        prog='idealsum-batch',
        description='用同一份配置批量分析目录中的序列文件',
        formatter_class=argparse.RawDescriptionHelpFormatter,
        epilog="""
示例:
  idealsum-batch --config statistical.json sequences/ reports/
  idealsum-batch --config strong.json sequences/ reports/ --scale-N 2000
  idealsum-batch --config statistical.json sequences/ reports/ --recursive
        """
    )

    parser.add_argument('input_dir', help='输入序列目录')
    parser.add_argument('output_dir', help='报告输出目录')
    parser.add_argument('--config', required=True, help='分析配置 JSON 路径')
    parser.add_argument('--scale-N', dest='scale_n', type=int, default=None, help='覆盖窗口长度 N')
    parser.add_argument('--imax', type=int, default=None, help='覆盖矩阵族指标截断 i_max')
    parser.add_argument('--seed', type=int, default=None, help='随机采样种子 (u64)')
    parser.add_argument('--recursive', action='store_true', help='递归处理子目录')
    parser.add_argument('--output-suffix', default='_report', help='报告文件后缀 (默认: _report)')

    args = parser.parse_args(argv)

    try:
        config = AnalysisConfig.model_validate_json(Path(args.config).read_text(encoding='utf-8'))
    except (OSError, ValidationError) as e:
        print(f"错误: 无法读取配置 {args.config}: {e}", file=sys.stderr)
        sys.exit(1)

    analyzer = BatchAnalyzer(
        config,
        scale_N=args.scale_n,
        i_max=args.imax,
        seed=args.seed,
        output_suffix=args.output_suffix,
    )

    result = analyzer.analyze_directory(
        input_dir=args.input_dir,
        output_dir=args.output_dir,
        recursive=args.recursive,
    )

    # 返回退出码
    if result.get('success') and result.get('failed', 0) == 0:
        sys.exit(0)
    else:
        sys.exit(1)


if __name__ == '__main__':
    main()
