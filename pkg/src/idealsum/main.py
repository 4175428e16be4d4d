#!/usr/bin/env python3
"""
序列可和性分析工具 - 统一CLI入口
理想收敛、矩阵族统计收敛与 Orlicz 强可和性的有限尺度检验
"""
import json
import sys
from pathlib import Path
from typing import Optional

from pydantic import ValidationError

from idealsum.config import AnalysisConfig, RunConfig, parse_args
from idealsum.core import (
    SequenceAnalyzer, available_corpora, generate, generate_vectors, read_sequence, read_vectors,
    sequence_text, write_atomic,
)
from idealsum.errors import InputError, SummabilityError
from idealsum.ui import ConsoleProgress, RichUI, SilentProgress

# 错误退出码（判定状态占用 0/1/2）
EXIT_ERROR = 3
EXIT_INTERRUPTED = 130


def describe_validation_error(error: ValidationError, path: Optional[str] = None) -> str:
    """把 pydantic 的错误整理为 "文件: 字段: 原因" 的列表"""
    lines = []
    for item in error.errors():
        field = '.'.join(str(p) for p in item.get('loc', ())) or '<root>'
        lines.append(f"{path or '配置'}: 字段 '{field}': {item.get('msg')}")
    return '\n'.join(lines)


def load_config(path: str) -> AnalysisConfig:
    """
    读取分析配置

    Raises:
        SummabilityError: 文件不存在
        ValidationError: JSON 或字段不合法
    """
    p = Path(path)
    if not p.is_file():
        raise InputError(f"配置文件不存在: {path}")
    return AnalysisConfig.model_validate_json(p.read_text(encoding='utf-8'))


def run_generate(config: RunConfig) -> int:
    """generate 子命令"""
    if config.corpus in available_corpora():
        sequence = generate(config.corpus, config.n, seed=config.seed)
    else:
        sequence = generate_vectors(config.corpus, config.n, config.dim, seed=config.seed)
    text = sequence_text(sequence)
    if config.output_path:
        write_atomic(config.output_path, text)
    else:
        sys.stdout.write(text)
    return 0


def run_analysis(config: RunConfig, progress_callback) -> int:
    """run 子命令"""
    analysis = load_config(config.config_path)
    if analysis.vector_mode:
        sequence = read_vectors(config.input_path)
    else:
        sequence = read_sequence(config.input_path)

    analyzer = SequenceAnalyzer(analysis, progress_callback=progress_callback, quiet=config.quiet,
                                scale_N=config.scale_n, i_max=config.imax, seed=config.seed)
    report = analyzer.analyze(sequence)

    if config.output_path:
        write_atomic(config.output_path, report.to_json())
        if config.csv:
            write_atomic(Path(config.output_path).with_suffix('.csv'), report.series_csv())
    else:
        sys.stdout.write(report.to_json())

    progress_callback.on_complete({
        'status': report.status,
        'estimate': report.verdict.get('estimate'),
        'verdicts': len(report.verdicts) + 1,
        'eps_skipped': list(analyzer.scale.eps_skipped),
        'exit_code': report.exit_code,
        'output_path': config.output_path,
    })
    return report.exit_code


def main(argv=None) -> int:
    """主程序入口"""
    progress_callback = None
    config_path = None
    try:
        # 解析参数
        try:
            config = parse_args(argv)
        except SystemExit as e:
            # argparse 的用法错误为 2，与 "不确定" 冲突
            return 0 if e.code in (0, None) else EXIT_ERROR
        config_path = config.config_path

        if config.command == 'generate':
            return run_generate(config)

        # 创建进度回调
        if config.quiet:
            progress_callback = SilentProgress()
        elif config.enable_rich:
            progress_callback = RichUI(config.__dict__)
            progress_callback.start_ui()
        else:
            progress_callback = ConsoleProgress(stream=sys.stderr)

        return run_analysis(config, progress_callback)

    except KeyboardInterrupt:
        print("\n\n操作被用户中断", file=sys.stderr)
        return EXIT_INTERRUPTED

    except ValidationError as e:
        message = describe_validation_error(e, config_path)
        print(f"\n错误: {message}", file=sys.stderr)
        return EXIT_ERROR

    except (SummabilityError, json.JSONDecodeError, OSError) as e:
        if progress_callback is not None:
            progress_callback.on_error(e)
        print(f"\n错误: {e}", file=sys.stderr)
        return EXIT_ERROR


if __name__ == '__main__':
    sys.exit(main())
