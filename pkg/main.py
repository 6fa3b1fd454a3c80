"""
模糊认知映射命令行 - 主入口文件

命令：
- run：对一个场景求隐藏模式
- sweep：每个概念单独开启各求一次
- combine：多位专家矩阵相加（--sum）或构造特殊 FCM（--special）
- check：校验模型文件
- fixtures：列出内置 fixture

退出码：0 成功；64 用法错误；65 解析/校验错误；70 达到迭代上限
"""

import argparse
import logging
import sys
from pathlib import Path

from core.config import ConfigManager, initialize_config
from core.errors import (
    FuzzyMapError,
    IterationLimitError,
    ProfileUndefinedError,
    StructureError,
    UsageError,
)
from core.report import ReportFormat, format_reports, make_report
from core.runner import SweepRunner, solve_seed
from maps.fcm import FcmModel, combine_fcms, score_profile, special_fcm
from maps.fcrm import FcrmBimodel, combine_fcrms
from maps.frm import FrmModel, combine_frms
from modelio import (
    build_seed,
    list_fixtures,
    load_model,
    parse_scenario,
    read_source_text,
    serialize_model,
)


logger = logging.getLogger(__name__)

DEFAULT_CONFIG_PATH = Path(__file__).parent / "config" / "fuzzy_maps.yaml"

EXIT_OK = 0
EXIT_USAGE = 64
EXIT_DATAERR = 65
EXIT_SOFTWARE = 70


class CliParser(argparse.ArgumentParser):
    """用法错误以 64 退出（argparse 默认是 2）"""

    def error(self, message: str):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def build_parser() -> argparse.ArgumentParser:
    """构建命令行解析器"""
    parser = CliParser(
        prog="fuzzy-maps",
        description="Hidden patterns of FCM, FRM, FCRM and fuzzy linguistic maps",
    )
    parser.add_argument("--config", help="YAML configuration file (default: config/fuzzy_maps.yaml)")
    parser.add_argument("--log-level", help="override system.log_level (DEBUG, INFO, WARNING, ...)")

    subparsers = parser.add_subparsers(dest="command", required=True, parser_class=CliParser)

    formats = [f.value for f in ReportFormat]

    run = subparsers.add_parser("run", help="solve one scenario")
    run.add_argument("--model", required=True, help="model file or fixture:<id>")
    run.add_argument("--scenario", required=True, help="scenario file")
    run.add_argument("--trace", action="store_true", help="append the visited states")
    run.add_argument("--scores", action="store_true", help="append the score profile (FCM only)")
    run.add_argument("--format", choices=formats, help="report format")
    run.add_argument("--max-iters", type=int, help="override the iteration limit")

    sweep = subparsers.add_parser("sweep", help="seed every concept on its own")
    sweep.add_argument("--model", required=True, help="model file or fixture:<id>")
    sweep.add_argument("--value", help="seed term for linguistic models")
    sweep.add_argument("--format", choices=formats, help="report format")
    sweep.add_argument("--operator", choices=["max-min", "min-min", "max-max", "min-max"])
    sweep.add_argument("--workers", type=int, help="thread pool size")

    combine = subparsers.add_parser("combine", help="add expert matrices or build a special FCM")
    combine.add_argument("--out", required=True, help="output model file")
    mode = combine.add_mutually_exclusive_group(required=True)
    mode.add_argument("--sum", action="store_true", help="entrywise sum (combined kind)")
    mode.add_argument("--special", action="store_true", help="average and threshold at 0.5")
    combine.add_argument("inputs", nargs="+", help="model files or fixture:<id>")

    check = subparsers.add_parser("check", help="validate a model file")
    check.add_argument("--model", required=True, help="model file or fixture:<id>")

    subparsers.add_parser("fixtures", help="list bundled fixtures")

    return parser


def _configure_logging(config: ConfigManager, override: str | None) -> None:
    """配置日志（只输出到标准错误）"""
    system = config.get_system_config()
    level = (override or system.log_level).upper()
    if not isinstance(logging.getLevelName(level), int):
        raise UsageError(f"Unknown log level: {override}")
    logging.basicConfig(level=level, format=system.log_format, stream=sys.stderr)
    logging.getLogger().setLevel(level)


def _load_config(path: str | None) -> ConfigManager:
    if path is not None:
        return initialize_config(path)
    if DEFAULT_CONFIG_PATH.exists():
        return initialize_config(DEFAULT_CONFIG_PATH)
    return initialize_config(None)


def _format(args: argparse.Namespace, config: ConfigManager) -> str:
    return args.format or config.get_output_config().default_format


def cmd_run(args: argparse.Namespace, config: ConfigManager) -> int:
    document = load_model(args.model)
    scenario_path = Path(args.scenario)
    if not scenario_path.exists():
        raise FileNotFoundError(f"Scenario file not found: {scenario_path}")
    scenario = parse_scenario(
        read_source_text(scenario_path), document, source=str(scenario_path)
    )
    seed = build_seed(scenario, document)

    engine = config.get_engine_config()
    max_iters = args.max_iters if args.max_iters is not None else scenario.max_iters
    if max_iters is not None and max_iters < 1:
        raise UsageError(f"--max-iters must be positive, got {max_iters}")
    operator = scenario.resolved_operator(engine.default_operator)

    if args.scores and not isinstance(document.model, FcmModel):
        raise UsageError("--scores applies only to FCM models")

    result = solve_seed(document, seed, operator, max_iters, engine.max_iters_cap)

    scores = None
    if args.scores:
        try:
            profile = score_profile(document.model, seed, max_iters, engine.max_iters_cap)
            scores = (
                ",".join(str(v) for v in profile.raw_scores.scores)
                + ";rank="
                + ",".join(profile.ranked_labels())
            )
        except ProfileUndefinedError as e:
            print(f"warning: {e}", file=sys.stderr)

    report = make_report(scenario.name, result, trace=args.trace, scores=scores)
    sys.stdout.write(format_reports([report], _format(args, config)))
    return EXIT_OK


def cmd_sweep(args: argparse.Namespace, config: ConfigManager) -> int:
    document = load_model(args.model)
    engine = config.get_engine_config()
    workers = args.workers if args.workers is not None else config.get_sweep_config().max_workers
    if workers < 1:
        raise UsageError(f"--workers must be positive, got {workers}")

    runner = SweepRunner(
        max_workers=workers,
        cap=engine.max_iters_cap,
        operator=args.operator or engine.default_operator,
    )
    reports = runner.run(document, args.value)
    sys.stdout.write(format_reports(reports, _format(args, config)))
    return EXIT_OK


def cmd_combine(args: argparse.Namespace, config: ConfigManager) -> int:
    documents = [load_model(ref) for ref in args.inputs]
    models = [d.model for d in documents]
    name = Path(args.out).stem

    kinds = {type(m) for m in models}
    if len(kinds) != 1:
        raise StructureError(
            f"combine inputs must share one model kind, got {sorted(d.kind.value for d in documents)}"
        )
    model_type = kinds.pop()

    if args.special:
        if model_type is not FcmModel:
            raise StructureError("--special applies only to FCM models")
        combined = special_fcm(models, name=name)
    elif model_type is FcmModel:
        combined = combine_fcms(models, name=name)
    elif model_type is FrmModel:
        combined = combine_frms(models, name=name)
    elif model_type is FcrmBimodel:
        combined = combine_fcrms(models, name=name)
    else:
        raise StructureError(f"--sum does not apply to {documents[0].kind.value} models")

    Path(args.out).write_text(serialize_model(combined), encoding="utf-8")
    logger.info(f"Wrote {combined!r} to {args.out}")
    return EXIT_OK


def cmd_check(args: argparse.Namespace, config: ConfigManager) -> int:
    document = load_model(args.model)
    print(f"OK {document.summary()}")
    return EXIT_OK


def cmd_fixtures(args: argparse.Namespace, config: ConfigManager) -> int:
    for info in list_fixtures():
        print(f"{info.fixture_id}\t{info.kind}\t{info.provenance}")
    return EXIT_OK


COMMANDS = {
    "run": cmd_run,
    "sweep": cmd_sweep,
    "combine": cmd_combine,
    "check": cmd_check,
    "fixtures": cmd_fixtures,
}


def _exit_code(error: BaseException) -> int:
    if isinstance(error, IterationLimitError):
        return EXIT_SOFTWARE
    if isinstance(error, UsageError):
        return EXIT_USAGE
    return EXIT_DATAERR


def main(argv: list[str] | None = None) -> int:
    """
    命令行入口

    Args:
        argv: 参数列表（None 表示 sys.argv[1:]）

    Returns:
        退出码
    """
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return int(e.code or 0)

    try:
        config = _load_config(args.config)
    except (OSError, ValueError) as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_DATAERR

    try:
        _configure_logging(config, args.log_level)
        return COMMANDS[args.command](args, config)
    except (FuzzyMapError, OSError, ValueError) as e:
        logger.error(
            f"Command '{args.command}' failed:\n"
            f"  Error: {e}\n"
            f"  Error Type: {type(e).__name__}",
            exc_info=logger.isEnabledFor(logging.DEBUG),
        )
        # 诊断信息直接写到标准错误，不依赖日志配置
        print(f"error: {e}", file=sys.stderr)
        return _exit_code(e)


if __name__ == "__main__":
    sys.exit(main())
