"""
命令行入口。

子命令：calibrate / simulate / sweep / compare-attacks / rank-attacks / blind-check。
实验配置来自 --config 指定的 JSON 文件（缺省为 local_config/experiment.json），
命令行参数覆盖其中的字段。
"""

import argparse
import json
import logging
import sys
from typing import Any, Optional

from ris_css.byzantine.attack_profile import NamedAttack
from ris_css.fusion.llr_rules import FusionRuleKind
from ris_css.harness.experiment import ExperimentSpec

logger = logging.getLogger(__name__)


def format_result(result: dict[str, Any]) -> str:
    """把命令返回的结果美化为 JSON；无法序列化的值转为字符串"""
    try:
        return json.dumps(result, ensure_ascii=False, indent=2, default=str)
    except Exception:
        return str(result)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="ris-css", description="RIS 增强协作频谱感知在拜占庭攻击下的判决融合仿真"
    )
    parser.add_argument("-v", "--verbose", action="store_true", help="同时把日志输出到控制台")
    sub = parser.add_subparsers(dest="command", required=True)

    spec_args = argparse.ArgumentParser(add_help=False)
    spec_args.add_argument("--config", help="实验配置 JSON 文件")
    spec_args.add_argument("--seed", type=int, help="随机种子")
    spec_args.add_argument("--trials", type=int, help="试验次数")
    spec_args.add_argument("--workers", type=int, help="并行进程数")
    spec_args.add_argument("--rule", choices=[r.value for r in FusionRuleKind], help="FC 融合规则")
    spec_args.add_argument("--attack", choices=["AN", "AY", "AF", "RD", "none"], help="攻击模式")
    spec_args.add_argument("--attack-policy", choices=["fixed", "optimal"], help="攻击策略")
    spec_args.add_argument("--sensing-mode", choices=["analytic", "waveform"], help="本地感知模式")
    spec_args.add_argument("--stop-after-errors", action="store_true", help="启用至少 K 个错误的停止准则")

    flip_args = argparse.ArgumentParser(add_help=False)
    flip_args.add_argument("--alpha", type=float, help="拜占庭节点比例 α")
    flip_args.add_argument("--p01", type=float, help="恶意节点 1→0 翻转概率")
    flip_args.add_argument("--p10", type=float, help="恶意节点 0→1 翻转概率")

    fmt_args = argparse.ArgumentParser(add_help=False)
    fmt_args.add_argument("--format", choices=["table", "csv", "json"], default="table", help="输出格式")

    sub.add_parser("calibrate", parents=[spec_args, flip_args], help="打印各 SU 的 λ、P_D、P_F")

    p = sub.add_parser("simulate", parents=[spec_args, flip_args], help="单个工作点的 BER/|Λ|/MI")
    p.add_argument("--out", help="输出 CSV 路径（同时写出 .json 与 .gp）")

    p = sub.add_parser("sweep", parents=[spec_args, flip_args], help="参数扫描并写出 CSV")
    p.add_argument("--out", help="输出 CSV 路径，缺省写入 data/results/")
    p.add_argument("--axis", choices=["snr_db", "alpha", "M", "I", "N", "J", "rd_sum"], help="扫描轴")
    p.add_argument("--values", type=float, nargs="+", help="扫描取值")
    p.add_argument("--background", action="store_true", help="放入 Huey 后台队列执行")

    p = sub.add_parser(
        "compare-attacks", parents=[spec_args, flip_args, fmt_args], help="公共随机数下对比 AN/AY/AF/RD"
    )
    p.add_argument(
        "--assignment",
        choices=["iid_bernoulli", "fixed_fraction"],
        default="iid_bernoulli",
        help="对比时的恶意节点指派方式",
    )

    p = sub.add_parser("rank-attacks", parents=[flip_args, fmt_args], help="按解析代理量给攻击模式排名")
    p.add_argument("--pd", type=float, default=0.9, help="采样工作点 P_D")
    p.add_argument("--pf", type=float, default=0.1, help="采样工作点 P_F")
    p.add_argument("--eps0", type=float, default=0.05, help="采样工作点 ε0")
    p.add_argument("--eps1", type=float, default=0.05, help="采样工作点 ε1")

    p = sub.add_parser("blind-check", parents=[flip_args], help="检验攻击参数是否使 FC 失明")
    p.add_argument("--draws", type=int, default=1000, help="随机参数抽样次数")
    p.add_argument("--seed", type=int, default=0, help="随机种子")
    return parser


def apply_overrides(spec: ExperimentSpec, args: argparse.Namespace) -> ExperimentSpec:
    """把命令行参数覆盖到实验配置上，并重新校验"""
    data = spec.model_dump()
    if args.seed is not None:
        data["system"]["seed"] = args.seed
    if args.trials is not None:
        data["trials"] = args.trials
        data["max_trials"] = max(data["max_trials"], args.trials)
    if args.workers is not None:
        data["workers"] = args.workers
    if args.rule is not None:
        data["rule"] = args.rule
    if args.attack_policy is not None:
        data["attack_policy"] = args.attack_policy
    if args.sensing_mode is not None:
        data["sensing_mode"] = args.sensing_mode
    if args.stop_after_errors:
        data["stop_after_errors"] = True

    current = spec.attack
    if args.attack is not None or args.alpha is not None or args.p01 is not None or args.p10 is not None:
        kind = args.attack or current.kind
        alpha = current.profile.alpha if args.alpha is None else args.alpha
        if kind == "RD":
            p01 = args.p01 if args.p01 is not None else current.profile.p01
            p10 = args.p10 if args.p10 is not None else current.profile.p10
            attack = NamedAttack.build(kind, alpha, p01, p10, current.profile.assignment_mode)
        else:
            attack = NamedAttack.build(kind, alpha, assignment_mode=current.profile.assignment_mode)
        data["attack"] = attack.model_dump()

    if getattr(args, "axis", None) is not None:
        if not args.values:
            raise ValueError("指定 --axis 时必须同时给出 --values")
        data["sweep"] = {"axis": args.axis, "values": args.values}
    return ExperimentSpec.model_validate(data)


def _load_spec(args: argparse.Namespace, default: ExperimentSpec) -> ExperimentSpec:
    spec = ExperimentSpec.load(args.config) if args.config else default
    return apply_overrides(spec, args)


def run_command(args: argparse.Namespace, default: Optional[ExperimentSpec] = None) -> dict[str, Any]:
    """执行子命令并返回结果字典"""
    from ris_css.config import RESULTS_DIR
    from ris_css.tools.sim_tools import _simulation_operator

    default = default or ExperimentSpec()
    try:
        if args.command in {"calibrate", "simulate", "sweep", "compare-attacks"}:
            spec = _load_spec(args, default)
    except Exception as e:
        logger.error(f"实验配置无效: {e}")
        return {"ok": False, "error": f"实验配置无效: {e}"}

    if args.command == "calibrate":
        return _simulation_operator.run(op="calibrate", spec=spec)
    if args.command == "simulate":
        return _simulation_operator.run(op="simulate", spec=spec, out=args.out)
    if args.command == "sweep":
        out = args.out
        if not out and spec.sweep is not None:
            out = str(RESULTS_DIR / f"sweep_{spec.sweep.axis}.csv")
        return _simulation_operator.run(op="sweep", spec=spec, out=out, background=args.background)
    if args.command == "compare-attacks":
        return _simulation_operator.run(
            op="compare", spec=spec, p01=args.p01, p10=args.p10, fmt=args.format, assignment=args.assignment
        )
    if args.command == "rank-attacks":
        return _simulation_operator.run(
            op="rank",
            alpha=0.4 if args.alpha is None else args.alpha,
            p01=args.p01,
            p10=args.p10,
            pd=args.pd,
            pf=args.pf,
            eps0=args.eps0,
            eps1=args.eps1,
            fmt=args.format,
        )
    if args.command == "blind-check":
        return _simulation_operator.run(
            op="blind_check",
            alpha=0.6 if args.alpha is None else args.alpha,
            p01=args.p01,
            p10=args.p10,
            draws=args.draws,
            seed=args.seed,
        )
    return {"ok": False, "error": f"不支持的命令: {args.command}"}


def main(argv: Optional[list[str]] = None) -> int:
    from ris_css.config import init_app

    args = build_parser().parse_args(argv)
    default = init_app(console=args.verbose)
    result = run_command(args, default)

    table = result.pop("table", None)
    print(format_result(result))
    if table:
        print(table)
    return 0 if result.get("ok") else 1


if __name__ == "__main__":
    sys.exit(main())
