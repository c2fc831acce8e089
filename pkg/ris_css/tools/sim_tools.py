import logging
import traceback
from typing import Any, Dict, Literal, Optional

import numpy as np

from ris_css.attack_analysis.ranking import (
    compare_named_attacks,
    crossover_thresholds,
    verify_small_scale_optimality,
)
from ris_css.byzantine.attack_profile import AssignmentMode, AttackProfile, NamedAttack
from ris_css.byzantine.attacker import is_blinding
from ris_css.fusion.llr_rules import FusionRuleKind, branch_llrs
from ris_css.harness.attack_comparison import compare_attacks
from ris_css.harness.estimation import estimate_metrics, run_sweep
from ris_css.harness.experiment import ExperimentSpec
from ris_css.harness.result_writer import format_table, write_outputs
from ris_css.sensing.channel_model import draw_channels
from ris_css.sensing.energy_detection import (
    calibrate_threshold,
    detection_probabilities,
    exact_local_probabilities,
)
from ris_css.utils.rng import TrialStreams

logger = logging.getLogger(__name__)

SimOp = Literal["calibrate", "simulate", "sweep", "compare", "rank", "blind_check"]


def _default_modes(spec: ExperimentSpec, p01: Optional[float], p10: Optional[float]) -> list[NamedAttack]:
    """α 取自配置；RD 的翻转概率优先取参数，其次取配置中的 RD，最后取 (0.75, 0.75)"""
    attack = spec.attack
    alpha = attack.profile.alpha
    if p01 is None or p10 is None:
        if attack.kind == "RD":
            p01, p10 = attack.profile.p01, attack.profile.p10
        else:
            p01, p10 = 0.75, 0.75
    return [
        NamedAttack.build("AN", alpha),
        NamedAttack.build("AY", alpha),
        NamedAttack.build("AF", alpha),
        NamedAttack.build("RD", alpha, p01=p01, p10=p10),
    ]


class SimulationOperator:
    """仿真命令：calibrate/simulate/sweep/compare/rank/blind_check"""

    # -------- 各命令 --------
    def _calibrate(self, spec: ExperimentSpec) -> Dict[str, Any]:
        cfg = spec.system
        lam = float(calibrate_threshold(cfg))
        real = draw_channels(cfg, TrialStreams(cfg.seed, 0).channel)
        pd, pf = detection_probabilities(lam, real.gamma, cfg.sample_count, cfg.noise_variance)
        sensors = []
        for i, g in enumerate(real.gamma):
            exact = exact_local_probabilities(lam, float(g), cfg)
            sensors.append(
                {
                    "su": i,
                    "gamma": float(g),
                    "pd": float(pd[i]),
                    "pf": float(pf[i]),
                    "pd_exact": exact.pd,
                    "pf_exact": exact.pf,
                }
            )
        return {"ok": True, "lambda": lam, "sensors": sensors}

    def _simulate(self, spec: ExperimentSpec, out: Optional[str]) -> Dict[str, Any]:
        row = estimate_metrics(spec)
        result: Dict[str, Any] = {"ok": True, "result": row.model_dump()}
        if out:
            result["files"] = write_outputs([row], out)
        return result

    def _sweep(self, spec: ExperimentSpec, out: Optional[str], background: bool) -> Dict[str, Any]:
        if spec.sweep is None:
            return {"ok": False, "error": "配置中缺少扫描轴 sweep"}
        if not out:
            return {"ok": False, "error": "sweep 需要提供输出路径 out"}
        if background:
            from ris_css.utils.tasks.huey_worker import start_huey_consumer_via_command

            # 启动 Huey 消费者
            start_huey_consumer_via_command()
            from ris_css.utils.tasks.sweep_tasks import run_sweep_job

            job = run_sweep_job(spec.model_dump_json(), str(out))
            logger.info(f"已将扫描任务放入后台队列：{len(spec.sweep.values)} 个点 -> {out}")
            return {"ok": True, "message": "扫描任务已放入后台队列", "task_id": job.id}
        rows = run_sweep(spec)
        files = write_outputs(rows, out, axis=spec.sweep.axis)
        return {"ok": True, "rows": [r.model_dump() for r in rows], "files": files}

    def _compare(
        self,
        spec: ExperimentSpec,
        modes: Optional[list[NamedAttack]],
        p01: Optional[float],
        p10: Optional[float],
        fmt: Literal["table", "csv", "json"],
        assignment: Optional[AssignmentMode],
    ) -> Dict[str, Any]:
        table = compare_attacks(spec, modes or _default_modes(spec, p01, p10), assignment_mode=assignment)
        result: Dict[str, Any] = {"ok": True, **table.model_dump()}
        if fmt != "json":
            result["table"] = format_table([r.model_dump() for r in table.rows], fmt)
        return result

    def _rank(
        self,
        alpha: float,
        p01: float,
        p10: float,
        pd: float,
        pf: float,
        eps0: float,
        eps1: float,
        fmt: Literal["table", "csv", "json"],
    ) -> Dict[str, Any]:
        rows = compare_named_attacks(alpha, p01, p10, pd, pf, eps0, eps1)
        records = [
            {
                "mode": r.mode,
                "proxy": r.proxy,
                "predicted_rank": r.predicted_rank,
                "abs_llr_y1": abs(r.llr_y1),
                "abs_llr_y0": abs(r.llr_y0),
            }
            for r in rows
        ]
        result: Dict[str, Any] = {"ok": True, "modes": records}
        if alpha > 0.0:
            result["thresholds"] = crossover_thresholds(alpha).model_dump()
        if alpha <= 0.5 and pd > 0.5 > pf and eps0 + eps1 < 1.0:
            check = verify_small_scale_optimality(pd, pf, eps0, eps1, alpha)
            result["af_optimal"] = {"is_optimal": check.is_optimal, "argmin": list(check.argmin)}
        if fmt != "json":
            result["table"] = format_table(records, fmt)
        return result

    def _blind_check(self, alpha: float, p01: float, p10: float, draws: int, seed: int) -> Dict[str, Any]:
        profile = AttackProfile(alpha=alpha, p01=p01, p10=p10)
        rng = np.random.default_rng(seed)
        pd = rng.uniform(0.5, 1.0, draws)
        pf = rng.uniform(0.0, 0.5, draws)
        eps0 = rng.uniform(1e-3, 0.45, draws)
        eps1 = rng.uniform(1e-3, 0.45, draws)
        delta_min = np.log((1.0 - eps1) / eps0)
        y = rng.integers(0, 2, draws)
        max_abs = {}
        for rule in FusionRuleKind:
            llrs, _ = branch_llrs(rule, y, pd, pf, eps0, eps1, delta_min, profile.pi01, profile.pi10)
            max_abs[rule.value] = float(np.max(np.abs(llrs)))
        return {
            "ok": True,
            "pi01": profile.pi01,
            "pi10": profile.pi10,
            "is_blinding": is_blinding(profile),
            "draws": draws,
            "max_abs_llr": max_abs,
        }

    # -------- 外部主入口 --------
    def run(
        self,
        op: SimOp,
        spec: Optional[ExperimentSpec] = None,
        out: Optional[str] = None,
        background: bool = False,
        modes: Optional[list[NamedAttack]] = None,
        alpha: float = 0.4,
        p01: Optional[float] = None,
        p10: Optional[float] = None,
        pd: float = 0.9,
        pf: float = 0.1,
        eps0: float = 0.05,
        eps1: float = 0.05,
        draws: int = 1000,
        seed: int = 0,
        fmt: Literal["table", "csv", "json"] = "table",
        assignment: Optional[AssignmentMode] = "iid_bernoulli",
    ) -> Dict[str, Any]:
        try:
            if op in {"calibrate", "simulate", "sweep", "compare"} and spec is None:
                return {"ok": False, "error": f"{op} 需要提供实验配置"}
            if op == "calibrate":
                return self._calibrate(spec)
            if op == "simulate":
                return self._simulate(spec, out)
            if op == "sweep":
                return self._sweep(spec, out, background)
            if op == "compare":
                return self._compare(spec, modes, p01, p10, fmt, assignment)
            if op == "rank":
                p01 = 1.0 if p01 is None else p01
                p10 = 1.0 if p10 is None else p10
                return self._rank(alpha, p01, p10, pd, pf, eps0, eps1, fmt)
            if op == "blind_check":
                if p01 is None or p10 is None:
                    p01 = p10 = 1.0 / (2.0 * alpha) if alpha > 0.5 else 1.0
                return self._blind_check(alpha, p01, p10, draws, seed)
            return {"ok": False, "error": f"不支持的操作: {op}"}
        except Exception as e:
            logger.debug(traceback.format_exc())
            logger.error(f"{op} 执行失败: {e}")
            return {"ok": False, "error": f"{op} 执行失败: {e}"}


_simulation_operator = SimulationOperator()
