import logging
import os
import traceback
from pathlib import Path
from typing import Any, Literal, Optional

from pydantic import BaseModel, Field, field_validator, model_validator

from ris_css.byzantine.attack_profile import NamedAttack
from ris_css.byzantine.attacker import optimal_attack
from ris_css.fusion.llr_rules import FusionRuleKind
from ris_css.report_channel.binary_channel import RelayHop, ReportPath
from ris_css.sensing.system_config import SystemConfig

logger = logging.getLogger(__name__)

SweepAxis = Literal["snr_db", "alpha", "M", "I", "N", "J", "rd_sum"]
AttackPolicy = Literal["fixed", "optimal"]

# 各整数轴对应的 SystemConfig 字段
_SYSTEM_AXES = {
    "M": "antennas_per_su",
    "I": "su_count",
    "N": "ris_elements",
    "J": "hop_count",
}


def _default_workers() -> int:
    try:
        return max(1, int(os.getenv("RIS_CSS_WORKERS", "1")))
    except ValueError:
        return 1


class PathSpec(BaseModel):
    """上报路径配置：显式逐跳 (ε0, ε1)，或逐跳信噪比（dB，标量表示各跳相同）"""

    hops: Optional[list[RelayHop]] = Field(default=None, description="显式逐跳参数")
    hop_snr_db: Optional[float | list[float]] = Field(
        default=None, description="逐跳信噪比（dB），按 ε = Q(√(2·snr)) 映射"
    )

    @model_validator(mode="after")
    def _exactly_one(self):
        if (self.hops is None) == (self.hop_snr_db is None):
            raise ValueError("路径配置必须且只能给出 hops 或 hop_snr_db 之一")
        return self

    def resolve(self, hop_count: int) -> ReportPath:
        """展开为 J 跳的 ReportPath"""
        if self.hops is not None:
            if len(self.hops) != hop_count:
                raise ValueError(f"显式给出 {len(self.hops)} 跳，与 hop_count={hop_count} 不一致")
            return ReportPath(hops=self.hops)
        if isinstance(self.hop_snr_db, list):
            if len(self.hop_snr_db) != hop_count:
                raise ValueError(
                    f"hop_snr_db 长度 {len(self.hop_snr_db)} 与 hop_count={hop_count} 不一致"
                )
            return ReportPath.from_snr_db(self.hop_snr_db)
        return ReportPath.from_snr_db([float(self.hop_snr_db)] * hop_count)


class SweepSpec(BaseModel):
    """参数扫描轴"""

    axis: SweepAxis = Field(description="扫描轴：snr_db / alpha / M / I / N / J / rd_sum")
    values: list[float] = Field(min_length=1, description="扫描取值，按给定顺序输出")

    @model_validator(mode="after")
    def _check_values(self):
        if self.axis == "alpha" and not all(0.0 <= v <= 1.0 for v in self.values):
            raise ValueError("alpha 轴取值必须位于 [0,1]")
        if self.axis == "rd_sum" and not all(0.0 <= v <= 2.0 for v in self.values):
            raise ValueError("rd_sum 轴取值必须位于 [0,2]")
        if self.axis in _SYSTEM_AXES and not all(v >= 1 and float(v).is_integer() for v in self.values):
            raise ValueError(f"{self.axis} 轴取值必须为正整数")
        return self


class ExperimentSpec(BaseModel):
    """一次蒙特卡洛实验（或一组扫描）的完整配置"""

    system: SystemConfig = Field(default_factory=SystemConfig, description="场景参数")
    attack: NamedAttack = Field(default_factory=NamedAttack, description="攻击模式")
    attack_policy: AttackPolicy = Field(
        default="fixed",
        description="fixed：使用 attack；optimal：每个 α 取最优攻击（α≤0.5 用 AF，否则失明 RD）",
    )
    rule: FusionRuleKind = Field(default=FusionRuleKind.OPTIMAL, description="FC 融合规则")
    paths: list[PathSpec] = Field(
        default_factory=lambda: [PathSpec(hop_snr_db=6.0)],
        min_length=1,
        description="上报路径；长度为 1 时所有 SU 共用，否则须与 SU 数相同",
    )
    sensing_mode: Literal["analytic", "waveform"] = Field(
        default="analytic", description="本地感知模式：解析伯努利 / 波形采样"
    )
    hop_by_hop: bool = Field(default=False, description="逐跳仿真上报链路（否则用等效信道一次抽样）")
    trials: int = Field(default=10080, ge=1, description="最少试验次数（比特数）")
    stop_after_errors: bool = Field(default=False, description="是否启用“至少 K 个错误”停止准则")
    min_errors: int = Field(default=3000, ge=1, description="停止准则中的错误数 K")
    max_trials: int = Field(default=1_000_000, ge=1, description="停止准则下的试验次数上限")
    sweep: Optional[SweepSpec] = Field(default=None, description="可选的扫描轴")
    sequence_length: int = Field(
        default=504, ge=1, description="信息序列长度；每帧为该数目的独立假设抽样，也是并行工作单元"
    )
    workers: int = Field(default_factory=_default_workers, ge=1, description="并行进程数")

    @field_validator("rule", mode="before")
    @classmethod
    def _rule_from_str(cls, v: Any) -> Any:
        return v.lower() if isinstance(v, str) else v

    @model_validator(mode="after")
    def _check_consistency(self):
        if len(self.paths) not in (1, self.system.su_count):
            raise ValueError(
                f"paths 长度 {len(self.paths)} 必须为 1 或等于 SU 数 {self.system.su_count}"
            )
        for p in self.paths:
            p.resolve(self.system.hop_count)
        if self.max_trials < self.trials:
            raise ValueError(f"max_trials={self.max_trials} 不能小于 trials={self.trials}")
        return self

    # -------- 派生量 --------
    def effective_attack(self) -> NamedAttack:
        if self.attack_policy == "optimal":
            return optimal_attack(self.attack.profile.alpha)
        return self.attack

    def resolve_paths(self) -> list[ReportPath]:
        """每个 SU 一条 ReportPath"""
        resolved = [p.resolve(self.system.hop_count) for p in self.paths]
        if len(resolved) == 1:
            return resolved * self.system.su_count
        return resolved

    def with_sweep_value(self, value: float) -> "ExperimentSpec":
        """
        返回把扫描轴设为 value 后的实验配置（去掉 sweep 本身）。

        snr_db 轴会把 paths 整体替换为所有 SU、所有跳共用的单一 hop_snr_db，逐 SU 的路径配置不再生效。
        """
        if self.sweep is None:
            raise ValueError("未配置扫描轴")
        data = self.model_dump(exclude={"sweep"})
        axis = self.sweep.axis
        if axis == "snr_db":
            if len(self.paths) != 1 or self.paths[0].hops is not None or isinstance(self.paths[0].hop_snr_db, list):
                logger.info(f"snr_db 扫描：原有的 {len(self.paths)} 条路径配置被替换为所有 SU 共用的每跳 {value} dB")
            data["paths"] = [{"hop_snr_db": float(value)}]
        elif axis == "alpha":
            data["attack"]["profile"]["alpha"] = float(value)
        elif axis == "rd_sum":
            if self.attack.kind != "RD":
                raise ValueError("rd_sum 轴仅适用于 RD 攻击")
            data["attack"]["profile"]["p01"] = data["attack"]["profile"]["p10"] = float(value) / 2.0
        else:
            data["system"][_SYSTEM_AXES[axis]] = int(value)
            if axis == "I" and len(self.paths) != 1:
                raise ValueError("I 轴扫描要求所有 SU 共用一条路径配置")
            if axis == "J" and any(p.hops is not None or isinstance(p.hop_snr_db, list) for p in self.paths):
                raise ValueError("J 轴扫描要求路径以标量 hop_snr_db 给出")
        return ExperimentSpec.model_validate(data)

    # -------- 读写 --------
    @classmethod
    def load(cls, path: Path | str) -> "ExperimentSpec":
        """从 JSON 文件加载并校验"""
        text = Path(path).read_text(encoding="utf-8")
        return cls.model_validate_json(text)

    def save(self, path: Path | str) -> None:
        """保存为 JSON 文件"""
        try:
            Path(path).write_text(self.model_dump_json(indent=4), encoding="utf-8")
            logger.info(f"实验配置已保存到文件: {path}")
        except Exception as e:
            logger.debug(traceback.format_exc())
            logger.error(f"保存实验配置失败: {e}")
            raise
