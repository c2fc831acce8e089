import logging

from pydantic import BaseModel, Field, model_validator

logger = logging.getLogger(__name__)


class SystemConfig(BaseModel):
    """场景参数：节点数、天线数、RIS 规模、中继跳数、采样数、功率与先验"""

    su_count: int = Field(default=10, ge=1, description="次级用户（SU）数量 I")
    antennas_per_su: int = Field(default=6, ge=1, description="每个 SU 的接收天线数 M")
    ris_elements: int = Field(default=9, ge=1, description="RIS 反射单元数 N")
    hop_count: int = Field(
        default=8, ge=1, description="每条上报路径的跳数 J（含 J−1 个译码转发中继）"
    )
    sample_count: int = Field(default=50, ge=1, description="能量检测采样数 T = τ_s·f_s")
    transmit_power: float = Field(
        default=0.01, ge=0.0, description="主用户发射功率 p（线性值，瓦）"
    )
    noise_variance: float = Field(default=1.0, gt=0.0, description="噪声方差 σ²")
    prior_h1: float = Field(
        default=0.5, ge=0.0, le=1.0, description="主用户占用信道的先验概率 P(H1)"
    )
    target_pf: float = Field(
        default=0.1, gt=0.0, lt=1.0, description="门限校准使用的目标虚警概率（CFAR）"
    )
    seed: int = Field(
        default=20240601, ge=0, le=2**64 - 1, description="64 位无符号随机种子"
    )
    ris_enabled: bool = Field(
        default=True,
        description="是否启用 RIS 反射链路；关闭时 H 置零，仅保留直达链路作为对照基线",
    )

    @model_validator(mode="after")
    def _warn_small_ris(self):
        if self.ris_elements <= self.su_count:
            logger.warning(
                f"RIS 反射单元数 N={self.ris_elements} 未超过 SU 数量 I={self.su_count}，"
                "与系统模型假设 N>I 不符（仅提示，不影响计算）"
            )
        return self
