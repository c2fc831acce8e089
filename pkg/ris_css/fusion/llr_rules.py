"""
支路对数似然比（LLR）规则。

记 k = 1 − ε0 − ε1，SU 上报 1 的条件概率（含拜占庭翻转的边缘效应）：
    s1 = P(u=1|H1) = P_D(1−π01) + (1−P_D)π10
    s0 = P(u=1|H0) = P_F(1−π01) + (1−P_F)π10
FC 收到 1 的条件概率：
    A = P(y=1|H1) = ε0 + k·s1,   B = P(y=1|H0) = ε0 + k·s0
于是 A − B = k(P_D − P_F)(1 − π01 − π10)，
    Λ(1) = ln(A/B) = log1p((A−B)/B)
    Λ(0) = ln((1−A)/(1−B)) = log1p(−(A−B)/(1−B))
这样写出的 LLR 在 π01+π10 = 1 时严格为 0。

四种规则：
- optimal：上式
- ideal-sensing：代入 P_D=1, P_F=0
- high-relay-snr：代入 ε0=ε1=0
- low-relay-snr：±(1−π01−π10)(P_D−P_F)·min_j δ_j
"""

import logging
from enum import StrEnum
from typing import Optional

import numpy as np
from numpy.typing import ArrayLike
from pydantic import BaseModel, Field, field_validator

from ris_css.report_channel.binary_channel import ReportPath
from ris_css.sensing.energy_detection import SensorProfile
from ris_css.utils.errors import DegenerateInputError, InvalidArgumentError

logger = logging.getLogger(__name__)

# 概率钳位区间 [CLAMP, 1−CLAMP]
CLAMP = 1e-12


class FusionRuleKind(StrEnum):
    OPTIMAL = "optimal"
    IDEAL_SENSING = "ideal-sensing"
    HIGH_RELAY_SNR = "high-relay-snr"
    LOW_RELAY_SNR = "low-relay-snr"


class BranchInputs(BaseModel):
    """单条支路的 LLR 输入：感知画像、上报路径、FC 已知的 (π01, π10)"""

    sensor: SensorProfile = Field(description="SU 的感知画像")
    path: ReportPath = Field(description="SU→FC 上报路径")
    attack_pi: tuple[float, float] = Field(
        default=(0.0, 0.0), description="FC 已知的边缘翻转率 (π01, π10)"
    )

    @field_validator("attack_pi")
    @classmethod
    def _check_pi(cls, v: tuple[float, float]) -> tuple[float, float]:
        if not all(0.0 <= p <= 1.0 for p in v):
            raise ValueError(f"π 必须位于 [0,1]，当前为 {v}")
        return v


# -------- 向量化内核 --------
def _clamp(*arrays: np.ndarray) -> tuple[list[np.ndarray], np.ndarray]:
    """钳位到 [CLAMP, 1−CLAMP]，返回钳位后数组与逐支路“是否被钳位”标记"""
    out, touched = [], None
    for a in arrays:
        clipped = np.clip(a, CLAMP, 1.0 - CLAMP)
        changed = clipped != a
        touched = changed if touched is None else (touched | changed)
        out.append(clipped)
    return out, touched


def _first_bad(mask: np.ndarray) -> Optional[int]:
    bad = np.flatnonzero(mask)
    return int(bad[0]) if bad.size else None


def optimal_kernel(
    y: ArrayLike,
    pd: ArrayLike,
    pf: ArrayLike,
    eps0: ArrayLike,
    eps1: ArrayLike,
    pi01: ArrayLike,
    pi10: ArrayLike,
    pi_gap: Optional[ArrayLike] = None,
) -> np.ndarray:
    """
    最优规则内核（不做钳位）；分子或分母非正时抛出 DegenerateInputError。

    pi_gap 为 1 − π01 − π10，应由钳位前的 π 计算，使失明条件下的 LLR 严格为 0。
    """
    if pi_gap is None:
        pi_gap = 1.0 - np.asarray(pi01, dtype=float) - np.asarray(pi10, dtype=float)
    y, pd, pf, eps0, eps1, pi01, pi10, pi_gap = np.broadcast_arrays(
        *(np.asarray(a, dtype=float) for a in (y, pd, pf, eps0, eps1, pi01, pi10, pi_gap))
    )
    s0 = pf * (1.0 - pi01) + (1.0 - pf) * pi10
    # 写成凸组合，保证概率输入下 B 与 1−B 的数值非负
    b = eps0 * (1.0 - s0) + (1.0 - eps1) * s0
    d = (1.0 - eps0) * (1.0 - s0) + eps1 * s0
    gap = (1.0 - eps0 - eps1) * (pd - pf) * pi_gap

    is_one = y == 1
    denom = np.where(is_one, b, d)
    signed_gap = np.where(is_one, gap, -gap)
    numer = denom + signed_gap
    bad = _first_bad((denom <= 0.0) | (numer <= 0.0))
    if bad is not None:
        raise DegenerateInputError(
            f"LLR 分子/分母非正（P_D={pd[bad]}, P_F={pf[bad]}, ε=({eps0[bad]}, {eps1[bad]}), "
            f"π=({pi01[bad]}, {pi10[bad]})）",
            branch=bad,
        )
    return np.log1p(signed_gap / denom)


def branch_llrs(
    rule: FusionRuleKind | str,
    y: ArrayLike,
    pd: ArrayLike,
    pf: ArrayLike,
    eps0: ArrayLike,
    eps1: ArrayLike,
    delta_min: ArrayLike,
    pi01: float,
    pi10: float,
    clamp: bool = True,
) -> tuple[np.ndarray, int]:
    """
    按规则计算全部支路的 LLR。

    返回 (llr 数组, 被钳位的支路数)。低信噪比规则不做钳位，δ 非有限时报错。
    """
    rule = FusionRuleKind(rule)
    y = np.asarray(y)
    if np.any((y != 0) & (y != 1)):
        raise InvalidArgumentError("FC 收到的比特只能为 0 或 1")
    shape = y.shape
    pd, pf, eps0, eps1 = (np.broadcast_to(np.asarray(a, dtype=float), shape) for a in (pd, pf, eps0, eps1))
    pi_gap = 1.0 - float(pi01) - float(pi10)

    if rule is FusionRuleKind.LOW_RELAY_SNR:
        dm = np.broadcast_to(np.asarray(delta_min, dtype=float), shape)
        bad = _first_bad(~np.isfinite(dm))
        if bad is not None:
            raise DegenerateInputError("存在 ε0 = 0 的跳，δ 无定义，无法使用低信噪比规则", branch=bad)
        value = pi_gap * (pd - pf) * dm
        return np.where(y == 1, value, -value), 0

    if rule is FusionRuleKind.IDEAL_SENSING:
        pd, pf = np.ones(shape), np.zeros(shape)
        clamp_targets = [eps0, eps1]
    elif rule is FusionRuleKind.HIGH_RELAY_SNR:
        eps0, eps1 = np.zeros(shape), np.zeros(shape)
        clamp_targets = [pd, pf]
    else:
        clamp_targets = [pd, pf, eps0, eps1]

    clamped = 0
    if clamp:
        fixed, touched = _clamp(*clamp_targets)
        clamped = int(np.count_nonzero(touched))
        if rule is FusionRuleKind.IDEAL_SENSING:
            eps0, eps1 = fixed
        elif rule is FusionRuleKind.HIGH_RELAY_SNR:
            pd, pf = fixed
        else:
            pd, pf, eps0, eps1 = fixed
        # π 为 FC 已知的公共参数，只钳位、不计入支路统计
        pi01, pi10 = (float(np.clip(p, CLAMP, 1.0 - CLAMP)) for p in (pi01, pi10))
        if clamped and logger.isEnabledFor(logging.DEBUG):
            logger.debug(f"{rule.value} 规则：{clamped} 条支路的概率被钳位到 [{CLAMP}, 1−{CLAMP}]")
    return optimal_kernel(y, pd, pf, eps0, eps1, pi01, pi10, pi_gap=pi_gap), clamped


# -------- 单支路接口 --------
def _scalar(rule: FusionRuleKind, y: int, b: BranchInputs, clamp: bool) -> float:
    eq = b.path.eq
    llr, _ = branch_llrs(
        rule,
        np.array([y]),
        b.sensor.pd,
        b.sensor.pf,
        eq.eps0,
        eq.eps1,
        b.path.delta_min,
        b.attack_pi[0],
        b.attack_pi[1],
        clamp=clamp,
    )
    return float(llr[0])


def llr_branch_optimal(y: int, b: BranchInputs, clamp: bool = True) -> float:
    """最优融合规则下的支路 LLR"""
    return _scalar(FusionRuleKind.OPTIMAL, y, b, clamp)


def llr_branch_ideal_sensing(y: int, b: BranchInputs, clamp: bool = True) -> float:
    """理想本地感知（P_D=1, P_F=0）下的支路 LLR，忽略感知画像"""
    return _scalar(FusionRuleKind.IDEAL_SENSING, y, b, clamp)


def llr_branch_high_snr(y: int, b: BranchInputs, clamp: bool = True) -> float:
    """上报信道高信噪比（ε→0）下的支路 LLR，忽略上报路径"""
    return _scalar(FusionRuleKind.HIGH_RELAY_SNR, y, b, clamp)


def llr_branch_low_snr(y: int, b: BranchInputs) -> float:
    """
    上报信道低信噪比（ε→0.5）下的线性近似。

    min δ 只取最差的一跳，J=1 时在 ε ∈ [0.46, 0.5) 上与最优规则相差不超过 10%；
    J ≥ 2 时真实等效可靠度按 ∏(1−2ε_j) 衰减，本规则约高估 (1−2ε)^{-(J−1)} 倍。
    """
    return _scalar(FusionRuleKind.LOW_RELAY_SNR, y, b, clamp=False)


LLR_RULES = {
    FusionRuleKind.OPTIMAL: llr_branch_optimal,
    FusionRuleKind.IDEAL_SENSING: llr_branch_ideal_sensing,
    FusionRuleKind.HIGH_RELAY_SNR: llr_branch_high_snr,
    FusionRuleKind.LOW_RELAY_SNR: llr_branch_low_snr,
}
