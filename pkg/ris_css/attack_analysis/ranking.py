"""
攻击效果的解析比较。

判决统计量近似正比于 (P_D − P_F)·|1 − π01 − π10|，据此得到各模式的强度代理量：
- AN / AY：1 − α
- AF：|2α − 1|
- RD：|α(p01 + p10) − 1|
代理量越小，FC 的统计量越弱，攻击越强。
"""

import logging
from typing import NamedTuple, Optional

import numpy as np
from pydantic import BaseModel, Field

from ris_css.attack_analysis.named_llr import branch_llr_named
from ris_css.byzantine.attack_profile import AttackKind
from ris_css.fusion.llr_rules import CLAMP, optimal_kernel
from ris_css.utils.errors import InvalidArgumentError

logger = logging.getLogger(__name__)

# 代理量比较的相等容差
PROXY_TOL = 1e-12

RANKED_MODES: tuple[AttackKind, ...] = ("AN", "AY", "AF", "RD")


class AttackComparison(BaseModel):
    """单个攻击模式的解析评估结果"""

    mode: AttackKind = Field(description="攻击模式")
    proxy: float = Field(ge=0.0, description="强度代理量，越小攻击越强")
    predicted_rank: int = Field(default=0, description="按代理量预测的强度排名（1 最强，并列同名次）")
    llr_y1: float = Field(description="采样工作点上 y=1 的精确支路 LLR")
    llr_y0: float = Field(description="采样工作点上 y=0 的精确支路 LLR")


class CrossoverThresholds(BaseModel):
    """p01+p10 轴上各模式强弱交替的边界"""

    af_vs_an: float = Field(default=2.0 / 3.0, description="AF 与 AN/AY 交替的 α 边界")
    rd_vs_an: float = Field(description="RD 与 AN/AY 交替的 p01+p10 边界 2/α−1（钳位到 [0,2]）")
    rd_vs_af: float = Field(description="RD 与 AF 交替的 p01+p10 边界 2/α−2（钳位到 [0,2]）")
    rd_vs_af_effective: float = Field(
        description="rd_vs_af 在 AF 比较区间 [1,2] 内的有效取值"
    )


class OptimalityCheck(NamedTuple):
    is_optimal: bool
    argmin: tuple[float, float]


def _check_unit(**values: float) -> None:
    for name, v in values.items():
        if not 0.0 <= v <= 1.0:
            raise InvalidArgumentError(f"{name} 必须位于 [0,1]，当前为 {v}")


def ranking_proxies(alpha: float, p01: float = 1.0, p10: float = 1.0) -> dict[str, float]:
    """各模式的强度代理量（RD 使用给定的 p01、p10）"""
    _check_unit(alpha=alpha, p01=p01, p10=p10)
    weak = 1.0 - alpha
    return {
        "AN": weak,
        "AY": weak,
        "AF": abs(2.0 * alpha - 1.0),
        "RD": abs(alpha * (p01 + p10) - 1.0),
    }


def predicted_ranks(proxies: dict[str, float]) -> dict[str, int]:
    """按代理量升序的竞争排名（相等代理量并列）"""
    ordered = sorted(proxies.values())
    ranks: dict[str, int] = {}
    for mode, value in proxies.items():
        ranks[mode] = 1 + sum(1 for v in ordered if v < value - PROXY_TOL)
    return ranks


def crossover_thresholds(alpha: float) -> CrossoverThresholds:
    if not 0.0 < alpha <= 1.0:
        raise InvalidArgumentError(f"α 必须位于 (0,1]，当前为 {alpha}")
    rd_vs_an = float(np.clip(2.0 / alpha - 1.0, 0.0, 2.0))
    rd_vs_af = float(np.clip(2.0 / alpha - 2.0, 0.0, 2.0))
    return CrossoverThresholds(
        rd_vs_an=rd_vs_an,
        rd_vs_af=rd_vs_af,
        rd_vs_af_effective=float(np.clip(rd_vs_af, 1.0, 2.0)),
    )


def compare_named_attacks(
    alpha: float,
    p01: float,
    p10: float,
    pd: float,
    pf: float,
    eps0: float,
    eps1: float,
) -> list[AttackComparison]:
    """在采样工作点 (P_D, P_F, ε) 上给出四种模式的代理量、预测排名与精确 LLR，按代理量升序"""
    proxies = ranking_proxies(alpha, p01, p10)
    ranks = predicted_ranks(proxies)
    rows = []
    for mode in RANKED_MODES:
        extra = {"p01": p01, "p10": p10} if mode == "RD" else {}
        rows.append(
            AttackComparison(
                mode=mode,
                proxy=proxies[mode],
                predicted_rank=ranks[mode],
                llr_y1=branch_llr_named(mode, pd, pf, eps0, eps1, alpha, 1, **extra),
                llr_y0=branch_llr_named(mode, pd, pf, eps0, eps1, alpha, 0, **extra),
            )
        )
    return sorted(rows, key=lambda r: (r.predicted_rank, RANKED_MODES.index(r.mode)))


def verify_small_scale_optimality(
    pd: float,
    pf: float,
    eps0: float,
    eps1: float,
    alpha: float,
    grid_step: float = 0.05,
) -> OptimalityCheck:
    """
    在 (p01, p10) ∈ [0,1]² 网格上搜索 ½(|Λ(1)| + |Λ(0)|) 的最小点，检验 AF 是否最优。

    参数:
        grid_step: 网格步长；实际使用 round(1/grid_step)+1 个等距点，保证端点 0 与 1 都在网格上
    返回:
        OptimalityCheck(is_optimal, argmin)。(1,1) 与最小值并列时视为最优，argmin 报告 (1,1)
    异常:
        InvalidArgumentError: 不满足 P_D > 0.5 > P_F、ε0+ε1 < 1、0 ≤ α ≤ 0.5 或步长非法
    """
    if not (pd > 0.5 > pf):
        raise InvalidArgumentError(f"要求 P_D > 0.5 > P_F，当前 P_D={pd}, P_F={pf}")
    if not (eps0 >= 0.0 and eps1 >= 0.0 and eps0 + eps1 < 1.0):
        raise InvalidArgumentError(f"要求 ε0, ε1 ≥ 0 且 ε0+ε1 < 1，当前为 ({eps0}, {eps1})")
    if not 0.0 <= alpha <= 0.5:
        raise InvalidArgumentError(f"小规模攻击要求 0 ≤ α ≤ 0.5，当前为 {alpha}")
    if not 0.0 < grid_step <= 1.0:
        raise InvalidArgumentError(f"网格步长必须位于 (0,1]，当前为 {grid_step}")

    points = np.linspace(0.0, 1.0, int(round(1.0 / grid_step)) + 1)
    p01, p10 = np.meshgrid(points, points, indexing="ij")
    pi01, pi10 = alpha * p01, alpha * p10
    pd_c, pf_c, e0_c, e1_c = (float(np.clip(v, CLAMP, 1.0 - CLAMP)) for v in (pd, pf, eps0, eps1))
    gap = 1.0 - pi01 - pi10
    llr1 = optimal_kernel(np.ones_like(p01), pd_c, pf_c, e0_c, e1_c, pi01, pi10, pi_gap=gap)
    llr0 = optimal_kernel(np.zeros_like(p01), pd_c, pf_c, e0_c, e1_c, pi01, pi10, pi_gap=gap)
    metric = 0.5 * (np.abs(llr1) + np.abs(llr0))

    best = float(metric.min())
    at_af = float(metric[-1, -1])
    if at_af <= best + PROXY_TOL * max(1.0, abs(best)):
        return OptimalityCheck(True, (1.0, 1.0))
    i, j = np.unravel_index(int(np.argmin(metric)), metric.shape)
    logger.info(f"AF 非网格最优：最小值 {best:.3e} 位于 ({points[i]:.3f}, {points[j]:.3f})")
    return OptimalityCheck(False, (float(points[i]), float(points[j])))
