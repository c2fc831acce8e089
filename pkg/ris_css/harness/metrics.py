import logging
from typing import Optional

import numpy as np
from numpy.typing import ArrayLike
from pydantic import BaseModel, Field

logger = logging.getLogger(__name__)


class ResultRow(BaseModel):
    """一个工作点（或一个扫描取值）的统计结果"""

    sweep_value: Optional[float] = Field(default=None, description="扫描取值；单点仿真为空")
    ber: float = Field(ge=0.0, le=1.0, description="误码率 = 错误判决数 / 试验数")
    mean_abs_llr: float = Field(ge=0.0, description="全局统计量 |Λ| 的均值")
    mi_bits: float = Field(ge=0.0, le=1.0, description="假设与判决之间的代入式（plug-in）互信息估计（比特）")
    trials: int = Field(ge=0, description="实际运行的试验数")
    errors: int = Field(ge=0, description="错误判决数")
    n00: int = Field(ge=0, description="h=0, 判决=0 的次数")
    n01: int = Field(ge=0, description="h=0, 判决=1 的次数")
    n10: int = Field(ge=0, description="h=1, 判决=0 的次数")
    n11: int = Field(ge=0, description="h=1, 判决=1 的次数")
    # 以下字段只写入 JSON 镜像
    eq_eps0: Optional[float] = Field(default=None, description="各路径等效 ε0 的均值")
    eq_eps1: Optional[float] = Field(default=None, description="各路径等效 ε1 的均值")
    clamped_branches: int = Field(default=0, ge=0, description="LLR 计算中被钳位的支路次数")


def confusion_counts(h: ArrayLike, decision: ArrayLike) -> np.ndarray:
    """2×2 混淆计数，counts[h, d]"""
    h = np.asarray(h, dtype=np.int64)
    d = np.asarray(decision, dtype=np.int64)
    return np.bincount(2 * h + d, minlength=4).reshape(2, 2)


def plugin_mutual_information(counts: ArrayLike) -> float:
    """由联合计数估计互信息（比特），约定 0·log0 = 0，不做偏差修正"""
    counts = np.asarray(counts, dtype=float)
    total = counts.sum()
    if total <= 0:
        return 0.0
    joint = counts / total
    ph = joint.sum(axis=1, keepdims=True)
    pd = joint.sum(axis=0, keepdims=True)
    outer = ph * pd
    mask = joint > 0
    mi = float(np.sum(joint[mask] * np.log2(joint[mask] / outer[mask])))
    return min(max(mi, 0.0), 1.0)


def binary_entropy(p: float) -> float:
    """二元熵 H_b(p)（比特）"""
    if p <= 0.0 or p >= 1.0:
        return 0.0
    return float(-p * np.log2(p) - (1.0 - p) * np.log2(1.0 - p))


def binomial_stderr(p: float, n: int) -> float:
    return float(np.sqrt(max(p * (1.0 - p), 0.0) / n)) if n > 0 else float("nan")


def summarize(
    h: np.ndarray,
    decision: np.ndarray,
    statistic: np.ndarray,
    sweep_value: Optional[float] = None,
    clamped_branches: int = 0,
    eq_eps: Optional[tuple[float, float]] = None,
) -> ResultRow:
    """由逐试验记录汇总成 ResultRow"""
    counts = confusion_counts(h, decision)
    trials = int(counts.sum())
    errors = int(counts[0, 1] + counts[1, 0])
    return ResultRow(
        sweep_value=sweep_value,
        ber=errors / trials if trials else 0.0,
        mean_abs_llr=float(np.mean(np.abs(statistic))) if trials else 0.0,
        mi_bits=plugin_mutual_information(counts),
        trials=trials,
        errors=errors,
        n00=int(counts[0, 0]),
        n01=int(counts[0, 1]),
        n10=int(counts[1, 0]),
        n11=int(counts[1, 1]),
        eq_eps0=None if eq_eps is None else eq_eps[0],
        eq_eps1=None if eq_eps is None else eq_eps[1],
        clamped_branches=clamped_branches,
    )
