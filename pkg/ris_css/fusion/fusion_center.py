import logging
import math
from typing import NamedTuple, Optional

import numpy as np
from numpy.typing import ArrayLike

from ris_css.fusion.llr_rules import BranchInputs, FusionRuleKind, branch_llrs
from ris_css.utils.errors import DegenerateInputError, InvalidArgumentError

logger = logging.getLogger(__name__)

# |Λ − τ| 不超过该值视为平局
TIE_TOL = 1e-12


class FusionResult(NamedTuple):
    statistic: float
    decision: int


def decision_threshold(prior_h1: float) -> float:
    """ML/MAP 门限 τ = ln(P(H0)/P(H1))"""
    if not 0.0 <= prior_h1 <= 1.0:
        raise InvalidArgumentError(f"先验 P(H1) 必须位于 [0,1]，当前为 {prior_h1}")
    if prior_h1 == 0.0:
        return math.inf
    if prior_h1 == 1.0:
        return -math.inf
    return math.log((1.0 - prior_h1) / prior_h1)


def sum_llrs(llrs: np.ndarray) -> float:
    """按支路下标顺序无关的精确求和（fsum），保证逐比特可复现"""
    return math.fsum(llrs.tolist())


def decide(statistic: float, tau: float, rng: Optional[np.random.Generator] = None) -> int:
    """Λ > τ 判 1，Λ < τ 判 0，平局公平抛币"""
    if math.isinf(tau):
        return 0 if tau > 0 else 1
    diff = statistic - tau
    if abs(diff) <= TIE_TOL:
        if rng is None:
            rng = np.random.default_rng()
        return int(rng.random() < 0.5)
    return int(diff > 0.0)


def fuse(
    y: ArrayLike,
    branches: list[BranchInputs],
    rule: FusionRuleKind | str,
    rng: Optional[np.random.Generator] = None,
    prior_h1: float = 0.5,
    clamp: bool = True,
) -> FusionResult:
    """
    FC 判决融合：Λ(y) = Σ_i Λ(y_i)，与门限 τ 比较。

    - y 与 branches 一一对应
    - rng 只用于平局抛币；未提供时使用非确定性随机源
    """
    y = np.asarray(y, dtype=np.int8)
    if y.shape != (len(branches),):
        raise InvalidArgumentError(f"比特数 {y.size} 与支路数 {len(branches)} 不一致")
    pd = np.array([b.sensor.pd for b in branches])
    pf = np.array([b.sensor.pf for b in branches])
    eps0 = np.array([b.path.eq.eps0 for b in branches])
    eps1 = np.array([b.path.eq.eps1 for b in branches])
    delta_min = np.array([b.path.delta_min for b in branches])
    pis = {b.attack_pi for b in branches}
    if not branches:
        llrs = np.zeros(0)
    elif len(pis) != 1:
        # 各支路 π 不同时逐条计算
        llrs = np.concatenate(
            [
                _one_branch(rule, y[i : i + 1], b, clamp, i)
                for i, b in enumerate(branches)
            ]
        )
    else:
        pi01, pi10 = pis.pop()
        llrs, _ = branch_llrs(rule, y, pd, pf, eps0, eps1, delta_min, pi01, pi10, clamp=clamp)
    statistic = sum_llrs(llrs)
    return FusionResult(statistic, decide(statistic, decision_threshold(prior_h1), rng))


def _one_branch(rule, y_i: np.ndarray, b: BranchInputs, clamp: bool, index: int) -> np.ndarray:
    eq = b.path.eq
    try:
        llr, _ = branch_llrs(
            rule, y_i, b.sensor.pd, b.sensor.pf, eq.eps0, eq.eps1,
            b.path.delta_min, b.attack_pi[0], b.attack_pi[1], clamp=clamp,
        )
    except DegenerateInputError as e:
        raise DegenerateInputError(str(e).split("] ", 1)[-1], branch=index) from e
    return llr
