"""
命名攻击下的支路 LLR 闭式表达。

记 k = 1 − ε0 − ε1，各模式下 SU 上报 1 的概率 P1 = P(u=1|H1)、P0 = P(u=1|H0)：
    none: P1 = P_D,                      P0 = P_F
    AN:   P1 = P_D(1−α),                 P0 = P_F(1−α)
    AY:   P1 = α + P_D(1−α),             P0 = α + P_F(1−α)
    AF:   P1 = α + P_D(1−2α),            P0 = α + P_F(1−2α)
    RD:   P1 = P_D(1 − α(p01+p10)) + αp10, P0 同理
A = ε0 + k·P1，B = ε0 + k·P0，C = 1 − A，D = 1 − B；
y=1 时 Λ = ln(A/B)，y=0 时 Λ = ln(C/D)。
"""

import logging
from typing import Optional

import numpy as np

from ris_css.byzantine.attack_profile import AttackKind, NamedAttack
from ris_css.utils.errors import DegenerateInputError, InvalidArgumentError

logger = logging.getLogger(__name__)


def report_one_probability(
    kind: AttackKind, p: float, alpha: float, p01: float = 0.0, p10: float = 0.0
) -> float:
    """P(u=1 | 本地判决为 1 的概率为 p)"""
    if kind == "none":
        return p
    if kind == "AN":
        return p * (1.0 - alpha)
    if kind == "AY":
        return alpha + p * (1.0 - alpha)
    if kind == "AF":
        return alpha + p * (1.0 - 2.0 * alpha)
    if kind == "RD":
        return p * (1.0 - alpha * (p01 + p10)) + alpha * p10
    raise InvalidArgumentError(f"未知攻击模式: {kind}")


def branch_llr_named(
    mode: NamedAttack | AttackKind,
    pd: float,
    pf: float,
    eps0: float,
    eps1: float,
    alpha: Optional[float],
    y: int,
    p01: Optional[float] = None,
    p10: Optional[float] = None,
) -> float:
    """
    命名攻击的支路 LLR。

    mode 为 NamedAttack 时 α、p01、p10 取自其攻击参数（显式给出的 alpha 优先）；
    mode 为字符串时，RD 需要同时给出 p01 与 p10。
    """
    if isinstance(mode, NamedAttack):
        kind = mode.kind
        alpha = mode.profile.alpha if alpha is None else alpha
        p01 = mode.profile.p01 if p01 is None else p01
        p10 = mode.profile.p10 if p10 is None else p10
    else:
        kind = mode
        if kind == "RD" and (p01 is None or p10 is None):
            raise InvalidArgumentError("RD 模式需要给出 p01 与 p10")
    if alpha is None:
        raise InvalidArgumentError("需要给出 α")
    if y not in (0, 1):
        raise InvalidArgumentError(f"y 只能为 0 或 1，当前为 {y}")

    k = 1.0 - eps0 - eps1
    prob1 = report_one_probability(kind, pd, alpha, p01 or 0.0, p10 or 0.0)
    prob0 = report_one_probability(kind, pf, alpha, p01 or 0.0, p10 or 0.0)
    if y == 1:
        numer, denom = eps0 + k * prob1, eps0 + k * prob0
    else:
        numer, denom = (1.0 - eps0) - k * prob1, (1.0 - eps0) - k * prob0
    if numer <= 0.0 or denom <= 0.0:
        raise DegenerateInputError(
            f"{kind} 模式下 LLR 分子/分母非正（numer={numer}, denom={denom}）"
        )
    return float(np.log(numer / denom))
