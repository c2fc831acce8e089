"""
多攻击模式的蒙特卡洛对比。

所有模式共用同一组逐试验随机流（公共随机数），因此可以对 BER 差做配对检验：
对每一对模式计算逐试验错误指示之差的均值与标准误，|z| ≥ 2 视为差异显著。
"""

import itertools
import logging
from typing import Literal, Optional

import numpy as np
from pydantic import BaseModel, Field

from ris_css.attack_analysis.ranking import PROXY_TOL
from ris_css.byzantine.attack_profile import AssignmentMode, NamedAttack
from ris_css.harness.estimation import simulate
from ris_css.harness.experiment import ExperimentSpec
from ris_css.harness.metrics import binomial_stderr, summarize

logger = logging.getLogger(__name__)

Z_THRESHOLD = 2.0

Verdict = Literal["agree", "disagree", "tie", "proxy-tie"]


class AttackRankingRow(BaseModel):
    mode: str = Field(description="攻击模式标签")
    alpha: float = Field(description="拜占庭节点比例 α")
    ber: float = Field(description="误码率")
    ber_stderr: float = Field(description="BER 的二项标准误")
    mean_abs_llr: float = Field(description="|Λ| 的均值")
    mi_bits: float = Field(description="互信息（比特）")
    proxy: float = Field(description="强度代理量 |α(p01+p10) − 1|，越小攻击越强")
    predicted_rank: int = Field(description="按代理量预测的排名（1 最强）")
    observed_rank: int = Field(description="按 BER 降序的观测排名（1 最强）")


class PairVerdict(BaseModel):
    """一对模式的配对比较；stronger 为预测更强者（代理量相等时按输入顺序）"""

    stronger: str = Field(description="预测更强的模式")
    weaker: str = Field(description="预测更弱的模式")
    ber_diff: float = Field(description="BER(stronger) − BER(weaker)")
    stderr: float = Field(description="配对差的标准误")
    z: float = Field(description="配对 z 值")
    verdict: Verdict = Field(description="agree / disagree / tie / proxy-tie")


class AttackRankingTable(BaseModel):
    """按 BER 降序排列的对比表，附代理量预测与一致性标记"""

    trials: int = Field(description="每个模式的试验数")
    assignment_mode: Optional[AssignmentMode] = Field(
        default="iid_bernoulli", description="对比时使用的恶意节点指派方式；None 表示沿用各模式自身的设置"
    )
    rows: list[AttackRankingRow] = Field(default_factory=list)
    pairs: list[PairVerdict] = Field(default_factory=list)
    agreement: bool = Field(description="不存在 disagree 时为真")


def attack_proxy(mode: NamedAttack) -> float:
    """|α(p01+p10) − 1|：AN/AY 给出 1−α，AF 给出 |2α−1|，无攻击给出 1"""
    p = mode.profile
    return abs(p.alpha * (p.p01 + p.p10) - 1.0)


def _competition_ranks(values: list[float], descending: bool) -> list[int]:
    sign = -1.0 if descending else 1.0
    keyed = [sign * v for v in values]
    return [1 + sum(1 for w in keyed if w < v - PROXY_TOL) for v in keyed]


def _paired(errors_a: np.ndarray, errors_b: np.ndarray) -> tuple[float, float, float]:
    """返回 (均值差, 标准误, z)"""
    diff = errors_a.astype(float) - errors_b.astype(float)
    n = diff.size
    mean = float(diff.mean())
    se = float(diff.std(ddof=1) / np.sqrt(n)) if n > 1 else 0.0
    if se > 0.0:
        z = mean / se
    else:
        z = 0.0 if mean == 0.0 else float(np.copysign(np.inf, mean))
    return mean, se, z


def _verdict(z: float, proxy_tie: bool) -> Verdict:
    if proxy_tie:
        return "proxy-tie"
    if abs(z) < Z_THRESHOLD:
        return "tie"
    return "agree" if z > 0 else "disagree"


def _with_assignment(mode: NamedAttack, assignment_mode: Optional[AssignmentMode]) -> NamedAttack:
    if assignment_mode is None or mode.profile.assignment_mode == assignment_mode:
        return mode
    profile = mode.profile.model_copy(update={"assignment_mode": assignment_mode})
    return mode.model_copy(update={"profile": profile})


def compare_attacks(
    base: ExperimentSpec,
    modes: list[NamedAttack],
    assignment_mode: Optional[AssignmentMode] = "iid_bernoulli",
) -> AttackRankingTable:
    """
    在公共随机数下依次评估各攻击模式，按 BER 降序输出。

    停止准则在对比中关闭，使各模式的试验数相同，配对检验才成立。

    参数:
        assignment_mode: 默认逐节点独立伯努利指派，与 FC 计算 π 时的假设一致。
            固定比例指派下 AF 退化为对 round(αI) 个节点的确定性翻转，FC 可整体反转，
            排序因此偏离代理量预测。传 None 则沿用各模式自身的指派方式。
    """
    if not modes:
        raise ValueError("compare_attacks 至少需要一个攻击模式")

    modes = [_with_assignment(m, assignment_mode) for m in modes]
    labels, proxies, errors, summaries = [], [], [], []
    for mode in modes:
        spec = base.model_copy(
            update={"attack": mode, "attack_policy": "fixed", "stop_after_errors": False, "sweep": None}
        )
        logger.info(
            f"攻击对比：{mode.label} (α={mode.profile.alpha}, {mode.profile.assignment_mode})，{spec.trials} 次试验"
        )
        batch = simulate(spec)
        labels.append(mode.label)
        proxies.append(attack_proxy(mode))
        errors.append(batch.errors)
        summaries.append(summarize(batch.h, batch.decision, batch.statistic))

    predicted = _competition_ranks(proxies, descending=False)
    observed = _competition_ranks([s.ber for s in summaries], descending=True)

    rows = [
        AttackRankingRow(
            mode=labels[k],
            alpha=modes[k].profile.alpha,
            ber=s.ber,
            ber_stderr=binomial_stderr(s.ber, s.trials),
            mean_abs_llr=s.mean_abs_llr,
            mi_bits=s.mi_bits,
            proxy=proxies[k],
            predicted_rank=predicted[k],
            observed_rank=observed[k],
        )
        for k, s in enumerate(summaries)
    ]
    order = sorted(range(len(rows)), key=lambda k: (-rows[k].ber, k))

    pairs = []
    for a, b in itertools.combinations(range(len(modes)), 2):
        proxy_tie = abs(proxies[a] - proxies[b]) <= PROXY_TOL
        if not proxy_tie and proxies[b] < proxies[a]:
            a, b = b, a
        mean, se, z = _paired(errors[a], errors[b])
        pairs.append(
            PairVerdict(
                stronger=labels[a], weaker=labels[b], ber_diff=mean, stderr=se, z=z,
                verdict=_verdict(z, proxy_tie),
            )
        )

    agreement = all(p.verdict != "disagree" for p in pairs)
    if not agreement:
        bad = [f"{p.stronger}>{p.weaker}" for p in pairs if p.verdict == "disagree"]
        logger.warning(f"观测排序与代理量预测不一致：{', '.join(bad)}")
    return AttackRankingTable(
        trials=summaries[0].trials,
        assignment_mode=assignment_mode,
        rows=[rows[k] for k in order],
        pairs=pairs,
        agreement=agreement,
    )
