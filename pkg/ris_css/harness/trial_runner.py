"""
端到端单次试验与逐帧执行。

一次试验：抽取假设 → 抽取信道（快衰落）→ 各 SU 本地感知 → 拜占庭篡改
→ 上报链路传输 → FC 融合判决。每次试验的随机数只由 (seed, trial_index) 决定。
"""

import logging
from functools import lru_cache
from typing import NamedTuple

import numpy as np

from ris_css.byzantine.attacker import apply_attack, compromised_mask
from ris_css.fusion.fusion_center import decide, decision_threshold, sum_llrs
from ris_css.fusion.llr_rules import branch_llrs
from ris_css.harness.experiment import ExperimentSpec
from ris_css.report_channel.binary_channel import transmit_hop_by_hop, transmit_many
from ris_css.sensing.channel_model import draw_channels
from ris_css.sensing.energy_detection import calibrate_threshold, detection_probabilities, sense_all
from ris_css.utils.rng import TrialStreams

logger = logging.getLogger(__name__)


class TrialOutcome(NamedTuple):
    h: int
    decision: int
    statistic: float


class FrameRecord(NamedTuple):
    """一帧（连续一段试验）的逐试验记录"""

    start: int
    h: np.ndarray
    decision: np.ndarray
    statistic: np.ndarray
    clamped: int


class TrialEngine:
    """预先解析实验配置（门限、路径、攻击参数），之后逐试验运行"""

    def __init__(self, spec: ExperimentSpec):
        self.spec = spec
        self.cfg = spec.system
        self.attack = spec.effective_attack()
        self.rule = spec.rule
        self.lam = calibrate_threshold(self.cfg)
        self.tau = decision_threshold(self.cfg.prior_h1)

        paths = spec.resolve_paths()
        self.eps0 = np.array([p.eq.eps0 for p in paths])
        self.eps1 = np.array([p.eq.eps1 for p in paths])
        self.delta_min = np.array([p.delta_min for p in paths])
        self.hop_eps0 = np.array([[h.eps0 for h in p.hops] for p in paths])
        self.hop_eps1 = np.array([[h.eps1 for h in p.hops] for p in paths])

    def run_trial_detailed(self, trial_index: int) -> tuple[TrialOutcome, int]:
        """返回 (试验结果, 被钳位的支路数)"""
        cfg, profile = self.cfg, self.attack.profile
        streams = TrialStreams(cfg.seed, trial_index)

        h = int(streams.hypothesis.random() < cfg.prior_h1)
        real = draw_channels(cfg, streams.channel)
        pd, pf = detection_probabilities(self.lam, real.gamma, cfg.sample_count, cfg.noise_variance)
        x = sense_all(real, self.lam, pd, pf, h, self.spec.sensing_mode, streams.sensing, cfg)

        mask = compromised_mask(profile, cfg.su_count, streams.assignment)
        u = apply_attack(x, mask, profile, streams.attack)

        if self.spec.hop_by_hop:
            y = transmit_hop_by_hop(u, self.hop_eps0, self.hop_eps1, streams.report)
        else:
            y = transmit_many(u, self.eps0, self.eps1, streams.report)

        # FC 使用边缘翻转率 π = α·p，与仿真中的实际指派方式无关
        llrs, clamped = branch_llrs(
            self.rule, y, pd, pf, self.eps0, self.eps1, self.delta_min,
            profile.pi01, profile.pi10,
        )
        statistic = sum_llrs(llrs)
        decision = decide(statistic, self.tau, streams.tie)
        return TrialOutcome(h, decision, statistic), clamped

    def run_trial(self, trial_index: int) -> TrialOutcome:
        return self.run_trial_detailed(trial_index)[0]

    def run_frame(self, start: int, stop: int) -> FrameRecord:
        n = stop - start
        h = np.empty(n, dtype=np.int8)
        decision = np.empty(n, dtype=np.int8)
        statistic = np.empty(n, dtype=float)
        clamped_total = 0
        for k, trial_index in enumerate(range(start, stop)):
            outcome, clamped = self.run_trial_detailed(trial_index)
            h[k], decision[k], statistic[k] = outcome
            clamped_total += clamped
        return FrameRecord(start, h, decision, statistic, clamped_total)


@lru_cache(maxsize=8)
def _engine_for(spec_json: str) -> TrialEngine:
    return TrialEngine(ExperimentSpec.model_validate_json(spec_json))


def run_frame(spec_json: str, start: int, stop: int) -> FrameRecord:
    """并行工作单元：进程内按配置缓存 TrialEngine"""
    return _engine_for(spec_json).run_frame(start, stop)


def run_trial(spec: ExperimentSpec, trial_index: int) -> TrialOutcome:
    """运行编号为 trial_index 的单次试验，结果只由 (seed, trial_index) 决定"""
    if trial_index < 0:
        raise ValueError(f"trial_index 必须非负，当前为 {trial_index}")
    return _engine_for(spec.model_dump_json()).run_trial(trial_index)
