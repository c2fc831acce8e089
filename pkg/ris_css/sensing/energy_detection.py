"""
能量检测：门限校准、闭式检测/虚警概率、单次本地判决。

检测统计量 G = (1/T)·Σ|wᴴ x(t)|²，判决 G > λ 时输出 1。
高斯近似下：
    P_F = Q((λ/σ² − 1)·√T)
    P_D = Q((λ/σ² − γ − 1)·√T/(1+γ))
精确分布下 G·T/(σ²(1+γ)) ~ Gamma(T, 1)（H0 时 γ=0）。
"""

import logging
from typing import Literal, Optional

import numpy as np
from numpy.typing import ArrayLike
from pydantic import BaseModel, ConfigDict, Field
from scipy import stats

from ris_css.sensing.channel_model import ChannelRealization, complex_gaussian
from ris_css.sensing.q_function import q_function, q_inverse
from ris_css.sensing.system_config import SystemConfig
from ris_css.utils.errors import InvalidArgumentError

logger = logging.getLogger(__name__)

SensingMode = Literal["analytic", "waveform"]


class SensorProfile(BaseModel):
    """单个 SU 的感知画像 (λ, γ, P_D, P_F)"""

    model_config = ConfigDict(populate_by_name=True)

    lam: float = Field(alias="lambda", gt=0.0, description="能量检测门限 λ")
    gamma: float = Field(ge=0.0, description="瞬时接收信噪比 γ")
    pd: float = Field(ge=0.0, le=1.0, description="本地检测概率 P_D")
    pf: float = Field(ge=0.0, le=1.0, description="本地虚警概率 P_F")


# -------- 门限与闭式概率 --------
def calibrate_threshold(cfg: SystemConfig) -> float:
    """CFAR 门限：λ = σ²(1 + Q⁻¹(target_pf)/√T)；target_pf 接近 1 且 T 很小时 λ 可能非正，直接报错"""
    lam = cfg.noise_variance * (1.0 + q_inverse(cfg.target_pf) / np.sqrt(cfg.sample_count))
    if lam <= 0.0:
        raise InvalidArgumentError(
            f"target_pf={cfg.target_pf}、T={cfg.sample_count} 时校准得到的门限 λ={lam:.4g} 非正，请降低 target_pf 或增大 T"
        )
    return float(lam)


def detection_probabilities(
    lam: float, gamma: ArrayLike, sample_count: int, noise_variance: float
) -> tuple[np.ndarray, np.ndarray]:
    """向量化的高斯近似 (P_D, P_F)，gamma 可为任意形状数组"""
    g = np.asarray(gamma, dtype=float)
    root_t = np.sqrt(sample_count)
    ratio = lam / noise_variance
    pf = np.broadcast_to(q_function((ratio - 1.0) * root_t), g.shape)
    pd = q_function((ratio - g - 1.0) * root_t / (1.0 + g))
    return np.asarray(pd, dtype=float), np.array(pf, dtype=float)


def local_probabilities(lam: float, gamma: float, cfg: SystemConfig) -> SensorProfile:
    if lam <= 0.0:
        raise InvalidArgumentError(f"检测门限 λ 必须为正，当前为 {lam}")
    if gamma < 0.0:
        raise InvalidArgumentError(f"信噪比 γ 不能为负，当前为 {gamma}")
    pd, pf = detection_probabilities(lam, gamma, cfg.sample_count, cfg.noise_variance)
    return SensorProfile(lam=lam, gamma=gamma, pd=float(pd), pf=float(pf))


def exact_local_probabilities(lam: float, gamma: float, cfg: SystemConfig) -> SensorProfile:
    """按 Gamma 分布精确计算波形模式下的 (P_D, P_F)，用于检验高斯近似"""
    if lam <= 0.0 or gamma < 0.0:
        raise InvalidArgumentError(f"非法参数 λ={lam}, γ={gamma}")
    T = cfg.sample_count
    scaled = lam * T / cfg.noise_variance
    pf = stats.gamma.sf(scaled, a=T)
    pd = stats.gamma.sf(scaled / (1.0 + gamma), a=T)
    return SensorProfile(lam=lam, gamma=gamma, pd=float(pd), pf=float(pf))


# -------- 本地判决 --------
def waveform_statistic(
    real: ChannelRealization,
    cfg: SystemConfig,
    hypothesis: int,
    rng: np.random.Generator,
    su_indices: Optional[np.ndarray] = None,
) -> np.ndarray:
    """
    生成 T 个采样并计算各 SU 的能量统计量 G。

    PU 信号 s(t) ~ CN(0,1) 为各 SU 共享，噪声 n_i(t) ~ CN(0, σ²I_M) 相互独立；
    H0 下同样抽取 s(t)，仅不叠加，保持随机流规模固定。
    """
    idx = np.arange(real.gamma.shape[0]) if su_indices is None else np.asarray(su_indices)
    T, M = cfg.sample_count, real.w.shape[-1]
    s = complex_gaussian(rng, (T,))
    noise = complex_gaussian(rng, (idx.size, T, M)) * np.sqrt(cfg.noise_variance)

    w = real.w[idx]
    projected = np.einsum("im,itm->it", w.conj(), noise)
    if hypothesis == 1:
        gain = np.einsum("im,im->i", w.conj(), real.effective_channel()[idx])
        projected = projected + np.sqrt(cfg.transmit_power) * gain[:, None] * s[None, :]
    return np.mean(np.abs(projected) ** 2, axis=1)


def sense_all(
    real: ChannelRealization,
    lam: float,
    pd: np.ndarray,
    pf: np.ndarray,
    hypothesis: int,
    mode: SensingMode,
    rng: np.random.Generator,
    cfg: Optional[SystemConfig] = None,
) -> np.ndarray:
    """全部 SU 的本地判决向量 x（0/1，int8）"""
    if mode == "analytic":
        u = rng.random(np.shape(pd))
        prob = pd if hypothesis == 1 else pf
        return (u < prob).astype(np.int8)
    if mode == "waveform":
        if cfg is None:
            raise InvalidArgumentError("波形模式需要提供 SystemConfig")
        return (waveform_statistic(real, cfg, hypothesis, rng) > lam).astype(np.int8)
    raise InvalidArgumentError(f"未知感知模式: {mode}")


def sense_once(
    real: ChannelRealization,
    profile: SensorProfile,
    hypothesis: int,
    mode: SensingMode,
    rng: np.random.Generator,
    cfg: Optional[SystemConfig] = None,
    su_index: int = 0,
) -> int:
    """单个 SU 的一次本地判决"""
    if mode == "analytic":
        prob = profile.pd if hypothesis == 1 else profile.pf
        return int(rng.random() < prob)
    if mode == "waveform":
        if cfg is None:
            raise InvalidArgumentError("波形模式需要提供 SystemConfig")
        g = waveform_statistic(real, cfg, hypothesis, rng, su_indices=np.array([su_index]))
        return int(g[0] > profile.lam)
    raise InvalidArgumentError(f"未知感知模式: {mode}")
