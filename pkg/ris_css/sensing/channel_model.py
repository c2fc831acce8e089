"""
RIS 辅助感知信道建模：
- PU→SU 直达链路 h_d：每个 SU 一条 M 维瑞利向量
- PU→RIS 链路 h_r：N 维瑞利向量（所有 SU 共享）
- RIS→SU 链路 H：每个 SU 一个 M×N 瑞利矩阵
- RIS 相移 θ：在 [0, 2π) 上均匀随机生成（不做相位优化）
全部链路为归一化平均功率的 CN(0,1)，每次试验重新抽取（快衰落）。
"""

import logging

import numpy as np
from pydantic import BaseModel, ConfigDict, Field

from ris_css.sensing.system_config import SystemConfig

logger = logging.getLogger(__name__)


def complex_gaussian(rng: np.random.Generator, shape) -> np.ndarray:
    """复高斯 CN(0,1)：实部与虚部各自方差 1/2"""
    return (rng.normal(size=shape) + 1j * rng.normal(size=shape)) / np.sqrt(2.0)


class ChannelRealization(BaseModel):
    """一次信道实现：衰落矩阵、RIS 相移、接收波束与各 SU 瞬时信噪比"""

    model_config = ConfigDict(arbitrary_types_allowed=True, frozen=True)

    h_d: np.ndarray = Field(description="直达链路，形状 (I, M)")
    h_r: np.ndarray = Field(description="PU→RIS 链路，形状 (N,)")
    H: np.ndarray = Field(description="RIS→SU 链路，形状 (I, M, N)")
    theta: np.ndarray = Field(description="RIS 相移，形状 (N,)，取值 [0, 2π)")
    w: np.ndarray = Field(description="单位范数接收波束，形状 (I, M)")
    gamma: np.ndarray = Field(description="各 SU 瞬时接收信噪比，形状 (I,)")

    def effective_channel(self) -> np.ndarray:
        """等效信道 h_eff = h_d + H·diag(e^{jθ})·h_r，形状 (I, M)"""
        return effective_channel(self.h_d, self.h_r, self.H, self.theta)

    def recompute_gamma(self, transmit_power: float, noise_variance: float) -> np.ndarray:
        """由字段重新计算 γ_i = p·|wᴴ h_eff|² / σ²"""
        gain = np.einsum("im,im->i", self.w.conj(), self.effective_channel())
        return transmit_power * np.abs(gain) ** 2 / noise_variance


def effective_channel(
    h_d: np.ndarray, h_r: np.ndarray, H: np.ndarray, theta: np.ndarray
) -> np.ndarray:
    reflected = np.exp(1j * theta) * h_r
    return h_d + H @ reflected


def matched_filter(h_eff: np.ndarray) -> np.ndarray:
    """匹配滤波波束 w = h_eff/‖h_eff‖；零信道退化为第一根天线"""
    norms = np.linalg.norm(h_eff, axis=-1, keepdims=True)
    w = np.zeros_like(h_eff)
    w[..., 0] = 1.0
    nonzero = norms[..., 0] > 0.0
    w[nonzero] = h_eff[nonzero] / norms[nonzero]
    return w


def draw_channels(cfg: SystemConfig, rng: np.random.Generator) -> ChannelRealization:
    """
    抽取一次完整的信道实现。

    抽样顺序与各次抽样的规模只由 cfg 决定（h_d → h_r → H → θ），
    因此同一随机流在不同攻击模式下得到完全相同的信道。
    ris_enabled=False 时仍然抽取 H 再置零，保持随机流对齐。
    """
    I, M, N = cfg.su_count, cfg.antennas_per_su, cfg.ris_elements
    h_d = complex_gaussian(rng, (I, M))
    h_r = complex_gaussian(rng, (N,))
    H = complex_gaussian(rng, (I, M, N))
    # 取模保证舍入后仍落在 [0, 2π)
    theta = np.mod(rng.uniform(0.0, 2.0 * np.pi, size=N), 2.0 * np.pi)
    if not cfg.ris_enabled:
        H = np.zeros_like(H)

    h_eff = effective_channel(h_d, h_r, H, theta)
    w = matched_filter(h_eff)
    # 匹配滤波下 |wᴴ h_eff|² = ‖h_eff‖²
    gamma = cfg.transmit_power * np.sum(np.abs(h_eff) ** 2, axis=-1) / cfg.noise_variance
    return ChannelRealization(h_d=h_d, h_r=h_r, H=H, theta=theta, w=w, gamma=gamma)
