"""
SU→FC 上报路径：J 跳译码转发中继，每跳等效为一个二元信道 BC(ε0, ε1)。

转移矩阵约定（行：发送比特，列：接收比特）：
    P_j = [[1−ε0, ε0],
           [ε1,   1−ε1]]
串联信道的等效转移矩阵为各跳矩阵按顺序相乘。
"""

import logging
from functools import cached_property, reduce

import numpy as np
from numpy.typing import ArrayLike
from pydantic import BaseModel, Field, computed_field

from ris_css.sensing.q_function import q_function
from ris_css.utils.errors import DomainError, InvalidArgumentError

logger = logging.getLogger(__name__)


class RelayHop(BaseModel):
    """单跳二元信道"""

    eps0: float = Field(ge=0.0, lt=1.0, description="P(收到 1 | 发送 0)")
    eps1: float = Field(ge=0.0, lt=1.0, description="P(收到 0 | 发送 1)")

    @property
    def delta(self) -> float:
        """单跳可靠度 δ = ln((1−ε1)/ε0)；ε0=0 时为 +∞"""
        if self.eps0 == 0.0:
            return float("inf")
        return float(np.log((1.0 - self.eps1) / self.eps0))

    def transition_matrix(self) -> np.ndarray:
        return np.array([[1.0 - self.eps0, self.eps0], [self.eps1, 1.0 - self.eps1]])


def hop_from_snr_db(snr_db: float) -> RelayHop:
    """BPSK 硬判决约定：ε = Q(√(2·snr))，对称信道"""
    snr = 10.0 ** (snr_db / 10.0)
    eps = q_function(np.sqrt(2.0 * snr))
    return RelayHop(eps0=eps, eps1=eps)


def compose_serial(hops: list[RelayHop]) -> RelayHop:
    """按顺序串联各跳，返回精确的等效二元信道"""
    if not hops:
        raise InvalidArgumentError("串联信道至少需要一跳")
    product = reduce(np.matmul, (h.transition_matrix() for h in hops))
    return RelayHop(eps0=float(product[0, 1]), eps1=float(product[1, 0]))


class ReportPath(BaseModel):
    """一条 SU→FC 上报路径"""

    hops: list[RelayHop] = Field(min_length=1, description="按顺序排列的 J 跳")

    @computed_field
    @cached_property
    def eq(self) -> RelayHop:
        """端到端等效信道"""
        return compose_serial(self.hops)

    @computed_field
    @cached_property
    def delta_min(self) -> float:
        """min_j ln((1−ε1_j)/ε0_j)"""
        return min(h.delta for h in self.hops)

    @classmethod
    def from_snr_db(cls, snr_db: list[float]) -> "ReportPath":
        return cls(hops=[hop_from_snr_db(s) for s in snr_db])

    @classmethod
    def symmetric(cls, eps: float, hop_count: int) -> "ReportPath":
        return cls(hops=[RelayHop(eps0=eps, eps1=eps) for _ in range(hop_count)])


# -------- 乘积形式诊断 --------
def product_form_ratio(hops: list[RelayHop]) -> float:
    """
    乘积形式的可靠度比值：
        ½[1+∏(1−2ε_{j,1})] / (1 − ½[1+∏(1−2ε_{j,0})])
    仅对对称跳严格成立；非对称链请以 compose_serial 为准。
    """
    if not hops:
        raise InvalidArgumentError("至少需要一跳")
    for h in hops:
        if h.eps0 == 0.0:
            raise DomainError("存在 ε0 = 0 的跳，比值分母为零")
        if h.eps0 >= 0.5 or h.eps1 >= 0.5:
            raise InvalidArgumentError(f"乘积形式要求各跳 ε < 0.5，当前为 ({h.eps0}, {h.eps1})")
    prod1 = np.prod([1.0 - 2.0 * h.eps1 for h in hops])
    prod0 = np.prod([1.0 - 2.0 * h.eps0 for h in hops])
    return float(0.5 * (1.0 + prod1) / (1.0 - 0.5 * (1.0 + prod0)))


def min_delta_ratio(hops: list[RelayHop]) -> float:
    """
    低信噪比近似 exp(min_j δ_j)。

    单跳时与乘积形式完全一致；多跳时相对误差上界为 2g/(1−g)，g = 1−2ε，
    因此只有各跳 ε ≥ 0.477 时才能保证 10% 以内。
    """
    if any(h.eps0 == 0.0 for h in hops):
        raise DomainError("存在 ε0 = 0 的跳，δ 无定义")
    return float(np.exp(min(h.delta for h in hops)))


# -------- 传输 --------
def transmit(u: int, path: ReportPath, rng: np.random.Generator) -> int:
    """经等效信道传输一个比特"""
    eq = path.eq
    flip_prob = eq.eps1 if u == 1 else eq.eps0
    return int(u) ^ int(rng.random() < flip_prob)


def transmit_many(
    u: ArrayLike, eps0: ArrayLike, eps1: ArrayLike, rng: np.random.Generator
) -> np.ndarray:
    """向量化等效信道传输：每个比特消耗一个均匀数"""
    u = np.asarray(u, dtype=np.int8)
    draws = rng.random(u.shape)
    flip = draws < np.where(u == 1, eps1, eps0)
    return np.where(flip, 1 - u, u).astype(np.int8)


def transmit_hop_by_hop(
    u: ArrayLike, eps0: ArrayLike, eps1: ArrayLike, rng: np.random.Generator
) -> np.ndarray:
    """
    逐跳传输。eps0/eps1 形状为 (支路数, J)，每一跳各消耗一个均匀数；
    中继对收到的比特直接译码转发。
    """
    bits = np.asarray(u, dtype=np.int8).copy()
    e0 = np.atleast_2d(np.asarray(eps0, dtype=float))
    e1 = np.atleast_2d(np.asarray(eps1, dtype=float))
    draws = rng.random(e0.shape)
    for j in range(e0.shape[1]):
        flip = draws[:, j] < np.where(bits == 1, e1[:, j], e0[:, j])
        bits = np.where(flip, 1 - bits, bits).astype(np.int8)
    return bits
