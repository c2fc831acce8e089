"""
拜占庭节点行为：恶意节点指派、本地判决篡改、最优攻击策略选择。

最优策略选择逻辑：
- α ≤ 0.5：小规模攻击，最优为 AF（始终翻转），p01 = p10 = 1
- α > 0.5：大规模攻击，任意满足 α(p01+p10) = 1 的策略都会使 FC 失明；
  默认取对称点 p01 = p10 = 1/(2α)
"""

import logging
from collections.abc import Iterable

import numpy as np
from numpy.typing import ArrayLike

from ris_css.byzantine.attack_profile import AttackProfile, NamedAttack
from ris_css.utils.errors import InvalidArgumentError

logger = logging.getLogger(__name__)


def compromised_mask(
    profile: AttackProfile, su_count: int, rng: np.random.Generator
) -> np.ndarray:
    """恶意节点布尔掩码；两种模式的随机数消耗量只由 su_count 决定"""
    if profile.assignment_mode == "fixed_fraction":
        order = rng.permutation(su_count)
        # Python round 为银行家舍入
        k = round(profile.alpha * su_count)
        mask = np.zeros(su_count, dtype=bool)
        mask[order[:k]] = True
        return mask
    return rng.random(su_count) < profile.alpha


def assign_compromised(
    profile: AttackProfile, su_count: int, rng: np.random.Generator
) -> frozenset[int]:
    """返回恶意 SU 下标集合"""
    if not 0.0 <= profile.alpha <= 1.0:
        raise InvalidArgumentError(f"α 必须位于 [0,1]，当前为 {profile.alpha}")
    return frozenset(int(i) for i in np.flatnonzero(compromised_mask(profile, su_count, rng)))


def _as_mask(compromised: Iterable[int] | np.ndarray, size: int) -> np.ndarray:
    if isinstance(compromised, np.ndarray) and compromised.dtype == bool:
        return compromised
    mask = np.zeros(size, dtype=bool)
    idx = list(compromised)
    if idx:
        mask[idx] = True
    return mask


def apply_attack(
    x: ArrayLike,
    compromised: Iterable[int] | np.ndarray,
    profile: AttackProfile,
    rng: np.random.Generator,
) -> np.ndarray:
    """
    篡改本地判决：诚实节点 u_i = x_i；恶意节点 1→0 以概率 p01、0→1 以概率 p10 翻转。

    每次调用固定抽取 len(x) 个均匀数，与攻击模式无关。
    """
    x = np.asarray(x, dtype=np.int8)
    if np.any((x != 0) & (x != 1)):
        raise InvalidArgumentError("本地判决只能为 0 或 1")
    mask = _as_mask(compromised, x.size)
    draws = rng.random(x.size)
    flip_prob = np.where(x == 1, profile.p01, profile.p10)
    flip = mask & (draws < flip_prob)
    return np.where(flip, 1 - x, x).astype(np.int8)


def optimal_attack(alpha: float) -> NamedAttack:
    """按恶意节点比例选择最优攻击"""
    if not 0.0 <= alpha <= 1.0:
        raise InvalidArgumentError(f"α 必须位于 [0,1]，当前为 {alpha}")
    if alpha <= 0.5:
        return NamedAttack.build("AF", alpha)
    flip = 1.0 / (2.0 * alpha)
    return NamedAttack.build("RD", alpha, p01=flip, p10=flip)


def is_blinding(profile: AttackProfile, tol: float = 1e-12) -> bool:
    """π01 + π10 = 1 时 FC 失明"""
    if tol < 0.0:
        raise InvalidArgumentError(f"容差必须非负，当前为 {tol}")
    return abs(profile.pi01 + profile.pi10 - 1.0) <= tol
