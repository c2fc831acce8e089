import logging

import numpy as np
from numpy.typing import ArrayLike
from scipy.special import erfc, erfcinv

from ris_css.utils.errors import InvalidArgumentError

logger = logging.getLogger(__name__)

_SQRT2 = np.sqrt(2.0)


def q_function(x: ArrayLike) -> float | np.ndarray:
    """
    标准高斯互补累积分布函数 Q(x) = 0.5·erfc(x/√2)。

    - 标量输入返回 float，数组输入返回同形状 ndarray
    - 非有限输入（nan / ±inf）抛出 InvalidArgumentError
    """
    arr = np.asarray(x, dtype=float)
    if not np.all(np.isfinite(arr)):
        raise InvalidArgumentError(f"Q 函数输入必须为有限实数，当前为 {x}")
    out = 0.5 * erfc(arr / _SQRT2)
    return float(out) if out.ndim == 0 else out


def q_inverse(p: ArrayLike) -> float | np.ndarray:
    """Q 函数的反函数：Q⁻¹(p) = √2·erfcinv(2p)，要求 0 < p < 1"""
    arr = np.asarray(p, dtype=float)
    if not np.all((arr > 0.0) & (arr < 1.0)):
        raise InvalidArgumentError(f"Q⁻¹ 的输入必须位于 (0,1)，当前为 {p}")
    out = _SQRT2 * erfcinv(2.0 * arr)
    return float(out) if out.ndim == 0 else out
