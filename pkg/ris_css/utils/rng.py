"""
基于计数器的逐试验随机流。

每次试验由 (seed, trial_index) 唯一确定；不同用途（假设、信道、感知、节点指派、
篡改翻转、上报信道、平局抛币）各自使用独立的 Philox 计数器区段，互不干扰。
因此：
- 结果与并行进程数、试验执行顺序无关；
- 比较不同攻击模式时，除篡改流外的所有随机数完全共享（公共随机数）。
"""

from enum import IntEnum

import numpy as np

_MASK_64 = (1 << 64) - 1


class StreamId(IntEnum):
    """随机流用途编号（写入 Philox 计数器的第 3 个字）"""

    HYPOTHESIS = 0
    CHANNEL = 1
    SENSING = 2
    ASSIGNMENT = 3
    ATTACK = 4
    REPORT = 5
    TIE = 6


def stream_for(seed: int, trial_index: int, stream: StreamId | int) -> np.random.Generator:
    """返回 (seed, trial_index, stream) 对应的独立 Generator"""
    if trial_index < 0:
        raise ValueError(f"trial_index 必须非负，当前为 {trial_index}")
    # 计数器低两字留给 Philox 自增，高两字编码用途与试验序号
    counter = [0, 0, int(stream), int(trial_index) & _MASK_64]
    return np.random.Generator(np.random.Philox(key=int(seed) & _MASK_64, counter=counter))


class TrialStreams:
    """单次试验的全部命名随机流（按需创建并缓存）"""

    def __init__(self, seed: int, trial_index: int):
        self.seed = int(seed)
        self.trial_index = int(trial_index)
        self._cache: dict[StreamId, np.random.Generator] = {}

    def _get(self, stream: StreamId) -> np.random.Generator:
        gen = self._cache.get(stream)
        if gen is None:
            gen = stream_for(self.seed, self.trial_index, stream)
            self._cache[stream] = gen
        return gen

    @property
    def hypothesis(self) -> np.random.Generator:
        return self._get(StreamId.HYPOTHESIS)

    @property
    def channel(self) -> np.random.Generator:
        return self._get(StreamId.CHANNEL)

    @property
    def sensing(self) -> np.random.Generator:
        return self._get(StreamId.SENSING)

    @property
    def assignment(self) -> np.random.Generator:
        return self._get(StreamId.ASSIGNMENT)

    @property
    def attack(self) -> np.random.Generator:
        return self._get(StreamId.ATTACK)

    @property
    def report(self) -> np.random.Generator:
        return self._get(StreamId.REPORT)

    @property
    def tie(self) -> np.random.Generator:
        return self._get(StreamId.TIE)
