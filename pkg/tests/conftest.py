import numpy as np
import pytest

from ris_css.harness.experiment import ExperimentSpec
from ris_css.sensing.system_config import SystemConfig


def binomial_sigma(p: float, n: int) -> float:
    return float(np.sqrt(max(p * (1.0 - p), 1e-12) / n))


@pytest.fixture
def rng():
    return np.random.default_rng(12345)


@pytest.fixture
def small_system() -> SystemConfig:
    """小规模场景，单元测试用"""
    return SystemConfig(
        su_count=4,
        antennas_per_su=2,
        ris_elements=5,
        hop_count=2,
        sample_count=50,
        transmit_power=0.01,
        seed=7,
    )


@pytest.fixture
def base_spec() -> ExperimentSpec:
    """默认场景参数（I=10, M=6, N=9, J=8），试验数缩小到单元测试规模"""
    return ExperimentSpec(
        trials=2000,
        sequence_length=250,
        workers=1,
        attack={"kind": "none"},
        paths=[{"hop_snr_db": 6.0}],
    )
