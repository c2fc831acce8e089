from ris_css.sensing.q_function import q_function, q_inverse
from ris_css.sensing.system_config import SystemConfig
from ris_css.sensing.channel_model import ChannelRealization, draw_channels
from ris_css.sensing.energy_detection import (
    SensorProfile,
    SensingMode,
    calibrate_threshold,
    detection_probabilities,
    exact_local_probabilities,
    local_probabilities,
    sense_all,
    sense_once,
)

__all__ = [
    "q_function",
    "q_inverse",
    "SystemConfig",
    "ChannelRealization",
    "draw_channels",
    "SensorProfile",
    "SensingMode",
    "calibrate_threshold",
    "detection_probabilities",
    "exact_local_probabilities",
    "local_probabilities",
    "sense_all",
    "sense_once",
]
