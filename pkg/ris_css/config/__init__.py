from dotenv import load_dotenv

from ris_css.config.paths_config import (
    ENV_PATH,
    EXPERIMENT_CONFIG_PATH,
    RESULTS_DIR,
    bootstrap_paths,
)
from ris_css.config.logging_config import setup_logging


def init_app(console: bool = False):
    """应用初始化入口：路径/文件自举、加载 .env、日志装配、加载默认实验配置"""
    bootstrap_paths()
    load_dotenv(ENV_PATH)
    setup_logging(console=console)
    import logging

    from ris_css.harness.experiment import ExperimentSpec

    logger = logging.getLogger(__name__)

    logger.info(
        "ris-css-byzantine v0.1.0 启动 - RIS 增强协作频谱感知在拜占庭攻击下的判决融合仿真。"
    )
    try:
        return ExperimentSpec.load(EXPERIMENT_CONFIG_PATH)
    except Exception as e:
        # 配置文件损坏时回退到内置默认值，不覆盖用户文件
        logger.error(f"加载默认实验配置失败，使用内置默认值: {e}")
        return ExperimentSpec()


__all__ = [
    "ENV_PATH",
    "EXPERIMENT_CONFIG_PATH",
    "RESULTS_DIR",
    "init_app",
    "setup_logging",
]
