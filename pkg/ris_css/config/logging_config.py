# 日志管理
import logging, os, datetime
from logging.handlers import TimedRotatingFileHandler
from ris_css.config.paths_config import LOGS_DIR

is_dev = os.getenv("RIS_CSS_DEV", "1") == "1"  # 是否为开发模式，True表示开发模式，False表示生产模式

# 开发模式格式
dev_format = "%(asctime)s %(levelname)s [%(filename)s:%(lineno)d] %(message)s"
# 生产模式格式
prod_format = "%(asctime)s %(levelname)s %(message)s"


def setup_logging(level: str | None = None, console: bool = False) -> None:
    """日志记录器初始化；level 未指定时读取环境变量 RIS_CSS_LOG_LEVEL"""
    dev = os.getenv("RIS_CSS_DEV", "1" if is_dev else "0") == "1"
    level_name = (level or os.getenv("RIS_CSS_LOG_LEVEL") or "").upper()
    resolved = getattr(logging, level_name, None) if level_name else None
    if not isinstance(resolved, int):
        resolved = logging.DEBUG if dev else logging.INFO

    handlers: list[logging.Handler] = [
        TimedRotatingFileHandler(
            filename=os.path.join(
                LOGS_DIR, datetime.datetime.now().strftime("%Y-%m-%d") + ".log"
            ),
            when="midnight",  # 每天午夜创建一个新的日志文件
            interval=1,  # 间隔1天
            backupCount=365,  # 保留最近365天的日志文件
            encoding="utf-8",
        ),
    ]
    if console:
        handlers.append(logging.StreamHandler())

    logging.basicConfig(
        level=resolved,
        format=dev_format if dev else prod_format,
        datefmt="%Y-%m-%d %H:%M:%S",
        handlers=handlers,
    )

    logging.info(f"日志记录器初始化完成！")
