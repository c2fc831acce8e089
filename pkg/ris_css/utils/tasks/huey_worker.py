import logging
import subprocess

logger = logging.getLogger(__name__)

HUEY_APP = "ris_css.utils.tasks.sweep_tasks.huey"

# 全局变量：跟踪消费者进程
_consumer_process = None


def start_huey_consumer_via_command(workers: int = 1) -> bool:
    """启动 Huey 消费者（命令行方式，后台运行）；返回本次是否新启动了进程"""
    global _consumer_process
    if _consumer_process is not None and _consumer_process.poll() is None:
        logger.info("Huey 消费者已在运行，无需重新启动")
        return False
    try:
        cmd = ["huey_consumer", HUEY_APP, "-w", str(max(1, workers))]
        _consumer_process = subprocess.Popen(cmd, stdout=subprocess.PIPE, stderr=subprocess.PIPE)
        logger.info("Huey 消费者已在后台运行，如果需要关闭，请手动终止进程")
        return True
    except Exception as e:
        logger.error(f"启动消费者失败: {e}")
        return False
