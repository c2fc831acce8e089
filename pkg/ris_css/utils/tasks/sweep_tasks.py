import logging
import os
import tempfile

from huey import SqliteHuey

logger = logging.getLogger(__name__)

# 创建 Huey 实例
huey = SqliteHuey(
    name="sweep_tasks",
    filename=os.path.join(tempfile.gettempdir(), "ris_css_sweep_huey.db"),
)


@huey.task()
def run_sweep_job(spec_json: str, out_path: str) -> dict:
    """异步任务：运行参数扫描并写出 CSV / JSON / gnuplot 结果"""
    from ris_css.harness.estimation import run_sweep
    from ris_css.harness.experiment import ExperimentSpec
    from ris_css.harness.result_writer import write_outputs

    spec = ExperimentSpec.model_validate_json(spec_json)
    rows = run_sweep(spec)
    written = write_outputs(rows, out_path, axis=spec.sweep.axis)
    logger.info(f"后台扫描完成：{len(rows)} 个点，输出 {written['csv']}")
    return written
