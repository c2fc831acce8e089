"""结果输出：CSV、JSON 镜像、gnuplot 脚本、攻击排名表"""

import csv
import io
import logging
import traceback
from pathlib import Path
from typing import Any, Literal

from pydantic import TypeAdapter
from tabulate import tabulate

from ris_css.harness.metrics import ResultRow

logger = logging.getLogger(__name__)

CSV_HEADER = (
    "sweep_value",
    "ber",
    "mean_abs_llr",
    "mi_bits",
    "trials",
    "errors",
    "n00",
    "n01",
    "n10",
    "n11",
)

_rows_adapter = TypeAdapter(list[ResultRow])


def _cell(value: Any) -> str:
    if value is None:
        return ""
    if isinstance(value, float):
        # repr 保证往返精确，且与平台无关
        return repr(value)
    return str(value)


def rows_to_csv(rows: list[ResultRow]) -> str:
    buf = io.StringIO()
    writer = csv.DictWriter(buf, fieldnames=list(CSV_HEADER), lineterminator="\n")
    writer.writeheader()
    for row in rows:
        data = row.model_dump(include=set(CSV_HEADER))
        writer.writerow({k: _cell(data[k]) for k in CSV_HEADER})
    return buf.getvalue()


def rows_to_json(rows: list[ResultRow]) -> str:
    """JSON 镜像，包含 CSV 之外的诊断字段"""
    return _rows_adapter.dump_json(rows, indent=2).decode("utf-8") + "\n"


def gnuplot_script(csv_name: str, axis: str = "sweep_value") -> str:
    """BER（对数坐标）与 MI 随扫描值变化的 gnuplot 脚本"""
    stem = Path(csv_name).stem
    return "\n".join(
        [
            f"# {csv_name}",
            "set datafile separator ','",
            "set key autotitle columnhead",
            "set terminal pngcairo size 1200,480",
            f"set output '{stem}.png'",
            "set multiplot layout 1,2",
            f"set xlabel '{axis}'",
            "set ylabel 'BER'",
            "set logscale y",
            "set grid",
            f"plot '{csv_name}' using 1:2 with linespoints title 'BER'",
            "unset logscale y",
            "set ylabel 'MI (bits)'",
            "set yrange [0:1]",
            f"plot '{csv_name}' using 1:4 with linespoints title 'MI'",
            "unset multiplot",
            "",
        ]
    )


def write_outputs(
    rows: list[ResultRow], out_path: Path | str, axis: str = "sweep_value", json_mirror: bool = True
) -> dict[str, str]:
    """
    写出 CSV，以及同名的 .json 镜像与 .gp 脚本。

    返回:
        {"csv": ..., "json": ..., "gp": ...} 各输出文件路径
    """
    csv_path = Path(out_path)
    try:
        csv_path.parent.mkdir(parents=True, exist_ok=True)
        csv_path.write_text(rows_to_csv(rows), encoding="utf-8", newline="")
        written = {"csv": str(csv_path)}
        if json_mirror:
            json_path = csv_path.with_suffix(".json")
            json_path.write_text(rows_to_json(rows), encoding="utf-8", newline="")
            written["json"] = str(json_path)
        gp_path = csv_path.with_suffix(".gp")
        gp_path.write_text(gnuplot_script(csv_path.name, axis), encoding="utf-8", newline="")
        written["gp"] = str(gp_path)
        logger.info(f"结果已写出: {written}")
        return written
    except Exception as e:
        logger.debug(traceback.format_exc())
        logger.error(f"写出结果失败: {e}")
        raise


def format_table(
    records: list[dict[str, Any]], fmt: Literal["table", "csv"] = "table"
) -> str:
    """把字典列表渲染为 orgtbl 表格或 CSV"""
    if not records:
        return ""
    headers = list(records[0].keys())
    if fmt == "csv":
        buf = io.StringIO()
        writer = csv.DictWriter(buf, fieldnames=headers, lineterminator="\n")
        writer.writeheader()
        for r in records:
            writer.writerow({k: _cell(r[k]) for k in headers})
        return buf.getvalue()
    return tabulate([[r[k] for k in headers] for r in records], headers=headers, tablefmt="orgtbl")
