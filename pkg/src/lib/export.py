"""
结果导出：分支结果（json / csv / xlsx）与表示空间 V_λ 的 JSON 往返
所有标量均以规范文本形式写出
"""
import json
import logging
from pathlib import Path

import pandas as pd
from openpyxl.utils import get_column_letter

from src.lib.errors import ParseError
from src.lib.exactq import parse_qscalar
from src.lib.linalg import QMatrix
from src.lib.uqsl3rep import GENERATORS, BasisIndex, RepSpace, Weight

logger = logging.getLogger(__name__)

SCHEMA_VERSION = 1

# JSON 中每个分量的 checks 字段
JSON_CHECKS = ("b1_kernel", "c1_eigen", "bj_match", "k_weights")


def _prepare(path, force):
    path = Path(path)
    if path.exists() and not force:
        raise FileExistsError(str(path))
    path.parent.mkdir(parents=True, exist_ok=True)
    return path


# ==================== 分支结果 ====================

def branching_to_dict(result):
    w = result.weight
    return {
        "schema": SCHEMA_VERSION,
        "lambda": [w.lambda1, w.lambda2],
        "c1": result.params.c1.to_text(),
        "c2": result.params.c2.to_text(),
        "components": [
            {
                "i": c.i,
                "x": c.x,
                "kappa_exp": c.kappa_exponent,
                "dim": c.dim,
                "eta1": c.hw.eta1.to_text(),
                "hw_ambient": [x.to_text() for x in c.hw.coords_ambient.to_list()],
                "checks": {name: bool(c.checks[name]) for name in JSON_CHECKS},
            }
            for c in result.components
        ],
        "global_checks": {name: bool(value) for name, value in result.global_checks.items()},
    }


def branching_to_dataframe(result):
    """每个分量一行：i, x, kappa_exp, dim, 全部检验是否通过"""
    return pd.DataFrame(
        [{"i": c.i, "x": c.x, "kappa_exp": c.kappa_exponent, "dim": c.dim, "passed": c.passed}
         for c in result.components],
        columns=["i", "x", "kappa_exp", "dim", "passed"],
    )


def autosize_columns(worksheet, df):
    """按内容调整列宽"""
    for idx, col in enumerate(df.columns, 1):
        lengths = df[col].astype(str).apply(len)
        max_length = max(lengths.max() if len(lengths) else 0, len(str(col)))
        worksheet.column_dimensions[get_column_letter(idx)].width = max_length + 2


def write_xlsx(path, sheets):
    """sheets: {工作表名: DataFrame}"""
    with pd.ExcelWriter(path, engine="openpyxl") as writer:
        for name, df in sheets.items():
            df.to_excel(writer, index=False, sheet_name=name)
            autosize_columns(writer.sheets[name], df)


def write_branching(result, path, fmt="json", force=False):
    path = _prepare(path, force)
    if fmt == "json":
        path.write_text(json.dumps(branching_to_dict(result), ensure_ascii=False, indent=2), encoding="utf-8")
    elif fmt == "csv":
        branching_to_dataframe(result).to_csv(path, index=False, encoding="utf-8-sig")
    elif fmt == "xlsx":
        write_xlsx(path, {"components": branching_to_dataframe(result), "checks": result.report.to_dataframe()})
    else:
        raise ValueError(f"unknown format: {fmt}")
    logger.info(f"分支结果已写入 {path} ({fmt})")
    return path


def write_report(report, path, fmt="json", force=False):
    path = _prepare(path, force)
    if fmt == "json":
        path.write_text(json.dumps(report.to_dict(), ensure_ascii=False, indent=2), encoding="utf-8")
    elif fmt == "csv":
        report.to_dataframe().to_csv(path, index=False, encoding="utf-8-sig")
    else:
        write_xlsx(path, {"checks": report.to_dataframe()})
    return path


# ==================== V_λ 的 JSON ====================

def _matrix_entries(M):
    return [[r, c, v.to_text()] for (r, c), v in sorted(M.entries.items())]


def rep_to_dict(rep):
    w = rep.weight
    return {
        "schema": SCHEMA_VERSION,
        "lambda": [w.lambda1, w.lambda2],
        "dim": rep.dim,
        "basis": [list(idx.as_tuple()) for idx in rep.basis],
        "norms": [h.to_text() for h in rep.norms],
        "generators": {g: _matrix_entries(rep.gen(g)) for g in GENERATORS},
    }


def write_rep_json(rep, path, force=False):
    path = _prepare(path, force)
    path.write_text(json.dumps(rep_to_dict(rep), ensure_ascii=False, indent=2), encoding="utf-8")
    logger.info(f"V_λ λ={rep.weight} 已写入 {path}")
    return path


def rep_from_dict(data):
    if data.get("schema") != SCHEMA_VERSION:
        raise ParseError(f"不支持的 schema: {data.get('schema')!r}")
    try:
        w = Weight(*data["lambda"])
        basis = tuple(BasisIndex(*b) for b in data["basis"])
        n = len(basis)
        norms = tuple(parse_qscalar(h) for h in data["norms"])
        gens = {
            g: QMatrix(n, n, {(r, c): parse_qscalar(v) for r, c, v in data["generators"][g]})
            for g in GENERATORS
        }
    except (KeyError, TypeError) as exc:
        raise ParseError(f"V_λ JSON 缺少字段: {exc}") from exc
    index_of = {idx: pos for pos, idx in enumerate(basis)}
    return RepSpace(w, basis, index_of, norms, gens)


def load_rep_json(path):
    return rep_from_dict(json.loads(Path(path).read_text(encoding="utf-8")))
