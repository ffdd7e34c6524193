"""导出视图：把 V_λ 的基、范数与生成元矩阵写成 JSON"""
from pathlib import Path

from src.lib.export import write_rep_json
from src.lib.i18n import t
from src.lib.uqsl3rep import build_rep


def render_export_view(config):
    w = config.weight
    out = config.out or Path(f"rep_{w.lambda1}_{w.lambda2}.json")
    try:
        path = write_rep_json(build_rep(w), out, config.force)
    except FileExistsError as exc:
        print(f"{t('error')}: {t('file_exists')}{exc}")
        return 2
    print(f"{t('written_to')}{path}")
    return 0
