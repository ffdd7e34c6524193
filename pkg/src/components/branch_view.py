"""分支视图：运行分解、打印汇总表并写出结果文件"""
from pathlib import Path

from src.lib.branching import branch
from src.lib.errors import GenericityError
from src.lib.export import branching_to_dataframe, write_branching
from src.lib.i18n import t
from src.lib.uqsl3rep import build_rep


def default_output(config):
    w = config.weight
    return Path(f"branching_{w.lambda1}_{w.lambda2}.{config.fmt}")


def run_branch(config):
    try:
        result = branch(build_rep(config.weight), config.params)
    except GenericityError as exc:
        return {"error": t("genericity_refused").format(s=exc.witness), "witness": exc.witness, "exit_code": 3}
    return {"result": result}


def render_branch_view(config):
    outcome = run_branch(config)
    if "error" in outcome:
        print(f"{t('error')}: {outcome['error']}")
        return outcome["exit_code"]
    result = outcome["result"]
    df = branching_to_dataframe(result)
    print("=" * 60)
    print(f"{t('branch_title')}  λ={result.weight}  c1={result.params.c1}  c2={result.params.c2}")
    print("=" * 60)
    print(df.to_string(index=False))
    print(f"{t('components')}: {len(result.components)}  {t('dim_sum')}: {int(df['dim'].sum())}")

    out = config.out or default_output(config)
    try:
        path = write_branching(result, out, config.fmt, config.force)
    except FileExistsError as exc:
        print(f"{t('error')}: {t('file_exists')}{exc}")
        return 2
    print(f"{t('written_to')}{path}")

    if not result.passed:
        failure = result.report.first_failure()
        print(f"{t('failed')} {t('first_failure')}: {failure.name} {failure.detail}")
        return 1
    print(t("passed"))
    return 0
