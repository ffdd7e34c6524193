"""检验视图：汇总全部恒等式检验，任何一条失败则退出码为 1"""
import logging

import pandas as pd

from src.lib.branching import branch, degenerate_demo, krawtchouk_parameter
from src.lib.coideal import (
    abstract_irrep, check_genericity, coideal_matrices, compare_explicit_C1, verify_abstract_model,
    verify_coideal_relations, verify_unitarizable,
)
from src.lib.exactq import q_pow
from src.lib.export import write_report
from src.lib.i18n import t
from src.lib.krawtchouk import consistency_table
from src.lib.report import Report
from src.lib.rep_checks import verify_defining_relations, verify_lemma_relations, verify_norms
from src.lib.uqsl3rep import build_rep

logger = logging.getLogger(__name__)

# 引理与范数检验只对较小的 λ 运行
LEMMA_MAX = 3
UNITARY_MAX_N = 5

# 报告条目名前的 "[λ] " 前缀
LAMBDA_PREFIX = r"^\[[^\]]*\] "


def inject_fault(rep):
    """把 K1 换成 q·K1，使 K1K1^-1 = 1 失败"""
    return rep.with_generator("K1", rep.gen("K1").scale(q_pow(1)))


def verify_weight(w, params, q0s, fault=False):
    rep = build_rep(w)
    if fault:
        rep = inject_fault(rep)
    report = Report(f"λ={w}")
    report.extend(verify_defining_relations(rep), prefix=f"[{w}] ")
    if w.lambda1 <= LEMMA_MAX and w.lambda2 <= LEMMA_MAX:
        report.extend(verify_lemma_relations(rep), prefix=f"[{w}] ")
        report.extend(verify_norms(rep, tuple(q0s)), prefix=f"[{w}] ")

    ops = coideal_matrices(rep, params)
    report.extend(verify_coideal_relations(ops), prefix=f"[{w}] ")
    if (w.lambda1, w.lambda2) == (1, 0):
        report.extend(compare_explicit_C1(ops), prefix=f"[{w}] ")
        report.extend(degenerate_demo(rep, params.c1), prefix=f"[{w}] ")

    for i in range(w.lambda1 + 1):
        c = krawtchouk_parameter(w, params, i)
        rows = consistency_table(c, w.lambda2)
        bad = [(l, x) for l, x, ok in rows if ok is False]
        report.add(f"[{w}] i={i} dual q-Krawtchouk routes agree", not bad, f"(l, x) = {bad[0]}" if bad else "")

    if not check_genericity(params, w).passed:
        report.add(f"[{w}] branching", True, "skipped: parameters not generic", informational=True)
        return report
    result = branch(rep, params, ops)
    report.extend(result.report, prefix=f"[{w}] ")
    labels = sorted({(c.kappa_exponent, c.n) for c in result.components})
    for kappa_exp, n in labels:
        irrep = abstract_irrep(q_pow(kappa_exp), n, params)
        report.extend(verify_abstract_model(irrep), prefix=f"[{w}] ")
        if params.unitary_real and n <= UNITARY_MAX_N:
            report.extend(verify_unitarizable(q_pow(kappa_exp), n, params, tuple(q0s)), prefix=f"[{w}] ")
    return report


def run_verify(config):
    report = Report(t("verify_title"))
    for w in config.weights():
        logger.info(f"检验 λ={w}")
        report.extend(verify_weight(w, config.params, config.q0s, config.inject_fault))
    return {"report": report}


def informational_summary(report):
    """未通过的参考条目按检验名（去掉 [λ] 前缀）合并，每名一行并计数"""
    df = report.to_dataframe()
    mask = df["informational"].astype(bool) & ~df["passed"].astype(bool)
    df = df[mask].copy()
    if df.empty:
        return pd.DataFrame(columns=["check", "count", "detail"])
    df["check"] = df["check"].str.replace(LAMBDA_PREFIX, "", regex=True)
    return (df.groupby("check", sort=False)
              .agg(count=("detail", "size"), detail=("detail", "first"))
              .reset_index())


def render_verify_view(config):
    report = run_verify(config)["report"]
    informational = informational_summary(report)
    print("=" * 60)
    print(t("verify_title"))
    print("=" * 60)
    print(f"{t('total_checks')}: {len(report.results)}")
    if not informational.empty:
        print(f"{t('informational')}:")
        for row in informational.itertuples(index=False):
            print(f"  - {row.check} (x{row.count}): {row.detail}")
    if config.out is not None:
        write_report(report, config.out, config.fmt, config.force)
        print(f"{t('written_to')}{config.out}")
    failure = report.first_failure()
    if failure is not None:
        print(f"{t('failed')} {t('first_failure')}: {failure.name} {failure.detail}")
        return 1
    print(t("passed"))
    return 0
