"""
测试命令行入口：四个命令的退出码、输出文件与运行配置
"""
import json

import pandas as pd
import pytest

from app import main
from src.components.verify_view import informational_summary
from src.lib.config import RunConfig, parse_q0
from src.lib.errors import ParseError, PreconditionError
from src.lib.exactq import q_pow
from src.lib.export import load_rep_json
from src.lib.i18n import TEXTS, get_lang, set_lang, t
from src.lib.report import Report
from src.lib.uqsl3rep import GENERATORS, Weight, build_rep, norm_H


@pytest.fixture(autouse=True)
def chinese():
    set_lang("zh")
    yield
    set_lang("zh")


def test_dim(capsys):
    assert main(["dim", "--lambda", "1", "0"]) == 0
    out = capsys.readouterr().out
    assert "3" in out


def test_dim_rejects_negative_weight():
    assert main(["dim", "--lambda", "-1", "0"]) == 2


@pytest.mark.parametrize("fmt", ["json", "csv", "xlsx"])
def test_branch_writes_file(tmp_path, fmt):
    out = tmp_path / f"branch.{fmt}"
    assert main(["branch", "--lambda", "1", "0", "--format", fmt, "--out", str(out)]) == 0
    assert out.exists()
    if fmt == "json":
        data = json.loads(out.read_text(encoding="utf-8"))
        assert data["lambda"] == [1, 0]
        assert sorted(c["dim"] for c in data["components"]) == [1, 2]
        assert all(all(c["checks"].values()) for c in data["components"])
        assert data["global_checks"] == {"dim_sum": True, "span_rank": True}
    elif fmt == "csv":
        df = pd.read_csv(out)
        assert list(df.columns) == ["i", "x", "kappa_exp", "dim", "passed"]
        assert df["dim"].sum() == 3
    else:
        df = pd.read_excel(out, sheet_name="components")
        assert len(df) == 2


def test_branch_refuses_existing_file(tmp_path):
    out = tmp_path / "branch.json"
    out.write_text("{}", encoding="utf-8")
    assert main(["branch", "--lambda", "1", "0", "--out", str(out)]) == 2
    assert out.read_text(encoding="utf-8") == "{}"
    assert main(["branch", "--lambda", "1", "0", "--out", str(out), "--force"]) == 0


def test_branch_non_generic(tmp_path, capsys):
    out = tmp_path / "branch.json"
    code = main(["branch", "--lambda", "1", "0", "--c1", "1", "--c2=-q^3", "--out", str(out)])
    assert code == 3
    assert not out.exists()
    assert "-q^3" in capsys.readouterr().out


def test_branch_bad_parameter_text():
    assert main(["branch", "--lambda", "1", "0", "--c1", "q^^2"]) == 2


def test_verify_small_range():
    assert main(["verify", "--max-sum", "2"]) == 0


def test_verify_detects_fault(capsys):
    assert main(["verify", "--lambda", "1", "0", "--inject-fault"]) == 1


def test_verify_writes_report(tmp_path):
    out = tmp_path / "report.csv"
    assert main(["verify", "--lambda", "0", "1", "--format", "csv", "--out", str(out)]) == 0
    df = pd.read_csv(out)
    assert len(df) > 0


def test_export_rep_round_trip(tmp_path):
    out = tmp_path / "rep.json"
    assert main(["export-rep", "--lambda", "1", "0", "--out", str(out)]) == 0
    loaded = load_rep_json(out)
    rep = build_rep(Weight(1, 0))
    assert loaded.weight == rep.weight
    assert loaded.basis == rep.basis
    for g in GENERATORS:
        assert loaded.gen(g) == rep.gen(g)
    assert list(loaded.norms) == [norm_H(rep.weight, idx) for idx in rep.basis]
    assert loaded.norms[:2] == (q_pow(0), q_pow(1))


def test_export_rep_existing_file(tmp_path):
    out = tmp_path / "rep.json"
    out.write_text("{}", encoding="utf-8")
    assert main(["export-rep", "--lambda", "1", "0", "--out", str(out)]) == 2


def test_run_config_defaults():
    config = RunConfig("branch")
    assert config.weight == Weight(1, 0)
    assert config.params.c1 == q_pow(2)
    assert config.weights() == [Weight(1, 0)]


def test_run_config_weight_range():
    config = RunConfig("verify", max_sum=1)
    assert config.weights() == [Weight(0, 0), Weight(1, 0), Weight(0, 1)]


@pytest.mark.parametrize("changes", [{"command": "plot"}, {"fmt": "pdf"}, {"lang": "fr"}, {"c1": "0"}, {"max_sum": -1}])
def test_run_config_rejects(changes):
    kwargs = {"command": "dim", **changes}
    with pytest.raises(PreconditionError):
        RunConfig(**kwargs)


def test_parse_q0():
    assert str(parse_q0("1/3")) == "1/3"
    with pytest.raises(PreconditionError):
        parse_q0("2")
    with pytest.raises(ParseError):
        parse_q0("half")


def test_q0_from_environment(monkeypatch):
    monkeypatch.setenv("QSPB_Q0", "1/3,2/5")
    assert [str(x) for x in RunConfig("dim").q0s] == ["1/3", "2/5"]


def test_translation_fallback():
    set_lang("mn")
    assert get_lang() == "mn"
    assert t("passed") == TEXTS["passed"]["mn"]
    assert t("no_such_key") == "no_such_key"
    with pytest.raises(ValueError):
        set_lang("fr")


def test_all_texts_have_three_languages():
    for key, texts in TEXTS.items():
        assert set(texts) == {"zh", "mn", "en"}, key


def test_lang_flag(capsys):
    assert main(["dim", "--lambda", "0", "0", "--lang", "en"]) == 0
    assert "Dimension of V_λ" in capsys.readouterr().out


def test_informational_summary_merges_weights():
    report = Report("verify")
    report.add("[(1, 0)] printed norm formula", False, "k=1", informational=True)
    report.add("[(2, 0)] printed norm formula", False, "k=2", informational=True)
    report.add("[(2, 0)] gamma[1,0] printed label", False, "l = n+1", informational=True)
    report.add("[(1, 0)] star relations", True, informational=True)
    report.add("[(1, 0)] K1K1^-1=1", False)
    summary = informational_summary(report)
    assert list(summary["check"]) == ["printed norm formula", "gamma[1,0] printed label"]
    assert list(summary["count"]) == [2, 1]
    assert summary["detail"].iloc[0] == "k=1"


def test_informational_summary_empty():
    report = Report("verify")
    report.add("[(0, 0)] K1K1^-1=1", True)
    assert informational_summary(report).empty


def test_verify_lists_each_note_once(capsys):
    assert main(["verify", "--max-sum", "2"]) == 0
    notes = [line for line in capsys.readouterr().out.splitlines() if line.startswith("  - ")]
    names = [line.split(" (x")[0] for line in notes]
    assert len(names) == len(set(names))
    assert not any(name.startswith("  - [") for name in names)


@pytest.mark.slow
def test_verify_weights_up_to_6():
    assert main(["verify", "--max-sum", "6"]) == 0
