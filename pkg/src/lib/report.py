"""检验报告：每个恒等式一条记录，失败时记录第一个出错的矩阵元素"""
from dataclasses import dataclass, field

import pandas as pd


@dataclass
class CheckResult:
    name: str
    passed: bool
    detail: str = ""
    # 仅供参考的条目（例如印刷公式的差异）不影响总体结论
    informational: bool = False


@dataclass
class Report:
    title: str
    results: list = field(default_factory=list)

    def add(self, name, passed, detail="", informational=False):
        self.results.append(CheckResult(name, bool(passed), detail, informational))
        return passed

    def check_zero(self, name, M, informational=False):
        """矩阵应为零矩阵"""
        entry = M.first_nonzero()
        if entry is None:
            return self.add(name, True, informational=informational)
        r, c, v = entry
        return self.add(name, False, f"({r}, {c}) = {v}", informational)

    def check_equal(self, name, lhs, rhs, informational=False):
        return self.check_zero(name, lhs - rhs, informational)

    def check_vector_zero(self, name, v, informational=False):
        if v.is_zero():
            return self.add(name, True, informational=informational)
        i = v.support()[0]
        return self.add(name, False, f"[{i}] = {v[i]}", informational)

    def check_scalar(self, name, actual, expected, informational=False):
        if actual == expected:
            return self.add(name, True, informational=informational)
        return self.add(name, False, f"{actual} != {expected}", informational)

    def extend(self, other, prefix=""):
        for r in other.results:
            self.results.append(CheckResult(prefix + r.name, r.passed, r.detail, r.informational))
        return self

    @property
    def passed(self):
        return all(r.passed for r in self.results if not r.informational)

    def failures(self):
        return [r for r in self.results if not r.passed and not r.informational]

    def first_failure(self):
        failed = self.failures()
        return failed[0] if failed else None

    def get(self, name):
        for r in self.results:
            if r.name == name:
                return r
        raise KeyError(name)

    def to_dataframe(self):
        return pd.DataFrame(
            [{"check": r.name, "passed": r.passed, "informational": r.informational, "detail": r.detail}
             for r in self.results],
            columns=["check", "passed", "informational", "detail"],
        )

    def to_dict(self):
        return {
            "title": self.title,
            "passed": self.passed,
            "checks": [
                {"name": r.name, "passed": r.passed, "informational": r.informational, "detail": r.detail}
                for r in self.results
            ],
        }
