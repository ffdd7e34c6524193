"""运行配置：命令行参数与环境变量"""
import os
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path

from src.lib.coideal import DEFAULT_C1, DEFAULT_C2, CoidealParams
from src.lib.errors import ParseError, PreconditionError
from src.lib.uqsl3rep import Weight

COMMANDS = ("dim", "branch", "verify", "export-rep")
FORMATS = ("json", "csv", "xlsx")
LANGS = ("zh", "mn", "en")

ENV_LANG = "QSPB_LANG"
ENV_Q0 = "QSPB_Q0"


def default_lang():
    lang = os.environ.get(ENV_LANG, "zh")
    return lang if lang in LANGS else "zh"


def parse_q0(text):
    """解析有理数 q0，要求 0 < q0 < 1"""
    try:
        value = Fraction(str(text).strip())
    except (ValueError, ZeroDivisionError) as exc:
        raise ParseError(f"无法解析 q0: {text!r}") from exc
    if not 0 < value < 1:
        raise PreconditionError(f"q0 必须在 (0, 1) 内: {value}")
    return value


def default_q0s():
    raw = os.environ.get(ENV_Q0)
    if not raw:
        return [Fraction(1, 2)]
    return [parse_q0(part) for part in raw.split(",") if part.strip()]


@dataclass
class RunConfig:
    command: str
    lambda1: int = 1
    lambda2: int = 0
    c1: str = DEFAULT_C1
    c2: str = DEFAULT_C2
    q0s: list = field(default_factory=default_q0s)
    out: Path = None
    fmt: str = "json"
    force: bool = False
    verbosity: int = 0
    lang: str = field(default_factory=default_lang)
    max_sum: int = None
    inject_fault: bool = False

    def __post_init__(self):
        if self.command not in COMMANDS:
            raise PreconditionError(f"未知命令: {self.command}")
        if self.fmt not in FORMATS:
            raise PreconditionError(f"未知格式: {self.fmt}")
        if self.lang not in LANGS:
            raise PreconditionError(f"未知语言: {self.lang}")
        self.weight = Weight(self.lambda1, self.lambda2)
        self.params = CoidealParams.from_text(self.c1, self.c2)
        self.q0s = [parse_q0(x) for x in self.q0s]
        if self.out is not None:
            self.out = Path(self.out)
        if self.max_sum is not None and self.max_sum < 0:
            raise PreconditionError(f"--max-sum 必须非负: {self.max_sum}")

    @classmethod
    def from_args(cls, args):
        lam = args.lam if getattr(args, "lam", None) else (1, 0)
        return cls(
            command=args.command,
            lambda1=lam[0],
            lambda2=lam[1],
            c1=args.c1,
            c2=args.c2,
            q0s=args.q0 or default_q0s(),
            out=args.out,
            fmt=args.format,
            force=args.force,
            verbosity=args.verbose,
            lang=args.lang or default_lang(),
            max_sum=args.max_sum,
            inject_fault=args.inject_fault,
        )

    def weights(self):
        """verify 命令的 λ 范围：给出 --max-sum 时取 λ1+λ2 ≤ max_sum 的全部 λ"""
        if self.max_sum is None:
            return [self.weight]
        return [Weight(a, s - a) for s in range(self.max_sum + 1) for a in range(s, -1, -1)]
