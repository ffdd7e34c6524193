"""
QSPBranch - U_q(su(3)) 不可约表示在余理想子代数上的分支规则（精确计算）
包含 维数/分支/检验/导出 四个命令
支持中文/蒙古语/英语切换

退出码：0 成功，1 检验失败，2 用法错误，3 参数不满足通有性条件
"""
import argparse
import logging
import sys
from pathlib import Path

# 添加项目根目录到 Python 路径
sys.path.insert(0, str(Path(__file__).parent))

from src.components.branch_view import render_branch_view
from src.components.dim_view import render_dim_view
from src.components.export_view import render_export_view
from src.components.verify_view import render_verify_view
from src.lib.coideal import DEFAULT_C1, DEFAULT_C2
from src.lib.config import COMMANDS, FORMATS, LANGS, RunConfig
from src.lib.errors import GenericityError, InternalCheckError, QSPBError
from src.lib.i18n import set_lang, t

EXIT_CHECK_FAILED = 1
EXIT_USAGE = 2
EXIT_NOT_GENERIC = 3

VIEWS = {
    "dim": render_dim_view,
    "branch": render_branch_view,
    "verify": render_verify_view,
    "export-rep": render_export_view,
}

LOG_FORMAT = "%(asctime)s %(levelname)s %(name)s: %(message)s"


def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--lambda", dest="lam", nargs=2, type=int, metavar=("L1", "L2"),
                        help="最高权 λ = (λ1, λ2)，默认 (1, 0)")
    common.add_argument("--c1", default=DEFAULT_C1, help=f"参数 c1（q 的有理函数），默认 {DEFAULT_C1}")
    common.add_argument("--c2", default=DEFAULT_C2, help=f"参数 c2，默认 {DEFAULT_C2}")
    common.add_argument("--q0", action="append", help="数值检验点，可重复，默认 1/2")
    common.add_argument("--format", choices=FORMATS, default="json")
    common.add_argument("--out", type=Path)
    common.add_argument("--force", action="store_true", help="覆盖已存在的输出文件")
    common.add_argument("--lang", choices=LANGS)
    common.add_argument("-v", "--verbose", action="count", default=0)
    common.add_argument("--max-sum", type=int, help="verify：检验全部 λ1+λ2 ≤ MAX_SUM")
    common.add_argument("--inject-fault", action="store_true", help="verify：故意破坏一个生成元矩阵")

    parser = argparse.ArgumentParser(prog="qspbranch", description="U_q(su(3)) branching engine")
    sub = parser.add_subparsers(dest="command", required=True)
    for name in COMMANDS:
        sub.add_parser(name, parents=[common])
    return parser


def setup_logging(verbosity):
    level = logging.WARNING
    if verbosity == 1:
        level = logging.INFO
    elif verbosity >= 2:
        level = logging.DEBUG
    logging.basicConfig(level=level, format=LOG_FORMAT, force=True)


def main(argv=None):
    args = build_parser().parse_args(argv)
    setup_logging(args.verbose)
    try:
        config = RunConfig.from_args(args)
    except (QSPBError, ValueError) as exc:
        print(f"{t('error')}: {exc}", file=sys.stderr)
        return EXIT_USAGE
    set_lang(config.lang)
    try:
        return VIEWS[config.command](config)
    except GenericityError as exc:
        print(f"{t('error')}: {t('genericity_refused').format(s=exc.witness)}", file=sys.stderr)
        return EXIT_NOT_GENERIC
    except InternalCheckError as exc:
        print(f"{t('failed')}: {exc}", file=sys.stderr)
        return EXIT_CHECK_FAILED
    except (QSPBError, ValueError, FileExistsError) as exc:
        print(f"{t('error')}: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
