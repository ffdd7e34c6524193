"""维数视图：dim(V_λ) 与各子空间 U_i 的大小"""
import pandas as pd

from src.lib.branching import layer_subspace
from src.lib.i18n import t
from src.lib.uqsl3rep import build_rep


def run_dim(config):
    rep = build_rep(config.weight)
    layers = [{"i": i, "size": layer_subspace(rep, i).size} for i in range(config.weight.lambda1 + 1)]
    return {"lambda": str(config.weight), "dimension": rep.dim, "layers": layers}


def render_dim_view(config):
    result = run_dim(config)
    print("=" * 60)
    print(f"{t('dim_title')}  λ={result['lambda']}")
    print("=" * 60)
    print(f"{t('dimension')}: {result['dimension']}")
    df = pd.DataFrame(result["layers"]).rename(columns={"i": t("layer"), "size": t("size")})
    print(df.to_string(index=False))
    return 0
