"""
生成分支规则汇总表
对 λ1+λ2 ≤ N 的全部 λ 运行分解，每个分量一行，并附上检验结论
用法：python generate_branching_table.py [N] [c1] [c2]
"""
import sys

import pandas as pd

from src.lib.branching import branch
from src.lib.coideal import DEFAULT_C1, DEFAULT_C2, CoidealParams, check_genericity
from src.lib.export import write_xlsx
from src.lib.uqsl3rep import Weight, build_rep

max_sum = int(sys.argv[1]) if len(sys.argv) > 1 else 3
params = CoidealParams.from_text(
    sys.argv[2] if len(sys.argv) > 2 else DEFAULT_C1,
    sys.argv[3] if len(sys.argv) > 3 else DEFAULT_C2,
)

rows = []
skipped = []
for s in range(max_sum + 1):
    for l1 in range(s, -1, -1):
        w = Weight(l1, s - l1)
        check = check_genericity(params, w)
        if not check.passed:
            skipped.append({"λ": str(w), "s": check.witness})
            continue
        result = branch(build_rep(w), params)
        for c in result.components:
            rows.append({
                "λ": str(w),
                "i": c.i,
                "x": c.x,
                "κ 指数": c.kappa_exponent,
                "n": c.n,
                "维数": c.dim,
                "η1": c.hw.eta1.to_text(),
                "检验": "✅" if c.passed else "❌",
            })
        print(f"λ={w}: {len(result.components)} 个分量, 维数 {w.dimension}, {'通过' if result.passed else '失败'}")

result_df = pd.DataFrame(rows)

# 显示结果
print("=" * 100)
print(f"分支规则汇总（λ1+λ2 ≤ {max_sum}, c1={params.c1}, c2={params.c2}）")
print("=" * 100)
print(result_df.drop(columns=["η1"]).to_string(index=False))
print("\n")

sheets = {"分支": result_df}
if skipped:
    sheets["非通有"] = pd.DataFrame(skipped)

# 保存为Excel（带格式）
output_file = f"分支规则汇总_{max_sum}.xlsx"
write_xlsx(output_file, sheets)
print(f"✅ 结果已保存到：{output_file}")

# 也保存为CSV（方便查看）
result_df.to_csv(f"分支规则汇总_{max_sum}.csv", index=False, encoding="utf-8-sig")
print(f"✅ 结果已保存到：分支规则汇总_{max_sum}.csv")
