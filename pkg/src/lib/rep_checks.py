"""
V_λ 上的恒等式检验：定义关系、Serre 关系、*-相容性、各引理、层 U_i 上的乘积公式，
以及不依赖 H 闭式的内积计算（伴随移动法）
"""
import logging
from fractions import Fraction

from src.lib.algexpr import AlgExpr, E3hat, F3hat, P, P12, S, apply_expr, eval_expr
from src.lib.exactq import ONE, evaluate_at, q_pow, qint, qpoch
from src.lib.linalg import QMatrix, QVector, matmul
from src.lib.report import Report
from src.lib.uqsl3rep import ActionCoeffs, BasisIndex, Q_DIFF, norm_H_printed

logger = logging.getLogger(__name__)

CARTAN = {(1, 1): 2, (1, 2): -1, (2, 1): -1, (2, 2): 2}


def _m(rep, e):
    return eval_expr(rep, e)


def verify_defining_relations(rep):
    """定义关系、Serre 关系、最高权向量条件与 *-相容性"""
    report = Report(f"defining relations λ={rep.weight}")
    n = rep.dim
    I = QMatrix.identity(n)
    G = rep.gens

    for i in (1, 2):
        Ki, Kinv = G[f"K{i}"], G[f"K{i}inv"]
        report.check_equal(f"K{i}K{i}^-1=1", matmul(Ki, Kinv), I)
        report.check_equal(f"K{i}^-1K{i}=1", matmul(Kinv, Ki), I)
    for a in ("K1", "K1inv"):
        for b in ("K2", "K2inv"):
            report.check_equal(f"[{a},{b}]=0", matmul(G[a], G[b]), matmul(G[b], G[a]))

    for i in (1, 2):
        for j in (1, 2):
            Ki, Ej, Fj = G[f"K{i}"], G[f"E{j}"], G[f"F{j}"]
            aij = CARTAN[(i, j)]
            report.check_equal(f"K{i}E{j}=q^{aij}E{j}K{i}", matmul(Ki, Ej), matmul(Ej, Ki).scale(q_pow(aij)))
            report.check_equal(f"K{i}F{j}=q^{-aij}F{j}K{i}", matmul(Ki, Fj), matmul(Fj, Ki).scale(q_pow(-aij)))
            comm = matmul(G[f"E{i}"], Fj) - matmul(Fj, G[f"E{i}"])
            if i == j:
                rhs = (G[f"K{i}"] - G[f"K{i}inv"]).scale(ONE / Q_DIFF)
            else:
                rhs = QMatrix.zeros(n, n)
            report.check_equal(f"[E{i},F{j}]", comm, rhs)

    two = qint(2)
    for X in ("E", "F"):
        for i, j in ((1, 2), (2, 1)):
            Xi, Xj = G[f"{X}{i}"], G[f"{X}{j}"]
            Xi2 = matmul(Xi, Xi)
            serre = matmul(Xi2, Xj) - matmul(matmul(Xi, Xj), Xi).scale(two) + matmul(Xj, Xi2)
            report.check_zero(f"Serre {X}{i}^2{X}{j}", serre)

    v = rep.highest_weight_vector()
    lam = (rep.weight.lambda1, rep.weight.lambda2)
    for i in (1, 2):
        report.check_vector_zero(f"E{i}v=0", G[f"E{i}"] @ v)
        report.check_vector_zero(f"K{i}v=q^λ{i}v", G[f"K{i}"] @ v - v.scale(q_pow(lam[i - 1])))

    D = rep.d_h()
    for i in (1, 2):
        Ei, Fi, Ki, Kinv = G[f"E{i}"], G[f"F{i}"], G[f"K{i}"], G[f"K{i}inv"]
        report.check_equal(f"star E{i}", matmul(Ei.transpose(), D), matmul(D, matmul(Ki, Fi)))
        report.check_equal(f"star F{i}", matmul(Fi.transpose(), D), matmul(D, matmul(Ei, Kinv)))
    logger.info(f"定义关系检验 λ={rep.weight}: {'通过' if report.passed else '失败'}")
    return report


def star_check(report, name, rep, X, X_star, informational=False):
    """⟨Xv, w⟩ = ⟨v, X* w⟩ 的矩阵形式 M(X)^T D_H = D_H M(X*)"""
    D = rep.d_h()
    lhs = matmul(_m(rep, X).transpose(), D)
    rhs = matmul(D, _m(rep, X_star))
    return report.check_equal(name, lhs, rhs, informational)


def verify_lemma_relations(rep, a_range=range(-3, 4)):
    """各引理作为算子恒等式逐一检验（含 U_i 层上的乘积公式）"""
    report = Report(f"lemma relations λ={rep.weight}")
    lam = (rep.weight.lambda1, rep.weight.lambda2)
    v = rep.highest_weight_vector()

    for a in a_range:
        Fa = F3hat(a)
        report.check_equal(f"F1F3hat[{a}]=F3hat[{a}]F1", _m(rep, S("F1") * Fa), _m(rep, Fa * S("F1")))
        report.check_equal(
            f"E2F3hat[{a}]=F3hat[{a - 2}]E2-[{a}]F1",
            _m(rep, S("E2") * Fa),
            _m(rep, F3hat(a - 2) * S("E2") - qint(a) * S("F1")),
        )
        for i in (1, 2):
            Ki = S(f"K{i}")
            report.check_equal(f"K{i}F3hat[{a}]", _m(rep, Ki * Fa), _m(rep, q_pow(-1) * Fa * Ki))
            report.check_equal(f"K{i}E3hat[{a}]", _m(rep, Ki * E3hat(a)), _m(rep, q_pow(1) * E3hat(a) * Ki))

        report.check_equal(f"F2F3hat[{a}]=F3hat[{a + 1}]F2", _m(rep, S("F2") * Fa), _m(rep, F3hat(a + 1) * S("F2")))
        report.check_equal(
            f"E1F3hat[{a}]",
            _m(rep, S("E1") * Fa),
            _m(rep, F3hat(a + 1) * S("E1") + S("F2") * P12(a + 1)),
        )
        star_check(report, f"F3hat[{a}]*=qE3hat[{a}](K1K2)^-1", rep, Fa,
                   q_pow(1) * E3hat(a) * S("K1inv") * S("K2inv"))
        for l in range(1, lam[1] + 2):
            lhs = S("E1") * Fa ** l
            rhs = F3hat(a + 1) ** l * S("E1") + qint(l) * S("F2") * Fa ** (l - 1) * P12(a + 2 - l)
            report.check_equal(f"E1F3hat[{a}]^{l}", _m(rep, lhs), _m(rep, rhs))

    F3, E3 = S("F3"), S("E3")
    report.check_equal("F2F3=qF3F2", _m(rep, S("F2") * F3), _m(rep, q_pow(1) * F3 * S("F2")))
    star_check(report, "F3*=qE3(K1K2)^-1", rep, F3, q_pow(1) * E3 * S("K1inv") * S("K2inv"))
    report.check_equal(
        "F3hat=F3P1+qF2F1K2",
        _m(rep, F3hat(0)),
        _m(rep, F3 * P(1) + q_pow(1) * S("F2") * S("F1") * S("K2")),
    )
    report.check_equal("E1F3=F3E1+F2K1^-1", _m(rep, S("E1") * F3), _m(rep, F3 * S("E1") + S("F2") * S("K1inv")))
    report.check_equal("E1F3=F3E1+F2K1 (printed)", _m(rep, S("E1") * F3), _m(rep, F3 * S("E1") + S("F2") * S("K1")),
                       informational=True)

    for i in (1, 2):
        Ei, Fi, Ki, Kinv = S(f"E{i}"), S(f"F{i}"), S(f"K{i}"), S(f"K{i}inv")
        for k in range(1, max(lam[i - 1] + 1, 2) + 1):
            rhs = Fi ** k * Ei + qint(k) * Fi ** (k - 1) * (q_pow(1 - k) * Ki - q_pow(k - 1) * Kinv) / Q_DIFF
            report.check_equal(f"E{i}F{i}^{k}", _m(rep, Ei * Fi ** k), _m(rep, rhs))

            lhs = apply_expr(rep, Ei ** k * Fi ** k, v)
            pref = qpoch(2, 2, k) / (1 - q_pow(2)) ** (2 * k)
            poch1 = AlgExpr.scalar(1)
            poch2 = AlgExpr.scalar(1)
            for j in range(k):
                poch1 = poch1 * (1 - q_pow(2 - 2 * k + 2 * j) * Ki * Ki)
                poch2 = poch2 * (1 - q_pow(2 * j) * Kinv * Kinv)
            form1 = q_pow(k) * pref * poch1 * Kinv ** k
            form2 = (-1) ** k * q_pow(-k * (k - 2)) * pref * poch2 * Ki ** k
            report.check_vector_zero(f"E{i}^{k}F{i}^{k}v (first form)", lhs - apply_expr(rep, form1, v))
            report.check_vector_zero(f"E{i}^{k}F{i}^{k}v (second form)", lhs - apply_expr(rep, form2, v))

    report.extend(verify_layer_actions(rep))
    logger.info(f"引理检验 λ={rep.weight}: {'通过' if report.passed else '失败'}")
    return report


def _layer_expected(rep, terms):
    """按闭式组装向量；越界目标丢弃"""
    out = QVector(rep.dim)
    for coeff, (k, l, m) in terms:
        if not coeff:
            continue
        pos = rep.index_of.get(BasisIndex(k, l, m))
        if pos is not None:
            out = out + QVector.basis(rep.dim, pos).scale(coeff)
    return out


def verify_layer_actions(rep):
    """U_i（m = k + i）上 F1F2、E2F2、F1E1、E2E1 与 K 的作用闭式"""
    report = Report(f"layer actions λ={rep.weight}")
    co = ActionCoeffs(rep.weight)
    L1, N = rep.weight.lambda1, rep.weight.lambda2
    G = rep.gens
    F1F2 = matmul(G["F1"], G["F2"])
    E2F2 = matmul(G["E2"], G["F2"])
    F1E1 = matmul(G["F1"], G["E1"])
    E2E1 = matmul(G["E2"], G["E1"])
    K = matmul(G["K1"], G["K2inv"])
    for i in range(L1 + 1):
        ok = {"F1F2": True, "E2F2": True, "F1E1": True, "E2E1": True, "K": True}
        first = {}
        for idx in rep.basis:
            k, l, m = idx.as_tuple()
            if m != k + i:
                continue
            v = rep.vector(idx)
            al = co.alpha(k, l, m)
            be = co.beta(k, l, m)
            expected = {
                "F1F2": [(co.a(k + 1, l, m), (k + 1, l, m + 1)), (co.b(k + 1, l, m), (k, l + 1, m))],
                "E2F2": [(co.eta(k + 1, l, m), (k, l, m))],
                "F1E1": [],
                "E2E1": [],
                "K": [(q_pow(L1 - N - 3 * i), (k, l, m))],
            }
            if al:
                expected["F1E1"] += [(al * co.a(k, l, m - 1), (k, l, m)), (al * co.b(k, l, m - 1), (k - 1, l + 1, m - 1))]
                expected["E2E1"] += [(al * co.eta(k, l, m - 1), (k - 1, l, m - 1))]
            if be:
                expected["F1E1"] += [(be * co.a(k + 1, l - 1, m), (k + 1, l - 1, m + 1)),
                                     (be * co.b(k + 1, l - 1, m), (k, l, m))]
                expected["E2E1"] += [(be * co.eta(k + 1, l - 1, m), (k, l - 1, m))]
            for name, M in (("F1F2", F1F2), ("E2F2", E2F2), ("F1E1", F1E1), ("E2E1", E2E1), ("K", K)):
                diff = M @ v - _layer_expected(rep, expected[name])
                if not diff.is_zero() and ok[name]:
                    ok[name] = False
                    first[name] = f"(k,l,m)={idx.as_tuple()}"
        for name in ok:
            report.add(f"U_{i} {name}", ok[name], first.get(name, ""))
    return report


def basis_word(idx):
    """F2^k F3hat^l F1^m"""
    k, l, m = idx.as_tuple() if isinstance(idx, BasisIndex) else idx
    return S("F2") ** k * F3hat(0) ** l * S("F1") ** m


def inner_product_oracle(rep, word1, word2):
    """⟨X v_λ, Y v_λ⟩ = ⟨v_λ, X* Y v_λ⟩，取 v_λ 分量（权 λ 的权空间一维）"""
    v = rep.highest_weight_vector()
    y = apply_expr(rep, word2, v)
    return apply_expr(rep, word1.star(), y)[0]


def oracle_gram(rep):
    """用伴随移动法计算全部基向量的 Gram 矩阵，同时确认单词作用给出对应基向量"""
    n = rep.dim
    v = rep.highest_weight_vector()
    co = ActionCoeffs(rep.weight)
    weights = [(co.k1_exponent(*idx.as_tuple()), co.k2_exponent(*idx.as_tuple())) for idx in rep.basis]
    words = [basis_word(idx) for idx in rep.basis]
    vectors = [apply_expr(rep, w, v) for w in words]
    labels_ok = all(vectors[j] == QVector.basis(n, j) for j in range(n))
    entries = {}
    for a, w in enumerate(words):
        starred = w.star()
        for b in range(n):
            # 权不同的向量正交
            if weights[a] != weights[b]:
                continue
            value = apply_expr(rep, starred, vectors[b])[0]
            if value:
                entries[(a, b)] = value
    return QMatrix(n, n, entries), labels_ok


def verify_norms(rep, q0s=(Fraction(1, 2), Fraction(1, 3))):
    """H 闭式与伴随移动法一致，且在数值点处为正"""
    report = Report(f"norms λ={rep.weight}")
    G, labels_ok = oracle_gram(rep)
    report.add("basis words act as basis vectors", labels_ok)
    report.check_equal("oracle Gram = diag(H)", G, rep.d_h())
    for q0 in q0s:
        bad = [idx.as_tuple() for idx, h in zip(rep.basis, rep.norms) if evaluate_at(h, q0) <= 0]
        report.add(f"H > 0 at q={q0}", not bad, f"{bad[:3]}" if bad else "")
    printed_ok = all(norm_H_printed(rep.weight, idx) == h for idx, h in zip(rep.basis, rep.norms))
    report.add("printed H sign of q^{2lλ2}", printed_ok, "" if printed_ok else "q^{-2lλ2} should be q^{+2lλ2}",
               informational=True)
    return report
