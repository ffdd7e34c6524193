"""
分支规则：V_λ 限制到余理想子代数 B 上的无重数分解

步骤：
1. U_i = span{F2^k F3hat^l F1^{k+i} v_λ}，B1 把 U_i 映到 U_{i+1}
2. ker(B1|U_i) 的基 u^i_n 由 γ 递推得到
3. C1 在 u^i_n 上三对角，最高权向量 ψ^i_x 的系数由对偶 q-Krawtchouk 多项式给出
4. ψ^i_x 生成的子模 B2^j ψ 与抽象模型 τ_(κ,n) 逐项比较
"""
import logging
from dataclasses import dataclass, field

from src.lib.coideal import (
    CoidealParams, abstract_irrep, coideal_matrices, eta1_value, eta2_value, require_generic,
)
from src.lib.errors import IndexRangeError, InternalCheckError, NotInSpanError
from src.lib.exactq import ONE, QScalar, q_minus_inv, q_pow, qpoch
from src.lib.krawtchouk import dual_q_krawtchouk_all
from src.lib.linalg import QMatrix, QVector, kernel_basis, matvec, rank, solve_in_span
from src.lib.report import Report
from src.lib.uqsl3rep import ActionCoeffs, BasisIndex, Q_DIFF

logger = logging.getLogger(__name__)


# ==================== 子空间 U_i ====================

@dataclass(frozen=True)
class LayerSubspace:
    i: int
    indices: tuple

    @property
    def size(self):
        return len(self.indices)


def _check_layer(w, i):
    if not 0 <= i <= w.lambda1:
        raise IndexRangeError(f"需要 0 ≤ i ≤ λ1 = {w.lambda1}: i={i}")


def _layer_of(idx):
    return idx.m - idx.k


def _check_maps_into(rep, names, sources, target_layer, label):
    for name in names:
        M = rep.gen(name)
        for pos in sources:
            for r in M.column(pos).support():
                if _layer_of(rep.basis[r]) != target_layer:
                    raise InternalCheckError(
                        f"{label}: {name} 把 {rep.basis[pos].as_tuple()} 映出 U_{target_layer}",
                        {"source": rep.basis[pos].as_tuple(), "target": rep.basis[r].as_tuple()},
                    )


def layer_subspace(rep, i):
    """U_i 在环境基中的位置（m = k + i），并检查 B1、B2 的稀疏模式"""
    w = rep.weight
    _check_layer(w, i)
    indices = tuple(pos for pos, idx in enumerate(rep.basis) if _layer_of(idx) == i)
    expected = (w.lambda2 + 1) * (w.lambda1 - i + 1)
    if len(indices) != expected:
        raise InternalCheckError(f"U_{i} 的大小 {len(indices)} != {expected}", {"i": i})
    # B1 = F1 - c1 E2 K1^-1：U_i -> U_{i+1}；B2 = F2 - c2 E1 K2^-1：U_{i+1} -> U_i
    _check_maps_into(rep, ("F1", "E2"), indices, i + 1, "B1")
    if i < w.lambda1:
        upper = [pos for pos, idx in enumerate(rep.basis) if _layer_of(idx) == i + 1]
        _check_maps_into(rep, ("F2", "E1"), upper, i, "B2")
    return LayerSubspace(i, indices)


# ==================== ker(B1|U_i) ====================

@dataclass
class KernelBasis:
    i: int
    gamma: dict
    u: list
    report: Report


def gamma_closed_forms(w, p, i, n):
    """次顶层 k = λ1-i-1 的两个闭式：位置 (k, n) 与 (k, n+1)"""
    L1, N = w.lambda1, w.lambda2
    same = p.c1 * q_pow(n + i) * q_minus_inv(L1 - i) * q_minus_inv(N + L1 - n) / Q_DIFF ** 2
    nxt = None
    if n + 1 <= N:
        nxt = -(q_minus_inv(L1 - i) * q_minus_inv(N + L1 - n - 1)
                / (q_minus_inv(N + L1 + 1 - n) * q_minus_inv(N + i - n)))
    return same, nxt


def kernel_gamma(rep, p, i, ops=None):
    """
    γ^n_{k,l} 自顶层 γ^n_{λ1-i,l} = δ_{n,l} 向下递推：
    a_k(l,k+i) γ_{k,l} = -b_{k+1}(l-1,k+i+1) γ_{k+1,l-1} + c1 q^{l+2i+k+1-λ1} η_{k+1}(l,k+i+1) γ_{k+1,l}
    """
    w = rep.weight
    _check_layer(w, i)
    L1, N = w.lambda1, w.lambda2
    co = ActionCoeffs(w)
    top = L1 - i
    gamma = {}
    for n in range(N + 1):
        for l in range(N + 1):
            gamma[(n, top, l)] = ONE if l == n else QScalar(0)
        for k in range(top - 1, -1, -1):
            for l in range(N + 1):
                m = k + i
                a = co.a(k, l, m)
                if not a:
                    raise InternalCheckError("a_k(l, k+i) = 0", {"i": i, "n": n, "k": k, "l": l})
                value = p.c1 * q_pow(l + 2 * i + k + 1 - L1) * co.eta(k + 1, l, m + 1) * gamma[(n, k + 1, l)]
                if l > 0:
                    value = value - co.b(k + 1, l - 1, m + 1) * gamma[(n, k + 1, l - 1)]
                gamma[(n, k, l)] = value / a

    u = []
    for n in range(N + 1):
        entries = {}
        for k in range(top + 1):
            for l in range(N + 1):
                g = gamma[(n, k, l)]
                if g:
                    entries[rep.position(BasisIndex(k, l, k + i))] = g
        u.append(QVector(rep.dim, entries))

    report = Report(f"kernel λ={w} i={i}")
    if ops is None:
        ops = coideal_matrices(rep, p)
    for n, vec in enumerate(u):
        report.check_vector_zero(f"B1 u_{n} = 0", matvec(ops.B1, vec))
    if top >= 1:
        k = top - 1
        for n in range(N + 1):
            same, nxt = gamma_closed_forms(w, p, i, n)
            report.check_scalar(f"gamma[{k},{n}] closed form", gamma[(n, k, n)], same)
            if nxt is not None:
                report.check_scalar(f"gamma[{k},{n + 1}] closed form", gamma[(n, k, n + 1)], nxt)
                # 印刷的标号把第二个闭式放在 F3hat^{n-1} 上
                if n >= 1:
                    hit = gamma[(n, k, n - 1)] == nxt
                    report.add(f"gamma[{k},{n - 1}] printed label", hit,
                               "" if hit else "second closed form sits at l = n+1", informational=True)
    report.extend(_compare_with_elimination(rep, ops, i, u))
    logger.info(f"ker(B1|U_{i}) λ={w}: {len(u)} 个向量")
    return KernelBasis(i, gamma, u, report)


def _compare_with_elimination(rep, ops, i, u):
    """消元法求 ker(B1|U_i)，与递推结果互相表示"""
    report = Report("kernel by elimination")
    layer = layer_subspace(rep, i)
    sub = ops.B1.submatrix(list(range(rep.dim)), list(layer.indices))
    local = kernel_basis(sub)
    ambient = [QVector(rep.dim, {layer.indices[j]: x for j, x in v.entries.items()}) for v in local]
    report.add("kernel dimension", len(ambient) == len(u), f"{len(ambient)} vs {len(u)}")
    try:
        for v in ambient:
            solve_in_span(u, v)
        for v in u:
            solve_in_span(ambient, v)
        report.add("same span", True)
    except NotInSpanError as exc:
        report.add("same span", False, str(exc))
    return report


# ==================== C1 的三对角作用 ====================

@dataclass
class TridiagonalData:
    i: int
    A: list
    Bd: list
    C: list
    D: QScalar
    report: Report = field(default=None, repr=False)

    def diagonal(self, n):
        return self.Bd[n] + self.D


def tridiagonal_closed_forms(w, p, i):
    """A(n) (n < λ2)、B(n)、C(n)（C(0) = 0）与 D"""
    L1, N = w.lambda1, w.lambda2
    c1, c2 = p.c1, p.c2
    one_m = 1 - q_pow(2)
    A = [q_pow(N + i - n) * one_m * (1 - q_pow(2 * L1 + 2 * N - 2 * n))
         / ((1 - q_pow(2 * N + 2 * L1 - 2 * n + 2)) * (1 - q_pow(2 * N + 2 * i - 2 * n)))
         for n in range(N)]
    Bd = [-c1 * q_pow(2 * n + i - L1 - N) * (1 - q_pow(2 * N - 2 * n + 2 * i)) / one_m
          + c2 * q_pow(L1 - N + 2 * n - i + 1) * (1 - q_pow(-2 * n - 2 * i)) / one_m
          for n in range(N + 1)]
    C = [c1 * c2 * q_pow(3 * n - 3 * N - i - 2) * (1 - q_pow(2 * n)) * (1 - q_pow(2 * N - 2 * n + 2))
         * (1 - q_pow(2 * L1 + 2 * N - 2 * n + 4)) * (1 - q_pow(2 * N + 2 * i + 2 - 2 * n))
         / (one_m ** 3 * (1 - q_pow(2 * N + 2 * L1 + 2 - 2 * n)))
         for n in range(N + 1)]
    D = (-c2 * q_pow(L1 - N - 3 * i) / Q_DIFF
         + c1 * q_pow(N - L1 + 3 * i) * (q_pow(1) + q_pow(-1)) / Q_DIFF)
    return A, Bd, C, D


def tridiagonal_C1(rep, p, i, kernel=None, ops=None):
    """闭式系数，并用 solve_in_span 把 C1 u_n 表示在 u 基下逐项核对"""
    w = rep.weight
    require_generic(p, w)
    if ops is None:
        ops = coideal_matrices(rep, p)
    if kernel is None:
        kernel = kernel_gamma(rep, p, i, ops)
    A, Bd, C, D = tridiagonal_closed_forms(w, p, i)
    N = w.lambda2
    report = Report(f"tridiagonal C1 λ={w} i={i}")
    for n, vec in enumerate(kernel.u):
        try:
            coeffs = solve_in_span(kernel.u, matvec(ops.C1, vec))
        except NotInSpanError as exc:
            raise InternalCheckError("C1 u_n 不在 ker(B1|U_i) 中", {"i": i, "n": n}) from exc
        expected = [QScalar(0)] * (N + 1)
        expected[n] = Bd[n] + D
        if n < N:
            expected[n + 1] = A[n]
        if n > 0:
            expected[n - 1] = C[n]
        bad = [j for j in range(N + 1) if coeffs[j] != expected[j]]
        report.add(f"C1 u_{n}", not bad, f"coefficient of u_{bad[0]}: {coeffs[bad[0]]}" if bad else "")
    logger.info(f"三对角 C1 λ={w} i={i}: {'通过' if report.passed else '失败'}")
    return TridiagonalData(i, A, Bd, C, D, report)


# ==================== 最高权向量 ====================

@dataclass
class HWVector:
    i: int
    x: int
    coords_in_u: list
    coords_ambient: QVector
    kappa_exponent: int
    n: int
    eta1: QScalar
    checks: dict = field(default_factory=dict)

    @property
    def kappa(self):
        return q_pow(self.kappa_exponent)


def krawtchouk_parameter(w, p, i):
    """c = -c1^-1 c2 q^{2λ1-2i+1}"""
    return -p.c2 / p.c1 * q_pow(2 * w.lambda1 - 2 * i + 1)


def psi_coefficients(w, p, i, x, tri):
    """p_l = r_l(λ(x)) / (a^l Π_{j≤l} C(j))，a = -c1^-1 q^{λ1-λ2-i}(1-q^2)"""
    N = w.lambda2
    a = -q_pow(w.lambda1 - N - i) * (1 - q_pow(2)) / p.c1
    r = dual_q_krawtchouk_all(x, krawtchouk_parameter(w, p, i), N)
    coeffs = [ONE]
    denom = ONE
    for l in range(1, N + 1):
        denom = denom * a * tri.C[l]
        coeffs.append(r[l] / denom)
    return coeffs


def psi_coefficients_printed(w, p, i, x):
    """c1^l q^{-l(λ1+2)+l(l-1)/2} (q^{-2λ2}, q^{-2λ2-2λ1};q^2)_l / (q^{-2λ2-2λ1-2}, q^{-2λ2-2i};q^2)_l K_l"""
    L1, N = w.lambda1, w.lambda2
    r = dual_q_krawtchouk_all(x, krawtchouk_parameter(w, p, i), N)
    out = []
    for l in range(N + 1):
        K_l = r[l] / qpoch(-2 * N, 2, l)
        out.append(p.c1 ** l * q_pow(-l * (L1 + 2) + l * (l - 1) // 2)
                   * qpoch(-2 * N, 2, l) * qpoch(-2 * N - 2 * L1, 2, l)
                   / (qpoch(-2 * N - 2 * L1 - 2, 2, l) * qpoch(-2 * N - 2 * i, 2, l)) * K_l)
    return out


def forward_substitution(tri, eta, N):
    """(C1 - η) v = 0 的三对角解，v_0 = 1"""
    coeffs = [ONE]
    for l in range(N):
        value = (eta - tri.diagonal(l)) * coeffs[l]
        if l > 0:
            value = value - tri.A[l - 1] * coeffs[l - 1]
        coeffs.append(value / tri.C[l + 1])
    return coeffs


def _combine(vectors, coeffs, dim):
    out = QVector(dim)
    for c, v in zip(coeffs, vectors):
        if c:
            out = out + v.scale(c)
    return out


def highest_weight_vector(rep, p, i, x, kernel=None, tri=None, ops=None):
    """ψ^i_x = Σ_l p_l u^i_l，C1 ψ = η1 ψ，η1 取 κ = q^{λ1-λ2-3i}，n = i+x"""
    w = rep.weight
    require_generic(p, w)
    N = w.lambda2
    if not 0 <= x <= N:
        raise IndexRangeError(f"需要 0 ≤ x ≤ λ2 = {N}: x={x}")
    if ops is None:
        ops = coideal_matrices(rep, p)
    if kernel is None:
        kernel = kernel_gamma(rep, p, i, ops)
    if tri is None:
        tri = tridiagonal_C1(rep, p, i, kernel, ops)
    kappa_exp = w.lambda1 - N - 3 * i
    n = i + x
    eta1 = eta1_value(q_pow(kappa_exp), n, p)
    coeffs = psi_coefficients(w, p, i, x, tri)
    psi = _combine(kernel.u, coeffs, rep.dim)

    checks = {}
    checks["b1_kernel"] = matvec(ops.B1, psi).is_zero()
    checks["c1_eigen"] = (matvec(ops.C1, psi) - psi.scale(eta1)).is_zero()
    checks["oracle_match"] = forward_substitution(tri, eta1, N) == coeffs
    checks["c2_eigen"] = (matvec(ops.C2, psi) - psi.scale(eta2_value(q_pow(kappa_exp), n, p))).is_zero()
    checks["printed_coefficients"] = psi_coefficients_printed(w, p, i, x) == coeffs
    if psi.is_zero():
        raise InternalCheckError("ψ 为零向量", {"i": i, "x": x})
    logger.debug(f"ψ^{i}_{x} λ={w}: {checks}")
    return HWVector(i, x, coeffs, psi, kappa_exp, n, eta1, checks)


# ==================== 分解 ====================

COMPONENT_CHECKS = ("b1_kernel", "c1_eigen", "oracle_match", "c2_eigen", "bj_match", "k_weights", "ladder_closed")


@dataclass
class BranchComponent:
    i: int
    x: int
    kappa_exponent: int
    n: int
    hw: HWVector
    module_vectors: list
    coefficients: list
    checks: dict

    @property
    def dim(self):
        return self.n + 1

    @property
    def passed(self):
        return all(self.checks[name] for name in COMPONENT_CHECKS)


@dataclass
class BranchingResult:
    weight: object
    params: CoidealParams
    components: list
    report: Report
    global_checks: dict

    @property
    def passed(self):
        return self.report.passed

    def summary_rows(self):
        return [
            {"i": c.i, "x": c.x, "kappa_exp": c.kappa_exponent, "n": c.n, "dim": c.dim, "passed": c.passed}
            for c in self.components
        ]


def _ladder_multiple(target, base):
    """target = μ·base 时返回 μ，否则 None"""
    if base.is_zero():
        return None
    j = base.support()[0]
    mu = target[j] / base[j]
    if (target - base.scale(mu)).is_zero():
        return mu
    return None


def _component(rep, p, ops, hw):
    n = hw.n
    vectors = [hw.coords_ambient]
    for _ in range(n):
        vectors.append(matvec(ops.B2, vectors[-1]))
    abstract = abstract_irrep(hw.kappa, n, p)
    coefficients = []
    bj_ok = True
    for j in range(1, n + 1):
        mu = _ladder_multiple(matvec(ops.B1, vectors[j]), vectors[j - 1])
        coefficients.append(mu)
        bj_ok = bj_ok and mu is not None and mu == abstract.b[j]
    k_ok = all((matvec(ops.K, v) - v.scale(q_pow(hw.kappa_exponent + 3 * j))).is_zero()
               for j, v in enumerate(vectors))
    checks = dict(hw.checks)
    checks["bj_match"] = bj_ok
    checks["k_weights"] = k_ok
    checks["ladder_closed"] = matvec(ops.B2, vectors[-1]).is_zero() and not any(v.is_zero() for v in vectors)
    return BranchComponent(hw.i, hw.x, hw.kappa_exponent, n, hw, vectors, coefficients, checks)


def branch(rep, p, ops=None):
    """全部分量 (i, x)、生成的子模、逐项检验与整体秩检验"""
    w = rep.weight
    require_generic(p, w)
    if ops is None:
        ops = coideal_matrices(rep, p)
    L1, N = w.lambda1, w.lambda2
    report = Report(f"branching λ={w} c=({p.c1}, {p.c2})")
    components = []
    for i in range(L1 + 1):
        layer_subspace(rep, i)
        kernel = kernel_gamma(rep, p, i, ops)
        report.extend(kernel.report, prefix=f"i={i} ")
        tri = tridiagonal_C1(rep, p, i, kernel, ops)
        report.extend(tri.report, prefix=f"i={i} ")
        etas = [eta1_value(q_pow(L1 - N - 3 * i), i + x, p) for x in range(N + 1)]
        report.add(f"i={i} eta1 distinct", len(set(etas)) == N + 1)
        for x in range(N + 1):
            hw = highest_weight_vector(rep, p, i, x, kernel, tri, ops)
            comp = _component(rep, p, ops, hw)
            for name in COMPONENT_CHECKS:
                report.add(f"({i},{x}) {name}", comp.checks[name])
            report.add(f"({i},{x}) printed coefficients", hw.checks["printed_coefficients"], informational=True)
            components.append(comp)
        logger.info(f"分支 λ={w} i={i}: {N + 1} 个分量")

    total = sum(c.dim for c in components)
    all_vectors = [v for c in components for v in c.module_vectors]
    span = rank(QMatrix.from_columns(all_vectors, rep.dim)) if all_vectors else 0
    global_checks = {"dim_sum": total == rep.dim, "span_rank": span == rep.dim}
    report.add("component count", len(components) == (L1 + 1) * (N + 1))
    report.add("dim_sum", global_checks["dim_sum"], f"{total} vs {rep.dim}")
    report.add("span_rank", global_checks["span_rank"], f"{span} vs {rep.dim}")
    logger.info(f"分支 λ={w}: {len(components)} 个分量, 维数和 {total}, 秩 {span}")
    return BranchingResult(w, p, components, report, global_checks)


# ==================== 非通有参数 ====================

def _eigen_multiple(M, v):
    return _ladder_multiple(matvec(M, v), v)


def eigenspace_census(rep, ops):
    """候选特征值 q^{-j} η1(κ, n) 及各特征空间维数之和"""
    w = rep.weight
    L1, N = w.lambda1, w.lambda2
    candidates = set()
    for i in range(L1 + 1):
        for x in range(N + 1):
            n = i + x
            eta = eta1_value(q_pow(L1 - N - 3 * i), n, ops.params)
            candidates.update(q_pow(-j) * eta for j in range(n + 1))
    total = 0
    identity = QMatrix.identity(rep.dim)
    for eta in candidates:
        total += rep.dim - rank(ops.C1 - identity.scale(eta))
    return candidates, total


def degenerate_demo(rep, c1, c2=None):
    """λ = (1,0)，c2 = -q c1：C1 不可对角化，只有 ρ2、ρ3 方向的特征向量"""
    c1 = QScalar(c1)
    if c2 is None:
        c2 = -q_pow(1) * c1
    p = CoidealParams(c1, c2)
    ops = coideal_matrices(rep, p)
    candidates, total = eigenspace_census(rep, ops)
    report = Report(f"degenerate C1 λ={rep.weight} c=({p.c1}, {p.c2})")
    report.add("candidate eigenvalues", True, str(len(candidates)), informational=True)
    report.add("eigenspace total", True, str(total), informational=True)
    report.add("non-diagonalizable", total < rep.dim, f"{total} < {rep.dim}")
    rho2 = rep.vector(BasisIndex(0, 0, 1))
    rho3 = rep.vector(BasisIndex(0, 0, 0)).scale(-p.c2 / q_pow(1)) + rep.vector(BasisIndex(1, 0, 1))
    report.add("rho2 eigenvector", _eigen_multiple(ops.C1, rho2) is not None)
    report.add("rho3 eigenvector", _eigen_multiple(ops.C1, rho3) is not None)
    return report
