"""
余理想子代数 B（参数 c1, c2）：生成元与 Cartan 元素的矩阵、关系检验、
不可约表示 τ_(κ,n) 的抽象模型及其可酉化范数
"""
import logging
from dataclasses import dataclass
from fractions import Fraction

from src.lib.errors import GenericityError, InternalCheckError, PreconditionError
from src.lib.exactq import ONE, QScalar, as_signed_monomial, evaluate_at, parse_qscalar, q_pow, qfactorial, qint, qpoch
from src.lib.linalg import QMatrix, matmul
from src.lib.report import Report
from src.lib.uqsl3rep import Q_DIFF

logger = logging.getLogger(__name__)

DEFAULT_C1 = "q^2"
DEFAULT_C2 = "q"


@dataclass(frozen=True)
class CoidealParams:
    c1: QScalar
    c2: QScalar

    def __post_init__(self):
        object.__setattr__(self, "c1", QScalar(self.c1))
        object.__setattr__(self, "c2", QScalar(self.c2))
        if not self.c1 or not self.c2:
            raise PreconditionError("c1 与 c2 必须非零")

    @classmethod
    def from_text(cls, c1=DEFAULT_C1, c2=DEFAULT_C2):
        return cls(parse_qscalar(c1), parse_qscalar(c2))

    @property
    def unitary_real(self):
        """c1·c2 = q^3（实参数情形下的 *-不变条件）"""
        return self.c1 * self.c2 == q_pow(3)


@dataclass(frozen=True)
class CoidealOps:
    rep: object
    params: CoidealParams
    B1: QMatrix
    B2: QMatrix
    K: QMatrix
    Kinv: QMatrix
    C1: QMatrix
    C2: QMatrix

    def replace(self, **changes):
        """替换部分矩阵（故障注入用）"""
        fields = {name: getattr(self, name) for name in ("rep", "params", "B1", "B2", "K", "Kinv", "C1", "C2")}
        fields.update(changes)
        return CoidealOps(**fields)


def cartan_elements(B1, B2, K, Kinv, p):
    """C1 = B1B2 - qB2B1 - c2K/(q-q^-1) + [2]c1K^-1/(q-q^-1)，C2 对称"""
    q = q_pow(1)
    B1B2 = matmul(B1, B2)
    B2B1 = matmul(B2, B1)
    C1 = B1B2 - B2B1.scale(q) - K.scale(p.c2 / Q_DIFF) + Kinv.scale(qint(2) * p.c1 / Q_DIFF)
    C2 = B2B1 - B1B2.scale(q) - Kinv.scale(p.c1 / Q_DIFF) + K.scale(qint(2) * p.c2 / Q_DIFF)
    return C1, C2


def coideal_matrices(rep, p):
    """B1 = F1 - c1 E2 K1^-1，B2 = F2 - c2 E1 K2^-1，K = K1 K2^-1"""
    G = rep.gens
    B1 = G["F1"] - matmul(G["E2"], G["K1inv"]).scale(p.c1)
    B2 = G["F2"] - matmul(G["E1"], G["K2inv"]).scale(p.c2)
    K = matmul(G["K1"], G["K2inv"])
    Kinv = matmul(G["K1inv"], G["K2"])
    C1, C2 = cartan_elements(B1, B2, K, Kinv, p)
    return CoidealOps(rep, p, B1, B2, K, Kinv, C1, C2)


def _relations(report, B1, B2, K, Kinv, C1, C2, p):
    q = q_pow(1)
    two = qint(2)
    B1sq = matmul(B1, B1)
    B2sq = matmul(B2, B2)
    serre1 = matmul(B1sq, B2) - matmul(matmul(B1, B2), B1).scale(two) + matmul(B2, B1sq)
    rhs1 = matmul(K.scale(q * p.c2) + Kinv.scale(q_pow(-2) * p.c1), B1).scale(two)
    report.check_equal("Serre B1^2B2", serre1, rhs1)
    serre2 = matmul(B2sq, B1) - matmul(matmul(B2, B1), B2).scale(two) + matmul(B1, B2sq)
    rhs2 = matmul(Kinv.scale(q * p.c1) + K.scale(q_pow(-2) * p.c2), B2).scale(two)
    report.check_equal("Serre B2^2B1", serre2, rhs2)

    report.check_equal("[C1,C2]=0", matmul(C1, C2), matmul(C2, C1))
    report.check_equal("[K,C1]=0", matmul(K, C1), matmul(C1, K))
    report.check_equal("[K,C2]=0", matmul(K, C2), matmul(C2, K))
    report.check_equal("KB1=q^-3B1K", matmul(K, B1), matmul(B1, K).scale(q_pow(-3)))
    report.check_equal("C1B1=qB1C1", matmul(C1, B1), matmul(B1, C1).scale(q))
    report.check_equal("C2B1=q^-1B1C2", matmul(C2, B1), matmul(B1, C2).scale(q_pow(-1)))
    report.check_equal("KB2=q^3B2K", matmul(K, B2), matmul(B2, K).scale(q_pow(3)))
    report.check_equal("C1B2=q^-1B2C1", matmul(C1, B2), matmul(B2, C1).scale(q_pow(-1)))
    report.check_equal("C2B2=qB2C2", matmul(C2, B2), matmul(B2, C2).scale(q))


def verify_coideal_relations(ops):
    """Serre 关系、Cartan 元素的对易关系，以及 c1c2 = q^3 时的 * 关系"""
    p = ops.params
    report = Report(f"coideal relations λ={ops.rep.weight} c=({p.c1}, {p.c2})")
    _relations(report, ops.B1, ops.B2, ops.K, ops.Kinv, ops.C1, ops.C2, p)
    if p.unitary_real:
        D = ops.rep.d_h()
        report.check_equal("star B1=-c1K^-1B2", matmul(ops.B1.transpose(), D),
                           matmul(D, matmul(ops.Kinv, ops.B2)).scale(-p.c1))
        report.check_equal("star B2=-c2KB1", matmul(ops.B2.transpose(), D),
                           matmul(D, matmul(ops.K, ops.B1)).scale(-p.c2))
        report.check_equal("star K", matmul(ops.K.transpose(), D), matmul(D, ops.K))
        report.check_equal("C1 self-adjoint", matmul(ops.C1.transpose(), D), matmul(D, ops.C1))
        report.check_equal("C2 self-adjoint", matmul(ops.C2.transpose(), D), matmul(D, ops.C2))
    else:
        report.add("star relations", True, "skipped: c1c2 != q^3", informational=True)
    logger.info(f"余理想关系检验 λ={ops.rep.weight}: {'通过' if report.passed else '失败'}")
    return report


def explicit_C1_matrix(p):
    """λ = ϖ1 时 C1 在基 [v, F1v, F2F1v] 下的显式 3x3 矩阵"""
    q = q_pow(1)
    c1, c2 = p.c1, p.c2
    return QMatrix(3, 3, {
        (0, 0): (c1 * q ** 2 + c1 - q * c2) / (q * (q ** 2 - 1)),
        (0, 2): -c1 * c2,
        (1, 1): (c1 * q ** 4 + c1 - q * c2) / (q ** 2 - 1),
        (2, 0): -q,
        (2, 2): (c1 * q ** 4 + c1 - q ** 3 * c2) / (q * (q ** 2 - 1)),
    })


def compare_explicit_C1(ops):
    """逐元素比较 C1 与显式矩阵，报告全部不一致的位置"""
    report = Report("C1 for λ=(1,0)")
    expected = explicit_C1_matrix(ops.params)
    for r in range(3):
        for c in range(3):
            report.check_scalar(f"C1[{r},{c}]", ops.C1.get(r, c), expected.get(r, c))
    return report


@dataclass(frozen=True)
class GenericityCheck:
    passed: bool
    witness: object = None


def check_genericity(p, w):
    """c2/c1 不属于 -q^s（s ≤ 2λ1+2λ2+1）时通过，否则返回 s"""
    sm = as_signed_monomial(p.c2 / p.c1)
    bound = 2 * w.lambda1 + 2 * w.lambda2 + 1
    if sm is not None and sm[0] == -1 and sm[1] <= bound:
        return GenericityCheck(False, sm[1])
    return GenericityCheck(True)


def require_generic(p, w):
    check = check_genericity(p, w)
    if not check.passed:
        raise GenericityError(
            f"c2/c1 = -q^{check.witness}，落在 λ={w} 的排除集合内 (s ≤ {2 * w.lambda1 + 2 * w.lambda2 + 1})",
            check.witness,
        )
    return check


@dataclass(frozen=True)
class AbstractIrrep:
    """τ_(κ,n)：基 w_j = B2^j w_0 下 B1 w_j = b_j w_{j-1}"""

    kappa: QScalar
    n: int
    params: CoidealParams
    b: tuple
    eta1: QScalar
    eta2: QScalar

    @property
    def weights(self):
        return [q_pow(3 * j) * self.kappa for j in range(self.n + 1)]

    def to_dict(self):
        return {
            "kappa": self.kappa.to_text(),
            "n": self.n,
            "b": [x.to_text() for x in self.b],
            "eta1": self.eta1.to_text(),
            "eta2": self.eta2.to_text(),
        }


def eta1_value(kappa, n, p):
    q = q_pow(1)
    kappa = QScalar(kappa)
    return (p.c1 / kappa * q * (1 + q_pow(-2 * n - 2)) - p.c2 * kappa * q_pow(2 * n)) / Q_DIFF


def eta2_value(kappa, n, p):
    q = q_pow(1)
    kappa = QScalar(kappa)
    return (p.c2 * kappa / q * (1 + q_pow(2 * n + 2)) - p.c1 / kappa * q_pow(-2 * n)) / Q_DIFF


def b_closed(kappa, n, j, p):
    if j == 0:
        return QScalar(0)
    ratio = p.c2 / p.c1 * kappa ** 2
    return (p.c1 / kappa * q_pow(-2 * n - 1) * qint(j) * (1 - q_pow(2 * n - 2 * j + 2))
            * (1 + ratio * q_pow(2 * j + 2 * n - 1)) / Q_DIFF)


def b_from_eta1(kappa, n, j, p, eta1):
    """b_j = [j](η1 + (c2κq^{2j-2} - c1κ^-1 q^{1-2j}(1+q^{2j}))/(q-q^-1))"""
    if j == 0:
        return QScalar(0)
    extra = (p.c2 * kappa * q_pow(2 * j - 2) - p.c1 / kappa * q_pow(1 - 2 * j) * (1 + q_pow(2 * j))) / Q_DIFF
    return qint(j) * (eta1 + extra)


def b_recurrence(kappa, n, p, eta1):
    """由 τ(B1)w_i 的递推从 b_0 = 0 生成 b_0..b_n"""
    q = q_pow(1)
    b = [QScalar(0)]
    for i in range(1, n + 1):
        b.append(q * b[-1] + q_pow(1 - i) * eta1 + q_pow(3 * i - 3) * kappa * p.c2 / Q_DIFF
                 - qint(2) * q_pow(3 - 3 * i) / kappa * p.c1 / Q_DIFF)
    return b


def abstract_irrep(kappa, n, p):
    """构造 τ_(κ,n)；b_j 的两种闭式必须完全一致"""
    kappa = QScalar(kappa)
    if not kappa:
        raise PreconditionError("κ 必须非零")
    ratio = p.c2 / p.c1 * kappa ** 2
    for j in range(1, n + 1):
        if not (1 + ratio * q_pow(2 * j + 2 * n - 1)):
            raise GenericityError(f"b_{j} = 0：κ^2 落在 -c1c2^-1 q^(1-N) 内", j)
    eta1 = eta1_value(kappa, n, p)
    eta2 = eta2_value(kappa, n, p)
    b = tuple(b_closed(kappa, n, j, p) for j in range(n + 1))
    for j in range(1, n + 1):
        if b[j] != b_from_eta1(kappa, n, j, p, eta1):
            raise InternalCheckError("b_j 的两种表达式不一致", {"kappa": kappa.to_text(), "n": n, "j": j})
    return AbstractIrrep(kappa, n, p, b, eta1, eta2)


def model_matrices(irrep):
    """抽象模型中 B1, B2, K, K^-1 的矩阵，以及由定义式算出的 C1, C2"""
    n = irrep.n + 1
    B1 = QMatrix(n, n, {(j - 1, j): irrep.b[j] for j in range(1, n)})
    B2 = QMatrix(n, n, {(j + 1, j): ONE for j in range(n - 1)})
    K = QMatrix.diag(irrep.weights)
    Kinv = QMatrix.diag([ONE / w for w in irrep.weights])
    C1, C2 = cartan_elements(B1, B2, K, Kinv, irrep.params)
    return B1, B2, K, Kinv, C1, C2


def verify_abstract_model(irrep):
    """模型满足 B 的全部关系，C1 = diag(q^-j η1)，C2 = diag(q^j η2)，递推给出同一组 b_j"""
    report = Report(f"model τ(κ={irrep.kappa}, n={irrep.n})")
    B1, B2, K, Kinv, C1, C2 = model_matrices(irrep)
    _relations(report, B1, B2, K, Kinv, C1, C2, irrep.params)
    n = irrep.n
    report.check_equal("C1 = diag(q^-j eta1)", C1, QMatrix.diag([q_pow(-j) * irrep.eta1 for j in range(n + 1)]))
    report.check_equal("C2 = diag(q^j eta2)", C2, QMatrix.diag([q_pow(j) * irrep.eta2 for j in range(n + 1)]))
    report.add("b recurrence", list(irrep.b) == b_recurrence(irrep.kappa, n, irrep.params, irrep.eta1))
    distinct = len(set(irrep.weights)) == n + 1
    report.add("K-weights distinct", distinct)
    return report


def _require_unitary(p):
    if not p.unitary_real:
        raise PreconditionError("可酉化范数要求 c1·c2 = q^3")


def unitarizable_norms(kappa, n, p):
    """⟨w_k, w_k⟩ = q^{3C(k,2)-k(2n-3)}/(1-q^2)^k [k]! (q^{2n};q^-2)_k (-c2c1^-1κ^2q^{2n+1};q^2)_k"""
    _require_unitary(p)
    return _norms(QScalar(kappa), n, p, shift=-3, base=1)


def unitarizable_norms_printed(kappa, n, p):
    """印刷版本（两处均为 2n-1），仅用于差异报告"""
    _require_unitary(p)
    return _norms(QScalar(kappa), n, p, shift=-1, base=-1)


def _norms(kappa, n, p, shift, base):
    ratio = p.c2 / p.c1 * kappa ** 2
    out = []
    for k in range(n + 1):
        poch = ONE
        for j in range(k):
            poch = poch * (1 + ratio * q_pow(2 * n + base + 2 * j))
        value = (q_pow(3 * (k * (k - 1) // 2) - k * (2 * n + shift)) / (1 - q_pow(2)) ** k
                 * qfactorial(k) * qpoch(2 * n, -2, k) * poch)
        out.append(value)
    return out


def unitarizable_norms_product(irrep):
    """⟨w_k, w_k⟩ = (-c2)^k q^{3C(k,2)} κ^k Π_{i≤k} b_i"""
    out = []
    prod = ONE
    for k in range(irrep.n + 1):
        if k > 0:
            prod = prod * irrep.b[k]
        out.append((-irrep.params.c2) ** k * q_pow(3 * (k * (k - 1) // 2)) * irrep.kappa ** k * prod)
    return out


def orthonormal_action_squares(irrep, norms=None):
    """单位化基 w_i/‖w_i‖ 下 B1、B2 系数的平方：(b_i^2 N_{i-1}/N_i, N_{i+1}/N_i)"""
    if norms is None:
        norms = unitarizable_norms(irrep.kappa, irrep.n, irrep.params)
    b1 = [QScalar(0)] + [irrep.b[i] ** 2 * norms[i - 1] / norms[i] for i in range(1, irrep.n + 1)]
    b2 = [norms[i + 1] / norms[i] for i in range(irrep.n)] + [QScalar(0)]
    return b1, b2


def verify_unitarizable(kappa, n, p, q0s=(Fraction(1, 2), Fraction(1, 3))):
    """范数闭式与乘积路线一致，在数值点处为正；单位化基的作用系数"""
    irrep = abstract_irrep(kappa, n, p)
    report = Report(f"unitarizable τ(κ={irrep.kappa}, n={n})")
    closed = unitarizable_norms(irrep.kappa, n, p)
    product = unitarizable_norms_product(irrep)
    for k in range(n + 1):
        report.check_scalar(f"norm w_{k}", closed[k], product[k])
    for q0 in q0s:
        values = [evaluate_at(x, q0) for x in closed]
        report.add(f"norms > 0 at q={q0}", all(x > 0 for x in values))
    printed = unitarizable_norms_printed(irrep.kappa, n, p)
    same = printed == closed
    report.add("printed norm formula", same, "" if same else "exponent 2n-1 should be 2n-3, Pochhammer base 2n+1",
               informational=True)
    b1, b2 = orthonormal_action_squares(irrep, closed)
    q = q_pow(1)
    for i in range(1, n + 1):
        report.check_scalar(f"|B1 w~_{i}|^2", b1[i], -irrep.b[i] / (p.c2 * irrep.kappa * q_pow(3 * i - 3)))
    ratio = p.c2 / p.c1 * irrep.kappa ** 2
    printed_ok = True
    for i in range(1, n + 1):
        expected = ((p.c1 / irrep.kappa) ** 2 * q_pow(2 * (-2 * i - n + 1)) * (1 - q_pow(2 * i))
                    * (1 - q_pow(2 * n - 2 * i + 2)) / (1 - q ** 2) ** 2 * (q + ratio * q_pow(2 * n + 2 * i)))
        printed_ok = printed_ok and expected == b1[i]
    report.add("printed orthonormal B1 coefficient", printed_ok, "" if printed_ok else "differs by a power of q",
               informational=True)
    for q0 in q0s:
        report.add(f"orthonormal squares > 0 at q={q0}",
                   all(evaluate_at(x, q0) > 0 for x in b1[1:] + b2[:-1]))
    return report
