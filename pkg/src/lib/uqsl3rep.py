"""
U_q(su(3)) 的有限维不可约表示 V_λ
PBW 型正交基 F2^k F3hat^l F1^m v_λ、范数表 H 与八个生成元矩阵
"""
import logging
from dataclasses import dataclass, field
from functools import lru_cache

from src.lib.errors import IndexRangeError, PreconditionError
from src.lib.exactq import ONE, QScalar, q_minus_inv, q_pow, qint, qpoch
from src.lib.linalg import QMatrix, QVector

logger = logging.getLogger(__name__)

GENERATORS = ("E1", "E2", "F1", "F2", "K1", "K1inv", "K2", "K2inv")

Q_DIFF = q_minus_inv(1)


@dataclass(frozen=True)
class Weight:
    """最高权 λ = λ1 ϖ1 + λ2 ϖ2"""

    lambda1: int
    lambda2: int

    def __post_init__(self):
        for name in ("lambda1", "lambda2"):
            value = getattr(self, name)
            if not isinstance(value, int) or value < 0:
                raise PreconditionError(f"{name} 必须是自然数: {value!r}")

    @property
    def dimension(self):
        l1, l2 = self.lambda1, self.lambda2
        return (l1 + 1) * (l2 + 1) * (l1 + l2 + 2) // 2

    def __str__(self):
        return f"({self.lambda1},{self.lambda2})"


@dataclass(frozen=True, order=True)
class BasisIndex:
    """基向量 F2^k F3hat^l F1^m v_λ 的标号"""

    k: int
    l: int
    m: int

    def in_range(self, w):
        return (0 <= self.m <= w.lambda1 and 0 <= self.l <= w.lambda2
                and 0 <= self.k <= w.lambda2 + self.m - self.l)

    def as_tuple(self):
        return (self.k, self.l, self.m)


def enumerate_basis(w):
    """按 (k, l, m) 字典序升序列出全部基标号"""
    basis = []
    for k in range(w.lambda1 + w.lambda2 + 1):
        for l in range(w.lambda2 + 1):
            for m in range(w.lambda1 + 1):
                idx = BasisIndex(k, l, m)
                if idx.in_range(w):
                    basis.append(idx)
    return basis


class ActionCoeffs:
    """生成元作用系数 a_k, b_k, η_k, α_k, β_k 及 K 的权指数"""

    def __init__(self, w):
        self.w = w
        self.L1 = w.lambda1
        self.N = w.lambda2

    def _den(self, l, m):
        return q_minus_inv(self.N + m + 1 - l)

    def a(self, k, l, m):
        return q_minus_inv(self.N + m + 1 - k - l) / self._den(l, m)

    def b(self, k, l, m):
        return q_minus_inv(k) / self._den(l, m)

    def eta(self, k, l, m):
        return qint(k) * q_minus_inv(1 - k + self.N - l + m) / Q_DIFF

    def alpha(self, k, l, m):
        num = q_minus_inv(m) * q_minus_inv(self.L1 - m + 1) * q_minus_inv(self.N + m + 1)
        return num / (Q_DIFF ** 2 * self._den(l, m))

    def beta(self, k, l, m):
        num = q_minus_inv(l) * q_minus_inv(self.N - l + 1) * q_minus_inv(self.L1 + self.N - l + 2)
        return num / (Q_DIFF ** 2 * self._den(l, m))

    def k1_exponent(self, k, l, m):
        return self.L1 + k - l - 2 * m

    def k2_exponent(self, k, l, m):
        return self.N - 2 * k - l + m


def _check_index(w, idx):
    if not idx.in_range(w):
        raise IndexRangeError(f"基标号 {idx.as_tuple()} 不在 λ={w} 的范围内")


def _norm_H(w, idx, sign_2lN):
    _check_index(w, idx)
    k, l, m = idx.as_tuple()
    L1, N = w.lambda1, w.lambda2
    h = qpoch(2, 2, k) * qpoch(-2 * (N - l + m), 2, k)
    h = h * qpoch(2, 2, m) * qpoch(-2 * L1, 2, m)
    h = h * qpoch(2, 2, l) * qpoch(-2 * N, 2, l) * qpoch(-2 * (N + 1 + m), 2, l) * qpoch(-2 * (L1 + N + 1), 2, l)
    h = h / (1 - q_pow(2)) ** (2 * (k + 2 * l + m))
    sign = -1 if (k + l + m) % 2 else 1
    exponent = 3 * (k + 3 * l + m) - l * (l - 2 * m) + sign_2lN * 2 * l * N
    return sign * h * q_pow(exponent)


def norm_H(w, idx):
    """⟨b, b⟩ = H_{k,l,m}，q 的幂因子为 q^{+2lλ2}"""
    return _norm_H(w, idx, +1)


def norm_H_printed(w, idx):
    """印刷版本（因子 q^{-2lλ2}），仅用于差异报告"""
    return _norm_H(w, idx, -1)


def generator_matrix(w, g, basis=None, index_of=None):
    """生成元 g 在基下的稀疏矩阵，列为源向量；越界的目标向量映为零"""
    if g not in GENERATORS:
        raise PreconditionError(f"未知生成元: {g}")
    if basis is None:
        basis = enumerate_basis(w)
    if index_of is None:
        index_of = {idx: pos for pos, idx in enumerate(basis)}
    co = ActionCoeffs(w)
    n = len(basis)
    entries = {}

    def put(col, k, l, m, coeff):
        target = index_of.get(BasisIndex(k, l, m))
        if target is not None and coeff:
            entries[(target, col)] = coeff

    for col, idx in enumerate(basis):
        k, l, m = idx.as_tuple()
        if g == "K1":
            put(col, k, l, m, q_pow(co.k1_exponent(k, l, m)))
        elif g == "K1inv":
            put(col, k, l, m, q_pow(-co.k1_exponent(k, l, m)))
        elif g == "K2":
            put(col, k, l, m, q_pow(co.k2_exponent(k, l, m)))
        elif g == "K2inv":
            put(col, k, l, m, q_pow(-co.k2_exponent(k, l, m)))
        elif g == "F1":
            put(col, k, l, m + 1, co.a(k, l, m))
            if k > 0:
                put(col, k - 1, l + 1, m, co.b(k, l, m))
        elif g == "E1":
            if m > 0:
                put(col, k, l, m - 1, co.alpha(k, l, m))
            if l > 0:
                put(col, k + 1, l - 1, m, co.beta(k, l, m))
        elif g == "F2":
            put(col, k + 1, l, m, ONE)
        elif g == "E2":
            if k > 0:
                put(col, k - 1, l, m, co.eta(k, l, m))
    return QMatrix(n, n, entries)


@dataclass(frozen=True, eq=False)
class RepSpace:
    """V_λ：基、范数表与生成元矩阵（构造后不可变）"""

    weight: Weight
    basis: tuple
    index_of: dict = field(compare=False, repr=False)
    norms: tuple = field(compare=False, repr=False)
    gens: dict = field(compare=False, repr=False)

    @property
    def dim(self):
        return len(self.basis)

    def gen(self, name):
        return self.gens[name]

    def position(self, idx):
        if not isinstance(idx, BasisIndex):
            idx = BasisIndex(*idx)
        if idx not in self.index_of:
            raise IndexRangeError(f"基标号 {idx.as_tuple()} 不在 λ={self.weight} 的范围内")
        return self.index_of[idx]

    def vector(self, idx):
        return QVector.basis(self.dim, self.position(idx))

    def highest_weight_vector(self):
        return self.vector(BasisIndex(0, 0, 0))

    def d_h(self):
        """对角范数矩阵 D_H"""
        return QMatrix.diag(list(self.norms))

    def with_generator(self, name, matrix):
        """替换一个生成元矩阵（用于故障注入）"""
        gens = dict(self.gens)
        gens[name] = matrix
        return RepSpace(self.weight, self.basis, self.index_of, self.norms, gens)


@lru_cache(maxsize=64)
def build_rep(w):
    """构造 V_λ"""
    if not isinstance(w, Weight):
        w = Weight(*w)
    basis = tuple(enumerate_basis(w))
    index_of = {idx: pos for pos, idx in enumerate(basis)}
    if len(basis) != w.dimension:
        raise PreconditionError(f"基的长度 {len(basis)} 与维数公式 {w.dimension} 不符")
    norms = tuple(norm_H(w, idx) for idx in basis)
    gens = {g: generator_matrix(w, g, basis, index_of) for g in GENERATORS}
    logger.info(f"构造 V_λ, λ={w}, 维数 {len(basis)}")
    return RepSpace(w, basis, index_of, norms, gens)
