"""
QScalar 上的稀疏精确线性代数：乘积、核、张成空间求解、秩、Gram 矩阵
矩阵以 sympy 的 DomainMatrix（SDM 稀疏格式，域 QQ(q)）存储。
"""
import logging
from fractions import Fraction

import numpy as np
from sympy import QQ
from sympy.polys.matrices import DomainMatrix

from src.lib.errors import DimensionMismatchError, NotInSpanError, PoleError, PreconditionError
from src.lib.exactq import QF, QScalar, evaluate_at

logger = logging.getLogger(__name__)

RANK_SEED = 20240607


def sample_points(count, seed=RANK_SEED):
    """固定种子生成 (0,1) 内的有理数序列"""
    rng = np.random.default_rng(seed)
    points = []
    while len(points) < count:
        den = int(rng.integers(5, 97))
        num = int(rng.integers(1, den))
        point = Fraction(num, den)
        if point not in points:
            points.append(point)
    return points


def _raw(x):
    return QScalar(x).raw


def _size(elem):
    return len(elem.numer) + len(elem.denom)


class QVector:
    """稀疏向量 {下标: QScalar}"""

    __slots__ = ("dim", "_entries")

    def __init__(self, dim, entries=None):
        self.dim = dim
        clean = {}
        for i, v in (entries or {}).items():
            if not 0 <= i < dim:
                raise DimensionMismatchError(f"下标 {i} 超出维数 {dim}")
            v = QScalar(v)
            if v:
                clean[i] = v
        self._entries = clean

    @classmethod
    def basis(cls, dim, i):
        return cls(dim, {i: 1})

    @classmethod
    def from_list(cls, values):
        return cls(len(values), dict(enumerate(values)))

    @property
    def entries(self):
        return dict(self._entries)

    def __getitem__(self, i):
        return self._entries.get(i, QScalar(0))

    def to_list(self):
        return [self[i] for i in range(self.dim)]

    def support(self):
        return sorted(self._entries)

    def is_zero(self):
        return not self._entries

    def _check(self, other):
        if self.dim != other.dim:
            raise DimensionMismatchError(f"向量维数不一致: {self.dim} != {other.dim}")

    def __add__(self, other):
        self._check(other)
        out = dict(self._entries)
        for i, v in other._entries.items():
            out[i] = out.get(i, QScalar(0)) + v
        return QVector(self.dim, out)

    def __sub__(self, other):
        return self + (-other)

    def __neg__(self):
        return QVector(self.dim, {i: -v for i, v in self._entries.items()})

    def scale(self, c):
        c = QScalar(c)
        return QVector(self.dim, {i: c * v for i, v in self._entries.items()})

    def __rmul__(self, c):
        return self.scale(c)

    def __eq__(self, other):
        if not isinstance(other, QVector):
            return NotImplemented
        return self.dim == other.dim and self._entries == other._entries

    def __repr__(self):
        inner = ", ".join(f"{i}: {v}" for i, v in sorted(self._entries.items()))
        return f"QVector({self.dim}, {{{inner}}})"


class QMatrix:
    """稀疏矩阵，列为源基向量"""

    __slots__ = ("_dm",)

    def __init__(self, rows, cols, entries=None):
        sdm = {}
        for (r, c), v in (entries or {}).items():
            if not (0 <= r < rows and 0 <= c < cols):
                raise DimensionMismatchError(f"元素 ({r}, {c}) 超出 {rows}x{cols}")
            v = _raw(v)
            if v:
                sdm.setdefault(r, {})[c] = v
        self._dm = DomainMatrix(sdm, (rows, cols), QF)

    @classmethod
    def _from_dm(cls, dm):
        obj = cls.__new__(cls)
        obj._dm = dm.to_sparse()
        return obj

    @classmethod
    def identity(cls, n):
        return cls(n, n, {(i, i): 1 for i in range(n)})

    @classmethod
    def zeros(cls, rows, cols):
        return cls(rows, cols)

    @classmethod
    def diag(cls, values):
        n = len(values)
        return cls(n, n, {(i, i): v for i, v in enumerate(values)})

    @classmethod
    def from_columns(cls, vectors, dim=None):
        if dim is None:
            dim = vectors[0].dim if vectors else 0
        entries = {}
        for j, v in enumerate(vectors):
            if v.dim != dim:
                raise DimensionMismatchError("列向量维数不一致")
            for i, x in v.entries.items():
                entries[(i, j)] = x
        return cls(dim, len(vectors), entries)

    @property
    def rows(self):
        return self._dm.shape[0]

    @property
    def cols(self):
        return self._dm.shape[1]

    @property
    def shape(self):
        return self._dm.shape

    @property
    def entries(self):
        """{(行, 列): QScalar}，不含零"""
        out = {}
        for r, row in self._dm.to_sdm().items():
            for c, v in row.items():
                if v:
                    out[(r, c)] = QScalar(v)
        return out

    def row_dicts(self):
        """底层 {行: {列: 域元素}}"""
        return {r: {c: v for c, v in row.items() if v} for r, row in self._dm.to_sdm().items()}

    def get(self, r, c):
        return QScalar(self._dm.to_sdm().get(r, {}).get(c, QF.zero))

    def column(self, j):
        return QVector(self.rows, {r: QScalar(row[j]) for r, row in self._dm.to_sdm().items() if j in row and row[j]})

    def columns(self):
        return [self.column(j) for j in range(self.cols)]

    def submatrix(self, row_idx, col_idx):
        rpos = {r: a for a, r in enumerate(row_idx)}
        cpos = {c: b for b, c in enumerate(col_idx)}
        entries = {}
        for r, row in self._dm.to_sdm().items():
            if r not in rpos:
                continue
            for c, v in row.items():
                if c in cpos:
                    entries[(rpos[r], cpos[c])] = QScalar(v)
        return QMatrix(len(row_idx), len(col_idx), entries)

    def transpose(self):
        return QMatrix._from_dm(self._dm.transpose())

    def _check_same(self, other):
        if self.shape != other.shape:
            raise DimensionMismatchError(f"矩阵形状不一致: {self.shape} != {other.shape}")

    def __add__(self, other):
        self._check_same(other)
        return QMatrix._from_dm(self._dm + other._dm)

    def __sub__(self, other):
        self._check_same(other)
        return QMatrix._from_dm(self._dm - other._dm)

    def __neg__(self):
        return QMatrix._from_dm(-self._dm)

    def scale(self, c):
        c = QScalar(c)
        if not c:
            return QMatrix.zeros(self.rows, self.cols)
        return QMatrix._from_dm(self._dm.scalarmul(c.raw))

    def __rmul__(self, c):
        return self.scale(c)

    def __matmul__(self, other):
        if isinstance(other, QVector):
            return matvec(self, other)
        return matmul(self, other)

    def is_zero(self):
        return all(not v for row in self._dm.to_sdm().values() for v in row.values())

    def first_nonzero(self):
        """返回 (行, 列, 值) 中字典序最小的非零元素，全零时返回 None"""
        entries = self.entries
        if not entries:
            return None
        r, c = min(entries)
        return r, c, entries[(r, c)]

    def __eq__(self, other):
        if not isinstance(other, QMatrix):
            return NotImplemented
        return self.shape == other.shape and (self - other).is_zero()

    def __repr__(self):
        return f"QMatrix({self.rows}x{self.cols}, nnz={len(self.entries)})"


def matmul(A, B):
    """精确矩阵乘积"""
    if A.cols != B.rows:
        raise DimensionMismatchError(f"内维不一致: {A.shape} @ {B.shape}")
    return QMatrix._from_dm(A._dm.matmul(B._dm))


def matvec(A, v):
    if A.cols != v.dim:
        raise DimensionMismatchError(f"内维不一致: {A.shape} @ {v.dim}")
    out = {}
    for r, row in A._dm.to_sdm().items():
        acc = QF.zero
        for c, a in row.items():
            x = v._entries.get(c)
            if x is not None:
                acc = acc + a * x.raw
        if acc:
            out[r] = QScalar(acc)
    return QVector(A.rows, out)


def _rref_rows(row_dicts, ncols):
    """
    稀疏 Gauss-Jordan 消元，每列在候选行中选规范形式最短的元素作主元。
    返回 (主元行列表, 主元列列表)，主元行已归一化。
    """
    remaining = [dict(r) for r in row_dicts if r]
    pivot_rows = []
    pivot_cols = []
    for c in range(ncols):
        cands = [idx for idx, r in enumerate(remaining) if r.get(c)]
        if not cands:
            continue
        best = min(cands, key=lambda idx: _size(remaining[idx][c]))
        piv = remaining.pop(best)
        inv = 1 / piv[c]
        piv = {j: v * inv for j, v in piv.items()}
        for r in remaining + pivot_rows:
            f = r.get(c)
            if not f:
                continue
            for j, v in piv.items():
                nv = r.get(j, QF.zero) - f * v
                if nv:
                    r[j] = nv
                else:
                    r.pop(j, None)
        pivot_rows.append(piv)
        pivot_cols.append(c)
        remaining = [r for r in remaining if r]
    return pivot_rows, pivot_cols


def kernel_basis(A):
    """零空间的一组基（精确消元），A 单射时返回 []"""
    pivot_rows, pivot_cols = _rref_rows(A.row_dicts().values(), A.cols)
    free = [j for j in range(A.cols) if j not in set(pivot_cols)]
    basis = []
    for f in free:
        entries = {f: 1}
        for row, pc in zip(pivot_rows, pivot_cols):
            v = row.get(f)
            if v:
                entries[pc] = QScalar(-v)
        basis.append(QVector(A.cols, entries))
    logger.debug(f"kernel_basis: {A.rows}x{A.cols}, 核维数 {len(basis)}")
    return basis


def solve_in_span(basis, target):
    """求系数 ν 使 target = Σ ν_j basis_j；不在张成空间中时抛出 NotInSpanError"""
    if not basis:
        if target.is_zero():
            return []
        raise NotInSpanError("空基无法表示非零向量")
    dim = target.dim
    n = len(basis)
    rows = {}
    for j, v in enumerate(basis):
        if v.dim != dim:
            raise DimensionMismatchError("基向量与目标向量维数不一致")
        for i, x in v.entries.items():
            rows.setdefault(i, {})[j] = x.raw
    for i, x in target.entries.items():
        rows.setdefault(i, {})[n] = x.raw
    pivot_rows, pivot_cols = _rref_rows(rows.values(), n + 1)
    if n in pivot_cols:
        raise NotInSpanError("目标向量不在张成空间中")
    if len(pivot_cols) != n:
        raise PreconditionError("基向量线性相关")
    coeffs = [QScalar(0)] * n
    for row, pc in zip(pivot_rows, pivot_cols):
        coeffs[pc] = QScalar(row.get(n, QF.zero))
    return coeffs


def _numeric_rank(A, q0):
    entries = {}
    for r, row in A.row_dicts().items():
        for c, v in row.items():
            value = evaluate_at(QScalar(v), q0)
            if value:
                entries.setdefault(r, {})[c] = QQ(value.numerator, value.denominator)
    return DomainMatrix(entries, A.shape, QQ).rank()


def rank(A, exact=False, points=3):
    """
    精确秩。默认先在固定种子的有理点处数值求秩：
    数值秩等于 min(行, 列) 时即为精确秩（代入只会降秩），否则精确消元。
    """
    full = min(A.rows, A.cols)
    if full == 0:
        return 0
    if not exact:
        for q0 in sample_points(points):
            try:
                r = _numeric_rank(A, q0)
            except PoleError:
                continue
            logger.debug(f"rank 快速路径: q0={q0}, 数值秩 {r}/{full}")
            if r == full:
                return r
    pivot_rows, pivot_cols = _rref_rows(A.row_dicts().values(), A.cols)
    return len(pivot_cols)


def gram(vectors, weights):
    """G[i][j] = Σ_t weights[t]·v_i[t]·v_j[t]"""
    n = len(vectors)
    for v in vectors:
        if v.dim != len(weights):
            raise DimensionMismatchError("权重个数与向量维数不一致")
    weights = [QScalar(w) for w in weights]
    entries = {}
    for a in range(n):
        ea = vectors[a].entries
        for b in range(a, n):
            eb = vectors[b].entries
            acc = QScalar(0)
            for t in ea.keys() & eb.keys():
                acc = acc + weights[t] * ea[t] * eb[t]
            if acc:
                entries[(a, b)] = acc
                entries[(b, a)] = acc
    return QMatrix(n, n, entries)
