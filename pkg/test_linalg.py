"""
测试稀疏精确线性代数：乘积、核、张成空间求解、秩、Gram 矩阵
"""
from fractions import Fraction

import pytest

from src.lib.errors import DimensionMismatchError, NotInSpanError, PreconditionError
from src.lib.exactq import ONE, QScalar, q_pow
from src.lib.linalg import (
    QMatrix, QVector, gram, kernel_basis, matmul, matvec, rank, sample_points, solve_in_span,
)

q = q_pow(1)


def _matrix(rows):
    return QMatrix(len(rows), len(rows[0]), {(r, c): v for r, row in enumerate(rows) for c, v in enumerate(row)})


def test_matmul_and_identity():
    A = _matrix([[q, 1], [0, 1 / q]])
    assert matmul(A, QMatrix.identity(2)) == A
    assert matmul(A, _matrix([[1 / q, -1], [0, q]])) == QMatrix.identity(2)
    with pytest.raises(DimensionMismatchError):
        matmul(A, QMatrix.zeros(3, 3))


def test_matvec_matches_matmul():
    A = _matrix([[q, 1 + q, 0], [2, 0, q ** 2]])
    v = QVector.from_list([1, q, 1 / q])
    expected = matmul(A, QMatrix.from_columns([v])).column(0)
    assert matvec(A, v) == expected
    assert A @ v == expected


def test_transpose_and_submatrix():
    A = _matrix([[1, q, 0], [0, 2, q ** 3]])
    assert A.transpose().get(2, 1) == q ** 3
    sub = A.submatrix([1], [1, 2])
    assert sub.shape == (1, 2)
    assert sub.get(0, 1) == q ** 3


def test_first_nonzero():
    A = QMatrix(3, 3, {(2, 0): q, (1, 2): 5})
    assert A.first_nonzero() == (1, 2, QScalar(5))
    assert QMatrix.zeros(2, 2).first_nonzero() is None


def test_kernel_basis():
    """秩 1 的 2x3 矩阵：核维数 2，核向量确实被零化"""
    A = _matrix([[1, q, q ** 2], [q, q ** 2, q ** 3]])
    kernel = kernel_basis(A)
    assert len(kernel) == 2
    for v in kernel:
        assert matvec(A, v).is_zero()
    assert kernel_basis(QMatrix.identity(3)) == []


def test_solve_in_span():
    b1 = QVector.from_list([1, q, 0])
    b2 = QVector.from_list([0, 1, 1 - q])
    target = b1.scale(q ** 2) + b2.scale(1 / (1 + q))
    assert solve_in_span([b1, b2], target) == [q ** 2, 1 / (1 + q)]
    with pytest.raises(NotInSpanError):
        solve_in_span([b1, b2], QVector.from_list([0, 0, 1]))
    with pytest.raises(PreconditionError):
        solve_in_span([b1, b1.scale(q)], b1)
    with pytest.raises(NotInSpanError):
        solve_in_span([], b1)


def test_rank():
    A = _matrix([[1, q], [q, q ** 2]])
    assert rank(A) == 1
    assert rank(A, exact=True) == 1
    B = _matrix([[1 - q ** 2, q], [q, 1]])
    assert rank(B) == 2
    assert rank(QMatrix.zeros(0, 0)) == 0


def test_rank_fast_path_not_fooled_by_special_point():
    """在 q = 1/2 处降秩的矩阵，精确秩仍为 2"""
    M = _matrix([[2 * q - 1, 0], [0, 1]])
    assert rank(M) == 2


def test_sample_points_deterministic():
    a = sample_points(5)
    assert a == sample_points(5)
    assert len(set(a)) == 5
    assert all(0 < x < 1 for x in a)


def test_gram():
    vs = [QVector.from_list([1, q]), QVector.from_list([q, -1])]
    G = gram(vs, [ONE, ONE])
    assert G.get(0, 1).is_zero()
    assert G.get(0, 0) == 1 + q ** 2
    G2 = gram(vs, [ONE, q ** 2])
    assert G2.get(0, 1) == q - q ** 3
    with pytest.raises(DimensionMismatchError):
        gram(vs, [ONE])


def test_rank_numeric_values_are_rational():
    assert all(isinstance(x, Fraction) for x in sample_points(3))
