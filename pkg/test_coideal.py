"""
测试余理想子代数：生成元矩阵、关系检验、抽象不可约表示、通有性与可酉化范数
"""
from fractions import Fraction

import pytest

from src.lib.coideal import (
    CoidealParams, abstract_irrep, b_recurrence, check_genericity, coideal_matrices, compare_explicit_C1,
    orthonormal_action_squares, explicit_C1_matrix, require_generic, unitarizable_norms, unitarizable_norms_printed,
    unitarizable_norms_product, verify_abstract_model, verify_coideal_relations, verify_unitarizable,
)
from src.lib.errors import GenericityError, PreconditionError
from src.lib.exactq import ONE, QScalar, evaluate_at, q_pow, qint
from src.lib.linalg import QMatrix, matmul
from src.lib.uqsl3rep import Q_DIFF, Weight, build_rep

q = q_pow(1)
DEFAULT = CoidealParams(q ** 2, q)
PARAMS = [DEFAULT, CoidealParams(1, 1), CoidealParams(q ** 3, 1)]


def test_params():
    assert DEFAULT.unitary_real
    assert not CoidealParams(1, 1).unitary_real
    assert CoidealParams.from_text("q^2", "q") == DEFAULT
    with pytest.raises(PreconditionError):
        CoidealParams(0, q)


def test_trivial_module():
    ops = coideal_matrices(build_rep(Weight(0, 0)), DEFAULT)
    assert ops.B1.is_zero() and ops.B2.is_zero()
    assert ops.K == QMatrix.identity(1)
    assert ops.C1.get(0, 0) == (-DEFAULT.c2 + (q + 1 / q) * DEFAULT.c1) / Q_DIFF


@pytest.mark.parametrize("lam", [(1, 0), (0, 1), (1, 1), (2, 1)])
def test_K_B1_commutation(lam):
    ops = coideal_matrices(build_rep(Weight(*lam)), DEFAULT)
    assert (matmul(ops.K, ops.B1) - matmul(ops.B1, ops.K).scale(q_pow(-3))).is_zero()


@pytest.mark.parametrize("p", PARAMS)
@pytest.mark.parametrize("lam", [(1, 0), (1, 1), (2, 1), (0, 2)])
def test_coideal_relations(lam, p):
    report = verify_coideal_relations(coideal_matrices(build_rep(Weight(*lam)), p))
    assert report.passed, report.first_failure()


def test_star_checks_run_only_when_unitary():
    rep = build_rep(Weight(1, 1))
    assert verify_coideal_relations(coideal_matrices(rep, DEFAULT)).get("star B1=-c1K^-1B2").passed
    skipped = verify_coideal_relations(coideal_matrices(rep, CoidealParams(1, 1))).get("star relations")
    assert skipped.informational


def test_fault_injection_shift_C1():
    """C1 + I：[C1,C2] 仍为零，但 C1B1 = qB1C1 失败"""
    ops = coideal_matrices(build_rep(Weight(1, 1)), DEFAULT)
    bad = ops.replace(C1=ops.C1 + QMatrix.identity(ops.rep.dim))
    report = verify_coideal_relations(bad)
    assert report.get("[C1,C2]=0").passed
    assert not report.get("C1B1=qB1C1").passed
    assert not report.passed


@pytest.mark.parametrize("p", [DEFAULT, CoidealParams(1, q ** 5), CoidealParams(q, 3)])
def test_C1_matches_explicit_matrix(p):
    ops = coideal_matrices(build_rep(Weight(1, 0)), p)
    assert compare_explicit_C1(ops).passed
    assert ops.C1 == explicit_C1_matrix(p)


def test_abstract_irrep_n0():
    kappa = q_pow(3)
    irrep = abstract_irrep(kappa, 0, DEFAULT)
    c1, c2 = DEFAULT.c1, DEFAULT.c2
    assert irrep.b == (QScalar(0),)
    assert irrep.eta1 == (c1 / kappa * q * (1 + q_pow(-2)) - c2 * kappa) / Q_DIFF


def test_abstract_irrep_eta2_example():
    irrep = abstract_irrep(q, 0, DEFAULT)
    c1, c2 = DEFAULT.c1, DEFAULT.c2
    assert irrep.eta2 == (c2 * q / q * (1 + q ** 2) - c1 / q) / Q_DIFF


def test_abstract_irrep_b1_example():
    kappa = q_pow(-2)
    irrep = abstract_irrep(kappa, 1, DEFAULT)
    c1, c2 = DEFAULT.c1, DEFAULT.c2
    expected = c1 / kappa * q_pow(-3) * qint(1) * (1 - q ** 2) * (1 + c2 / c1 * kappa ** 2 * q ** 3) / Q_DIFF
    assert irrep.b[1] == expected


@pytest.mark.parametrize("n", range(0, 9))
@pytest.mark.parametrize("kappa_exp", [-4, 1])
def test_b_forms_and_recurrence_agree(n, kappa_exp):
    irrep = abstract_irrep(q_pow(kappa_exp), n, DEFAULT)
    assert list(irrep.b) == b_recurrence(irrep.kappa, n, DEFAULT, irrep.eta1)
    assert len(set(irrep.weights)) == n + 1


@pytest.mark.parametrize("n", range(0, 4))
def test_abstract_model_relations(n):
    report = verify_abstract_model(abstract_irrep(q_pow(-2), n, DEFAULT))
    assert report.passed, report.first_failure()


def test_abstract_irrep_genericity():
    """1 + c2c1^-1 κ^2 q^{2j+2n-1} = 0 时 b_j = 0"""
    with pytest.raises(GenericityError) as info:
        abstract_irrep(q_pow(-1), 1, CoidealParams(1, -q_pow(-1)))
    assert info.value.witness == 1
    with pytest.raises(PreconditionError):
        abstract_irrep(0, 1, DEFAULT)


@pytest.mark.parametrize("p, lam, passed, witness", [
    (DEFAULT, (2, 5), True, None),
    (CoidealParams(1, -q ** 3), (1, 0), False, 3),
    (CoidealParams(1, -q ** 9), (1, 0), True, None),
    (CoidealParams(1, -q), (1, 0), False, 1),
])
def test_check_genericity(p, lam, passed, witness):
    check = check_genericity(p, Weight(*lam))
    assert check.passed == passed
    assert check.witness == witness


def test_require_generic_raises():
    with pytest.raises(GenericityError) as info:
        require_generic(CoidealParams(1, -q ** 3), Weight(1, 0))
    assert info.value.witness == 3


def test_unitarizable_norms():
    norms = unitarizable_norms(q_pow(-2), 1, DEFAULT)
    assert norms[0] == ONE
    irrep = abstract_irrep(q_pow(-2), 1, DEFAULT)
    assert norms == unitarizable_norms_product(irrep)
    with pytest.raises(PreconditionError):
        unitarizable_norms(q, 1, CoidealParams(1, 1))


@pytest.mark.parametrize("n", range(0, 6))
def test_unitarizable_positive(n):
    for kappa_exp in (-5, -2, 1):
        norms = unitarizable_norms(q_pow(kappa_exp), n, DEFAULT)
        assert all(evaluate_at(x, Fraction(1, 2)) > 0 for x in norms)


def test_printed_norm_variant_differs():
    assert unitarizable_norms_printed(q_pow(-2), 2, DEFAULT) != unitarizable_norms(q_pow(-2), 2, DEFAULT)


@pytest.mark.parametrize("n", [1, 3])
def test_verify_unitarizable(n):
    report = verify_unitarizable(q_pow(-2), n, DEFAULT)
    assert report.passed, report.first_failure()


def test_orthonormal_squares():
    irrep = abstract_irrep(q_pow(1), 3, DEFAULT)
    b1, b2 = orthonormal_action_squares(irrep)
    assert b1[0].is_zero() and b2[-1].is_zero()
    for i in range(1, 4):
        assert b1[i] == -irrep.b[i] / (DEFAULT.c2 * irrep.kappa * q_pow(3 * i - 3))
