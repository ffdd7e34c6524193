"""
测试 V_λ 的构造：基、范数表、生成元矩阵、表达式求值与各项关系检验
"""
import pytest

from src.lib.algexpr import AlgExpr, F3hat, S, apply_expr, eval_expr
from src.lib.errors import IndexRangeError, PreconditionError
from src.lib.exactq import ONE, QScalar, evaluate_at, q_pow, qint
from src.lib.linalg import QMatrix, QVector, matmul
from src.lib.rep_checks import (
    basis_word, inner_product_oracle, verify_defining_relations, verify_lemma_relations, verify_norms,
)
from src.lib.uqsl3rep import (
    ActionCoeffs, BasisIndex, Q_DIFF, Weight, build_rep, enumerate_basis, generator_matrix, norm_H, norm_H_printed,
)

q = q_pow(1)

SMALL_WEIGHTS = [(0, 0), (1, 0), (0, 1), (1, 1), (2, 1), (1, 2)]


@pytest.mark.parametrize("lam, dim", [((0, 0), 1), ((1, 0), 3), ((0, 1), 3), ((1, 1), 8), ((2, 5), 81), ((3, 3), 64)])
def test_dimension(lam, dim):
    w = Weight(*lam)
    assert w.dimension == dim
    assert len(enumerate_basis(w)) == dim


def test_weight_validation():
    with pytest.raises(PreconditionError):
        Weight(-1, 0)
    with pytest.raises(PreconditionError):
        Weight(1.5, 0)


def test_basis_order():
    assert [b.as_tuple() for b in enumerate_basis(Weight(1, 0))] == [(0, 0, 0), (0, 0, 1), (1, 0, 1)]
    assert enumerate_basis(Weight(0, 0)) == [BasisIndex(0, 0, 0)]
    basis = enumerate_basis(Weight(2, 3))
    assert basis == sorted(basis)


def test_norm_examples():
    w = Weight(1, 0)
    assert norm_H(w, BasisIndex(0, 0, 0)) == ONE
    assert norm_H(w, BasisIndex(0, 0, 1)) == q
    with pytest.raises(IndexRangeError):
        norm_H(w, BasisIndex(0, 1, 0))


def test_printed_norm_differs_only_for_l_positive():
    w = Weight(1, 2)
    for idx in enumerate_basis(w):
        same = norm_H(w, idx) == norm_H_printed(w, idx)
        assert same == (idx.l == 0)


def test_generator_examples():
    w = Weight(1, 0)
    assert generator_matrix(w, "K1") == QMatrix.diag([q, 1 / q, ONE])
    F2 = generator_matrix(w, "F2")
    assert F2.entries == {(2, 1): ONE}
    assert generator_matrix(Weight(0, 0), "E1").is_zero()
    with pytest.raises(PreconditionError):
        generator_matrix(w, "X1")


def test_weight_exponents_match_diagonals():
    rep = build_rep(Weight(2, 1))
    co = ActionCoeffs(rep.weight)
    for pos, idx in enumerate(rep.basis):
        assert rep.gen("K1").get(pos, pos) == q_pow(co.k1_exponent(*idx.as_tuple()))
        assert rep.gen("K2").get(pos, pos) == q_pow(co.k2_exponent(*idx.as_tuple()))


def test_eval_expr_examples():
    rep = build_rep(Weight(1, 1))
    assert eval_expr(rep, S("K1") * S("K1inv")) == QMatrix.identity(rep.dim)
    E3 = S("E2") * S("E1") - q * S("E1") * S("E2")
    assert eval_expr(rep, E3) == eval_expr(rep, S("E3"))
    comm = S("E1") * S("F1") - S("F1") * S("E1")
    assert eval_expr(rep, comm) == eval_expr(rep, (S("K1") - S("K1inv")) / Q_DIFF)


def test_F3hat_on_highest_weight_vector():
    rep = build_rep(Weight(0, 1))
    v = rep.highest_weight_vector()
    assert apply_expr(rep, F3hat(0), v) == rep.vector(BasisIndex(0, 1, 0))


def test_algexpr_star_is_involutive_on_words():
    e = S("E1") * S("F2") + q * S("K1")
    assert eval_expr(build_rep(Weight(1, 1)), e.star().star()) == eval_expr(build_rep(Weight(1, 1)), e)


@pytest.mark.parametrize("lam", SMALL_WEIGHTS)
def test_defining_relations(lam):
    report = verify_defining_relations(build_rep(Weight(*lam)))
    assert report.passed, report.first_failure()


def test_defining_relations_detect_fault():
    """一个系数乘以 q 之后检验失败，并给出出错位置"""
    rep = build_rep(Weight(1, 1))
    F1 = rep.gen("F1")
    (r, c), value = sorted(F1.entries.items())[0]
    entries = F1.entries
    entries[(r, c)] = value * q
    bad = rep.with_generator("F1", QMatrix(rep.dim, rep.dim, entries))
    report = verify_defining_relations(bad)
    assert not report.passed
    assert "(" in report.first_failure().detail


@pytest.mark.parametrize("lam", [(0, 0), (1, 1), (2, 1)])
def test_lemma_relations(lam):
    report = verify_lemma_relations(build_rep(Weight(*lam)), a_range=range(-2, 3))
    assert report.passed, report.first_failure()


def test_printed_E1F3_variant_is_informational():
    report = verify_lemma_relations(build_rep(Weight(1, 1)), a_range=range(0, 1))
    entry = report.get("E1F3=F3E1+F2K1 (printed)")
    assert entry.informational
    assert not entry.passed
    assert report.passed


def test_inner_product_oracle_examples():
    rep = build_rep(Weight(1, 0))
    assert inner_product_oracle(rep, AlgExpr.scalar(1), AlgExpr.scalar(1)) == ONE
    assert inner_product_oracle(rep, S("F1"), S("F1")) == q
    assert inner_product_oracle(rep, basis_word((1, 0, 1)), basis_word((1, 0, 1))) == norm_H(rep.weight, BasisIndex(1, 0, 1))
    rep01 = build_rep(Weight(0, 1))
    assert inner_product_oracle(rep01, S("F1"), S("F2")).is_zero()


@pytest.mark.parametrize("lam", [(1, 0), (1, 1), (2, 1), (1, 2)])
def test_norms_match_oracle(lam):
    report = verify_norms(build_rep(Weight(*lam)))
    assert report.passed, report.first_failure()


def test_norms_positive_at_sample_points():
    rep = build_rep(Weight(2, 2))
    for h in rep.norms:
        assert evaluate_at(h, "1/2") > 0
        assert evaluate_at(h, "1/3") > 0


def test_rep_space_lookup():
    rep = build_rep(Weight(1, 0))
    assert rep.position((1, 0, 1)) == 2
    assert rep.vector(BasisIndex(0, 0, 1)) == QVector.basis(3, 1)
    with pytest.raises(IndexRangeError):
        rep.position((2, 0, 0))
    assert rep.d_h() == QMatrix.diag(list(rep.norms))


def test_layer_actions_closed_forms():
    """U_i 上 E2F2 的作用：E2F2 b = η_{k+1} b"""
    rep = build_rep(Weight(2, 2))
    co = ActionCoeffs(rep.weight)
    E2F2 = matmul(rep.gen("E2"), rep.gen("F2"))
    for pos, idx in enumerate(rep.basis):
        k, l, m = idx.as_tuple()
        if BasisIndex(k + 1, l, m).in_range(rep.weight):
            assert E2F2.get(pos, pos) == co.eta(k + 1, l, m)


@pytest.mark.slow
@pytest.mark.parametrize("lam", [(2, 5), (3, 3)])
def test_defining_relations_large(lam):
    assert verify_defining_relations(build_rep(Weight(*lam))).passed


@pytest.mark.slow
def test_lemma_relations_large():
    report = verify_lemma_relations(build_rep(Weight(3, 2)))
    assert report.passed, report.first_failure()


def test_qint_in_actions():
    assert ActionCoeffs(Weight(2, 3)).eta(1, 0, 0) == qint(1) * (q_pow(3) - q_pow(-3)) / Q_DIFF
    assert isinstance(ActionCoeffs(Weight(2, 3)).a(0, 0, 0), QScalar)


def test_K_weight_on_layers():
    """K = K1 K2^-1 在 U_i 上的特征值为 q^{λ1-λ2-3i}"""
    rep = build_rep(Weight(2, 3))
    co = ActionCoeffs(rep.weight)
    K = matmul(rep.gen("K1"), rep.gen("K2inv"))
    for pos, idx in enumerate(rep.basis):
        k, l, m = idx.as_tuple()
        exponent = co.k1_exponent(k, l, m) - co.k2_exponent(k, l, m)
        assert exponent == 2 - 3 - 3 * (m - k)
        assert K.get(pos, pos) == q_pow(exponent)


WEIGHTS_UP_TO_6 = [(l1, s - l1) for s in range(7) for l1 in range(s + 1)]
WEIGHTS_UP_TO_3 = [(l1, l2) for l1 in range(4) for l2 in range(4)]


@pytest.mark.slow
@pytest.mark.parametrize("lam", WEIGHTS_UP_TO_6)
def test_defining_relations_all_weights_up_to_6(lam):
    report = verify_defining_relations(build_rep(Weight(*lam)))
    assert report.passed, report.first_failure()


@pytest.mark.slow
@pytest.mark.parametrize("lam", WEIGHTS_UP_TO_3)
def test_lemma_relations_all_small_weights(lam):
    """λ1, λ2 ≤ 3，a 取 -3..3"""
    report = verify_lemma_relations(build_rep(Weight(*lam)))
    assert report.passed, report.first_failure()


@pytest.mark.slow
@pytest.mark.parametrize("lam", WEIGHTS_UP_TO_3)
def test_norms_all_small_weights(lam):
    report = verify_norms(build_rep(Weight(*lam)))
    assert report.passed, report.first_failure()
