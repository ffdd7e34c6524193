"""
测试对偶 q-Krawtchouk 多项式：三项递推与超几何求和两条路线
"""
import pytest

from src.lib.branching import krawtchouk_parameter
from src.lib.coideal import CoidealParams
from src.lib.errors import PreconditionError
from src.lib.exactq import ONE, q_pow, qpoch
from src.lib.krawtchouk import (
    consistency_table, dual_q_krawtchouk_all, dual_q_krawtchouk_hypergeometric, dual_q_krawtchouk_r, lambda_x,
)
from src.lib.uqsl3rep import Weight

q = q_pow(1)
DEFAULT = CoidealParams(q ** 2, q)


def test_base_cases():
    c = q_pow(3)
    for x in range(4):
        assert dual_q_krawtchouk_r(0, x, c, 3) == ONE
        assert dual_q_krawtchouk_r(1, x, c, 3) == lambda_x(x, c, 3) - (1 + c) * q_pow(-6)


@pytest.mark.parametrize("N", range(0, 5))
def test_x_zero(N):
    """x = 0 时 r_l(λ(0)) = (q^{-2N};q^2)_l"""
    c = -q_pow(5)
    for l in range(N + 1):
        assert dual_q_krawtchouk_r(l, 0, c, N) == qpoch(-2 * N, 2, l)
        assert dual_q_krawtchouk_hypergeometric(l, 0, c, N) == qpoch(-2 * N, 2, l)


def test_top_degree_vanishes_on_lattice():
    """r_{N+1} 在格点 λ(x) 上为零"""
    c = q_pow(-3)
    N = 3
    for x in range(N + 1):
        assert dual_q_krawtchouk_r(N + 1, x, c, N).is_zero()


def test_range_checks():
    with pytest.raises(PreconditionError):
        dual_q_krawtchouk_r(5, 0, q, 3)
    with pytest.raises(PreconditionError):
        dual_q_krawtchouk_r(1, 4, q, 3)


def test_all_matches_single():
    c = q_pow(2)
    values = dual_q_krawtchouk_all(2, c, 4)
    assert values == [dual_q_krawtchouk_r(l, 2, c, 4) for l in range(5)]


@pytest.mark.parametrize("N", range(0, 7))
def test_routes_agree_for_branching_parameters(N):
    """(c1, c2) = (q^2, q) 在各 λ1、i 下诱导的 c 值：两条路线处处一致（超几何有定义时）"""
    for lambda1 in range(0, 3):
        for i in range(lambda1 + 1):
            c = krawtchouk_parameter(Weight(lambda1, N), DEFAULT, i)
            rows = consistency_table(c, N)
            assert all(ok is not False for _, _, ok in rows)
            assert any(ok for _, _, ok in rows)
