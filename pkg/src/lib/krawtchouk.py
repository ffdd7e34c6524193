"""
对偶 q-Krawtchouk 多项式（底数 q^2）
r_l(λ(x)) 由三项递推生成，显式的超几何求和作交叉验证
"""
import logging

from src.lib.errors import PreconditionError
from src.lib.exactq import ONE, QScalar, q_pow, qpoch

logger = logging.getLogger(__name__)


def lambda_x(x, c, N):
    """格点 λ(x) = q^{-2x} + c q^{2x-2N}"""
    return q_pow(-2 * x) + QScalar(c) * q_pow(2 * x - 2 * N)


def dual_q_krawtchouk_all(x, c, N, top=None):
    """r_0, ..., r_top（默认 top = N）在 λ(x) 处的值"""
    c = QScalar(c)
    if top is None:
        top = N
    lam = lambda_x(x, c, N)
    values = [ONE]
    prev = QScalar(0)
    for l in range(top):
        nxt = ((lam - (1 + c) * q_pow(2 * l - 2 * N)) * values[-1]
               - c * q_pow(-2 * N) * (1 - q_pow(2 * l)) * (1 - q_pow(2 * l - 2 * N - 2)) * prev)
        prev = values[-1]
        values.append(nxt)
    return values


def dual_q_krawtchouk_r(l, x, c, N):
    """r_l(λ(x))，r_0 = 1，r_{-1} = 0"""
    if l < 0 or l > N + 1 or x < 0 or x > N:
        raise PreconditionError(f"需要 0 ≤ l ≤ N+1, 0 ≤ x ≤ N: l={l}, x={x}, N={N}")
    return dual_q_krawtchouk_all(x, c, N, top=l)[l]


def dual_q_krawtchouk_hypergeometric(l, x, c, N):
    """
    有限超几何和给出的 r_l(λ(x)) = (q^{-2N};q^2)_l K_l(λ(x))；
    分母中的 q-移位阶乘为零时无定义，返回 None
    """
    c = QScalar(c)
    total = QScalar(0)
    for k in range(min(l, x) + 1):
        den = qpoch(2 * N - 2 * x - 2 * l + 2, 2, k) * qpoch(2, 2, k)
        if not den:
            return None
        total = total + qpoch(-2 * l, 2, k) * qpoch(-2 * x, 2, k) / den * (c * q_pow(2 * x + 2)) ** k
    return qpoch(2 * x - 2 * N, 2, l) * q_pow(-2 * l * x) * total


def consistency_table(c, N):
    """递推与超几何两条路线的比较，返回 (l, x, 一致/未定义) 列表"""
    rows = []
    for x in range(N + 1):
        values = dual_q_krawtchouk_all(x, c, N)
        for l in range(N + 1):
            h = dual_q_krawtchouk_hypergeometric(l, x, c, N)
            rows.append((l, x, None if h is None else h == values[l]))
    logger.debug(f"dual q-Krawtchouk N={N}: {len(rows)} 项比较")
    return rows
