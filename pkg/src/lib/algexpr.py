"""
生成元单词的形式线性组合及其在 V_λ 上的求值
符号：E1 E2 F1 F2 K1 K1inv K2 K2inv F3 E3 F3hat[a] E3hat[a]（a 为整数）
"""
import logging
import re
from functools import lru_cache

from src.lib.errors import ParseError
from src.lib.exactq import ONE, QScalar, q_pow
from src.lib.linalg import QMatrix, QVector, matmul, matvec
from src.lib.uqsl3rep import GENERATORS, Q_DIFF

logger = logging.getLogger(__name__)

_HAT = re.compile(r"^(F3hat|E3hat)\[(-?\d+)\]$")
_STAR = {
    "E1": ("K1", "F1"),
    "E2": ("K2", "F2"),
    "F1": ("E1", "K1inv"),
    "F2": ("E2", "K2inv"),
    "K1": ("K1",),
    "K1inv": ("K1inv",),
    "K2": ("K2",),
    "K2inv": ("K2inv",),
}


def _check_symbol(s):
    if s in GENERATORS or s in ("F3", "E3") or _HAT.match(s):
        return s
    raise ParseError(f"未知符号: {s}")


class AlgExpr:
    """{单词(符号元组): QScalar 系数}；单词中最左边的符号最后作用"""

    __slots__ = ("terms",)

    def __init__(self, terms=None):
        clean = {}
        for word, c in (terms or {}).items():
            word = tuple(_check_symbol(s) for s in word)
            c = QScalar(c)
            if c:
                clean[word] = clean.get(word, QScalar(0)) + c
        self.terms = {w: c for w, c in clean.items() if c}

    @classmethod
    def sym(cls, name):
        return cls({(name,): ONE})

    @classmethod
    def scalar(cls, c):
        return cls({(): c})

    @classmethod
    def word(cls, *symbols):
        return cls({tuple(symbols): ONE})

    def __add__(self, other):
        other = _lift(other)
        out = dict(self.terms)
        for w, c in other.terms.items():
            out[w] = out.get(w, QScalar(0)) + c
        return AlgExpr(out)

    __radd__ = __add__

    def __sub__(self, other):
        return self + (-_lift(other))

    def __rsub__(self, other):
        return _lift(other) - self

    def __neg__(self):
        return AlgExpr({w: -c for w, c in self.terms.items()})

    def __mul__(self, other):
        other = _lift(other)
        out = {}
        for w1, c1 in self.terms.items():
            for w2, c2 in other.terms.items():
                w = w1 + w2
                out[w] = out.get(w, QScalar(0)) + c1 * c2
        return AlgExpr(out)

    def __rmul__(self, other):
        return _lift(other) * self

    def __truediv__(self, c):
        c = QScalar(c)
        return AlgExpr({w: v / c for w, v in self.terms.items()})

    def __pow__(self, n):
        result = AlgExpr.scalar(1)
        for _ in range(n):
            result = result * self
        return result

    def expand(self):
        """把 F3 E3 F3hat[a] E3hat[a] 展开为基本生成元的单词"""
        result = AlgExpr()
        for word, c in self.terms.items():
            term = AlgExpr.scalar(c)
            for s in word:
                term = term * _expand_symbol(s)
            result = result + term
        return result

    def star(self):
        """*-结构：E_i* = K_i F_i，F_i* = E_i K_i^-1，K 自伴；系数取恒等共轭"""
        out = {}
        for word, c in self.expand().terms.items():
            starred = ()
            for s in reversed(word):
                starred = starred + _STAR[s]
            out[starred] = out.get(starred, QScalar(0)) + c
        return AlgExpr(out)

    def __repr__(self):
        parts = [f"({c})*{'·'.join(w) or '1'}" for w, c in self.terms.items()]
        return "AlgExpr(" + " + ".join(parts) + ")"


def _lift(x):
    if isinstance(x, AlgExpr):
        return x
    return AlgExpr.scalar(x)


def F3hat(a=0):
    return AlgExpr.sym(f"F3hat[{a}]")


def E3hat(a=0):
    return AlgExpr.sym(f"E3hat[{a}]")


def S(name):
    """单个符号"""
    return AlgExpr.sym(name)


def P(a, K="K2"):
    """(q^a K - q^-a K^-1)/(q - q^-1)"""
    return (q_pow(a) * S(K) - q_pow(-a) * S(K + "inv")) / Q_DIFF


def P12(a):
    """(q^a K1K2 - q^-a (K1K2)^-1)/(q - q^-1)"""
    return (q_pow(a) * S("K1") * S("K2") - q_pow(-a) * S("K1inv") * S("K2inv")) / Q_DIFF


def _expand_symbol(s):
    if s in GENERATORS:
        return AlgExpr.sym(s)
    if s == "F3":
        return S("F1") * S("F2") - q_pow(1) * S("F2") * S("F1")
    if s == "E3":
        return S("E2") * S("E1") - q_pow(1) * S("E1") * S("E2")
    kind, a = _HAT.match(s).groups()
    a = int(a)
    if kind == "F3hat":
        return S("F1") * S("F2") * P(a + 1) - S("F2") * S("F1") * P(a)
    return P(a + 1) * S("E2") * S("E1") - P(a) * S("E1") * S("E2")


@lru_cache(maxsize=4096)
def _symbol_matrix(rep, s):
    if s in GENERATORS:
        return rep.gen(s)
    return eval_expr(rep, _expand_symbol(s))


def _word_matrix(rep, word):
    if not word:
        return QMatrix.identity(rep.dim)
    result = _symbol_matrix(rep, word[0])
    for s in word[1:]:
        result = matmul(result, _symbol_matrix(rep, s))
    return result


def eval_expr(rep, e):
    """同态求值：单词按矩阵乘积计算"""
    e = _lift(e)
    result = QMatrix.zeros(rep.dim, rep.dim)
    for word, c in e.terms.items():
        result = result + _word_matrix(rep, word).scale(c)
    return result


def apply_expr(rep, e, v):
    """e·v，从右到左逐个作用，不形成整体矩阵"""
    e = _lift(e)
    result = QVector(rep.dim)
    for word, c in e.terms.items():
        w = v
        for s in reversed(word):
            w = matvec(_symbol_matrix(rep, s), w)
            if w.is_zero():
                break
        result = result + w.scale(c)
    return result
