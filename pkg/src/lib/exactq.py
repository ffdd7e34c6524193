"""
精确标量域 - q 的有理函数（任意精度有理系数）与 q-组合数
Exact scalar field: rational functions in q with arbitrary precision coefficients,
q-integers and q-shifted factorials.
"""
import logging
import os
from fractions import Fraction
from math import gcd

import sympy
from sympy import QQ
from sympy.polys.fields import FracElement

from src.lib.errors import (
    DivisionByZeroError,
    ExponentOverflowError,
    ParseError,
    PoleError,
    PreconditionError,
)

logger = logging.getLogger(__name__)

Q_SYMBOL = sympy.Symbol("q")
# QQ(q)：所有标量运算都在这个域内完成，结果自动约分
QF = QQ.frac_field(Q_SYMBOL)
_FIELD = QF.field
_X = _FIELD.gens[0]

_exponent_cap = int(os.environ.get("QSPB_EXPONENT_CAP", 10 ** 6))


def get_exponent_cap():
    """获取当前指数上限"""
    return _exponent_cap


def set_exponent_cap(cap):
    """设置指数上限，返回旧值"""
    global _exponent_cap
    if cap <= 0:
        raise PreconditionError(f"指数上限必须为正: {cap}")
    old = _exponent_cap
    _exponent_cap = int(cap)
    return old


def _check_exponent(e):
    if abs(e) > _exponent_cap:
        raise ExponentOverflowError(e, _exponent_cap)


def _poly_degree(p):
    return max((m[0] for m in p.itermonoms()), default=0)


def _to_fraction(c):
    return Fraction(int(c.numerator), int(c.denominator))


class LaurentPoly:
    """q 的 Laurent 多项式 {指数: 有理系数}，不存储零系数"""

    __slots__ = ("_terms", "_key")

    def __init__(self, terms=None):
        clean = {}
        for e, c in (terms or {}).items():
            c = Fraction(c)
            if c != 0:
                _check_exponent(e)
                clean[int(e)] = c
        self._terms = clean
        self._key = tuple(sorted(clean.items(), reverse=True))

    @property
    def terms(self):
        return dict(self._terms)

    def is_zero(self):
        return not self._terms

    def min_exponent(self):
        return min(self._terms) if self._terms else 0

    def max_exponent(self):
        return max(self._terms) if self._terms else 0

    def evaluate(self, q0):
        q0 = Fraction(q0)
        return sum((c * q0 ** e for e, c in self._terms.items()), Fraction(0))

    def to_text(self):
        """规范文本：指数降序，如 q^3 - 2 + q^-1"""
        if not self._terms:
            return "0"
        parts = []
        for idx, (e, c) in enumerate(self._key):
            mono = "" if e == 0 else ("q" if e == 1 else f"q^{e}")
            a = abs(c)
            if not mono:
                body = str(a)
            elif a == 1:
                body = mono
            else:
                body = f"{a}*{mono}"
            if idx == 0:
                parts.append(f"-{body}" if c < 0 else body)
            else:
                parts.append(f" - {body}" if c < 0 else f" + {body}")
        return "".join(parts)

    def __eq__(self, other):
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        return self._key == other._key

    def __hash__(self):
        return hash(self._key)

    def __repr__(self):
        return f"LaurentPoly({self.to_text()!r})"


class QScalar:
    """
    q 的有理函数，不可变。

    内部保存 sympy 的 QQ(q) 元素；num/den 为规范形式：
    den 只含非负指数、容量为 1、首项系数为正，整体的 q 幂放在 num 中。
    """

    __slots__ = ("_f", "_canon")

    def __init__(self, value=0):
        if isinstance(value, QScalar):
            f = value._f
        elif isinstance(value, str):
            f = parse_qscalar(value)._f
        elif isinstance(value, Fraction):
            f = _FIELD(QQ(value.numerator, value.denominator))
        elif isinstance(value, int):
            f = _FIELD(value)
        elif isinstance(value, FracElement) and value.field == _FIELD:
            f = value
        else:
            raise TypeError(f"无法转换为 QScalar: {value!r}")
        if _poly_degree(f.numer) > _exponent_cap or _poly_degree(f.denom) > _exponent_cap:
            raise ExponentOverflowError(max(_poly_degree(f.numer), _poly_degree(f.denom)), _exponent_cap)
        self._f = f
        self._canon = None

    # ---------- 规范形式 ----------
    def _canonical(self):
        if self._canon is not None:
            return self._canon
        numer = {m[0]: _to_fraction(c) for m, c in self._f.numer.terms()}
        denom = {m[0]: _to_fraction(c) for m, c in self._f.denom.terms()}
        if not numer:
            self._canon = (LaurentPoly(), LaurentPoly({0: 1}))
            return self._canon
        shift = min(denom)
        lead = denom[max(denom)]
        num_g = 0
        den_l = 1
        for c in denom.values():
            num_g = gcd(num_g, c.numerator)
            den_l = den_l * c.denominator // gcd(den_l, c.denominator)
        content = Fraction(num_g, den_l)
        if lead < 0:
            content = -content
        num = LaurentPoly({e - shift: c / content for e, c in numer.items()})
        den = LaurentPoly({e - shift: c / content for e, c in denom.items()})
        self._canon = (num, den)
        return self._canon

    @property
    def num(self):
        return self._canonical()[0]

    @property
    def den(self):
        return self._canonical()[1]

    @property
    def raw(self):
        """底层 sympy 域元素"""
        return self._f

    # ---------- 域运算 ----------
    def __add__(self, other):
        other = _coerce(other)
        if other is None:
            return NotImplemented
        return QScalar(self._f + other._f)

    __radd__ = __add__

    def __sub__(self, other):
        other = _coerce(other)
        if other is None:
            return NotImplemented
        return QScalar(self._f - other._f)

    def __rsub__(self, other):
        other = _coerce(other)
        if other is None:
            return NotImplemented
        return QScalar(other._f - self._f)

    def __mul__(self, other):
        other = _coerce(other)
        if other is None:
            return NotImplemented
        return QScalar(self._f * other._f)

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = _coerce(other)
        if other is None:
            return NotImplemented
        if not other._f:
            raise DivisionByZeroError(f"除以零: {self.to_text()} / 0")
        return QScalar(self._f / other._f)

    def __rtruediv__(self, other):
        other = _coerce(other)
        if other is None:
            return NotImplemented
        return other / self

    def __neg__(self):
        return QScalar(-self._f)

    def __pos__(self):
        return self

    def __pow__(self, n):
        if not isinstance(n, int):
            return NotImplemented
        if n < 0 and not self._f:
            raise DivisionByZeroError("零的负幂")
        return QScalar(self._f ** n)

    def inverse(self):
        return QScalar(1) / self

    def is_zero(self):
        return not self._f

    def __bool__(self):
        return bool(self._f)

    def __eq__(self, other):
        other = _coerce(other)
        if other is None:
            return NotImplemented
        return self._canonical() == other._canonical()

    def __hash__(self):
        return hash(self._canonical())

    def size(self):
        """规范形式的项数，消元选主元时使用"""
        num, den = self._canonical()
        return len(num.terms) + len(den.terms)

    # ---------- 文本 ----------
    def to_text(self):
        num, den = self._canonical()
        if den == LaurentPoly({0: 1}):
            return num.to_text()
        return f"({num.to_text()})/({den.to_text()})"

    def to_sympy(self):
        return QF.to_sympy(self._f)

    def __str__(self):
        return self.to_text()

    def __repr__(self):
        return f"QScalar({self.to_text()!r})"


def _coerce(x):
    if isinstance(x, QScalar):
        return x
    if isinstance(x, (int, Fraction)):
        return QScalar(x)
    return None


ZERO = QScalar(0)
ONE = QScalar(1)


def q_pow(e):
    """q^e"""
    _check_exponent(e)
    return QScalar(_X ** int(e))


def qint(n):
    """q-整数 [n]_q = (q^n - q^-n)/(q - q^-1)"""
    if n < 0:
        return -qint(-n)
    # [n] = q^{n-1} + q^{n-3} + ... + q^{1-n}
    return QScalar(sum((_X ** (n - 1 - 2 * j) for j in range(n)), _FIELD(0)))


def qfactorial(n):
    """[n]_q!"""
    result = ONE
    for j in range(1, n + 1):
        result = result * qint(j)
    return result


def qpoch(a, step, n):
    """q-移位阶乘 (q^a; q^step)_n = (1 - q^a)(1 - q^{a+step})...(1 - q^{a+(n-1)step})

    step 取任意整数（范数公式中会出现 (q^{2n}; q^-2)_k）。
    """
    if n < 0:
        raise PreconditionError(f"q-移位阶乘的长度必须非负: {n}")
    result = _FIELD(1)
    for j in range(n):
        e = a + j * step
        _check_exponent(e)
        result = result * (1 - _X ** e)
    return QScalar(result)


def q_minus_inv(e):
    """q^e - q^-e"""
    return q_pow(e) - q_pow(-e)


def evaluate_at(x, q0):
    """在有理数 q0 处精确求值"""
    q0 = Fraction(q0)
    if q0 == 0:
        raise PreconditionError("q0 不能为 0")
    x = QScalar(x)
    num, den = x._canonical()
    d = den.evaluate(q0)
    if d == 0:
        raise PoleError(x.to_text(), q0)
    return num.evaluate(q0) / d


def as_signed_monomial(x):
    """若 x = ±q^e 返回 (符号, e)，否则返回 None"""
    x = QScalar(x)
    num, den = x._canonical()
    if den != LaurentPoly({0: 1}):
        return None
    terms = num.terms
    if len(terms) != 1:
        return None
    (e, c), = terms.items()
    if c == 1:
        return (1, e)
    if c == -1:
        return (-1, e)
    return None


def parse_qscalar(text):
    """解析规范文本（也接受 ** 和多余空白），如 "(q^3 - 2 + q^-1)/(q^2 + 1)" """
    if isinstance(text, QScalar):
        return text
    source = str(text).strip()
    if not source:
        raise ParseError("空的标量文本")
    try:
        expr = sympy.sympify(source.replace("^", "**"), locals={"q": Q_SYMBOL})
    except (sympy.SympifyError, SyntaxError, TypeError) as exc:
        raise ParseError(f"无法解析: {text!r}") from exc
    if not isinstance(expr, sympy.Expr) or expr.free_symbols - {Q_SYMBOL} or expr.has(sympy.Float):
        raise ParseError(f"只允许 q 的有理系数有理函数: {text!r}")
    try:
        f = QF.from_sympy(expr)
    except Exception as exc:
        raise ParseError(f"不是 q 的有理函数: {text!r}") from exc
    if f is None:
        raise ParseError(f"不是 q 的有理函数: {text!r}")
    return QScalar(f)


def to_text(x):
    return QScalar(x).to_text()


QVAR = q_pow(1)
