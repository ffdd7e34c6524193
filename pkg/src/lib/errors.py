"""异常类型 - 精确计算与分歧检验中使用的错误"""


class QSPBError(Exception):
    """所有库错误的基类"""


class DivisionByZeroError(QSPBError, ZeroDivisionError):
    """除以零"""


class PoleError(QSPBError):
    """在极点处求值"""

    def __init__(self, value, q0):
        super().__init__(f"q0 = {q0} 是 {value} 的极点")
        self.q0 = q0


class ExponentOverflowError(QSPBError, OverflowError):
    """q 的指数超过上限"""

    def __init__(self, exponent, cap):
        super().__init__(f"指数 {exponent} 超过上限 {cap}")
        self.exponent = exponent
        self.cap = cap


class ParseError(QSPBError, ValueError):
    """无法解析的标量文本"""


class DimensionMismatchError(QSPBError, ValueError):
    """矩阵或向量维数不一致"""


class NotInSpanError(QSPBError):
    """目标向量不在给定基的张成空间中"""


class IndexRangeError(QSPBError, IndexError):
    """指标超出范围"""


class PreconditionError(QSPBError, ValueError):
    """前置条件不满足"""


class GenericityError(QSPBError):
    """参数不满足一般性条件，witness 为违反条件的整数"""

    def __init__(self, message, witness):
        super().__init__(message)
        self.witness = witness


class InternalCheckError(QSPBError):
    """内部恒等式失败（通常意味着公式转写错误），context 记录指标"""

    def __init__(self, message, context=None):
        super().__init__(f"{message} {context or ''}".strip())
        self.context = dict(context or {})
