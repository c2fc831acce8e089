"""
仿真与解析计算中使用的异常类型。

- InvalidArgumentError：参数越界或不满足前置条件（ValueError 子类）
- DomainError：数学定义域错误，如除以零、对零取对数（ArithmeticError 子类）
- DegenerateInputError：退化输入导致某一支路 LLR 无定义，携带支路下标
"""

from typing import Optional


class InvalidArgumentError(ValueError):
    """参数非法"""


class DomainError(ArithmeticError):
    """定义域错误"""


class DegenerateInputError(ValueError):
    """退化输入（分母为零、δ 无定义等）"""

    def __init__(self, message: str, branch: Optional[int] = None):
        self.branch = branch
        if branch is not None:
            message = f"[支路 {branch}] {message}"
        super().__init__(message)
