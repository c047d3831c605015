class BMGaussError(Exception):
    exit_code = 3


class InvalidParams(BMGaussError, ValueError):
    exit_code = 2


class DomainError(BMGaussError, ValueError):
    pass


class GammaOverflow(BMGaussError, OverflowError):
    pass


class ConvergenceError(BMGaussError, RuntimeError):
    pass


class UnsupportedCombination(BMGaussError, NotImplementedError):
    pass


class DimensionMismatch(BMGaussError, ValueError):
    pass


class SchemaError(BMGaussError, ValueError):
    exit_code = 2

    def __init__(self, path: str, message: str) -> None:
        self.path = path
        super().__init__(f"{path}: {message}" if path else message)


class UsageError(BMGaussError):
    exit_code = 2


def exit_code_for(exc: BaseException) -> int:
    if isinstance(exc, BMGaussError):
        return int(exc.exit_code)
    # I/O and anything unexpected count as numeric-run failures
    return 3
