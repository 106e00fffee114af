class ExtrootError(Exception):
    """Base class for every error raised by the toolkit."""


# Input errors


class InputError(ExtrootError, ValueError):
    pass


class ZeroPolynomial(InputError):
    def __init__(self, what: str = "polynomial"):
        super().__init__(f"{what} is the zero polynomial")


class PolynomialSyntaxError(InputError):
    def __init__(self, message: str, line: int, column: int):
        super().__init__(f"{message} (line {line}, column {column})")
        self.line = line
        self.column = column


class DegreeOrder(InputError):
    def __init__(self, deg_p: int, deg_q: int):
        super().__init__(f"deg_Y Q = {deg_q} must be smaller than deg_Y P = {deg_p}")
        self.deg_p = deg_p
        self.deg_q = deg_q


class SystemFormatError(InputError):
    pass


# Numeric errors


class NumericError(ExtrootError, ArithmeticError):
    pass


class DivisorContainsZero(NumericError):
    def __init__(self):
        super().__init__("divisor ball contains zero")


class PrecisionDemandUnmet(NumericError):
    """Input balls are too wide to certify the requested accuracy.

    ``required_bits`` is the per-axis accuracy the caller should refine to before retrying.
    """

    def __init__(self, required_bits: int, target_prec: int):
        super().__init__(f"cannot reach 2^-{target_prec}: axis balls need radius below 2^-{required_bits}")
        self.required_bits = required_bits
        self.target_prec = target_prec


class InsufficientPrecision(NumericError):
    pass


# Refusals: the instance is too large for the configured ceilings. Never a wrong answer.


class RefusalError(ExtrootError):
    pass


class ThresholdOverflow(RefusalError):
    def __init__(self, name: str, value: int, ceiling: int):
        super().__init__(f"{name} = {value} bits exceeds the ceiling of {ceiling} bits")
        self.name = name
        self.value = value
        self.ceiling = ceiling


class InstanceTooLarge(RefusalError):
    pass


class OracleExhausted(RefusalError):
    def __init__(self, precision: int, ceiling: int):
        super().__init__(f"certification failed below the precision ceiling ({precision} > {ceiling} bits)")
        self.precision = precision
        self.ceiling = ceiling


class VerificationFailed(ExtrootError):
    def __init__(self, reason: str, detail: str):
        super().__init__(f"{reason}: {detail}")
        self.reason = reason
        self.detail = detail
