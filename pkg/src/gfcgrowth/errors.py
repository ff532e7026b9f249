"""Exception hierarchy.

Input problems derive from :class:`InputError`; refusals that stem from the
mathematics (inadmissible kernels, failed brackets, non-convergent quadrature)
derive from :class:`RefusalError`. The CLI maps the two families to exit
codes 1 and 2.
"""


class GFCError(Exception):
    pass


class InputError(GFCError, ValueError):
    pass


class DomainError(InputError):
    """Argument outside the domain of the operation (e.g. on the branch cut)."""


class SpecParseError(InputError):
    def __init__(self, field: str, message: str):
        super().__init__(f"{field}: {message}")
        self.field = field


class RefusalError(GFCError):
    pass


class NonFiniteError(RefusalError, ArithmeticError):
    pass


class InadmissibleKernelError(RefusalError):
    pass


class BracketError(RefusalError):
    def __init__(self, message: str, saturation: float):
        super().__init__(message)
        self.saturation = saturation


class ConvergenceError(RefusalError):
    pass


class StepSizeError(RefusalError):
    pass
