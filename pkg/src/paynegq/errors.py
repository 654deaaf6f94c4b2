"""Exception types shared across the package."""


class PayneGQError(Exception):
    """Base class for all package errors."""


class NotPrime(PayneGQError):
    pass


class ReducibleModulus(PayneGQError):
    pass


class DegreeMismatch(PayneGQError):
    pass


class NotADivisor(PayneGQError):
    pass


class NoSolution(PayneGQError):
    """Artin-Schreier equation has no solution; carries the nonzero trace."""

    def __init__(self, trace):
        super().__init__(f"no solution; relative trace is {trace} != 0")
        self.trace = trace


class InconsistentParams(PayneGQError):
    pass


class TooLarge(PayneGQError):
    pass


class FieldMismatch(PayneGQError):
    pass


class CapExceeded(PayneGQError):
    def __init__(self, cap, reached=None):
        msg = f"cap {cap} exceeded"
        if reached is not None:
            msg += f" (reached {reached})"
        super().__init__(msg)
        self.cap = cap
        self.reached = reached


class InvalidParams(PayneGQError):
    pass


class SelfCheckFailed(PayneGQError):
    def __init__(self, message, witness=None):
        super().__init__(message)
        self.witness = witness


class NotInModelForm(PayneGQError):
    pass


class NotFound(PayneGQError):
    pass
