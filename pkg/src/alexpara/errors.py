"""Exception types shared across the package."""


class AlexparaError(Exception):
    pass


class CycleDetected(AlexparaError):
    """The closure of a cover relation is not antisymmetric."""


class NotAPartialOrder(AlexparaError):
    pass


class UnknownLabel(AlexparaError, KeyError):
    def __str__(self):
        return f"unknown label: {self.args[0]!r}"


class SizeLimitExceeded(AlexparaError):
    pass


class ExplosionLimit(AlexparaError):
    """A generator ball grew past the configured cap."""


class UnknownExample(AlexparaError, KeyError):
    def __str__(self):
        return f"unknown example: {self.args[0]!r}"


class BadParameter(AlexparaError, ValueError):
    pass


class NotSymmetric(AlexparaError, ValueError):
    pass


class BadChain(AlexparaError, ValueError):
    pass
