"""Exception types raised across the package.

Every error subclasses :class:`ModelError` (itself a ``ValueError``) so the CLI
can map all validation failures to a single exit status.
"""


class ModelError(ValueError):
    pass


class RangeError(ModelError):
    pass


class OddSize(ModelError):
    pass


class NotPermutation(ModelError):
    pass


class NotSelfInverse(ModelError):
    pass


class ParityMismatch(ModelError):
    pass


class LengthMismatch(ModelError):
    pass


class TooLarge(ModelError):
    pass


class TooSmall(ModelError):
    pass


class NotBijection(ModelError):
    pass


class NotPrime(ModelError):
    pass
