"""Exception hierarchy shared by every module."""


class CforgeError(Exception):
    """Base class for all engine errors."""


class NotPrime(CforgeError):
    pass


class SizeCapExceeded(CforgeError):
    pass


class Singular(CforgeError):
    pass


class FormViolation(CforgeError):
    pass


class NotInGroup(CforgeError):
    pass


class NotASubgroup(CforgeError):
    pass


class BadSpec(CforgeError):
    pass


class SteinbergNotIdentified(CforgeError):
    pass


class InvariantViolation(CforgeError):
    """An internal consistency check failed; indicates a bug, never bad input."""
