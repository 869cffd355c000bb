"""Exception types shared across the package."""


class OyangError(Exception):
    pass


class BadParam(OyangError, ValueError):
    pass


class IncomposableLeadingTerm(OyangError):
    pass


class WindowViolation(OyangError):
    pass


class PoleCollision(OyangError, ZeroDivisionError):
    pass


class RankMismatch(OyangError, ValueError):
    pass


class DegenerateArgument(OyangError, ValueError):
    pass


class SingularB(OyangError, ValueError):
    pass


class JacobiViolation(OyangError, ValueError):
    pass


class ClosureViolation(OyangError):
    pass
