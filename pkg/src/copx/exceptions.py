"""Exception hierarchy shared by all copx modules.

Every error derives from a built-in exception so callers that only know about `ValueError`
keep working. The CLI maps these classes onto exit codes.
"""

from enum import IntEnum


class CopxError(Exception):
    pass


class DimensionMismatchError(CopxError, ValueError):
    pass


class RationalParseError(CopxError, ValueError):
    pass


class InstanceError(CopxError, ValueError):
    pass


class SizeCapError(CopxError, ValueError):
    def __init__(self, what: str, value: int, cap: int):
        self.what = what
        self.value = value
        self.cap = cap
        super().__init__(f"{what} = {value} exceeds the configured cap of {cap}")


class UnboundedError(CopxError, ValueError):
    def __init__(self, ray: tuple):
        self.ray = ray
        super().__init__(f"polyhedron is unbounded along ray {list(map(str, ray))}")


class RegimeError(CopxError, ValueError):
    pass


class PreconditionError(CopxError, ValueError):
    pass


class ExitCode(IntEnum):
    ok = 0
    usage = 2
    refuted = 3
    """claim refuted or cross-check mismatch"""
    size_cap = 4
    divergence = 5
    """literal and irreducible generator filtering disagree"""


def exit_code_for(exc: BaseException) -> ExitCode:
    if isinstance(exc, (SizeCapError, UnboundedError)):
        return ExitCode.size_cap
    return ExitCode.usage
