"""Exception hierarchy shared by every module of the package."""

from __future__ import annotations

from fractions import Fraction


class ObstructError(Exception):
    """Base class; the CLI maps any subclass to exit code 2."""


class InvalidSeifertData(ObstructError):
    pass


class NotCoprime(InvalidSeifertData):
    def __init__(self, i: int, j: int, gcd: int) -> None:
        super().__init__(f"multiplicities at positions {i} and {j} share the factor {gcd}")
        self.i = i
        self.j = j
        self.gcd = gcd


class TooFewFibers(InvalidSeifertData):
    def __init__(self, count: int) -> None:
        super().__init__(f"need at least 3 singular fibers, got {count}")
        self.count = count


class Unsupported(ObstructError):
    pass


class NoCongruenceSolution(ObstructError):
    pass


class PrecisionFailure(ObstructError):
    def __init__(self, value: str, distance: str) -> None:
        super().__init__(f"R-sum {value} is {distance} away from the nearest integer")
        self.value = value
        self.distance = distance


class ForbiddenLevel(ObstructError):
    def __init__(self, r: Fraction, generator_id: str | None = None) -> None:
        where = f" (critical value of {generator_id})" if generator_id else ""
        super().__init__(f"filtration level {r} is a Chern-Simons value{where}")
        self.r = r
        self.generator_id = generator_id


class DifferentialIncomplete(ObstructError):
    pass


class DegreeMismatch(ObstructError):
    pass


class InvalidComplex(ObstructError):
    pass


class UnsupportedModel(ObstructError):
    pass


class MissingCover(ObstructError):
    def __init__(self, index: int) -> None:
        super().__init__(f"no flat-connection data for the {index}-fold cyclic cover")
        self.index = index


class InsufficientAssumptions(ObstructError):
    pass


class JobSpecError(ObstructError):
    pass
