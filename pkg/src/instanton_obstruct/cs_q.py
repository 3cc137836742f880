"""Chern-Simons pairings on homology S^3 x S^1 models and the Q invariants."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Mapping, Union

from .errors import MissingCover, UnsupportedModel
from .levels import INF, Level, format_level
from .seifert_flat import FlatConnection, SeifertData, enumerate_flat_connections


@dataclass(frozen=True)
class ProductYxS1:
    y: SeifertData

    def describe(self) -> str:
        return f"{self.y} x S^1"


@dataclass(frozen=True)
class HomotopyS3xS1:
    def describe(self) -> str:
        return "homotopy S^3 x S^1"


@dataclass(frozen=True)
class ExplicitCovers:
    """Declared cs spectra: ``covers[i]`` lists the pairings with the trivial
    connection of the irreducible flat connections on the i-fold cyclic cover.
    """

    covers: Mapping[int, tuple[Fraction, ...]] = field(default_factory=dict)

    def __post_init__(self) -> None:
        clean = {}
        for i, values in self.covers.items():
            if int(i) < 1:
                raise ValueError(f"cover index {i} is not a positive integer")
            vals = tuple(Fraction(v) for v in values)
            if any(not 0 <= v < 1 for v in vals):
                raise ValueError(f"cover {i}: values must lie in [0, 1)")
            clean[int(i)] = vals
        object.__setattr__(self, "covers", dict(sorted(clean.items())))

    def describe(self) -> str:
        return f"explicit covers {sorted(self.covers)}"


FourManifoldModel = Union[ProductYxS1, HomotopyS3xS1, ExplicitCovers]

# Stand-in for the trivial connection in cs_pair.
THETA = None


@dataclass(frozen=True)
class QValue:
    value: Level

    def __post_init__(self) -> None:
        if self.value is not INF:
            v = Fraction(self.value)
            if not 0 <= v <= Fraction(1, 2):
                raise ValueError(f"Q value {v} outside [0, 1/2]")
            object.__setattr__(self, "value", v)

    @property
    def is_infinite(self) -> bool:
        return self.value is INF

    def __str__(self) -> str:
        return format_level(self.value)


def cs_pair(model: FourManifoldModel, a: FlatConnection, b: FlatConnection | None = THETA) -> Fraction:
    """``cs_(X, phi)(a, b)`` for the product model: the difference of the
    restrictions' Chern-Simons values, using the [0, 1) representatives.
    ``b = THETA`` is the trivial connection.
    """
    if not isinstance(model, ProductYxS1):
        raise UnsupportedModel(
            f"cs_pair needs a product model; {model.describe()} enters through explicit cover data"
        )
    cs_b = Fraction(0) if b is None else b.cs_value
    return a.cs_value - cs_b


def q_tilde(cs_values: Iterable[Fraction]) -> QValue:
    """Distance from the pairing values to the integers; infinite when empty."""
    best = None
    for v in cs_values:
        v = Fraction(v) % 1
        d = min(v, 1 - v)
        if best is None or d < best:
            best = d
    return QValue(INF if best is None else best)


def q_l(model: FourManifoldModel, l: int) -> QValue:
    """Minimum of ``q_tilde`` over the i-fold cyclic covers, ``1 <= i <= l``."""
    if l < 1:
        raise ValueError(f"cover bound l = {l} must be positive")
    if isinstance(model, HomotopyS3xS1):
        return QValue(INF)
    if isinstance(model, ProductYxS1):
        # every cyclic cover of Y x S^1 is again Y x S^1
        return q_tilde(c.cs_value for c in enumerate_flat_connections(model.y))
    if isinstance(model, ExplicitCovers):
        best = QValue(INF)
        for i in range(1, l + 1):
            if i not in model.covers:
                raise MissingCover(i)
            q = q_tilde(model.covers[i])
            if best.is_infinite or (not q.is_infinite and q.value < best.value):
                best = q
        return best
    raise UnsupportedModel(f"unknown model {model!r}")
