"""Irreducible SU(2) flat connections on Brieskorn homology spheres.

A flat connection on Sigma(a1, a2, a3) is a conjugacy class of irreducible
representations of pi_1.  Modulo the center such a representation factors
through the triangle group, and it is recorded by rotation numbers
``(l1, l2, l3)``: the image of the i-th singular-fiber generator is conjugate
to ``exp(pi * l_i / a_i * i)`` in SU(2), with ``0 < l_i < a_i``.  We fix the
lifts so that the three images multiply to the identity; flipping the sign of
any two of them gives the same connection, so each connection corresponds to
an orbit of four rotation-number tuples and we keep the lexicographically
smallest one.

The Chern-Simons value is ``-e^2 / (4a) mod 1`` with
``e = sum_i l_i * a / a_i (mod 2a)``, and the Floer grading is the
R-invariant of that ``e`` reduced mod 8.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from itertools import combinations
from typing import Iterable, Sequence

import mpmath

from .errors import (
    InvalidSeifertData,
    NoCongruenceSolution,
    NotCoprime,
    PrecisionFailure,
    TooFewFibers,
    Unsupported,
)

# The optional n > 3 enumeration is not shipped.
SUPPORTS_MANY_FIBERS = False

R_SUM_DIGITS = 50
INTEGER_TOLERANCE = mpmath.mpf("1e-6")

_ctx = mpmath.MPContext()
_ctx.dps = R_SUM_DIGITS + 10


@dataclass(frozen=True)
class SeifertData:
    """Pairwise coprime multiplicities of a Seifert-fibered homology sphere."""

    multiplicities: tuple[int, ...]

    @property
    def a(self) -> int:
        return math.prod(self.multiplicities)

    @property
    def n(self) -> int:
        return len(self.multiplicities)

    def label(self) -> str:
        return "Sigma(" + ",".join(str(m) for m in self.multiplicities) + ")"

    def __str__(self) -> str:
        return self.label()

    @cached_property
    def _cot_weights(self) -> tuple[tuple[object, ...], ...]:
        # per fiber: (2/a_i) * cot(pi a k / a_i^2) * cot(pi k / a_i), k = 1 .. a_i - 1
        a = self.a
        pi = _ctx.pi
        weights = []
        for ai in self.multiplicities:
            row = [_ctx.mpf(0)]
            for k in range(1, ai):
                c = _ctx.cot(pi * a * k / (ai * ai)) * _ctx.cot(pi * k / ai)
                row.append(2 * c / ai)
            weights.append(tuple(row))
        return tuple(weights)

    @cached_property
    def _sin_squares(self) -> tuple[tuple[object, ...], ...]:
        pi = _ctx.pi
        return tuple(
            tuple(_ctx.sin(pi * j / ai) ** 2 for j in range(ai)) for ai in self.multiplicities
        )


@dataclass(frozen=True)
class FlatConnection:
    rotation_numbers: tuple[int, ...]
    e_label: int
    cs_value: Fraction
    grading: int
    irreducible: bool = True

    @property
    def id(self) -> str:
        return "rho(" + ",".join(str(l) for l in self.rotation_numbers) + ")"


def validate_seifert(multiplicities: Iterable[int]) -> SeifertData:
    ms = tuple(int(m) for m in multiplicities)
    if len(ms) < 3:
        raise TooFewFibers(len(ms))
    for m in ms:
        if m < 2:
            raise InvalidSeifertData(f"multiplicity {m} < 2")
    for i, j in combinations(range(len(ms)), 2):
        g = math.gcd(ms[i], ms[j])
        if g > 1:
            raise NotCoprime(i, j, g)
    return SeifertData(ms)


def e_from_rotation_numbers(y: SeifertData, rotation_numbers: Sequence[int]) -> int:
    """The degree ``e`` mod 2a attached to a tuple of rotation numbers.

    Checks the defining congruences ``e = l_i * (a / a_i) (mod a_i)``.
    """
    a = y.a
    e = sum(l * (a // ai) for l, ai in zip(rotation_numbers, y.multiplicities)) % (2 * a)
    for l, ai in zip(rotation_numbers, y.multiplicities):
        if e % ai == 0 or (e - l * (a // ai)) % ai:
            raise NoCongruenceSolution(
                f"{y}: rotation numbers {tuple(rotation_numbers)} give e = {e} "
                f"violating the congruence at fiber {ai}"
            )
    return e


def cs_from_e(y: SeifertData, e: int) -> Fraction:
    return Fraction(-e * e, 4 * y.a) % 1


def r_invariant(y: SeifertData, e: int) -> int:
    """Fintushel-Stern R-invariant ``R(e)`` as an exact integer.

    The trigonometric part is summed at ``R_SUM_DIGITS`` digits and must land
    within ``INTEGER_TOLERANCE`` of an integer.
    """
    total = _ctx.mpf(2 * e * e) / y.a + (y.n - 3)
    for ai, weights, sines in zip(y.multiplicities, y._cot_weights, y._sin_squares):
        r = e % ai
        for k in range(1, ai):
            total += weights[k] * sines[(k * r) % ai]
    nearest = _ctx.nint(total)
    gap = abs(total - nearest)
    if not gap < INTEGER_TOLERANCE:
        raise PrecisionFailure(_ctx.nstr(total, 20), _ctx.nstr(gap, 5))
    return int(nearest)


def grading_from_e(y: SeifertData, e: int) -> int:
    return r_invariant(y, e) % 8


def _flip_orbit(y: SeifertData, ls: tuple[int, int, int]) -> list[tuple[int, int, int]]:
    a1, a2, a3 = y.multiplicities
    l1, l2, l3 = ls
    return [
        (l1, l2, l3),
        (a1 - l1, a2 - l2, l3),
        (a1 - l1, l2, a3 - l3),
        (l1, a2 - l2, a3 - l3),
    ]


def _triangle_tuples(y: SeifertData) -> Iterable[tuple[int, int, int]]:
    """All ``(l1, l2, l3)`` whose angles ``pi l_i / a_i`` are the angles of
    three non-central SU(2) elements with product 1 and non-commuting pairs.

    In units of pi: ``|t1 - t2| < t3 < min(t1 + t2, 2 - t1 - t2)``.
    """
    a1, a2, a3 = y.multiplicities
    for l1 in range(1, a1):
        t1 = Fraction(l1, a1)
        for l2 in range(1, a2):
            t2 = Fraction(l2, a2)
            lo = abs(t1 - t2) * a3
            hi = min(t1 + t2, 2 - t1 - t2) * a3
            start = math.floor(lo) + 1
            stop = math.ceil(hi) - 1
            for l3 in range(max(start, 1), min(stop, a3 - 1) + 1):
                yield (l1, l2, l3)


def is_admissible(y: SeifertData, rotation_numbers: Sequence[int]) -> bool:
    if y.n != 3:
        raise Unsupported("admissibility is implemented for three singular fibers")
    (a1, a2, a3), (l1, l2, l3) = y.multiplicities, tuple(rotation_numbers)
    if not all(0 < l < ai for l, ai in zip((l1, l2, l3), (a1, a2, a3))):
        return False
    t1, t2, t3 = Fraction(l1, a1), Fraction(l2, a2), Fraction(l3, a3)
    return abs(t1 - t2) < t3 < min(t1 + t2, 2 - t1 - t2)


def _connection_from_orbit(y: SeifertData, orbit: list[tuple[int, int, int]]) -> FlatConnection:
    a2 = 2 * y.a
    candidates = [e_from_rotation_numbers(y, ls) for ls in orbit]
    cs_values = {cs_from_e(y, e) for e in candidates}
    if len(cs_values) != 1:
        raise NoCongruenceSolution(
            f"{y}: orbit {orbit} yields inconsistent Chern-Simons values {sorted(cs_values)}"
        )
    gradings = {grading_from_e(y, e) for e in candidates}
    if len(gradings) != 1:
        raise NoCongruenceSolution(f"{y}: orbit {orbit} yields inconsistent gradings {gradings}")
    e_label = min(min(e, a2 - e) for e in candidates)
    return FlatConnection(
        rotation_numbers=min(orbit),
        e_label=e_label,
        cs_value=cs_values.pop(),
        grading=gradings.pop(),
    )


def enumerate_flat_connections(y: SeifertData) -> list[FlatConnection]:
    """Every irreducible flat connection, sorted by (cs_value, grading)."""
    if y.n != 3:
        raise Unsupported(f"{y}: enumeration with {y.n} > 3 singular fibers is not built")
    out = []
    for ls in _triangle_tuples(y):
        orbit = _flip_orbit(y, ls)
        if ls != min(orbit):
            continue
        out.append(_connection_from_orbit(y, orbit))
    out.sort(key=lambda c: (c.cs_value, c.grading, c.rotation_numbers))
    return out


def cs_invariant(y: SeifertData, c: FlatConnection) -> Fraction:
    """Chern-Simons value of ``c`` in [0, 1), recomputed from its e-label."""
    e_from_rotation_numbers(y, c.rotation_numbers)
    return cs_from_e(y, c.e_label)


def cs_trivial(y: SeifertData) -> Fraction:
    return Fraction(0)


def floer_grading(y: SeifertData, c: FlatConnection) -> int:
    return grading_from_e(y, c.e_label)


def build_filtered_generators(y: SeifertData):
    """Package the enumeration as a FilteredComplex.

    The differential is zero when every grading has the same parity; otherwise
    it cannot be derived here and the complex is flagged incomplete.
    """
    from .filtered_complex import FilteredComplex, Generator

    conns = enumerate_flat_connections(y)
    gens = [Generator(c.id, c.grading, c.cs_value) for c in conns]
    single_parity = len({c.grading % 2 for c in conns}) <= 1
    return FilteredComplex(gens, {}, differential_incomplete=not single_parity)
