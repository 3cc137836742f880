"""Integer filtered cochain complexes and their Smith-normal-form algebra.

Gradings live in Z/8.  Each generator carries the representative of its
Chern-Simons value in [0, 1); the other lifts ``(cs + n, grading + 8n)`` are
never materialised, so restriction to ``cs < r`` compares the representative
with ``r``.  That is exact for every ``r <= 1`` and keeps the whole complex
for larger finite ``r``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from types import MappingProxyType
from typing import Iterable, Mapping, Sequence

from .errors import (
    DegreeMismatch,
    DifferentialIncomplete,
    ForbiddenLevel,
    InvalidComplex,
)
from .levels import INF, Level, parse_level

Matrix = list[list[int]]


@dataclass(frozen=True)
class Generator:
    id: str
    grading: int
    cs_level: Fraction

    def __post_init__(self) -> None:
        object.__setattr__(self, "grading", int(self.grading) % 8)
        cs = Fraction(self.cs_level)
        if not 0 <= cs < 1:
            raise InvalidComplex(f"generator {self.id}: cs level {cs} outside [0, 1)")
        object.__setattr__(self, "cs_level", cs)


@dataclass(frozen=True)
class CoChain:
    degree: int
    coefficients: Mapping[str, int] = field(default_factory=dict)

    def __post_init__(self) -> None:
        object.__setattr__(self, "degree", int(self.degree) % 8)
        clean = {k: int(v) for k, v in sorted(self.coefficients.items()) if int(v) != 0}
        object.__setattr__(self, "coefficients", MappingProxyType(clean))

    def is_zero(self) -> bool:
        return not self.coefficients

    def restricted_to(self, complex_: "FilteredComplex") -> "CoChain":
        """Drop coefficients on generators absent from ``complex_``."""
        keep = {k: v for k, v in self.coefficients.items() if k in complex_}
        return CoChain(self.degree, keep)


@dataclass(frozen=True)
class AbelianGroup:
    """``Z^rank`` plus cyclic summands ``Z/t`` for each torsion coefficient."""

    rank: int
    torsion: tuple[int, ...] = ()

    def is_trivial(self) -> bool:
        return self.rank == 0 and not self.torsion

    def __str__(self) -> str:
        parts = []
        if self.rank:
            parts.append("Z" if self.rank == 1 else f"Z^{self.rank}")
        parts.extend(f"Z/{t}" for t in self.torsion)
        return " + ".join(parts) if parts else "0"


class FilteredComplex:
    """Generators plus an integer differential ``d[(target, source)]``.

    A nonzero entry needs ``grading(target) = grading(source) - 1 (mod 8)``
    and ``cs(target) < cs(source)``; together with ``d o d = 0`` this is
    checked on construction.
    """

    def __init__(
        self,
        generators: Iterable[Generator],
        differential: Mapping[tuple[str, str], int] | None = None,
        differential_incomplete: bool = False,
    ) -> None:
        gens = tuple(generators)
        ids = [g.id for g in gens]
        if len(set(ids)) != len(ids):
            raise InvalidComplex("generator ids are not unique")
        self._generators = gens
        self._by_id = {g.id: g for g in gens}
        d = {}
        for (target, source), coeff in sorted((differential or {}).items()):
            coeff = int(coeff)
            if coeff == 0:
                continue
            if target not in self._by_id or source not in self._by_id:
                raise InvalidComplex(f"differential entry ({target}, {source}) names an unknown generator")
            t, s = self._by_id[target], self._by_id[source]
            if (s.grading - t.grading) % 8 != 1:
                raise InvalidComplex(
                    f"d[{target}][{source}] = {coeff} joins gradings {s.grading} -> {t.grading}"
                )
            if not t.cs_level < s.cs_level:
                raise InvalidComplex(
                    f"d[{target}][{source}] = {coeff} does not decrease cs ({s.cs_level} -> {t.cs_level})"
                )
            d[(target, source)] = coeff
        self._d = MappingProxyType(d)
        self.differential_incomplete = bool(differential_incomplete)
        self._check_square_zero()

    @property
    def generators(self) -> tuple[Generator, ...]:
        return self._generators

    @property
    def differential(self) -> Mapping[tuple[str, str], int]:
        return self._d

    def __contains__(self, gen_id: object) -> bool:
        return gen_id in self._by_id

    def __len__(self) -> int:
        return len(self._generators)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, FilteredComplex):
            return NotImplemented
        return (
            self._generators == other._generators
            and dict(self._d) == dict(other._d)
            and self.differential_incomplete == other.differential_incomplete
        )

    def __repr__(self) -> str:
        return (
            f"FilteredComplex({len(self._generators)} generators, "
            f"{len(self._d)} differential entries"
            f"{', incomplete' if self.differential_incomplete else ''})"
        )

    def generator(self, gen_id: str) -> Generator:
        return self._by_id[gen_id]

    def in_degree(self, degree: int) -> list[Generator]:
        degree %= 8
        return [g for g in self._generators if g.grading == degree]

    def boundary_matrix(self, degree: int) -> Matrix:
        """``d: C_degree -> C_(degree-1)``; rows are targets, columns sources."""
        sources = self.in_degree(degree)
        targets = self.in_degree(degree - 1)
        return [[self._d.get((t.id, s.id), 0) for s in sources] for t in targets]

    def coboundary_matrix(self, degree: int) -> Matrix:
        """``delta: C^degree -> C^(degree+1)``, the transpose of ``d`` out of degree+1."""
        sources = self.in_degree(degree)
        targets = self.in_degree(degree + 1)
        return [[self._d.get((s.id, t.id), 0) for s in sources] for t in targets]

    def _check_square_zero(self) -> None:
        for degree in range(8):
            outer = self.boundary_matrix(degree - 1)
            inner = self.boundary_matrix(degree)
            prod = matmul(outer, inner)
            if any(v for row in prod for v in row):
                raise InvalidComplex(f"d o d != 0 starting in degree {degree}")

    def critical_level(self, r: Level) -> Generator | None:
        """The generator whose Chern-Simons lift equals ``r``, if any."""
        if r is INF:
            return None
        for g in self._generators:
            if (Fraction(r) - g.cs_level).denominator == 1:
                return g
        return None


def matmul(a: Sequence[Sequence[int]], b: Sequence[Sequence[int]]) -> Matrix:
    if not a:
        return []
    inner = len(b)
    cols = len(b[0]) if b else 0
    return [[sum(a[i][k] * b[k][j] for k in range(inner)) for j in range(cols)] for i in range(len(a))]


def identity(n: int) -> Matrix:
    return [[int(i == j) for j in range(n)] for i in range(n)]


def restrict(c: FilteredComplex, r: Level | str | int) -> FilteredComplex:
    """Subcomplex spanned by generators with ``cs < r``; ``r = inf`` keeps everything."""
    r = parse_level(r)
    if r is INF:
        return c
    hit = c.critical_level(r)
    if hit is not None:
        raise ForbiddenLevel(Fraction(r), hit.id)
    keep = [g for g in c.generators if g.cs_level < r]
    ids = {g.id for g in keep}
    d = {k: v for k, v in c.differential.items() if k[1] in ids}
    if any(t not in ids for t, _ in d):
        # unreachable while construction enforces cs(target) < cs(source)
        raise InvalidComplex(f"restriction at {r} is not a subcomplex")
    return FilteredComplex(keep, d, c.differential_incomplete)


def admissible_levels(c: FilteredComplex) -> list[Fraction]:
    """Sorted distinct Chern-Simons lifts in [0, 1]; filtration levels must avoid them."""
    levels = set()
    for g in c.generators:
        levels.add(g.cs_level)
        if g.cs_level == 0:
            levels.add(Fraction(1))
    return sorted(levels)


def smith_normal_form(m: Sequence[Sequence[int]]) -> tuple[Matrix, Matrix, Matrix]:
    """Return ``(U, D, V)`` with ``U m V = D`` and ``d_1 | d_2 | ...``.

    Pivots are the smallest nonzero absolute value in the active block,
    lowest (row, column) first, so the output is reproducible.
    """
    rows = len(m)
    cols = len(m[0]) if rows else 0
    a = [[int(x) for x in row] for row in m]
    u = identity(rows)
    v = identity(cols)

    def swap_rows(i: int, j: int) -> None:
        a[i], a[j] = a[j], a[i]
        u[i], u[j] = u[j], u[i]

    def swap_cols(i: int, j: int) -> None:
        for row in a:
            row[i], row[j] = row[j], row[i]
        for row in v:
            row[i], row[j] = row[j], row[i]

    def add_row(src: int, dst: int, k: int) -> None:
        # row_dst += k * row_src
        a[dst] = [x + k * y for x, y in zip(a[dst], a[src])]
        u[dst] = [x + k * y for x, y in zip(u[dst], u[src])]

    def add_col(src: int, dst: int, k: int) -> None:
        for row in a:
            row[dst] += k * row[src]
        for row in v:
            row[dst] += k * row[src]

    t = 0
    while t < min(rows, cols):
        best = None
        for i in range(t, rows):
            for j in range(t, cols):
                x = abs(a[i][j])
                if x and (best is None or x < best[0]):
                    best = (x, i, j)
        if best is None:
            break
        _, pi, pj = best
        if pi != t:
            swap_rows(pi, t)
        if pj != t:
            swap_cols(pj, t)
        p = a[t][t]
        clean = True
        for i in range(t + 1, rows):
            if a[i][t]:
                add_row(t, i, -(a[i][t] // p))
                clean = clean and a[i][t] == 0
        for j in range(t + 1, cols):
            if a[t][j]:
                add_col(t, j, -(a[t][j] // p))
                clean = clean and a[t][j] == 0
        if not clean:
            continue
        bad = next(
            (i for i in range(t + 1, rows) if any(a[i][j] % p for j in range(t + 1, cols))),
            None,
        )
        if bad is not None:
            add_row(bad, t, 1)
            continue
        if p < 0:
            a[t] = [-x for x in a[t]]
            u[t] = [-x for x in u[t]]
        t += 1
    return u, a, v


def diagonal(d: Matrix) -> list[int]:
    return [d[i][i] for i in range(min(len(d), len(d[0]) if d else 0)) if d[i][i]]


def _require_complete(c: FilteredComplex) -> None:
    if c.differential_incomplete:
        raise DifferentialIncomplete(
            "the complex mixes grading parities and no differential was supplied"
        )


def cohomology(c: FilteredComplex, i: int, r: Level | str | int = INF) -> AbelianGroup:
    """``HF^i_r``: cohomology in degree ``i`` of the subcomplex below ``r``."""
    _require_complete(c)
    sub = restrict(c, r)
    n_i = len(sub.in_degree(i))
    if n_i == 0:
        return AbelianGroup(0)
    out_rank = len(diagonal(smith_normal_form(sub.coboundary_matrix(i))[1]) if sub.in_degree(i + 1) else [])
    incoming = diagonal(smith_normal_form(sub.coboundary_matrix(i - 1))[1]) if sub.in_degree(i - 1) else []
    return AbelianGroup(
        rank=n_i - out_rank - len(incoming),
        torsion=tuple(x for x in incoming if x > 1),
    )


@dataclass(frozen=True)
class CoboundaryResult:
    """Outcome of solving ``delta(n) = -t`` over Z.

    ``witness`` is the cochain ``n`` when solvable.  Otherwise ``dual`` is a
    rational functional ``y`` on the target degree with ``y . delta``
    integral and ``y . (-t)`` not an integer, which rules out any integral
    solution.
    """

    solvable: bool
    witness: CoChain | None = None
    dual: Mapping[str, Fraction] | None = None


def is_coboundary(t: CoChain, c: FilteredComplex, r: Level | str | int = INF) -> CoboundaryResult:
    _require_complete(c)
    sub = restrict(c, r)
    degree = t.degree
    for gid in t.coefficients:
        if gid not in sub:
            raise InvalidComplex(f"cochain is supported on {gid}, which is not below level {r}")
        if sub.generator(gid).grading != degree:
            raise DegreeMismatch(f"cochain of degree {degree} has a coefficient on {gid}")
    targets = sub.in_degree(degree)
    sources = sub.in_degree(degree - 1)
    rhs = [-t.coefficients.get(g.id, 0) for g in targets]
    if not any(rhs):
        return CoboundaryResult(True, witness=CoChain(degree - 1, {}))
    if not sources:
        k = next(i for i, x in enumerate(rhs) if x)
        dual = {targets[k].id: Fraction(1, 2 * rhs[k])}
        return CoboundaryResult(False, dual=dual)
    m = sub.coboundary_matrix(degree - 1)
    u, d, v = smith_normal_form(m)
    ub = [sum(u[i][j] * rhs[j] for j in range(len(rhs))) for i in range(len(rhs))]
    divisors = diagonal(d)
    y = []
    for k, b in enumerate(ub):
        if k < len(divisors):
            if b % divisors[k]:
                return CoboundaryResult(False, dual=_dual_row(u, targets, k, Fraction(1, divisors[k])))
            y.append(b // divisors[k])
        elif b:
            return CoboundaryResult(False, dual=_dual_row(u, targets, k, Fraction(1, 2 * b)))
    y.extend([0] * (len(sources) - len(y)))
    n = [sum(v[i][j] * y[j] for j in range(len(y))) for i in range(len(sources))]
    return CoboundaryResult(True, witness=CoChain(degree - 1, {g.id: x for g, x in zip(sources, n)}))


def _dual_row(u: Matrix, targets: list[Generator], k: int, scale: Fraction) -> dict[str, Fraction]:
    return {g.id: scale * u[k][j] for j, g in enumerate(targets) if u[k][j]}


def coboundary(n: CoChain, c: FilteredComplex) -> CoChain:
    """``delta(n)``, evaluated as ``n o d`` on the next degree."""
    out = {}
    for g in c.in_degree(n.degree + 1):
        out[g.id] = sum(c.differential.get((b, g.id), 0) * x for b, x in n.coefficients.items())
    return CoChain(n.degree + 1, out)
