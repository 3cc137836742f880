"""Embedding obstruction: window arithmetic, theta certificates, verdicts.

An embedding ``Y -> X`` with ``f_*[Y] = 1`` forces ``[theta^r] = 0`` for
every admissible ``r`` in ``[0, min(Q^{2 l_Y + 3}_X, 1)]``.  The engine looks
for one such ``r`` where the class is certifiably nonzero.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Union

from .cs_q import FourManifoldModel, HomotopyS3xS1, ProductYxS1, ExplicitCovers, QValue, q_l
from .errors import ForbiddenLevel, InsufficientAssumptions
from .filtered_complex import (
    CoChain,
    FilteredComplex,
    admissible_levels,
    coboundary,
    is_coboundary,
    restrict,
)
from .levels import INF, Level, format_level, parse_level
from .seifert_flat import SeifertData, build_filtered_generators, enumerate_flat_connections

FROYSHOV = "Froyshov h-invariant"

Target = Union[SeifertData, FilteredComplex]


@dataclass(frozen=True)
class ExplicitCounts:
    """Declared counts ``#M(a, theta)/R`` on degree-1 generators."""

    cochain: CoChain


@dataclass(frozen=True)
class NonvanishingAssumed:
    """``[theta] != 0`` in unfiltered HF^1, taken as an axiom from ``source``."""

    source: str = FROYSHOV


ThetaData = Union[ExplicitCounts, NonvanishingAssumed, None]


@dataclass(frozen=True)
class AssumptionSet:
    theta_cochain: ThetaData = None
    nondegeneracy_asserted: bool = False

    def axioms(self, automatic_nondegeneracy: bool) -> list[str]:
        out = []
        if automatic_nondegeneracy:
            out.append("nondegeneracy: Brieskorn sphere (automatic)")
        elif self.nondegeneracy_asserted:
            out.append("nondegeneracy: asserted")
        if isinstance(self.theta_cochain, NonvanishingAssumed):
            out.append(f"theta-nonvanishing: {self.theta_cochain.source}")
        elif isinstance(self.theta_cochain, ExplicitCounts):
            out.append("theta-counts: explicit")
        return out


@dataclass(frozen=True)
class Certificate:
    r: Level
    method: str
    even_below_r: tuple[str, ...]
    degree_one: tuple[str, ...]
    degree_one_below_r: tuple[str, ...]
    theta_source: str
    theta_below_r: dict[str, int] = field(default_factory=dict)
    dual: dict[str, Fraction] | None = None

    ok = True

    def to_dict(self) -> dict:
        out = {
            "r": format_level(self.r),
            "status": "certified",
            "method": self.method,
            "even_below_r": list(self.even_below_r),
            "degree_one": list(self.degree_one),
            "degree_one_below_r": list(self.degree_one_below_r),
            "theta_source": self.theta_source,
        }
        if self.theta_below_r:
            out["theta_below_r"] = dict(self.theta_below_r)
        if self.dual is not None:
            out["dual"] = {k: format_level(v) for k, v in self.dual.items()}
        return out


@dataclass(frozen=True)
class Failure:
    r: Level
    reason: str
    detail: str = ""

    ok = False

    def to_dict(self) -> dict:
        return {"r": format_level(self.r), "status": "failed", "reason": self.reason, "detail": self.detail}


@dataclass(frozen=True)
class Window:
    r_max: Fraction
    q: QValue
    l_y: int
    excluded: tuple[Fraction, ...]

    @property
    def nonempty(self) -> bool:
        # [0, r_max] is uncountable unless r_max = 0
        return self.r_max > 0 or Fraction(0) not in self.excluded


@dataclass
class ObstructionReport:
    target: str
    model: str
    model_kind: str
    generators: list[dict]
    differential: list[dict]
    differential_incomplete: bool
    l_y: int
    q: QValue
    r_max: Fraction
    excluded: list[Fraction]
    tested_r: list[Certificate | Failure]
    verdict: str
    reasons: list[str]
    axioms: list[str]
    diagnostics: list[Certificate | Failure] = field(default_factory=list)

    @property
    def certificate(self) -> Certificate | None:
        return next((t for t in self.tested_r if t.ok), None)

    def to_dict(self) -> dict:
        return {
            "target": self.target,
            "model": self.model,
            "model_kind": self.model_kind,
            "generators": self.generators,
            "differential": self.differential,
            "differential_incomplete": self.differential_incomplete,
            "l_Y": self.l_y,
            "Q": str(self.q),
            "r_max": format_level(self.r_max),
            "excluded": [format_level(v) for v in self.excluded],
            "tested_r": [t.to_dict() for t in self.tested_r],
            "diagnostics": [t.to_dict() for t in self.diagnostics],
            "verdict": self.verdict,
            "reasons": self.reasons,
            "axioms": self.axioms,
        }


def _complex_of(y: Target) -> FilteredComplex:
    return y if isinstance(y, FilteredComplex) else build_filtered_generators(y)


def count_l_y(y: Target) -> int:
    """Size of R(Y): the irreducible classes plus the trivial connection."""
    if isinstance(y, FilteredComplex):
        return len(y) + 1
    return len(enumerate_flat_connections(y)) + 1


def admissible_window(y: Target, x: FourManifoldModel, complex_: FilteredComplex | None = None) -> Window:
    c = complex_ if complex_ is not None else _complex_of(y)
    l_y = len(c) + 1
    q = q_l(x, 2 * l_y + 3)
    r_max = Fraction(1) if q.is_infinite else min(q.value, Fraction(1))
    return Window(r_max=r_max, q=q, l_y=l_y, excluded=tuple(admissible_levels(c)))


def certify_theta_nonvanishing(
    c: FilteredComplex, r: Level | str | int, assumptions: AssumptionSet
) -> Certificate | Failure:
    theta = assumptions.theta_cochain
    if theta is None:
        raise InsufficientAssumptions("no theta data: supply explicit counts or a nonvanishing axiom")
    r = parse_level(r)
    sub = restrict(c, r)
    even = tuple(g.id for g in sub.generators if g.grading % 2 == 0)
    deg1 = tuple(g.id for g in c.in_degree(1))
    deg1_below = tuple(g.id for g in sub.in_degree(1))

    if isinstance(theta, NonvanishingAssumed):
        if even:
            return Failure(r, "even-degree-below-r", f"{len(even)} even-degree generators below r; coboundary status undecidable without counts")
        if not deg1:
            return Failure(r, "no-degree-one-generators", "an assumed nonzero degree-1 cochain needs a degree-1 generator")
        if deg1_below != deg1:
            missing = [g for g in deg1 if g not in deg1_below]
            return Failure(r, "degree-one-not-all-below-r", f"{len(missing)} degree-1 generators at or above r")
        return Certificate(r, "parity-assumed", even, deg1, deg1_below, theta.source)

    cochain = theta.cochain
    for gid in cochain.coefficients:
        if gid not in c or c.generator(gid).grading != 1 or cochain.degree != 1:
            return Failure(r, "theta-not-degree-one", f"theta coefficient on {gid} is not on a degree-1 generator")
    restricted = cochain.restricted_to(sub)
    if restricted.is_zero():
        return Failure(r, "theta-restriction-zero", "theta vanishes on every degree-1 generator below r")
    if not even:
        return Certificate(r, "parity-explicit", even, deg1, deg1_below, "explicit counts", dict(restricted.coefficients))
    if sub.differential_incomplete:
        return Failure(r, "differential-incomplete", "even-degree generators below r and no differential supplied")
    if not coboundary(restricted, sub).is_zero():
        return Failure(r, "theta-not-cocycle", "declared counts are not a cocycle below r")
    result = is_coboundary(restricted, c, r)
    if result.solvable:
        return Failure(r, "theta-coboundary", f"theta^r = -delta(n) with n = {dict(result.witness.coefficients)}")
    return Certificate(
        r, "coboundary", even, deg1, deg1_below, "explicit counts", dict(restricted.coefficients), dict(result.dual)
    )


def candidate_levels(window: Window) -> list[Fraction]:
    """One representative per combinatorially distinct admissible ``r``, largest first."""
    top = window.r_max
    inner = sorted({v for v in window.excluded if 0 < v < top})
    points = [Fraction(0), *inner, top]
    out = set()
    if top not in window.excluded:
        out.add(top)
    for lo, hi in zip(points, points[1:]):
        if lo < hi:
            out.add((lo + hi) / 2)
    if top == 0 and 0 not in window.excluded:
        out.add(Fraction(0))
    return sorted(out, reverse=True)


def _generator_rows(c: FilteredComplex) -> list[dict]:
    return [{"id": g.id, "grading": g.grading, "cs": format_level(g.cs_level)} for g in c.generators]


def _differential_rows(c: FilteredComplex) -> list[dict]:
    return [{"target": t, "source": s, "coeff": v} for (t, s), v in c.differential.items()]


def embedding_verdict(
    y: Target,
    x: FourManifoldModel,
    assumptions: AssumptionSet,
    r: Level | str | None = None,
    diagnostic_infinity: bool = False,
) -> ObstructionReport:
    """Sweep the admissible window and return the first certificate found.

    With ``r`` given only that level is tested.  ``Inconclusive`` never means
    that an embedding exists.
    """
    c = _complex_of(y)
    automatic = isinstance(y, SeifertData)
    window = admissible_window(y, x, c)
    reasons: list[str] = []
    tested: list[Certificate | Failure] = []
    diagnostics: list[Certificate | Failure] = []

    if assumptions.theta_cochain is None:
        reasons.append("no-theta-data")
    elif not (automatic or assumptions.nondegeneracy_asserted):
        reasons.append("nondegeneracy-not-asserted")
    else:
        if r is None:
            levels = candidate_levels(window)
        else:
            levels = [parse_level(r)]
        if not levels:
            reasons.append("window-empty")
        for level in levels:
            if level is INF or level < 0 or level > window.r_max:
                tested.append(Failure(level, "outside-window", f"r must lie in [0, {format_level(window.r_max)}]"))
                continue
            try:
                outcome = certify_theta_nonvanishing(c, level, assumptions)
            except ForbiddenLevel as exc:
                outcome = Failure(level, "forbidden-level", str(exc))
            tested.append(outcome)
            if outcome.ok:
                break
        if diagnostic_infinity:
            diagnostics.append(certify_theta_nonvanishing(c, INF, assumptions))

    cert = next((t for t in tested if t.ok), None)
    if cert is None:
        reasons.extend(t.reason for t in tested if not t.ok)
    return ObstructionReport(
        target=y.label() if isinstance(y, SeifertData) else "explicit complex",
        model=x.describe(),
        model_kind=model_kind(x),
        generators=_generator_rows(c),
        differential=_differential_rows(c),
        differential_incomplete=c.differential_incomplete,
        l_y=window.l_y,
        q=window.q,
        r_max=window.r_max,
        excluded=list(window.excluded),
        tested_r=tested,
        verdict="Obstructed" if cert is not None else "Inconclusive",
        reasons=[] if cert is not None else sorted(set(reasons), key=reasons.index),
        axioms=assumptions.axioms(automatic),
        diagnostics=diagnostics,
    )


def model_kind(x: FourManifoldModel) -> str:
    if isinstance(x, HomotopyS3xS1):
        return "homotopy-s3xs1"
    if isinstance(x, ProductYxS1):
        return "product"
    if isinstance(x, ExplicitCovers):
        return "explicit-covers"
    raise TypeError(x)
