"""JSON job documents: ``{"command", "y", "x", "assumptions", "r"}``.

Fractions travel as ``"p/q"`` strings; infinity as ``"inf"``.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path
from typing import Any, Union

from .cs_q import ExplicitCovers, FourManifoldModel, HomotopyS3xS1, ProductYxS1
from .errors import JobSpecError, ObstructError
from .filtered_complex import CoChain, FilteredComplex, Generator
from .levels import Level, parse_level
from .obstruction import FROYSHOV, AssumptionSet, ExplicitCounts, NonvanishingAssumed
from .seifert_flat import SeifertData, validate_seifert

COMMANDS = ("flat", "cs", "grading", "homology", "obstruct")


@dataclass(frozen=True)
class JobSpec:
    y: Union[SeifertData, FilteredComplex]
    x: FourManifoldModel | None
    assumptions: AssumptionSet
    command: str
    r: Level | None = None


def _exact(value: Any, what: str) -> Fraction:
    if isinstance(value, float):
        raise JobSpecError(f"{what}: floats are not accepted, write \"p/q\"")
    try:
        level = parse_level(value)
    except (ValueError, ZeroDivisionError) as exc:
        raise JobSpecError(f"{what}: {exc}") from None
    if not isinstance(level, Fraction):
        raise JobSpecError(f"{what}: must be finite")
    return level


def parse_y(doc: dict) -> Union[SeifertData, FilteredComplex]:
    sources = [k for k in ("seifert", "generators") if k in doc]
    if len(sources) != 1:
        raise JobSpecError("y needs exactly one of 'seifert' or 'generators'")
    if sources[0] == "seifert":
        return validate_seifert(doc["seifert"])
    gens = [
        Generator(str(g["id"]), int(g["grading"]), _exact(g["cs"], f"generator {g.get('id')} cs"))
        for g in doc["generators"]
    ]
    if "differential" in doc:
        d = {(str(e["target"]), str(e["source"])): int(e["coeff"]) for e in doc["differential"]}
        incomplete = bool(doc.get("differential_incomplete", False))
    else:
        d = {}
        incomplete = len({g.grading % 2 for g in gens}) > 1
    return FilteredComplex(gens, d, differential_incomplete=incomplete)


def parse_x(doc: dict | None) -> FourManifoldModel | None:
    if doc is None:
        return None
    kind = doc.get("model")
    if kind == "homotopy-s3xs1":
        return HomotopyS3xS1()
    if kind == "product":
        return ProductYxS1(validate_seifert(doc["seifert"]))
    if kind == "explicit-covers":
        covers = {}
        for key, values in doc.get("covers", {}).items():
            try:
                index = int(key)
            except ValueError:
                raise JobSpecError(f"cover key {key!r} is not an integer") from None
            covers[index] = tuple(_exact(v, f"cover {key}") for v in values)
        try:
            return ExplicitCovers(covers)
        except ValueError as exc:
            raise JobSpecError(str(exc)) from None
    raise JobSpecError(f"unknown X model {kind!r}")


def parse_assumptions(doc: dict | None) -> AssumptionSet:
    if not doc:
        return AssumptionSet()
    theta = doc.get("theta")
    nondegenerate = bool(doc.get("nondegenerate", False))
    if theta is None:
        return AssumptionSet(None, nondegenerate)
    kind = theta.get("kind")
    if kind == "froyshov":
        data = NonvanishingAssumed(FROYSHOV)
    elif kind == "nonvanishing":
        data = NonvanishingAssumed(str(theta.get("source", "declared")))
    elif kind == "explicit":
        data = ExplicitCounts(CoChain(1, {str(k): int(v) for k, v in theta.get("counts", {}).items()}))
    else:
        raise JobSpecError(f"unknown theta kind {kind!r}")
    return AssumptionSet(data, nondegenerate)


def parse_jobspec(doc: dict) -> JobSpec:
    if not isinstance(doc, dict):
        raise JobSpecError("job document must be a JSON object")
    unknown = set(doc) - {"command", "y", "x", "assumptions", "r"}
    if unknown:
        raise JobSpecError(f"unknown top-level keys {sorted(unknown)}")
    command = doc.get("command", "obstruct")
    if command not in COMMANDS:
        raise JobSpecError(f"unknown command {command!r}")
    if "y" not in doc:
        raise JobSpecError("missing 'y'")
    try:
        y = parse_y(doc["y"])
        x = parse_x(doc.get("x"))
    except (KeyError, TypeError) as exc:
        raise JobSpecError(f"malformed job: {exc}") from None
    if command == "obstruct" and x is None:
        raise JobSpecError("obstruct jobs need an 'x' model")
    r = None
    if doc.get("r") is not None:
        try:
            r = parse_level(doc["r"])
        except (ValueError, ZeroDivisionError) as exc:
            raise JobSpecError(f"r: {exc}") from None
    return JobSpec(y, x, parse_assumptions(doc.get("assumptions")), command, r)


def load_jobspec(path: str | Path) -> JobSpec:
    try:
        doc = json.loads(Path(path).read_text(encoding="utf-8"))
    except (OSError, json.JSONDecodeError) as exc:
        raise JobSpecError(f"cannot read {path}: {exc}") from None
    try:
        return parse_jobspec(doc)
    except ObstructError:
        raise
    except ValueError as exc:
        raise JobSpecError(str(exc)) from None
