"""Re-check an Obstructed report from its serialized form alone.

Nothing here enumerates connections or solves linear systems; it reads the
generator table, the differential and the certificate out of the JSON
document and redoes the window and support arithmetic with fractions.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Any


def _frac(text: str) -> Fraction | None:
    return None if text == "inf" else Fraction(text)


def verify_report(report: dict[str, Any]) -> list[str]:
    """Return the list of problems found; empty means the verdict stands."""
    problems: list[str] = []
    gens = {g["id"]: (int(g["grading"]) % 8, Fraction(g["cs"])) for g in report["generators"]}
    certified = [t for t in report["tested_r"] if t["status"] == "certified"]

    if report["verdict"] != "Obstructed":
        if certified:
            problems.append("certificate present but verdict is not Obstructed")
        return problems
    if len(certified) != 1:
        return [f"expected exactly one certificate, found {len(certified)}"]
    cert = certified[0]

    if report["l_Y"] != len(gens) + 1:
        problems.append(f"l_Y = {report['l_Y']} but {len(gens)} generators are listed")
    q = _frac(report["Q"])
    r_max = Fraction(report["r_max"])
    expected_max = Fraction(1) if q is None else min(q, Fraction(1))
    if r_max != expected_max:
        problems.append(f"r_max {r_max} != min(Q, 1) = {expected_max}")
    if report["model_kind"] == "homotopy-s3xs1" and q is not None:
        problems.append("homotopy S^3 x S^1 must have Q = inf")

    r = _frac(cert["r"])
    if r is None or not 0 <= r <= r_max:
        return problems + [f"r = {cert['r']} outside [0, {r_max}]"]
    for gid, (_, cs) in gens.items():
        if (r - cs).denominator == 1:
            problems.append(f"r = {r} is a Chern-Simons lift of {gid}")

    below = {gid for gid, (_, cs) in gens.items() if cs < r}
    even = sorted(gid for gid in below if gens[gid][0] % 2 == 0)
    deg1 = sorted(gid for gid, (deg, _) in gens.items() if deg == 1)
    deg1_below = sorted(gid for gid in deg1 if gid in below)
    if sorted(cert["degree_one"]) != deg1 or sorted(cert["degree_one_below_r"]) != deg1_below:
        problems.append("degree-1 generator lists do not match the generator table")

    method = cert["method"]
    if method == "parity-assumed":
        if even:
            problems.append(f"even-degree generators below r: {even}")
        if not deg1 or deg1_below != deg1:
            problems.append("assumed theta needs every degree-1 generator below r")
        tag = f"theta-nonvanishing: {cert['theta_source']}"
        if tag not in report["axioms"]:
            problems.append(f"axiom {tag!r} not declared in the report")
    elif method in ("parity-explicit", "coboundary"):
        theta = {k: int(v) for k, v in cert.get("theta_below_r", {}).items() if int(v)}
        if not theta:
            problems.append("explicit theta restriction is zero")
        if any(k not in below or gens[k][0] != 1 for k in theta):
            problems.append("theta_below_r is supported off the degree-1 generators below r")
        if method == "parity-explicit" and even:
            problems.append(f"even-degree generators below r: {even}")
        if method == "coboundary":
            problems.extend(_check_dual(report, cert, gens, below, theta))
    else:
        problems.append(f"unknown certificate method {method!r}")
    return problems


def _check_dual(report, cert, gens, below, theta) -> list[str]:
    """``y`` must make ``y . delta`` integral and ``y . (-theta)`` fractional."""
    out = []
    dual = {k: Fraction(v) for k, v in cert.get("dual", {}).items()}
    if any(k not in below or gens[k][0] != 1 for k in dual):
        out.append("dual functional supported off the degree-1 generators below r")
    degree0 = [gid for gid in below if gens[gid][0] == 0]
    entries: dict[tuple[str, str], int] = {}
    for row in report["differential"]:
        entries[(row["target"], row["source"])] = int(row["coeff"])
    for b in degree0:
        # (delta e_b)(a) = d[b][a]
        value = sum(y * entries.get((b, a), 0) for a, y in dual.items())
        if value.denominator != 1:
            out.append(f"dual pairing with delta({b}) is {value}, not an integer")
    pairing = sum(y * -theta.get(a, 0) for a, y in dual.items())
    if pairing.denominator == 1:
        out.append(f"dual pairing with -theta is the integer {pairing}")
    return out
