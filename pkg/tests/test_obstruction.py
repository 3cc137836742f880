import json
import random
from fractions import Fraction

import pytest

from instanton_obstruct.certificate import verify_report
from instanton_obstruct.cs_q import ExplicitCovers, HomotopyS3xS1, ProductYxS1
from instanton_obstruct.errors import ForbiddenLevel, InsufficientAssumptions
from instanton_obstruct.filtered_complex import (
    CoChain,
    FilteredComplex,
    Generator,
    coboundary,
    is_coboundary,
    restrict,
)
from instanton_obstruct.levels import INF
from instanton_obstruct.obstruction import (
    FROYSHOV,
    AssumptionSet,
    ExplicitCounts,
    NonvanishingAssumed,
    admissible_window,
    candidate_levels,
    certify_theta_nonvanishing,
    count_l_y,
    embedding_verdict,
)
from instanton_obstruct.seifert_flat import build_filtered_generators, validate_seifert

from oracles import random_filtered_complex

F = Fraction
ASSUMED = AssumptionSet(NonvanishingAssumed(FROYSHOV))


def seifert(*aa):
    return validate_seifert(aa)


def test_count_l_y():
    assert count_l_y(seifert(2, 3, 5)) == 3
    assert count_l_y(seifert(2, 3, 11)) == 5


def test_window_homotopy_model():
    w = admissible_window(seifert(2, 3, 11), HomotopyS3xS1())
    assert w.q.is_infinite
    assert w.r_max == 1
    assert w.l_y == 5


def test_window_product_model():
    w = admissible_window(seifert(2, 3, 5), ProductYxS1(seifert(2, 3, 5)))
    assert w.r_max == F(1, 120)
    assert w.excluded == (F(71, 120), F(119, 120))


def test_window_needs_enough_covers():
    y = seifert(2, 3, 5)
    # l_Y = 3 so covers 1..9 are consulted
    covers = ExplicitCovers({i: (F(1, 3),) for i in range(1, 10)})
    assert admissible_window(y, covers).r_max == F(1, 3)


def test_candidate_levels_largest_first():
    w = admissible_window(seifert(2, 3, 5), HomotopyS3xS1())
    levels = candidate_levels(w)
    assert levels[0] == 1
    assert levels == sorted(levels, reverse=True)
    assert not set(levels) & set(w.excluded)
    assert F(71, 240) in levels


def test_certify_k12_at_one():
    c = build_filtered_generators(seifert(2, 3, 71))
    cert = certify_theta_nonvanishing(c, 1, ASSUMED)
    assert cert.ok and cert.method == "parity-assumed"
    assert cert.even_below_r == ()


def test_certify_without_theta_data_raises():
    with pytest.raises(InsufficientAssumptions):
        certify_theta_nonvanishing(build_filtered_generators(seifert(2, 3, 5)), 1, AssumptionSet())


def test_certify_below_degree_one_generator_fails():
    out = certify_theta_nonvanishing(build_filtered_generators(seifert(2, 3, 5)), F(1, 2), ASSUMED)
    assert not out.ok and out.reason == "degree-one-not-all-below-r"


def test_verdict_homotopy_obstructed():
    report = embedding_verdict(seifert(2, 3, 11), HomotopyS3xS1(), ASSUMED)
    assert report.verdict == "Obstructed"
    assert report.certificate.r == 1
    assert "theta-nonvanishing: " + FROYSHOV in report.axioms
    assert verify_report(report.to_dict()) == []


def test_verdict_product_inconclusive():
    y = seifert(2, 3, 5)
    report = embedding_verdict(y, ProductYxS1(y), ASSUMED)
    assert report.verdict == "Inconclusive"
    assert report.r_max == F(1, 120)
    assert "degree-one-not-all-below-r" in report.reasons


def test_verdict_without_assumptions_is_inconclusive():
    report = embedding_verdict(seifert(2, 3, 11), HomotopyS3xS1(), AssumptionSet())
    assert report.verdict == "Inconclusive"
    assert report.reasons == ["no-theta-data"]


def test_explicit_complex_needs_nondegeneracy():
    c = FilteredComplex([Generator("a", 1, F(1, 2))])
    report = embedding_verdict(c, HomotopyS3xS1(), ASSUMED)
    assert report.reasons == ["nondegeneracy-not-asserted"]
    ok = embedding_verdict(c, HomotopyS3xS1(), AssumptionSet(ASSUMED.theta_cochain, True))
    assert ok.verdict == "Obstructed"


def test_single_level_outside_window_and_forbidden():
    y = seifert(2, 3, 5)
    report = embedding_verdict(y, ProductYxS1(y), ASSUMED, r=F(1, 2))
    assert report.tested_r[0].reason == "outside-window"
    report = embedding_verdict(y, HomotopyS3xS1(), ASSUMED, r=F(71, 120))
    assert report.tested_r[0].reason == "forbidden-level"
    report = embedding_verdict(y, HomotopyS3xS1(), ASSUMED, r=INF)
    assert report.tested_r[0].reason == "outside-window"


def test_diagnostic_infinity_is_reported_separately():
    report = embedding_verdict(seifert(2, 3, 5), HomotopyS3xS1(), ASSUMED, diagnostic_infinity=True)
    assert report.diagnostics and report.diagnostics[0].r is INF
    assert all(t.r is not INF for t in report.tested_r)


def torsion_complex():
    # d a = 2 b, with a in degree 1 and b in degree 0
    gens = [Generator("b", 0, F(1, 4)), Generator("a", 1, F(1, 2)), Generator("c", 1, F(3, 4))]
    return FilteredComplex(gens, {("b", "a"): 2})


def test_explicit_counts_coboundary_certificate():
    c = torsion_complex()
    counts = AssumptionSet(ExplicitCounts(CoChain(1, {"a": 1})), nondegeneracy_asserted=True)
    report = embedding_verdict(c, HomotopyS3xS1(), counts)
    assert report.verdict == "Obstructed"
    cert = report.certificate
    assert cert.method == "coboundary" and cert.dual
    assert verify_report(report.to_dict()) == []


def test_explicit_counts_that_are_coboundaries_fail():
    c = torsion_complex()
    counts = AssumptionSet(ExplicitCounts(CoChain(1, {"a": 2})), nondegeneracy_asserted=True)
    report = embedding_verdict(c, HomotopyS3xS1(), counts)
    assert report.verdict == "Inconclusive"
    assert "theta-coboundary" in report.reasons


def test_explicit_counts_off_degree_one():
    c = torsion_complex()
    counts = AssumptionSet(ExplicitCounts(CoChain(1, {"b": 1})), nondegeneracy_asserted=True)
    out = certify_theta_nonvanishing(c, 1, counts)
    assert out.reason == "theta-not-degree-one"


def test_parity_certificates_are_sound_on_random_complexes():
    # whenever a parity certificate fires, the declared theta really is not a coboundary
    rng = random.Random(5)
    fired = 0
    for _ in range(300):
        gens, diff = random_filtered_complex(rng, max_generators=8)
        c = FilteredComplex([Generator(i, g, cs) for i, g, cs in gens], diff)
        deg1 = c.in_degree(1)
        if not deg1:
            continue
        theta = CoChain(1, {g.id: rng.choice([1, -1, 2]) for g in deg1})
        if not coboundary(theta, c).is_zero():
            continue
        counts = AssumptionSet(ExplicitCounts(theta), nondegeneracy_asserted=True)
        for r in (F(1, 2) + F(1, 800), F(1)):
            try:
                out = certify_theta_nonvanishing(c, r, counts)
            except ForbiddenLevel:
                continue
            if out.ok:
                fired += 1
                restricted = theta.restricted_to(restrict(c, r))
                assert not is_coboundary(restricted, c, r).solvable
    assert fired > 20


def test_reports_are_byte_identical():
    a = embedding_verdict(seifert(2, 3, 29), HomotopyS3xS1(), ASSUMED).to_dict()
    b = embedding_verdict(seifert(2, 3, 29), HomotopyS3xS1(), ASSUMED).to_dict()
    assert json.dumps(a, sort_keys=True) == json.dumps(b, sort_keys=True)


def test_more_assumptions_never_lose_a_verdict():
    y = seifert(2, 3, 17)
    weak = embedding_verdict(y, HomotopyS3xS1(), AssumptionSet())
    strong = embedding_verdict(y, HomotopyS3xS1(), AssumptionSet(NonvanishingAssumed(FROYSHOV), True))
    assert weak.verdict == "Inconclusive" and strong.verdict == "Obstructed"


def test_verify_report_catches_tampering():
    report = embedding_verdict(seifert(2, 3, 11), HomotopyS3xS1(), ASSUMED).to_dict()
    bad = json.loads(json.dumps(report))
    bad["r_max"] = "2"
    assert verify_report(bad)
    bad = json.loads(json.dumps(report))
    bad["generators"][0]["grading"] = 2
    assert verify_report(bad)
    bad = json.loads(json.dumps(report))
    bad["axioms"] = []
    assert verify_report(bad)
    bad = json.loads(json.dumps(report))
    bad["Q"] = "1/3"
    assert verify_report(bad)
