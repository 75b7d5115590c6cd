import random

import pytest

from equising.errors import PreconditionError
from equising.family import (
    FAILS,
    HOLDS,
    INDETERMINATE,
    InvariantRecord,
    ParameterPoint,
    check_af,
    check_milnor_formulations,
    check_wf,
    invariant_record,
    origin,
    records_for,
    semicontinuity_check,
    specialize,
    support_equality,
)
from fixtures import EXPECTED_VERDICTS, FAMILIES, family

QUARTIC = FAMILIES["quartic x^4 - t x^2"]
UNIT = FAMILIES["unit (1+t) x^3"]
CUBIC = FAMILIES["x^3 + y^3 + t xy"]
NODE = FAMILIES["node, constant"]


def pts(g, *values):
    return [origin(g)] + [ParameterPoint.at({"t": v}) for v in values]


def test_parameter_point_labels():
    assert ParameterPoint.at({"t": 0}).label() == "t=0"
    assert ParameterPoint.at({"t": "1/2"}).label() == "t=1/2"
    assert ParameterPoint.generic().label() == "generic"
    assert ParameterPoint.at({"t": 0}).is_origin and not ParameterPoint.generic().is_origin


def test_specialize_examples():
    assert str(specialize(QUARTIC, origin(QUARTIC)).function) == "x^4"
    gen = specialize(UNIT, ParameterPoint.generic())
    assert gen.function.ring.nvars == 1
    assert str(gen.function) == "(t + 1)*x^3"


def test_specialize_to_non_isolated_fibre():
    g = family(("x1", "x2"), "t", ["x1^2 + x2^2 - t*x1*x2"], "x1")
    rec = invariant_record(g, ParameterPoint.at({"t": 2}))
    assert rec.flags["z_isolated"] is False or rec.flags.get("icis") is False
    v = check_af(g, pts(g, 2))
    assert v.outcome in (FAILS, INDETERMINATE)


def test_specialize_missing_value():
    with pytest.raises(PreconditionError):
        specialize(QUARTIC, ParameterPoint.at({"s": 1}))


def test_records_quartic():
    r0, r1 = records_for(QUARTIC, pts(QUARTIC, 1))
    assert (r0.e_M, r0.e_prime, r1.e_M, r1.e_prime) == (3, 3, 1, 3)
    assert r0.consistent and r1.consistent


def test_records_unit_and_node():
    for r in records_for(UNIT, [origin(UNIT), ParameterPoint.generic()]):
        assert (r.e_M, r.e_prime) == (2, 2)
    for r in records_for(NODE, pts(NODE, 1, 5)):
        assert (r.e_M, r.mu_X[:1], r.mu_Z[:1]) == (2, [1], [1])


def test_record_json_uses_strings():
    js = invariant_record(QUARTIC, origin(QUARTIC)).to_json()
    assert js["e_M"] == "3" and js["mu_Z"] == ["3", "1"]


@pytest.mark.parametrize("name", sorted(FAMILIES))
def test_verdicts_and_formulations(name):
    g = FAMILIES[name]
    points = pts(g, 1, -2) + [ParameterPoint.generic()]
    recs = records_for(g, points, seed=3)
    af = check_af(g, points, records=recs)
    wf = check_wf(g, points, records=recs)
    assert (af.outcome, wf.outcome) == EXPECTED_VERDICTS[name]
    mil_af, mil_wf = check_milnor_formulations(g, points, records=recs)
    assert (mil_af.outcome, mil_wf.outcome) == (af.outcome, wf.outcome)
    if wf.outcome == HOLDS:
        assert af.outcome == HOLDS and wf.evidence["implies_af_consistent"]
    assert semicontinuity_check(recs)["ok"]


def test_quartic_evidence():
    v = check_af(QUARTIC, pts(QUARTIC, 1))
    assert v.outcome == FAILS
    assert v.evidence["e_M"] == {"t=0": "3", "t=1": "1"}
    assert v.evidence["off_origin_critical_mass"] == {"t=0": "0", "t=1": "2"}


def test_points_must_include_origin():
    with pytest.raises(PreconditionError):
        check_af(QUARTIC, [ParameterPoint.at({"t": 1}), ParameterPoint.generic()])


def test_semicontinuity_fault_report():
    a = InvariantRecord(ParameterPoint.at({"t": 0}), [0, 0], [1, 1], e_M=1)
    b = InvariantRecord(ParameterPoint.at({"t": 1}), [0, 0], [2, 1], e_M=2)
    rep = semicontinuity_check([a, b])
    assert not rep["ok"] and all(v.startswith("FAULT") for v in rep["violations"])


def test_semicontinuity_constant_family():
    assert semicontinuity_check(records_for(NODE, pts(NODE, 1)))["ok"]


@pytest.mark.parametrize("name", sorted(FAMILIES))
def test_generic_agrees_with_random_samples(name):
    g = FAMILIES[name]
    rng = random.Random(name)
    gen = invariant_record(g, ParameterPoint.generic(), seed=1)
    for _ in range(3):
        v = rng.choice([-1, 1]) * rng.randint(3, 97)
        r = invariant_record(g, ParameterPoint.at({"t": f"{v}/{rng.randint(1, 7)}"}), seed=1)
        assert (r.mu_X, r.mu_Z, r.e_M, r.e_mM) == (gen.mu_X, gen.mu_Z, gen.e_M, gen.e_mM)


def test_support_examples():
    assert support_equality(UNIT)["sigma_Y_equals_Y"]
    rep = support_equality(QUARTIC)
    assert rep["Y_in_sigma_Y"] and not rep["sigma_Y_in_Y"]
    assert support_equality(FAMILIES["A2, constant"])["sigma_equals_sigma_Y"]


@pytest.mark.parametrize("name", sorted(FAMILIES))
def test_af_holds_iff_supports_agree(name):
    g = FAMILIES[name]
    holds = EXPECTED_VERDICTS[name][0] == HOLDS
    assert support_equality(g)["sigma_Y_equals_Y"] == holds


def test_verdicts_deterministic():
    a = check_wf(CUBIC, pts(CUBIC, 1), seed=11).to_json()
    b = check_wf(CUBIC, pts(CUBIC, 1), seed=11).to_json()
    assert a == b
