import json
from fractions import Fraction as F

import pytest

from birat.automap import projective_lift
from birat.blowup import (
    ResolutionTower,
    canonical_resolution,
    lift_into_chart,
    _random_lines,
    _swap_families,
)
from birat.errors import (
    DegreeTooSmallError,
    DuplicateCenterError,
    StepBudgetExceededError,
)
from birat.polyalg import PolyMap, Polynomial, parse_poly

from conftest import quadratic_henon

UV = ("u", "v")


def uv(text):
    return parse_poly(text, UV)


def ledger(tower):
    return [
        (r.label, r.family, r.on_line_at_infinity, tuple(r.proximate_to),
         r.mult_psi, r.mult_psi_prime, r.mult_pi)
        for r in tower.records
    ]


# -- frozen towers for the corpus (derived by hand, chart by chart) ----------------


def test_henon_tower(resolved):
    tower, _, _ = resolved["henon"]
    assert (tower.n, tower.m, tower.i0, tower.regular) == (3, 3, 0, True)
    assert ledger(tower) == [
        ("E1", "forward", True, (), 1, 0, 0),
        ("F1", "inverse", True, (), 0, 1, 0),
        ("E2", "forward", True, (0,), 1, 0, 0),
        ("F2", "inverse", True, (1,), 0, 1, 0),
        ("E3", "forward", False, (2,), 1, 0, 0),
        ("F3", "inverse", False, (3,), 0, 1, 0),
    ]
    assert tower.records[0].parent_label is None
    assert tower.records[2].parent_label == "E1"
    assert tower.records[4].parent_label == "E2"


def test_cubic_tower(resolved):
    tower, _, _ = resolved["cubic"]
    assert (tower.n, tower.m, tower.i0) == (5, 5, 0)
    e_side = [x for x in ledger(tower) if x[0].startswith("E")]
    assert e_side == [
        ("E1", "forward", True, (), 2, 0, 0),
        ("E2", "forward", True, (0,), 1, 0, 0),
        ("E3", "forward", False, (0, 2), 1, 0, 0),  # satellite of E1 and E2
        ("E4", "forward", False, (4,), 1, 0, 0),
        ("E5", "forward", False, (6,), 1, 0, 0),
    ]


def test_quartic_tower(resolved):
    tower, _, _ = resolved["quartic"]
    assert (tower.n, tower.m, tower.i0) == (7, 7, 0)
    e_side = [x for x in ledger(tower) if x[0].startswith("E")]
    mults = [row[4] for row in e_side]
    assert mults == [3, 1, 1, 1, 1, 1, 1]
    prox_shapes = [row[3] for row in e_side]
    assert prox_shapes == [(), (0,), (0, 2), (0, 4), (6,), (8,), (10,)]
    on_h = [row[2] for row in e_side]
    assert on_h == [True, True, False, False, False, False, False]


def test_elementary_tower_shared_prefix(resolved):
    tower, _, _ = resolved["elementary"]
    assert (tower.n, tower.m, tower.i0, tower.regular) == (3, 3, 2, False)
    assert ledger(tower) == [
        ("E1", "shared", True, (), 1, 1, 0),
        ("E2", "shared", True, (0,), 1, 1, 0),
        ("E3", "forward", False, (1,), 1, 0, 0),
        ("F3", "inverse", False, (1,), 0, 1, 0),
    ]
    # the split centers are the two distinct points on the second curve
    assert tower.records[2].center_chart == tower.records[3].center_chart
    assert tower.records[2].center != tower.records[3].center


# -- the blow-up operation in isolation ---------------------------------------------


def _fresh_tower(phi):
    tower = ResolutionTower(phi)
    tower.init_roots(
        projective_lift(phi.forward), projective_lift(phi.inverse), _random_lines(0)
    )
    return tower


def test_blow_up_point_on_line_at_infinity():
    phi = quadratic_henon()
    tower = _fresh_tower(phi)
    # [1:0:0] is the origin of chart 0; the line at infinity there is {v = 0}.
    record = tower.blow_up_at(0, (F(0), F(0)), "forward")
    assert record.on_line_at_infinity
    # strict transform of the line at infinity meets the new curve at one point
    assert tower.curve_eqs[record.chart_a]["H"] == uv("v")
    assert tower.curve_eqs[record.chart_a][0] == uv("u")
    assert tower.curve_eqs[record.chart_b][0] == uv("v")
    assert "H" not in tower.curve_eqs[record.chart_b]  # meets only the A chart


def test_blow_up_point_off_line_keeps_line_equation():
    phi = quadratic_henon()
    tower = _fresh_tower(phi)
    record = tower.blow_up_at(0, (F(3), F(5)), "forward")
    assert not record.on_line_at_infinity
    # pullback of {v = 0} picks up no exceptional factor: v -> u*v + 5 (chart A)
    assert tower.curve_eqs[record.chart_a]["H"] == uv("u*v + 5")


def test_duplicate_center_rejected():
    tower = _fresh_tower(quadratic_henon())
    tower.blow_up_at(0, (F(0), F(0)), "forward")
    with pytest.raises(DuplicateCenterError):
        tower.blow_up_at(0, (F(0), F(0)), "forward")


# -- cleaning of the lifted map ------------------------------------------------------


def test_lift_and_clean_first_henon_chart(resolved):
    # Hand oracle: substituting (u, u*v) into (s*t, s^2 + t^2 + t, t^2) and
    # dividing by the common factor u gives (u*v, u + u*v^2 + v, u*v^2).
    tower, _, _ = resolved["henon"]
    first = tower.records[0]
    lift = projective_lift(tower.phi.forward)
    triple, power = lift_into_chart(tower, lift, first.chart_a)
    assert power == 1
    assert triple == (uv("u*v"), uv("u + u*v^2 + v"), uv("u*v^2"))


def test_identity_lift_cleans_with_zero_multiplicity(resolved):
    tower, _, _ = resolved["henon"]
    ident = projective_lift(PolyMap(parse_poly("x", ("x", "y")), parse_poly("y", ("x", "y"))))
    for record in tower.records:
        _, power = lift_into_chart(tower, ident, record.chart_a)
        assert power == 0


def test_incremental_state_matches_recomputation(resolved):
    for name in ("henon", "cubic", "elementary"):
        tower, _, _ = resolved[name]
        lift = projective_lift(tower.phi.forward)
        for record in tower.records:
            for chart_id in (record.chart_a, record.chart_b):
                triple, _ = lift_into_chart(tower, lift, chart_id)
                assert triple == tower.psi_triples[chart_id]


def test_generic_lines_have_zero_multiplicity(resolved):
    for tower, _, _ in resolved.values():
        assert all(r.mult_pi == 0 for r in tower.records)


# -- the search on the newest exceptional curve ---------------------------------------


def test_search_after_first_henon_blowup_still_finds_base_point(resolved):
    tower, _, _ = resolved["henon"]
    found = tower.search_on_new_curve("psi", tower.records[0])
    assert found is not None
    assert found.chart == tower.records[0].chart_a
    assert found.coords == (F(0), F(0))


def test_search_after_last_blowup_finds_nothing(resolved):
    for tower, _, _ in resolved.values():
        last_e = tower.family_records("E")[-1]
        last_f = tower.family_records("F")[-1]
        assert tower.search_on_new_curve("psi", last_e) is None
        assert tower.search_on_new_curve("psi_prime", last_f) is None


# -- whole-resolution properties --------------------------------------------------------


def test_resolution_requires_degree_two():
    phi_lin = quadratic_henon()
    from birat.automap import new_automorphism

    ident = new_automorphism(
        PolyMap(parse_poly("x", ("x", "y")), parse_poly("y", ("x", "y"))),
        PolyMap(parse_poly("x", ("x", "y")), parse_poly("y", ("x", "y"))),
    )
    with pytest.raises(DegreeTooSmallError):
        canonical_resolution(ident)
    assert phi_lin.degree_fwd == 2  # sanity


def test_step_budget_guard():
    with pytest.raises(StepBudgetExceededError):
        canonical_resolution(quadratic_henon(), step_budget=1)


def test_minimality_truncation_leaves_base_point(resolved):
    for name, (tower, _, _) in resolved.items():
        assert tower.truncation_keeps_base_point("E"), name
        assert tower.truncation_keeps_base_point("F"), name


def test_chain_condition_within_families(resolved):
    for tower, _, _ in resolved.values():
        for family in ("E", "F"):
            recs = tower.family_records(family)
            for prev, cur in zip(recs, recs[1:]):
                assert prev.index in cur.proximate_to


def test_swap_families_helper():
    tower, _, _ = (canonical_resolution(quadratic_henon()), None, None)
    before = [(r.family, r.mult_psi, r.mult_psi_prime) for r in tower.records]
    deg_before = (tower.deg_psi, tower.deg_psi_prime)
    _swap_families(tower)
    assert tower.swapped
    assert (tower.deg_psi, tower.deg_psi_prime) == deg_before[::-1]
    for (fam_b, mp_b, mpp_b), rec in zip(before, tower.records):
        assert rec.mult_psi == mpp_b and rec.mult_psi_prime == mp_b
        if fam_b == "forward":
            assert rec.family == "inverse"
        elif fam_b == "inverse":
            assert rec.family == "forward"


def test_determinism_same_seed_same_tower():
    t1 = canonical_resolution(quadratic_henon(), seed="s1")
    t2 = canonical_resolution(quadratic_henon(), seed="s1")
    assert t1.to_report() == t2.to_report()


# -- serialization ------------------------------------------------------------------


def test_report_round_trips_through_json(resolved):
    for tower, _, _ in resolved.values():
        report = tower.to_report()
        text = json.dumps(report, sort_keys=True)
        assert json.loads(text) == json.loads(json.dumps(report, sort_keys=True))
        for rec in report["records"]:
            # rationals serialized as exact fraction strings
            F(rec["center"]["u"])
            F(rec["center"]["v"])


def test_report_contains_chart_forest(resolved):
    tower, _, _ = resolved["henon"]
    report = tower.to_report()
    roots = [c for c in report["charts"] if c["parent"] is None]
    assert len(roots) == 3
    assert {c["root_axis"] for c in roots} == {0, 1, 2}
    non_roots = [c for c in report["charts"] if c["parent"] is not None]
    assert len(non_roots) == 2 * len(report["records"])
    assert all(c["exceptional_coordinate"] in ("u", "v") for c in non_roots)
