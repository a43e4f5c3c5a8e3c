import random
from fractions import Fraction

import pytest

from polarnewton.algebra import avar
from polarnewton.curves import PolarParams, polar
from polarnewton.newton import newton_polygon
from polarnewton.verify import (
    SampleConfig,
    VerifyError,
    _FamilyView,
    report_to_json,
    run_power_degeneracy,
    run_verification,
    sample_off_locus,
)


class TestConfig:
    def test_validation(self):
        with pytest.raises(VerifyError):
            SampleConfig(family=(7, 19), seed=1, trials=0)
        with pytest.raises(VerifyError):
            SampleConfig(family=(7, 19), seed=1, trials=1, coeff_range=1)
        with pytest.raises(VerifyError):
            SampleConfig(family=(7,), seed=1, trials=1)


class TestSampling:
    def test_off_locus_sample_avoids_every_generator(self):
        view = _FamilyView((7, 19))
        rng = random.Random(0)
        series, assignment = sample_off_locus(view.model, view, rng, 10)
        assert not view.model.locus.vanishes_at(assignment)
        prod = Fraction(1)
        for v in (avar(17, 1), avar(14, 2), avar(11, 3)):
            prod *= assignment[v]
        assert prod != 0

    def test_empty_locus_family_takes_first_draw(self):
        view = _FamilyView((2, 3))
        rng = random.Random(0)
        _series, assignment = sample_off_locus(view.model, view, rng, 10)
        assert set(assignment) == set(view.coeff_vars_all)

    def test_forced_on_locus_draw_breaks_the_polygon(self):
        view = _FamilyView((7, 19))
        model = view.model
        rng = random.Random(4)
        series, assignment = sample_off_locus(
            model, view, rng, 10, force={avar(17, 1): Fraction(0)}
        )
        pol = polar(series, PolarParams.concrete(1, 1))
        poly = newton_polygon(pol)
        assert (17, 0) not in pol.support()
        assert poly.vertices() != model.predicted_polygon().vertices()


class TestRunVerification:
    def test_reports_are_deterministic(self):
        cfg = SampleConfig(family=(5, 12, 1), seed=7, trials=3)
        r1 = report_to_json(run_verification(cfg))
        r2 = report_to_json(run_verification(cfg))
        assert r1 == r2

    def test_records_match_summary(self):
        cfg = SampleConfig(family=(3, 7), seed=11, trials=4)
        rep = run_verification(cfg)
        assert len(rep["records"]) == 4
        assert rep["summary"]["polygon_match"] == sum(r["polygon_match"] for r in rep["records"])

    @pytest.mark.parametrize("family", [(2, 3), (7, 19), (2, 3, 1), (5, 12, 1)])
    def test_small_runs_fully_match(self, family):
        cfg = SampleConfig(family=family, seed=42, trials=4)
        rep = run_verification(cfg)
        s = rep["summary"]
        assert s["polygon_match"] == 4
        assert s["points_present"] == 4
        assert s["all_sides_squarefree"] == 4
        assert s["topology_match"] == 4

    def test_crosscheck_flag_adds_puiseux_column(self):
        cfg = SampleConfig(family=(2, 5), seed=3, trials=2, puiseux_crosscheck=True)
        rep = run_verification(cfg)
        assert rep["summary"]["puiseux_match"] == 2

    def test_prng_is_pinned_in_the_header(self):
        cfg = SampleConfig(family=(2, 3), seed=1, trials=1)
        assert "mt19937" in run_verification(cfg)["prng"]

    def test_symbolic_generic_evidence_in_header(self):
        cfg = SampleConfig(family=(5, 12, 1), seed=1, trials=1)
        rep = run_verification(cfg)
        assert rep["generic_member_verdict"] == "generically_nondegenerate"

    def test_symbolic_ab_mode_is_not_a_trial_mode(self):
        with pytest.raises(VerifyError):
            SampleConfig(family=(2, 3), seed=1, trials=1, ab_mode="symbolic")


class TestPowerDegeneracy:
    def test_cube_members_always_fail_on_the_steep_side(self):
        rep = run_power_degeneracy(2, 3, d=1, e1=3, trials=4, seed=9)
        s = rep["summary"]
        assert s["degenerate"] == 4
        assert s["steep_side_fails"] == 4
        assert s["steep_side_power_shape"] == 4

    def test_requires_a_genuine_power(self):
        with pytest.raises(VerifyError):
            run_power_degeneracy(2, 3, e1=2)
