import json
from fractions import Fraction

import numpy
import pytest

from haarmoments.output.error_handler import ArgumentError
from haarmoments.output.output import dump_json
from haarmoments.tensorops.sampling import RngStream
from haarmoments.verify.registry import (
    EXACT, MONTE_CARLO, Checker, VerifyParams, exact_vs_mc_report, get_identity,
    load_identities, run_all, run_identity
)

CHEAP_EXACT = ["k1_twirl", "k2_twirl", "wg_k2", "combinatorics", "tr2_exact", "audenaert"]


class TestRegistry:

    def test_both_kinds_are_registered(self):
        kinds = {identity.kind for identity in load_identities().values()}
        assert kinds == {EXACT, MONTE_CARLO}

    def test_names_match_keys(self):
        for name, identity in load_identities().items():
            assert identity.name == name

    def test_unknown_identity_lists_names(self):
        with pytest.raises(ArgumentError) as info:
            get_identity("no_such_identity")
        assert "k1_twirl" in info.value.error_message

    def test_kind_filter(self):
        assert get_identity("swap", MONTE_CARLO).kind == MONTE_CARLO
        with pytest.raises(ArgumentError):
            get_identity("k1_twirl", MONTE_CARLO)

    def test_point_bounds(self):
        identity = get_identity("tr2")
        assert identity.point(VerifyParams()) == (3, 2)
        assert identity.point(VerifyParams(k=2, d=4)) == (2, 4)
        with pytest.raises(ArgumentError):
            identity.point(VerifyParams(k=9))

    def test_sweep_filters(self):
        assert VerifyParams(k=2).sweep([1, 2, 3], [2, 3]) == [(2, 2), (2, 3)]
        assert VerifyParams(d=5).sweep([1, 2], [2, 3]) == []
        assert VerifyParams(d=5).sweep([1]) == [(1, None)]


class TestExactIdentities:

    @pytest.mark.parametrize("name", CHEAP_EXACT)
    def test_passes(self, name):
        report = run_identity(name, VerifyParams())
        assert report.passed and not report.skipped
        assert report.checked > 0

    def test_filter_narrows_the_sweep(self):
        everything = run_identity("k1_twirl", VerifyParams())
        narrowed = run_identity("k1_twirl", VerifyParams(d=3))
        assert 0 < narrowed.checked < everything.checked

    def test_filter_outside_the_sweep_skips(self):
        report = run_identity("k2_twirl", VerifyParams(k=5))
        assert report.skipped and report.passed
        assert report.to_json()["checked"] == 0

    def test_run_all_keeps_order(self):
        reports = run_all(VerifyParams(), ["wg_k2", "k1_twirl"])
        assert [report.name for report in reports] == ["wg_k2", "k1_twirl"]
        assert all(report.passed for report in reports)

    def test_failed_checks_are_reported(self):
        checker = Checker("example")
        assert checker.check(True, "first")
        assert not checker.check(False, "second")
        report = checker.report()
        assert report.checked == 2
        assert report.failures == ["second"]
        assert not report.passed
        assert report.to_json()["pass"] is False


class TestMonteCarloIdentities:

    def test_swap(self):
        report = exact_vs_mc_report("swap", VerifyParams(), n_samples=4000)
        assert report.passed
        assert report.n_samples == 4000
        assert report.estimate.shape == (9, 9)

    def test_scalar_at_requested_point(self):
        report = exact_vs_mc_report("tr2", VerifyParams(k=1, d=3), n_samples=4000)
        assert report.exact == 1
        assert report.passed
        assert report.to_json()["exact"] == "1"

    def test_reproducible(self):
        first = exact_vs_mc_report("haar_mean", VerifyParams(seed=3), n_samples=2000)
        second = exact_vs_mc_report("haar_mean", VerifyParams(seed=3), n_samples=2000)
        assert (first.estimate == second.estimate).all()

    @pytest.mark.parametrize("name", ["swap", "uu_bar", "haar_mean", "uk_twirl"])
    def test_matrix_report_json(self, name):
        report = exact_vs_mc_report(name, VerifyParams(seed=5), n_samples=1000)
        payload = json.loads(dump_json(report))
        size = report.exact.size
        assert payload["exact"] == report.exact.to_json()
        assert payload["pass"] is report.passed
        assert payload["z"] == pytest.approx(report.z)
        estimate = numpy.array(payload["estimate"])
        assert estimate.shape == (size, size, 2)
        assert numpy.allclose(estimate[..., 0] + 1j * estimate[..., 1], report.estimate)
        assert numpy.allclose(payload["stderr"], report.stderr)

    def test_sphere_moment_uses_closed_form(self):
        report = exact_vs_mc_report("sphere_moment2", VerifyParams(d=3), n_samples=2000)
        assert report.exact == Fraction(1, 6)
        assert json.loads(dump_json(report))["exact"] == "1/6"

    def test_explicit_stream(self):
        report = exact_vs_mc_report("left_invariance", VerifyParams(), n_samples=3000, rng=RngStream(9))
        assert report.passed

    def test_exact_identity_is_not_monte_carlo(self):
        with pytest.raises(ArgumentError):
            exact_vs_mc_report("k1_twirl", VerifyParams(), n_samples=100)

    def test_out_of_range_point_is_skipped(self):
        report = run_identity("tr4", VerifyParams(d=1))
        assert report.skipped

    def test_samples_parameter(self):
        report = run_identity("visibility2", VerifyParams(samples=3000))
        assert report.passed and report.checked == 1
