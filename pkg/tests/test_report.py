import pytest
from pydantic import ValidationError

from app.schemas.report import CheckRecord, CheckStatus, VerificationReport
from app.schemas.run_config import RunConfig, Suite, ThetaConfig
from app.tasks.suite_runner import SUITE_CHECKS, Check, RunContext, run_check, run_suite


def test_suites_parsed_from_comma_string():
    config = RunConfig(suites="theta, exact")
    assert config.selected() == [Suite.EXACT, Suite.THETA]
    assert RunConfig(suites="all").selected()[0] == Suite.EXACT


@pytest.mark.parametrize("suites", ["", "   ", "bogus"])
def test_invalid_suites(suites):
    with pytest.raises(ValidationError):
        RunConfig(suites=suites)


def test_theta_config_bounds():
    with pytest.raises(ValidationError):
        ThetaConfig(truncation=0)
    with pytest.raises(ValidationError):
        ThetaConfig(tolerance=2.0)


def test_report_ordering_and_exit_code():
    report = VerificationReport.start("1.0.0", RunConfig(suites="exact"))
    report.add(CheckRecord(check_id="b.check", citation="b", status=CheckStatus.PASS))
    report.add(CheckRecord(check_id="a.check", citation="a", status=CheckStatus.SKIPPED))
    assert [r.check_id for r in report.checks] == ["a.check", "b.check"]
    assert report.exit_code == 0

    report.add(CheckRecord(check_id="c.check", citation="c", status=CheckStatus.FAIL))
    assert report.exit_code == 1
    assert report.counts() == {"pass": 1, "fail": 1, "skipped": 1}
    assert "1 falhas" in report.to_text()


def test_failing_check_is_recorded_not_raised():
    ctx = RunContext(RunConfig(suites="exact"))

    def explode(_):
        raise ValueError("sem solução")

    record = run_check(Check("demo.explode", "a check that raises", 1, explode), ctx)
    assert record.status == CheckStatus.FAIL
    assert "ValueError" in record.message

    wrong = run_check(Check("demo.wrong", "wrong value", 1, lambda _: 2), ctx)
    assert wrong.status == CheckStatus.FAIL
    assert wrong.actual == 2


def test_slow_check_skipped_by_default():
    ctx = RunContext(RunConfig(suites="exact", slow=False))
    record = run_check(Check("demo.slow", "slow check", True, lambda _: True, slow=True), ctx)
    assert record.status == CheckStatus.SKIPPED


def test_exact_suite_passes(tmp_path):
    config = RunConfig(suites="exact", cache_path=str(tmp_path / "group.json"))
    report = run_suite(config)
    assert report.checks
    assert report.failed == []
    assert all(r.check_id.startswith("symplectic.") for r in report.checks)


def _group_check(check_id):
    return next(c for c in SUITE_CHECKS[Suite.GROUP]() if c.check_id == check_id)


def test_cache_reload_reports_timings(group, cache_path):
    ctx = RunContext(RunConfig(suites="group", cache_path=cache_path))
    record = run_check(_group_check("weyl.cache.reload"), ctx)
    assert record.actual["round_trip"] is True
    assert record.actual["load_seconds"] >= 0
    assert record.actual["generate_seconds"] > 0


def test_cache_reload_predicate():
    check = _group_check("weyl.cache.reload")
    config = RunConfig(suites="group")
    assert check.passes({"round_trip": True, "load_seconds": 0.01, "generate_seconds": 0.5}, config)
    assert not check.passes({"round_trip": True, "load_seconds": 0.9, "generate_seconds": 0.5}, config)
    assert not check.passes({"round_trip": False, "load_seconds": 0.01, "generate_seconds": 0.5}, config)
    assert not check.passes({"round_trip": True, "load_seconds": 0.01, "generate_seconds": None}, config)


@pytest.mark.parametrize("check_id", ["weyl.reflection.involution", "weyl.orbit.stable"])
def test_group_property_checks_pass(group, cache_path, check_id):
    ctx = RunContext(RunConfig(suites="group", cache_path=cache_path))
    record = run_check(_group_check(check_id), ctx)
    assert record.status == CheckStatus.PASS, record.message
