import pytest

from src.routes.selftest import run_selftest
from src.schemas import Envelope, RunConfig, SelftestReport


def _report(out) -> SelftestReport:
    return SelftestReport.model_validate(Envelope.model_validate_json(out).result)


def test_fixture_suites(cli):
    code, out, err = cli("selftest", "--cases", "0", "--format", "json")
    assert code == 0, out
    report = _report(out)
    assert report.passed
    assert report.suites["fixture-projections"] == {"cases": 1, "passed": 1, "failed": 0}
    assert report.suites["fixture-graph"]["cases"] == 1
    assert report.suites["random-theorems"]["cases"] == 0
    assert "fault-injection" not in report.suites


def test_selftest_is_deterministic(cli):
    first = cli("selftest", "--seed", "42", "--cases", "2", "--format", "json")
    second = cli("selftest", "--seed", "42", "--cases", "2", "--format", "json")
    assert first[1] == second[1]
    assert _report(first[1]).total == 1 + 3 + 3 + 2 * 4


def test_injected_fault(cli):
    code, out, _ = cli("selftest", "--cases", "0", "--inject-fault", "--format", "json")
    assert code == 1
    report = _report(out)
    assert not report.passed
    assert [(f.suite, f.error) for f in report.failures] == [("fault-injection", "NotIdempotent")]


def test_seed_from_settings(cli, monkeypatch):
    monkeypatch.setattr("src.conf.config.settings.seed", 7)
    _, out, _ = cli("selftest", "--cases", "0", "--format", "json")
    assert _report(out).seed == 7


@pytest.mark.slow
def test_acceptance_sizes():
    report = run_selftest(RunConfig(seed=42, cases=200))
    assert report.failed == 0, [(f.suite, f.index, f.error, f.detail) for f in report.failures]
    for suite in ("random-theorems", "random-graphs", "random-circuits", "singular-values"):
        assert report.suites[suite] == {"cases": 200, "passed": 200, "failed": 0}
    assert report.suites["fixture-graph"]["cases"] == 201
    assert report.suites["fixture-circuit"]["cases"] == 201
