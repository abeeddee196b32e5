import pytest

from src.schemas import SCHEMA_VERSION, Envelope, ErrorReport, ProjectionsReport
from src.services import fixtures


def test_verify_projections(cli, projection_file):
    code, out, err = cli("verify-projections", projection_file, "--format", "json")
    assert code == 0, err
    envelope = Envelope.model_validate_json(out)
    assert envelope.schema_ == SCHEMA_VERSION
    assert envelope.command == "verify-projections"
    report = ProjectionsReport.model_validate(envelope.result)
    assert report.passed
    assert report.theorem1.rhs == pytest.approx(fixtures.PROJECTION_DET_PLUS_G, abs=1e-9)
    assert report.theorem1.lhs1 == pytest.approx(3.0, abs=1e-9)
    assert report.theorem1.lhs2 == pytest.approx(3.0, abs=1e-9)
    assert report.theorem2.spectra["Sigma1"] == pytest.approx(list(fixtures.PROJECTION_SHARED_EIGENVALUES), abs=0.01)
    assert report.susy.ground_state_dim == 0


def test_global_flags_before_command(cli, projection_file):
    code, out, _ = cli("--format", "json", "verify-projections", projection_file)
    assert code == 0
    assert '"schema": "oblique-kit/1"' in out


def test_text_report(cli, projection_file):
    code, out, _ = cli("verify-projections", projection_file)
    assert code == 0
    assert out.startswith("verify-projections: ok (exit 0)")
    assert "theorem1:" in out


def test_reports_are_byte_identical(cli, projection_file):
    first = cli("verify-projections", projection_file, "--format", "json")
    second = cli("verify-projections", projection_file, "--format", "json")
    assert first == second


def test_corrupted_file(cli, tmp_path):
    path = tmp_path / "broken.json"
    path.write_text("{not json")
    code, out, err = cli("verify-projections", path)
    assert code == 2
    assert out == ""
    assert "ParseError" in err


def test_corrupted_file_json_error_report(cli, tmp_path):
    path = tmp_path / "broken.json"
    path.write_text("[]")
    code, out, _ = cli("verify-projections", path, "--format", "json")
    assert code == 2
    report = ErrorReport.model_validate(Envelope.model_validate_json(out).result)
    assert report.error == "ParseError"
    assert report.exit_code == 2


def test_failing_tolerance_is_a_failed_verdict(cli, projection_file):
    code, out, _ = cli("verify-projections", projection_file, "--tol", "1e-30", "--format", "json")
    report = ProjectionsReport.model_validate(Envelope.model_validate_json(out).result)
    assert code == (0 if report.passed else 1)


def test_negative_tolerance(cli, projection_file):
    code, _, err = cli("verify-projections", projection_file, "--tol", "-1")
    assert code == 3
    assert "InvalidInput" in err
