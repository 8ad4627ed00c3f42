import json

import pytest
from click.testing import CliRunner

from app.main import cli


@pytest.fixture
def runner():
    return CliRunner()


@pytest.fixture(scope="module")
def exact_report(tmp_path_factory):
    directory = tmp_path_factory.mktemp("report")
    path = directory / "report.json"
    result = CliRunner().invoke(
        cli,
        ["run", "--suites", "exact", "--report", str(path), "--cache", str(directory / "group.json")],
    )
    return result, path


def test_run_exact_suite(exact_report):
    result, path = exact_report
    assert result.exit_code == 0, result.output
    assert "symplectic.unitary.order" in result.output
    document = json.loads(path.read_text(encoding="utf-8"))
    assert document["header"]["config"]["suites"] == ["exact"]
    assert all(check["status"] == "pass" for check in document["checks"])


def test_summary_of_saved_report(runner, exact_report):
    _, path = exact_report
    result = runner.invoke(cli, ["summary", str(path)])
    assert result.exit_code == 0, result.output
    assert "symplectic.hermitian_gram" in result.output

    only_failed = runner.invoke(cli, ["summary", str(path), "--failed"])
    assert only_failed.exit_code == 0
    assert "symplectic.hermitian_gram" not in only_failed.output


@pytest.mark.parametrize("suites", ["", "exact,nope"])
def test_invalid_suites_rejected(runner, suites):
    result = runner.invoke(cli, ["run", "--suites", suites])
    assert result.exit_code == 2


def test_invalid_theta_options_rejected(runner):
    result = runner.invoke(cli, ["run", "--suites", "theta", "--theta-n", "0"])
    assert result.exit_code == 2


def test_matrices_export(runner):
    result = runner.invoke(cli, ["matrices", "M", "M_C"])
    assert result.exit_code == 0
    assert "[M]" in result.output
    assert "[M_C]" in result.output

    unknown = runner.invoke(cli, ["matrices", "M_zz"])
    assert unknown.exit_code == 2
