# ABOUTME: Tests for the algvol command line: JSON documents, exit codes and stderr summaries
# ABOUTME: Covers every subcommand plus argument errors and stored-report round trips

import json
from fractions import Fraction
from unittest.mock import patch

import pytest

from app.cli.commands import build_parser, run
from app.models.errors import ComputationError


# ============================================================================
# Output document
# ============================================================================

def test_volume_command_sqrt2(run_cli):
    """The running example: Q(sqrt 2), alpha = sqrt 2."""
    code, document, _ = run_cli("volume", "--quadratic", "2", "--alpha", "0,1")

    assert code == 0
    assert document["schema_version"] == "1.0"
    assert document["error"] is None
    assert document["warnings"] == []
    result = document["result"]
    assert result["volume"]["min_poly"] == [-16, 24, 9]
    assert result["volume"]["minimality"] == "proved"
    assert result["numeric_value"] == "0.552285"
    assert result["t0"] == 2
    assert result["volume_degree"] == 2
    assert result["ambient_dimension"] == 3
    assert result["flags"]["degree_equals_field_degree"] is True
    assert result["M_alpha"]["text"] == "1/3*t^3 - 2*t"


def test_volume_on_reducible_field(run_cli):
    """t^2 - 1 is accepted but the volume 4/3 is rational and the degree flag stays off."""
    code, document, _ = run_cli("volume", "--minpoly", "x^2-1", "--alpha", "0,1")

    assert code == 0
    result = document["result"]
    assert result["numeric_value"] == "1.333333"
    assert result["volume"]["min_poly"] == [-4, 3]
    assert result["volume_degree"] == 1
    assert result["beta"]["min_poly"] == [-1, 1]
    assert result["field"]["irreducibility"] == "unproved"
    assert result["flags"]["degree_equals_field_degree"] is False


def test_command_is_echoed(run_cli):
    """The parsed arguments come back under "command"."""
    _, document, _ = run_cli("volume", "--quadratic", "2", "--alpha", "0,1", "--t0", "3")

    command = document["command"]
    assert command["command"] == "volume"
    assert command["alpha"] == "0,1"
    assert command["t0"] == 3
    assert command["normalization"] == "raw_integral"


def test_geometric_normalization(run_cli):
    """2 * sqrt 2 - 2 has polynomial x^2 + 4x - 4."""
    code, document, _ = run_cli(
        "volume", "--quadratic", "2", "--alpha", "0,1", "--normalization", "geometric"
    )

    assert code == 0
    assert document["result"]["volume"]["min_poly"] == [-4, 4, 1]
    assert document["result"]["numeric_value"] == "0.828427"
    assert document["result"]["normalization_constant"] == "3/2"


def test_digits_flag(run_cli):
    """--digits controls the decimal rendering."""
    _, document, _ = run_cli("volume", "--quadratic", "2", "--alpha", "0,1", "--digits", "3")
    assert document["result"]["numeric_value"] == "0.552"


def test_stderr_summary(run_cli):
    """A one-line summary with the elapsed time goes to stderr."""
    _, _, err = run_cli("volume", "--quadratic", "2", "--alpha", "0,1", "--quiet")
    assert "volume 0.552285 of degree 2" in err
    assert err.rstrip().endswith("ms)")


def test_output_is_deterministic(capsys):
    """Identical inputs give byte-identical stdout."""
    from app.cli.commands import main

    outputs = []
    for _ in range(2):
        with pytest.raises(SystemExit):
            main(["volume", "--cyclotomic", "7", "--auto-search", "3"])
        outputs.append(capsys.readouterr().out)

    assert outputs[0] == outputs[1]


def test_run_returns_document_and_code():
    """run() is the in-process entry point behind main()."""
    document, code, summary = run(["field", "--quadratic", "5"])

    assert code == 0
    assert document.result.degree == 2
    assert "degree 2" in summary


# ============================================================================
# field
# ============================================================================

def test_field_command_cyclotomic(run_cli):
    """Q(zeta_7)^+ is the cubic x^3 + x^2 - 2x - 1."""
    code, document, _ = run_cli("field", "--cyclotomic", "7")

    assert code == 0
    result = document["result"]
    assert result["degree"] == 3
    assert result["coefficients"] == ["-1", "-2", "1", "1"]
    assert result["totally_real"] is True
    assert result["galois_attested"] is True
    assert len(result["real_roots"]) == 3


def test_field_command_period(run_cli):
    """The degree-5 period field of conductor 11."""
    code, document, _ = run_cli("field", "--period", "11", "5")

    assert code == 0
    assert document["result"]["degree"] == 5


def test_field_command_warns_when_not_galois(run_cli):
    """x^3 - 2 is accepted with a warning."""
    code, document, _ = run_cli("field", "--minpoly", "x^3-2")

    assert code == 0
    assert document["result"]["totally_real"] is False
    assert any("not attested Galois" in w for w in document["warnings"])


def test_field_command_require_totally_real(run_cli):
    """x^2 + 1 is rejected with exit code 2."""
    code, document, _ = run_cli("field", "--minpoly", "x^2+1", "--require-totally-real")

    assert code == 2
    assert document["result"] is None
    assert document["error"]["code"] == "INVALID_PARAMETER"


# ============================================================================
# Argument errors
# ============================================================================

@pytest.mark.parametrize(
    "argv",
    [
        [],
        ["volume", "--alpha", "0,1"],
        ["volume", "--quadratic", "2"],
        ["volume", "--quadratic", "2", "--cyclotomic", "7", "--alpha", "0,1"],
        ["volume", "--quadratic", "2", "--alpha", "0,1", "--t0", "1"],
        ["volume", "--quadratic", "4", "--alpha", "0,1"],
        ["volume", "--minpoly", "x^2+", "--alpha", "0,1"],
        ["volume", "--quadratic", "2", "--alpha", "0,1", "--digits", "-1"],
        ["pi-demo", "--N", "0"],
        ["pi-demo", "--N", "1", "--tol", "1e400"],
        ["pi-demo", "--N", "1", "--tol", "1e-400"],
        ["verify", "--quadratic", "2", "--alpha", "0,1", "--threshold", "1e400"],
        ["kunneth", "--pq", "3", "7"],
        ["kunneth"],
        ["frobnicate"],
    ],
)
def test_invalid_arguments_exit_2(run_cli, argv):
    """Every invalid input is a JSON error document with exit code 2."""
    code, document, err = run_cli(*argv)

    assert code == 2
    assert document["result"] is None
    assert document["error"]["code"] == "INVALID_PARAMETER"
    assert "INVALID_PARAMETER" in err


def test_parser_lists_subcommands():
    """All six subcommands are registered."""
    parser = build_parser()
    subparsers = next(a for a in parser._actions if a.dest == "command")
    assert set(subparsers.choices) == {"field", "volume", "search", "verify", "pi-demo", "kunneth"}


# ============================================================================
# search
# ============================================================================

def test_search_command(run_cli):
    """In Q(sqrt 2) the first candidate (0, 1) is accepted."""
    code, document, _ = run_cli("search", "--quadratic", "2", "--bound", "1")

    assert code == 0
    result = document["result"]
    assert result["element"] == ["0", "1"]
    assert result["examined"] == 1
    assert result["certificate"]["det"] == "-4/3"
    assert result["volume"]["numeric_value"] == "0.552285"


def test_search_exhausted_exits_3(run_cli):
    """A vanishing certificate everywhere exhausts the search."""
    from app.services.number_field import CertificateMatrix

    zero = CertificateMatrix(columns=(), det=Fraction(0))
    with patch("app.services.volume.certificate_det", return_value=zero):
        code, document, _ = run_cli("search", "--quadratic", "2", "--bound", "1")

    assert code == 3
    assert document["error"]["code"] == "SEARCH_EXHAUSTED"
    assert document["error"]["details"]["examined"] == 8


# ============================================================================
# verify
# ============================================================================

def test_verify_command(run_cli):
    """Riemann sums converge to the exact volume and k = 2 scales by 8."""
    code, document, _ = run_cli("verify", "--quadratic", "2", "--alpha", "0,1", "--scale-check", "2")

    assert code == 0
    result = document["result"]
    assert result["volume"]["numeric_value"] == "0.552285"
    assert len(result["oracle"]["values"]) == 9
    assert result["oracle"]["convergence"]["passed"] is True
    assert result["scaling"]["factor"] == "8"
    assert result["scaling"]["identical"] is True


def test_verify_rational_field(run_cli):
    """Q with alpha = 2 and t0 = 3: exact 1/2 and a converging oracle."""
    code, document, _ = run_cli("verify", "--minpoly", "x-2", "--alpha", "2", "--t0", "3")

    assert code == 0
    assert document["result"]["volume"]["numeric_value"] == "0.500000"
    assert document["result"]["oracle"]["exact_reference"].startswith("0.5")
    assert document["result"]["scaling"] is None


def test_verify_threshold_failure_exits_3(run_cli):
    """A threshold below the attainable residual is a convergence failure."""
    code, document, _ = run_cli("verify", "--quadratic", "2", "--alpha", "0,1", "--threshold", "1e-12")

    assert code == 3
    assert document["error"]["code"] == "NOT_CONVERGED"
    assert document["result"]["oracle"]["convergence"]["passed"] is False


def test_verify_short_schedule_exits_2(run_cli):
    """Two levels are not enough for a convergence verdict."""
    code, document, _ = run_cli("verify", "--quadratic", "2", "--alpha", "0,1", "--kmin", "16", "--kmax", "32")

    assert code == 2
    assert document["error"]["code"] == "INVALID_PARAMETER"


# ============================================================================
# pi-demo
# ============================================================================

def test_pi_demo_command(run_cli):
    """N = 1 recovers pi."""
    code, document, _ = run_cli("pi-demo", "--N", "1")

    assert code == 0
    result = document["result"]
    assert result["converged"] is True
    assert abs(float(result["ratio"]) - 3.141592653589793) < 1e-6
    assert result["tolerance"] == "1/100000000"


# ============================================================================
# kunneth
# ============================================================================

def test_kunneth_from_stored_reports(run_cli, stored_sqrt2_volume, stored_rational_volume):
    """V(sqrt 2) in dimension 3 times 1/2 in dimension 2."""
    code, document, _ = run_cli("kunneth", str(stored_sqrt2_volume), str(stored_rational_volume))

    assert code == 0
    result = document["result"]
    assert result["ambient_dimension"] == 5
    assert result["volume_degree"] == 2
    assert result["numeric_value"] == "0.276142"
    assert [op["ambient_dimension"] for op in result["operands"]] == [3, 2]


def test_kunneth_product_can_be_fed_back(run_cli, stored_sqrt2_volume, stored_rational_volume, tmp_path):
    """A stored product report is itself a valid operand."""
    _, document, _ = run_cli("kunneth", str(stored_sqrt2_volume), str(stored_rational_volume))
    product_path = tmp_path / "product.json"
    product_path.write_text(json.dumps(document))

    code, again, _ = run_cli("kunneth", str(product_path), str(stored_rational_volume))

    assert code == 0
    assert again["result"]["ambient_dimension"] == 7
    assert again["result"]["numeric_value"] == "0.138071"


def test_kunneth_rejects_bad_files(run_cli, tmp_path, stored_sqrt2_volume):
    """Missing files, invalid JSON and foreign documents exit with code 2."""
    not_json = tmp_path / "broken.json"
    not_json.write_text("{")
    foreign = tmp_path / "foreign.json"
    foreign.write_text(json.dumps({"result": {"degree": 2}}))

    for other in (tmp_path / "missing.json", not_json, foreign):
        code, document, _ = run_cli("kunneth", str(stored_sqrt2_volume), str(other))
        assert code == 2
        assert document["error"]["code"] == "INVALID_PARAMETER"


def test_kunneth_rejects_files_and_pq_together(run_cli, stored_sqrt2_volume):
    """Either two files or --pq."""
    code, _, _ = run_cli("kunneth", str(stored_sqrt2_volume), str(stored_sqrt2_volume), "--pq", "3", "5")
    assert code == 2


# ============================================================================
# Computation failures
# ============================================================================

def test_arithmetic_failure_exits_3(run_cli):
    """An unexpected arithmetic failure is reported as COMPUTATION_FAILED."""
    with patch("app.cli.commands.cutkosky_volume", side_effect=ZeroDivisionError("division by zero")):
        code, document, _ = run_cli("volume", "--quadratic", "2", "--alpha", "0,1")

    assert code == 3
    assert document["error"]["code"] == "COMPUTATION_FAILED"


def test_engine_failure_exits_3(run_cli):
    """ComputationError subclasses keep their own code."""
    with patch("app.cli.commands.cutkosky_volume", side_effect=ComputationError("no root")):
        code, document, _ = run_cli("volume", "--quadratic", "2", "--alpha", "0,1")

    assert code == 3
    assert document["error"]["message"] == "no root"
