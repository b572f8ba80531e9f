# ABOUTME: Pytest fixtures for the algvol command line tests
# ABOUTME: Runs main() in-process and hands back the exit code, parsed JSON document and stderr

import json

import pytest

from app.cli.commands import main


@pytest.fixture
def run_cli(capsys):
    """Invoke algvol with the given arguments and capture its output."""
    def _run(*argv: str):
        with pytest.raises(SystemExit) as exc_info:
            main(list(argv))
        captured = capsys.readouterr()
        return exc_info.value.code, json.loads(captured.out), captured.err

    return _run


@pytest.fixture
def stored_sqrt2_volume(tmp_path, run_cli):
    """The volume document for alpha = sqrt 2, written to disk."""
    code, document, _ = run_cli("volume", "--quadratic", "2", "--alpha", "0,1")
    assert code == 0
    path = tmp_path / "sqrt2.json"
    path.write_text(json.dumps(document))
    return path


@pytest.fixture
def stored_rational_volume(tmp_path, run_cli):
    """The degree-1 volume 1/2 from Q, written to disk as a bare report."""
    code, document, _ = run_cli("volume", "--minpoly", "x-2", "--alpha", "2")
    assert code == 0
    path = tmp_path / "half.json"
    path.write_text(json.dumps(document["result"]))
    return path
