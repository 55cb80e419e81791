"""Tests for the command-line interface."""

import pytest

from qbosonization.main import main
from qbosonization.services.conversion_service import ConversionService


@pytest.fixture(autouse=True)
def clean_environment(monkeypatch):
    for name in ("QBOSON_DIM", "QBOSON_TOL", "QBOSON_SEED", "QBOSON_BASIS"):
        monkeypatch.delenv(name, raising=False)


class TestCatalogCommands:
    """Test list and explain."""

    def test_list(self, capsys):
        """Test list prints every realization."""
        assert main(["list"]) == 0
        out = capsys.readouterr().out
        for name in ("T", "T1", "T2", "T3", "Eq12", "XY", "OneBosonW"):
            assert name in out

    def test_explain_eq12(self, capsys):
        """Test explain shows Gauss factors, entries and printed forms."""
        assert main(["explain", "Eq12"]) == 0
        out = capsys.readouterr().out
        assert "Gauss factors:" in out
        assert "Printed forms:" in out
        assert "Catalogued qdet:" in out

    def test_explain_unknown(self, capsys):
        """Test unknown names exit with status 2."""
        assert main(["explain", "Nope"]) == 2
        assert "Error:" in capsys.readouterr().err

    def test_version(self, capsys):
        """Test --version prints and exits."""
        with pytest.raises(SystemExit) as excinfo:
            main(["--version"])
        assert excinfo.value.code == 0
        assert "1.0.0" in capsys.readouterr().out


class TestVerifyCommand:
    """Test the verify command."""

    def test_symbolic_eq12(self, capsys, tmp_path):
        """Test a symbolic Eq12 run passes and writes a JSON report."""
        path = tmp_path / "report.json"
        code = main([
            "verify", "--realization", "Eq12", "--backend", "symbolic",
            "--no-auxiliary", "--json", str(path),
        ])
        assert code == 0
        out = capsys.readouterr().out
        assert "✓ All outcomes match the catalog" in out
        report = ConversionService.load(path)
        assert len(report["cells"]) == 2
        assert {cell["qdet"] for cell in report["cells"]} == {"gamma*delta"}
        assert report["meta"]["config"]["realizations"] == ["Eq12"]

    def test_expected_failures_still_exit_zero(self, capsys):
        """Test catalogued failures are reported but do not fail the run."""
        code = main(["verify", "--realization", "T", "--backend", "symbolic", "--mode", "Generic", "--no-auxiliary"])
        assert code == 0
        assert "expected-fail" in capsys.readouterr().out

    @pytest.mark.parametrize("argv", [
        ["--dim", "2"],
        ["--q", "1"],
        ["--realization", "T9"],
        ["--param", "epsilon=1"],
        ["--mode", "Classical"],
        ["--seed", "-1", "--backend", "numeric"],
    ])
    def test_config_errors(self, capsys, argv):
        """Test bad configuration exits with status 2."""
        assert main(["verify", *argv]) == 2
        assert "Configuration error:" in capsys.readouterr().err

    def test_config_file(self, capsys, tmp_path):
        """Test a config file selects the run and the CLI overrides it."""
        path = tmp_path / "run.cfg"
        path.write_text("realizations = T1\nbackends = symbolic\nauxiliary = no\nmodes = Generic\n")
        assert main(["verify", "--config", str(path), "--mode", "FockRestricted"]) == 0
        out = capsys.readouterr().out
        assert "T1 [FockRestricted/symbolic]" in out
        assert "Generic" not in out

    def test_missing_config_file(self, capsys, tmp_path):
        """Test a missing config file is a configuration error."""
        assert main(["verify", "--config", str(tmp_path / "missing.cfg")]) == 2


class TestDumpCommand:
    """Test dump-matrix."""

    def test_print(self, capsys):
        """Test the dense matrix is printed with its raising excess."""
        assert main(["dump-matrix", "T", "b", "--dim", "4"]) == 0
        out = capsys.readouterr().out
        assert "T.b" in out
        assert "Exact basis" in out

    def test_json(self, capsys, tmp_path):
        """Test the JSON dump holds [re, im] pairs over the full two-oscillator space."""
        path = tmp_path / "a.json"
        assert main(["dump-matrix", "Eq12", "a", "--dim", "3", "--q", "0.8", "--basis", "Normalized",
                     "--json", str(path)]) == 0
        payload = ConversionService.load(path)
        assert payload["label"] == "Eq12.a"
        assert payload["oscillators"] == 2
        assert len(payload["entries"]) == 9
        assert len(payload["entries"][0][0]) == 2

    def test_bad_parameter(self, capsys):
        """Test unknown parameters exit with status 2."""
        assert main(["dump-matrix", "T", "a", "--param", "epsilon=2"]) == 2
        assert "Error:" in capsys.readouterr().err
