"""Tests for configuration parsing and precedence."""

from fractions import Fraction

import pytest

from qbosonization.exceptions import ConfigError
from qbosonization.models import AlgebraMode, Backend, Basis
from qbosonization.services.config_service import (
    config_service,
    explicit_parameters,
    parameter_assignment,
    parse_mode,
    parse_number,
)


@pytest.fixture(autouse=True)
def clean_environment(monkeypatch):
    for name in ("QBOSON_DIM", "QBOSON_TOL", "QBOSON_SEED", "QBOSON_BASIS"):
        monkeypatch.delenv(name, raising=False)


class TestParsers:
    """Test value parsers."""

    def test_rational(self):
        """Test integers and fractions stay exact."""
        assert parse_number("3/2") == Fraction(3, 2)
        assert isinstance(parse_number("2"), Fraction)

    def test_decimal_and_complex(self):
        """Test decimals become floats and 'j' marks complex values."""
        assert parse_number("0.8") == 0.8
        assert parse_number("0.5+0.5j") == complex(0.5, 0.5)
        assert parse_number("1+0j") == 1.0

    def test_bad_number(self):
        """Test garbage and empty text raise ValueError."""
        with pytest.raises(ValueError):
            parse_number("three")
        with pytest.raises(ValueError):
            parse_number("  ")

    def test_mode_case_insensitive(self):
        """Test mode names ignore case."""
        assert parse_mode("fockrestricted") == AlgebraMode.FOCK_RESTRICTED
        with pytest.raises(ValueError):
            parse_mode("classical")


class TestConfigFile:
    """Test the key-value config format."""

    def test_full_file(self):
        """Test every section is read."""
        text = """
        # verification run
        realizations = Eq12, T
        modes = Generic
        backends = symbolic
        dim = 8
        q = 0.8, 3/2
        random_q = no

        [parameters]
        alpha = 2

        [realization.Eq12]
        beta = 1/3
        """
        raw, diagnostics = config_service.parse_text(text)
        assert diagnostics == []
        assert raw["realizations"] == ["Eq12", "T"]
        assert raw["modes"] == [AlgebraMode.GENERIC]
        assert raw["backends"] == [Backend.SYMBOLIC]
        assert raw["q_values"] == ["0.8", "3/2"]
        assert raw["random_q"] is False
        assert raw["parameters"] == {"alpha": "2"}
        assert raw["overrides"] == {"Eq12": {"beta": "1/3"}}

    def test_diagnostics_have_line_numbers(self):
        """Test parsing is total and reports every bad line."""
        text = "dim = 8\nbogus\nq = 1\nsize = 3\n[nope]\n"
        _, diagnostics = config_service.parse_text(text)
        assert len(diagnostics) == 4
        assert diagnostics[0].startswith("line 2:")
        assert diagnostics[1].startswith("line 3:")
        assert diagnostics[2].startswith("line 4:")
        assert diagnostics[3].startswith("line 5:")

    def test_unknown_realization_section(self):
        """Test overrides for unknown realizations are diagnosed."""
        _, diagnostics = config_service.parse_text("[realization.T9]\nmu = 2\n")
        assert diagnostics == ["line 1: unknown realization 'T9'"]

    def test_unknown_parameter(self):
        """Test only catalog parameter symbols are accepted."""
        _, diagnostics = config_service.parse_text("[parameters]\nepsilon = 2\n")
        assert len(diagnostics) == 1 and "epsilon" in diagnostics[0]

    def test_load_file(self, tmp_path):
        """Test files load and bad files raise ConfigError."""
        good = tmp_path / "good.cfg"
        good.write_text("dim = 6\n")
        assert config_service.load_file(good)["dim"] == 6
        bad = tmp_path / "bad.cfg"
        bad.write_text("dim = zero\n")
        with pytest.raises(ConfigError) as excinfo:
            config_service.load_file(bad)
        assert "line 1" in excinfo.value.diagnostics[0]
        with pytest.raises(ConfigError):
            config_service.load_file(tmp_path / "missing.cfg")


class TestResolve:
    """Test source precedence and validation."""

    def test_defaults(self):
        """Test defaults when nothing is given."""
        config = config_service.resolve()
        assert config.realizations == ["all"]
        assert config.dim == 16
        assert config.basis == Basis.NORMALIZED
        assert config.q_values == ["0.8", "3/2"]

    def test_precedence(self, monkeypatch):
        """Test environment < file < CLI."""
        monkeypatch.setenv("QBOSON_DIM", "6")
        assert config_service.resolve().dim == 6
        assert config_service.resolve({"dim": 8}).dim == 8
        assert config_service.resolve({"dim": 8}, {"dim": 10}).dim == 10

    def test_bad_environment(self, monkeypatch):
        """Test bad environment values raise ConfigError."""
        monkeypatch.setenv("QBOSON_BASIS", "Spherical")
        with pytest.raises(ConfigError) as excinfo:
            config_service.resolve()
        assert excinfo.value.diagnostics[0].startswith("QBOSON_BASIS")

    def test_model_validation(self):
        """Test out-of-range values become ConfigError."""
        with pytest.raises(ConfigError):
            config_service.resolve(None, {"dim": 2})
        with pytest.raises(ConfigError):
            config_service.resolve(None, {"seed": -1})

    def test_negative_environment_seed(self, monkeypatch):
        """Test a negative QBOSON_SEED is a configuration error."""
        monkeypatch.setenv("QBOSON_SEED", "-3")
        with pytest.raises(ConfigError) as excinfo:
            config_service.resolve()
        assert excinfo.value.diagnostics[0].startswith("QBOSON_SEED")

    def test_parameters_merge(self):
        """Test CLI parameters override file parameters symbol by symbol."""
        file_values = {"parameters": {"alpha": "2", "beta": "3"}, "overrides": {}}
        cli = config_service.cli_values({}, ["beta=5"])
        config = config_service.resolve(file_values, cli)
        assert config.parameters == {"alpha": "2", "beta": "5"}

    def test_unused_override_warns(self):
        """Test overrides of parameters a realization lacks warn."""
        raw, _ = config_service.parse_text("[realization.Eq12]\nmu = 2\n")
        with pytest.warns(UserWarning, match="mu"):
            config_service.resolve(raw)


class TestCliValues:
    """Test conversion of CLI strings."""

    def test_none_means_absent(self):
        """Test unset options are left out."""
        assert config_service.cli_values({"dim": None, "seed": "4"}) == {"seed": 4}

    def test_booleans_pass_through(self):
        """Test argparse booleans are kept as is."""
        assert config_service.cli_values({"random_q": False}) == {"random_q": False}

    def test_bad_values(self):
        """Test all bad CLI values are reported together."""
        with pytest.raises(ConfigError) as excinfo:
            config_service.cli_values({"q": "1", "modes": "Classic"}, ["epsilon=1"])
        assert len(excinfo.value.diagnostics) == 3

    def test_negative_seed(self):
        """Test seeds must be non-negative."""
        with pytest.raises(ConfigError) as excinfo:
            config_service.cli_values({"seed": "-1"})
        assert excinfo.value.diagnostics[0].startswith("--seed")


class TestParameterAssignment:
    """Test per-realization parameter values."""

    def test_override_wins(self):
        """Test realization overrides beat global parameters."""
        config = config_service.resolve({"parameters": {"alpha": "2"}, "overrides": {"Eq12": {"alpha": "0.5"}}})
        assert parameter_assignment(config)["alpha"] == Fraction(2)
        assert parameter_assignment(config, "Eq12")["alpha"] == 0.5
        assert parameter_assignment(config, "Eq12")["beta"] == Fraction(1)

    def test_explicit_parameters(self):
        """Test explicit names include global and realization-specific ones."""
        config = config_service.resolve({"parameters": {"alpha": "2"}, "overrides": {"Eq12": {"beta": "3"}}})
        assert explicit_parameters(config) == ["alpha"]
        assert explicit_parameters(config, "Eq12") == ["alpha", "beta"]
