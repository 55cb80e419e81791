from __future__ import annotations

import logging
import re
import warnings
from fractions import Fraction
from pathlib import Path
from typing import Any, Dict, List, Mapping, Optional, Tuple, Union

from pydantic import ValidationError

from qbosonization import schema
from qbosonization.exceptions import ConfigError
from qbosonization.models import AlgebraMode, Backend, Basis, SuiteConfig
from qbosonization.services.realization_service import realization_repository
from qbosonization.settings import env_defaults

logger = logging.getLogger(__name__)

Number = Union[Fraction, float, complex]

TOP_LEVEL_KEYS = (
    "realizations", "modes", "backends", "dim", "q", "tol", "seed",
    "q_power", "basis", "random_q", "auxiliary",
)
_SECTION = re.compile(r"^\[(?P<name>[A-Za-z0-9_.]+)\]$")
_RATIONAL = re.compile(r"^[+-]?\d+(/\d+)?$")
_BOOLEANS = {"true": True, "yes": True, "on": True, "1": True,
             "false": False, "no": False, "off": False, "0": False}


def parse_number(text: str) -> Number:
    """'3/2' and '2' stay exact; decimals become floats and 'j' marks complex values."""
    text = text.strip().replace(" ", "")
    if not text:
        raise ValueError("empty number")
    if _RATIONAL.match(text):
        value = Fraction(text)
    elif "j" in text:
        value = complex(text)
        if value.imag == 0:
            return value.real
    else:
        value = float(text)
    return value


def _split_list(text: str) -> List[str]:
    return [item.strip() for item in text.split(",") if item.strip()]


def parse_mode(text: str) -> AlgebraMode:
    for mode in AlgebraMode:
        if text.lower() == mode.value.lower():
            return mode
    raise ValueError(f"unknown mode '{text}'. Must be one of {[m.value for m in AlgebraMode]}")


def parse_backend(text: str) -> Backend:
    for backend in Backend:
        if text.lower() == backend.value:
            return backend
    raise ValueError(f"unknown backend '{text}'. Must be one of {[b.value for b in Backend]}")


def parse_basis(text: str) -> Basis:
    for basis in Basis:
        if text.lower() == basis.value.lower():
            return basis
    raise ValueError(f"unknown basis '{text}'. Must be one of {[b.value for b in Basis]}")


def _positive_int(text: str) -> int:
    value = int(text)
    if value < 1:
        raise ValueError(f"expected a positive integer, got {value}")
    return value


def _non_negative_int(text: str) -> int:
    value = int(text)
    if value < 0:
        raise ValueError(f"expected a non-negative integer, got {value}")
    return value


def _q_value(text: str) -> str:
    value = parse_number(text)
    if value == 0:
        raise ValueError("q must be nonzero")
    if value in (1, -1):
        raise ValueError(f"q = {text} makes q - q^-1 vanish")
    return text.strip()


def _parameter_value(text: str) -> str:
    parse_number(text)
    return text.strip()


def _realization_names(text: str) -> List[str]:
    names = _split_list(text)
    if names == ["all"]:
        return names
    unknown = [name for name in names if not realization_repository.exists(name)]
    if unknown:
        raise ValueError(f"unknown realization(s) {unknown}. Must be among {realization_repository.names()}")
    return names


def _boolean(text: str) -> bool:
    try:
        return _BOOLEANS[text.strip().lower()]
    except KeyError:
        raise ValueError(f"expected a boolean, got '{text}'")


_CONVERTERS = {
    "realizations": ("realizations", _realization_names),
    "modes": ("modes", lambda text: [parse_mode(item) for item in _split_list(text)]),
    "backends": ("backends", lambda text: [parse_backend(item) for item in _split_list(text)]),
    "dim": ("dim", _positive_int),
    "q": ("q_values", lambda text: [_q_value(item) for item in _split_list(text)]),
    "tol": ("tolerance", float),
    "seed": ("seed", _non_negative_int),
    "q_power": ("q_power", _positive_int),
    "basis": ("basis", parse_basis),
    "random_q": ("random_q", _boolean),
    "auxiliary": ("auxiliary", _boolean),
}


class ConfigService:
    """Reads suite configuration from defaults, environment, config file and CLI."""

    def parse_text(self, text: str) -> Tuple[Dict[str, Any], List[str]]:
        """Parse config text into raw values; never raises, returns diagnostics instead."""
        raw: Dict[str, Any] = {"parameters": {}, "overrides": {}}
        diagnostics: List[str] = []
        section: Optional[str] = None
        for number, line in enumerate(text.splitlines(), start=1):
            line = line.split("#", 1)[0].strip()
            if not line:
                continue
            header = _SECTION.match(line)
            if header:
                name = header.group("name")
                if name == "parameters":
                    section = name
                elif name.startswith("realization."):
                    target = name[len("realization."):]
                    if not realization_repository.exists(target):
                        diagnostics.append(f"line {number}: unknown realization '{target}'")
                        section = "<ignored>"
                    else:
                        section = name
                        raw["overrides"].setdefault(target, {})
                else:
                    diagnostics.append(f"line {number}: unknown section '[{name}]'")
                    section = "<ignored>"
                continue
            if "=" not in line:
                diagnostics.append(f"line {number}: expected 'key = value', got '{line}'")
                continue
            key, value = (part.strip() for part in line.split("=", 1))
            if not key or not value:
                diagnostics.append(f"line {number}: empty key or value")
                continue
            if section == "<ignored>":
                continue
            if section is None:
                if key not in TOP_LEVEL_KEYS:
                    diagnostics.append(f"line {number}: unknown key '{key}'. Must be one of {list(TOP_LEVEL_KEYS)}")
                    continue
                field, convert = _CONVERTERS[key]
                try:
                    raw[field] = convert(value)
                except ValueError as e:
                    diagnostics.append(f"line {number}: bad value for '{key}': {e}")
                continue
            if key not in schema.PARAMETER_SYMBOLS:
                diagnostics.append(
                    f"line {number}: unknown parameter '{key}'. Must be one of {list(schema.PARAMETER_SYMBOLS)}"
                )
                continue
            try:
                parsed = _parameter_value(value)
            except ValueError as e:
                diagnostics.append(f"line {number}: bad value for parameter '{key}': {e}")
                continue
            if section == "parameters":
                raw["parameters"][key] = parsed
            else:
                raw["overrides"][section[len("realization."):]][key] = parsed
        return raw, diagnostics

    def load_file(self, path: Union[str, Path]) -> Dict[str, Any]:
        path = Path(path)
        try:
            text = path.read_text(encoding="utf-8")
        except OSError as e:
            raise ConfigError([f"{path}: cannot read config file ({e.strerror or e})"])
        raw, diagnostics = self.parse_text(text)
        if diagnostics:
            raise ConfigError([f"{path}: {message}" for message in diagnostics])
        logger.info("[CONFIG] loaded %s", path)
        return raw

    def environment_values(self) -> Dict[str, Any]:
        values: Dict[str, Any] = {}
        diagnostics: List[str] = []
        env_keys = {"dim": "QBOSON_DIM", "tol": "QBOSON_TOL", "seed": "QBOSON_SEED", "basis": "QBOSON_BASIS"}
        for key, text in env_defaults().items():
            field, convert = _CONVERTERS[key]
            try:
                values[field] = convert(text)
            except ValueError as e:
                diagnostics.append(f"{env_keys[key]}: {e}")
        if diagnostics:
            raise ConfigError(diagnostics)
        return values

    def cli_values(self, options: Mapping[str, Optional[str]], params: Optional[List[str]] = None) -> Dict[str, Any]:
        """Convert CLI strings keyed like the config file; None means not given."""
        values: Dict[str, Any] = {}
        diagnostics: List[str] = []
        for key, text in options.items():
            if text is None:
                continue
            field, convert = _CONVERTERS[key]
            try:
                values[field] = convert(text) if isinstance(text, str) else text
            except ValueError as e:
                diagnostics.append(f"--{key.replace('_', '-')}: {e}")
        parameters: Dict[str, str] = {}
        for item in params or []:
            symbol, _, value = item.partition("=")
            symbol = symbol.strip()
            if symbol not in schema.PARAMETER_SYMBOLS or not value.strip():
                diagnostics.append(f"--param: expected 'symbol=value' with symbol in {list(schema.PARAMETER_SYMBOLS)}")
                continue
            try:
                parameters[symbol] = _parameter_value(value)
            except ValueError as e:
                diagnostics.append(f"--param {symbol}: {e}")
        if parameters:
            values["parameters"] = parameters
        if diagnostics:
            raise ConfigError(diagnostics)
        return values

    def resolve(
        self,
        file_values: Optional[Mapping[str, Any]] = None,
        cli_values: Optional[Mapping[str, Any]] = None,
    ) -> SuiteConfig:
        """Merge defaults < environment < file < CLI into a validated SuiteConfig."""
        merged: Dict[str, Any] = {}
        parameters: Dict[str, str] = {}
        overrides: Dict[str, Dict[str, str]] = {}
        for source in (self.environment_values(), file_values or {}, cli_values or {}):
            for key, value in source.items():
                if key == "parameters":
                    parameters.update(value)
                elif key == "overrides":
                    for name, values in value.items():
                        overrides.setdefault(name, {}).update(values)
                else:
                    merged[key] = value
        merged["parameters"] = parameters
        merged["overrides"] = overrides
        try:
            config = SuiteConfig(**merged)
        except ValidationError as e:
            raise ConfigError([
                f"{'.'.join(str(p) for p in error['loc'])}: {error['msg']}" for error in e.errors()
            ])
        self.warn_unused_overrides(config)
        return config

    def warn_unused_overrides(self, config: SuiteConfig) -> None:
        for name, values in config.overrides.items():
            used = set(realization_repository.get(name).spec.parameters)
            unused = sorted(set(values) - used)
            if unused:
                warnings.warn(
                    f"Realization '{name}' does not use parameter(s) {unused}; override ignored",
                    UserWarning,
                )


def parameter_assignment(config: SuiteConfig, realization: Optional[str] = None) -> Dict[str, Number]:
    """Numeric parameter values for one realization: defaults, then globals, then its overrides."""
    values: Dict[str, Number] = dict(schema.DEFAULT_PARAMETERS)
    for symbol, text in config.parameters.items():
        values[symbol] = parse_number(text)
    if realization is not None:
        for symbol, text in config.overrides.get(realization, {}).items():
            values[symbol] = parse_number(text)
    return values


def explicit_parameters(config: SuiteConfig, realization: Optional[str] = None) -> List[str]:
    names = set(config.parameters)
    if realization is not None:
        names |= set(config.overrides.get(realization, {}))
    return sorted(names)


config_service = ConfigService()
