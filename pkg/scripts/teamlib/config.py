"""
Checker configuration: load, validate, and provide defaults for teamcheck.yaml.
"""

import os
from dataclasses import dataclass
from enum import Enum

import yaml

from teamlib.errors import ConfigError, UnsupportedSemantics

CONFIG_FILENAME = "teamcheck.yaml"

# Top-level sections and their defaults
EVALUATION_DEFAULTS = {
    "semantics": "lax",
    "mode": "optimized",
    "memo": True,
    "max_steps": 10_000_000,
}

ENUMERATION_DEFAULTS = {
    "max_worlds": 2,
    "props": ["p"],
    "max_k": 2,
}

CLI_DEFAULTS = {
    "arity_warning": 8,
}

SECTIONS = {
    "evaluation": EVALUATION_DEFAULTS,
    "enumeration": ENUMERATION_DEFAULTS,
    "cli": CLI_DEFAULTS,
}


class EvalMode(Enum):
    REFERENCE = "reference"
    OPTIMIZED = "optimized"


@dataclass(frozen=True)
class EvalConfig:
    """Evaluator settings shared by every operation that evaluates formulas."""

    mode: EvalMode = EvalMode.OPTIMIZED
    memo_enabled: bool = True
    max_steps: int = EVALUATION_DEFAULTS["max_steps"]
    semantics: str = "lax"

    def __post_init__(self):
        if self.semantics != "lax":
            raise UnsupportedSemantics(
                f"only lax team semantics is supported, got '{self.semantics}'"
            )
        if self.max_steps <= 0:
            raise ConfigError("max_steps must be positive")

    def with_mode(self, mode):
        return EvalConfig(mode, self.memo_enabled, self.max_steps, self.semantics)


REFERENCE = EvalConfig(mode=EvalMode.REFERENCE)
OPTIMIZED = EvalConfig(mode=EvalMode.OPTIMIZED)


class CheckerConfig:
    """
    Loaded, validated checker configuration.

    Usage:
        config = CheckerConfig.load()            # ./teamcheck.yaml or defaults
        config.evaluation["max_steps"]           # 10000000
        config.eval_config()                     # EvalConfig value
    """

    def __init__(self, data, path=None):
        self._data = data
        self.path = path

    @classmethod
    def load(cls, path=None):
        """Load teamcheck.yaml; a missing default file means all defaults."""
        explicit = path is not None
        path = path or os.path.join(os.getcwd(), CONFIG_FILENAME)

        data = {}
        if os.path.exists(path):
            with open(path) as f:
                try:
                    data = yaml.safe_load(f)
                except yaml.YAMLError as e:
                    raise ConfigError(f"{path} is not valid YAML: {e}")
            if data is None:
                data = {}
        elif explicit:
            raise ConfigError(f"No config file found at {path}")
        else:
            path = None

        if not isinstance(data, dict):
            raise ConfigError(
                f"{CONFIG_FILENAME} must be a YAML mapping, got {type(data).__name__}"
            )

        unknown = sorted(set(data) - set(SECTIONS))
        if unknown:
            raise ConfigError(f"{CONFIG_FILENAME} has unknown sections: {', '.join(unknown)}")

        # Apply section defaults
        for section, defaults in SECTIONS.items():
            values = data.setdefault(section, {})
            if not isinstance(values, dict):
                raise ConfigError(f"section '{section}' must be a mapping")
            for key, default in defaults.items():
                values.setdefault(key, list(default) if isinstance(default, list) else default)

        cls._validate(data)
        return cls(data, path)

    @staticmethod
    def _validate(data):
        evaluation = data["evaluation"]
        if evaluation["mode"] not in {m.value for m in EvalMode}:
            raise ConfigError(f"evaluation.mode must be reference or optimized, got '{evaluation['mode']}'")
        if evaluation["semantics"] != "lax":
            raise ConfigError(
                f"evaluation.semantics '{evaluation['semantics']}' is not supported (lax only)"
            )
        for section, key in [("evaluation", "max_steps"), ("enumeration", "max_worlds"),
                             ("enumeration", "max_k"), ("cli", "arity_warning")]:
            value = data[section][key]
            if not isinstance(value, int) or isinstance(value, bool) or value < 0:
                raise ConfigError(f"{section}.{key} must be a non-negative integer")

    # ── Attribute access ───────────────────────────────────

    def __getattr__(self, name):
        if name.startswith("_"):
            raise AttributeError(name)
        try:
            return self._data[name]
        except KeyError:
            raise AttributeError(f"CheckerConfig has no section '{name}'")

    def get(self, key, default=None):
        return self._data.get(key, default)

    # ── Convenience ────────────────────────────────────────

    def eval_config(self, mode=None, max_steps=None, memo=None):
        """Build an EvalConfig, letting CLI flags override file values."""
        evaluation = self.evaluation
        return EvalConfig(
            mode=EvalMode(mode or evaluation["mode"]),
            memo_enabled=evaluation["memo"] if memo is None else memo,
            max_steps=evaluation["max_steps"] if max_steps is None else max_steps,
            semantics=evaluation["semantics"],
        )

    def summary(self):
        """Print a short config summary."""
        evaluation = self.evaluation
        print(f"\n  Config: {self.path or 'defaults'}")
        print(f"  Mode:   {evaluation['mode']} (memo {'on' if evaluation['memo'] else 'off'})")
        print(f"  Budget: {evaluation['max_steps']} steps")
