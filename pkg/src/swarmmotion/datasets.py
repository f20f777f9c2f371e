"""Bundled example systems.

Five ready-to-run system specs ship with the package; the command line
accepts their bare names (example1 .. example5) wherever a spec path
is expected.
"""
from __future__ import annotations

from importlib import resources

from .errors import SpecError
from .specio import SystemSpec, parse_spec

BUNDLED_NAMES = ("example1", "example2", "example3", "example4", "example5")


def bundled_names() -> tuple[str, ...]:
    return BUNDLED_NAMES


def bundled_text(name: str) -> str:
    """Raw JSON text of a bundled spec."""
    if name not in BUNDLED_NAMES:
        raise SpecError(
            f"unknown bundled spec {name!r}; available: {', '.join(BUNDLED_NAMES)}"
        )
    return (
        resources.files("swarmmotion.data").joinpath(f"{name}.json").read_text("utf-8")
    )


def load_bundled(name: str) -> SystemSpec:
    """Parsed bundled spec."""
    return parse_spec(bundled_text(name))
