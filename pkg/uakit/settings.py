"""Runtime settings resolved from the environment."""

from __future__ import annotations

import logging
import os
from collections.abc import Mapping
from dataclasses import dataclass

from .const import DEFAULT_MAX_ATOMS, ENV_MAX_ATOMS, HARD_MAX_ATOMS

_LOGGER = logging.getLogger(__name__)


@dataclass(frozen=True)
class Settings:
    """Immutable settings for one process."""

    max_atoms: int = DEFAULT_MAX_ATOMS


def load_settings(environ: Mapping[str, str] | None = None) -> Settings:
    """Build settings from environment variables, falling back to defaults."""
    env = os.environ if environ is None else environ
    raw = env.get(ENV_MAX_ATOMS)
    if raw is None or raw.strip() == "":
        return Settings()
    try:
        requested = int(raw)
    except ValueError:
        _LOGGER.warning("Ignoring %s=%r: not an integer", ENV_MAX_ATOMS, raw)
        return Settings()
    if requested < 0:
        _LOGGER.warning("Ignoring %s=%d: negative", ENV_MAX_ATOMS, requested)
        return Settings()
    if requested > HARD_MAX_ATOMS:
        _LOGGER.warning(
            "%s=%d exceeds the hard ceiling, using %d", ENV_MAX_ATOMS, requested, HARD_MAX_ATOMS
        )
        requested = HARD_MAX_ATOMS
    return Settings(max_atoms=requested)


def max_atoms() -> int:
    """Return the atom cap in effect for this process."""
    return load_settings().max_atoms
