"""Combinatorial ceilings.

Defaults keep every run at desk scale.  Raising a ceiling above its default
requires ``allow_raise=True`` (the CLI's ``--override-ceilings`` flag) or the
``HEYTINGLAB_CEILINGS`` environment variable, e.g. ``carrier=7,rank=4``.
"""

from __future__ import annotations

import os
from dataclasses import dataclass, fields, replace

from .errors import InputError

ENV_VAR = "HEYTINGLAB_CEILINGS"


@dataclass(frozen=True)
class Ceilings:
    carrier: int = 6
    rank: int = 3
    width: int = 2
    relation_cells: int = 16
    subset_search: int = 2**16
    names: int = 50_000

    def with_overrides(self, allow_raise: bool = False, **values: int) -> "Ceilings":
        current = {f.name: getattr(self, f.name) for f in fields(self)}
        for key, value in values.items():
            if key not in current:
                raise InputError(f"unknown ceiling {key!r}")
            if value < 0:
                raise InputError(f"ceiling {key} must be non-negative")
            if value > getattr(DEFAULT_CEILINGS, key) and not allow_raise:
                raise InputError(
                    f"raising ceiling {key} above {getattr(DEFAULT_CEILINGS, key)} needs an explicit override"
                )
        return replace(self, **values)


DEFAULT_CEILINGS = Ceilings()


def parse_overrides(text: str) -> dict[str, int]:
    out: dict[str, int] = {}
    for chunk in text.split(","):
        chunk = chunk.strip()
        if not chunk:
            continue
        key, sep, value = chunk.partition("=")
        if not sep:
            raise InputError(f"bad ceiling override {chunk!r}; expected key=value")
        try:
            out[key.strip()] = int(value)
        except ValueError:
            raise InputError(f"bad ceiling value in {chunk!r}") from None
    return out


def ceilings_from_env(environ: dict[str, str] | None = None) -> Ceilings:
    environ = os.environ if environ is None else environ
    text = environ.get(ENV_VAR, "")
    if not text:
        return DEFAULT_CEILINGS
    # Setting the variable is itself the explicit override.
    return DEFAULT_CEILINGS.with_overrides(allow_raise=True, **parse_overrides(text))
