"""Flat ``section.key = value`` configuration files.

One assignment per line; blank lines and lines starting with ``#`` are
ignored, and a `` #`` after the value starts a trailing comment.  Values
stay strings here; the pipeline schema coerces them.
"""

from __future__ import annotations

import re

from .errors import ConfigError

_KEY_RE = re.compile(r"^[a-z][a-z0-9_]*(\.[a-z][a-z0-9_]*)+$")


def parse_config(text: str, source: str = "<config>") -> dict[str, str]:
    """Parse config text into an ordered {dotted.key: raw value} mapping."""
    out: dict[str, str] = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if "=" not in line:
            raise ConfigError(f"{source}:{lineno}: expected 'section.key = value', got {line!r}")
        key, _, value = line.partition("=")
        key = key.strip()
        value = value.split(" #", 1)[0].strip()
        if not _KEY_RE.match(key):
            raise ConfigError(f"{source}:{lineno}: malformed key {key!r}")
        if not value:
            raise ConfigError(f"{source}:{lineno}: empty value for {key!r}")
        if key in out:
            raise ConfigError(f"{source}:{lineno}: duplicate key {key!r}")
        out[key] = value
    return out


def load_config(path) -> dict[str, str]:
    try:
        with open(path, "r", encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise ConfigError(f"cannot read config file {path!r}: {exc}") from exc
    return parse_config(text, source=str(path))


def coerce_float(raw: str, key: str) -> float:
    try:
        return float(raw)
    except ValueError as exc:
        raise ConfigError(f"config key {key!r}: {raw!r} is not a number") from exc


def coerce_int(raw: str, key: str) -> int:
    try:
        return int(raw)
    except ValueError as exc:
        raise ConfigError(f"config key {key!r}: {raw!r} is not an integer") from exc


def coerce_choice(raw: str, key: str, choices: tuple[str, ...]) -> str:
    if raw not in choices:
        raise ConfigError(f"config key {key!r}: {raw!r} not one of {choices}")
    return raw
