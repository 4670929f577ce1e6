"""TOML configuration loading and JSON/CSV report plumbing."""

from __future__ import annotations

import hashlib
import json
import sys
from typing import Optional

import numpy as np

if sys.version_info >= (3, 11):
    import tomllib
else:
    import tomli as tomllib

from .criterion import MatrixField, SamplingConfig
from .errors import FdchkError
from .grids import GridDomain, GridField
from .orlicz import PhiSpec

__all__ = ["ConfigError", "load_config", "phi_from_config", "phi_from_cli_spec",
           "matrix_from_config", "sampling_from_config", "domain_from_config",
           "initial_field", "json_report", "config_sha256"]

SCHEMA = "fdchk/1"


class ConfigError(FdchkError):
    """Configuration file missing, unreadable, or structurally wrong."""


def load_config(path: str) -> tuple:
    """Read a TOML config; returns (parsed dict, sha256 hex of the bytes)."""
    try:
        with open(path, "rb") as fh:
            raw = fh.read()
    except OSError as exc:
        raise ConfigError(f"cannot read config {path!r}: {exc}") from exc
    try:
        table = tomllib.loads(raw.decode("utf-8"))
    except (tomllib.TOMLDecodeError, UnicodeDecodeError) as exc:
        raise ConfigError(f"bad TOML in {path!r}: {exc}") from exc
    return table, hashlib.sha256(raw).hexdigest()


def config_sha256(path: str) -> str:
    return load_config(path)[1]


def _require(table: dict, key: str, where: str) -> object:
    if key not in table:
        raise ConfigError(f"missing key '{key}' in [{where}]")
    return table[key]


def phi_from_config(config: dict) -> PhiSpec:
    table = _require(config, "phi", "config root")
    try:
        return PhiSpec.from_dict(table)
    except (KeyError, ValueError, TypeError) as exc:
        raise ConfigError(f"bad [phi] table: {exc}") from exc


def phi_from_cli_spec(text: str) -> PhiSpec:
    """Parse ``builtin:NAME[:k=v,...]`` shorthand from the command line."""
    parts = text.split(":")
    if len(parts) < 2 or parts[0] != "builtin":
        raise ConfigError("--phi expects builtin:NAME[:key=value,...]")
    params = {}
    for chunk in parts[2:]:
        for item in chunk.split(","):
            if not item:
                continue
            if "=" not in item:
                raise ConfigError(f"bad builtin parameter {item!r}")
            key, val = item.split("=", 1)
            params[key.strip()] = float(val)
    try:
        return PhiSpec.builtin(parts[1], **params)
    except (ValueError, TypeError) as exc:
        raise ConfigError(f"bad --phi spec: {exc}") from exc


def _entry_pair(e) -> tuple:
    """Accept an entry as [re, im] or as an inline table {re = ..., im = ...}."""
    if isinstance(e, dict):
        return (str(e.get("re", "0")), str(e.get("im", "0")))
    return (str(e[0]), str(e[1]))


def matrix_from_config(config: dict) -> MatrixField:
    table = _require(config, "matrix", "config root")
    n = int(_require(table, "dimension", "matrix"))
    entries = _require(table, "entries", "matrix")
    try:
        rows = tuple(tuple(_entry_pair(e) for e in row) for row in entries)
        field = MatrixField(n=n, entries=rows)
    except (ValueError, TypeError, IndexError, KeyError, FdchkError) as exc:
        raise ConfigError(f"bad [matrix] entries: {exc}") from exc
    return field


def sampling_from_config(config: dict, seed: Optional[int] = None) -> SamplingConfig:
    table = config.get("sampling", {})
    kwargs = {}
    if "box" in table:
        kwargs["box"] = tuple(tuple(float(c) for c in pair) for pair in table["box"])
    for key in ("nx", "n_directions", "t_num", "s_num"):
        if key in table:
            kwargs[key] = int(table[key])
    for key in ("t_lo", "t_hi", "s_lo", "s_hi"):
        if key in table:
            kwargs[key] = float(table[key])
    kwargs["seed"] = int(seed if seed is not None else table.get("seed", 0))
    try:
        return SamplingConfig(**kwargs)
    except (ValueError, TypeError) as exc:
        raise ConfigError(f"bad [sampling] table: {exc}") from exc


def domain_from_config(config: dict, grid_override: Optional[str] = None) -> GridDomain:
    table = config.get("domain", {})
    lengths = tuple(float(l) for l in table.get("lengths", (1.0, 1.0)))
    nodes = tuple(int(n) for n in table.get("nodes", (64,) * len(lengths)))
    if grid_override:
        try:
            nodes = tuple(int(tok) for tok in grid_override.lower().split("x"))
        except ValueError as exc:
            raise ConfigError(f"bad --grid {grid_override!r}") from exc
        if len(nodes) != len(lengths):
            if len(nodes) == 1:
                nodes = nodes * len(lengths)
            else:
                raise ConfigError("--grid dimension does not match [domain]")
    try:
        return GridDomain(lengths=lengths, nodes=nodes)
    except ValueError as exc:
        raise ConfigError(f"bad [domain] table: {exc}") from exc


def initial_field(config: dict, domain: GridDomain) -> GridField:
    table = _require(config, "initial", "config root")
    re_text = str(table.get("re", "0"))
    im_text = str(table.get("im", "0"))
    try:
        return GridField.from_expressions(domain, re_text, im_text)
    except (FdchkError, ValueError) as exc:
        raise ConfigError(f"bad [initial] expressions: {exc}") from exc


def _sanitize(obj):
    """Make a payload json-serializable with deterministic float text."""
    if isinstance(obj, dict):
        return {str(k): _sanitize(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_sanitize(v) for v in obj]
    if isinstance(obj, (np.floating, float)):
        value = float(obj)
        if np.isnan(value):
            return "nan"
        if np.isinf(value):
            return "inf" if value > 0 else "-inf"
        return value
    if isinstance(obj, (np.integer,)):
        return int(obj)
    if isinstance(obj, np.ndarray):
        return [_sanitize(v) for v in obj.tolist()]
    if isinstance(obj, complex):
        return {"re": obj.real, "im": obj.imag}
    return obj


def json_report(command: str, payload: dict, *, config_hash: Optional[str] = None,
                seed: Optional[int] = None, timestamp: Optional[str] = None,
                extra_provenance: Optional[dict] = None) -> str:
    """Render a versioned, deterministic JSON report."""
    try:
        from importlib.metadata import version
        lib_version = version("fdchk")
    except Exception:  # pragma: no cover
        lib_version = "unknown"
    doc = {
        "schema": SCHEMA,
        "command": command,
        "library_version": lib_version,
        "config_sha256": config_hash,
        "seed": seed,
        "result": _sanitize(payload),
    }
    if timestamp is not None:
        doc["timestamp"] = timestamp
    if extra_provenance:
        doc["provenance"] = _sanitize(extra_provenance)
    return json.dumps(doc, sort_keys=True, indent=2) + "\n"
