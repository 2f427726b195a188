"""Ring construction from configuration dicts and CLI shorthand strings."""

from __future__ import annotations

import json
import os
from typing import Optional

from .cyclotomic import CycloModPM, GaussianField, cyclotomic_field
from .errors import MalformedConfig
from .perfpoly import PerfPolyRing
from .rings import Integers, Rationals, Ring, ZModPM
from .tilt import TiltRing

__all__ = ["ring_from_config", "ring_from_spec"]


def _need(config: dict, key: str, kind: str) -> int:
    if key not in config or config[key] is None:
        raise MalformedConfig(f"ring kind {kind!r} needs {key!r}")
    value = config[key]
    if not isinstance(value, int):
        raise MalformedConfig(f"{key!r} must be an integer, got {value!r}")
    return value


def ring_from_config(config: dict) -> Ring:
    """Build a ring from its configuration dict (the inverse of to_config)."""
    if not isinstance(config, dict) or "kind" not in config:
        raise MalformedConfig(f"a ring config is a dict with a 'kind', got {config!r}")
    kind = config["kind"]
    if kind == "Z":
        return Integers(_need(config, "p", kind))
    if kind == "Q":
        return Rationals(_need(config, "p", kind))
    if kind == "Zmod":
        return ZModPM(_need(config, "p", kind), _need(config, "M", kind))
    if kind == "Qzeta":
        return cyclotomic_field(_need(config, "p", kind), _need(config, "k", kind))
    if kind == "ZzetaMod":
        return CycloModPM(
            _need(config, "p", kind), _need(config, "k", kind), _need(config, "M", kind)
        )
    if kind == "Qi":
        return GaussianField(_need(config, "p", kind))
    if kind == "PerfPoly":
        return PerfPolyRing(
            _need(config, "p", kind),
            _need(config, "nvars", kind),
            _need(config, "depth", kind),
        )
    if kind == "tilt":
        base = config.get("base")
        if not isinstance(base, dict):
            raise MalformedConfig("tilt ring config needs a 'base' ring config")
        return TiltRing(ring_from_config(base), _need(config, "depth", kind))
    raise MalformedConfig(f"unknown ring kind {kind!r}")


def ring_from_spec(
    spec: str,
    p: Optional[int] = None,
    precision: Optional[int] = None,
    depth: Optional[int] = None,
) -> Ring:
    """Build a ring from a CLI spec: inline JSON, a JSON file path, or a
    shorthand like 'Z', 'Q', 'Qi', 'Zmod', 'Qzeta:3', 'ZzetaMod:3',
    'PerfPoly:2' (missing numbers come from --p, --precision, --depth)."""
    text = spec.strip()
    if text.startswith("{"):
        try:
            return ring_from_config(json.loads(text))
        except json.JSONDecodeError as exc:
            raise MalformedConfig(f"bad inline ring JSON: {exc}") from exc
    if os.path.exists(text):
        with open(text, "r", encoding="utf-8") as handle:
            try:
                return ring_from_config(json.load(handle))
            except json.JSONDecodeError as exc:
                raise MalformedConfig(f"bad ring JSON in {text}: {exc}") from exc
    head, _, arg = text.partition(":")
    config: dict = {"kind": head, "p": p}
    if head in ("Qzeta", "ZzetaMod"):
        if arg:
            config["k"] = int(arg)
        if head == "ZzetaMod":
            config["M"] = precision
    elif head == "Zmod":
        config["M"] = int(arg) if arg else precision
    elif head == "PerfPoly":
        config["nvars"] = int(arg) if arg else 1
        config["depth"] = depth
    elif arg:
        raise MalformedConfig(f"ring kind {head!r} takes no ':' argument")
    return ring_from_config(config)
