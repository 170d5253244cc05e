"""Flat ``key = value`` run configurations.

Grammar: one ``key = value`` pair per line; ``#`` starts a comment; blank
lines are ignored; every key may appear once.  ``weights`` and ``scales``
are comma lists, ``atoms`` is a semicolon list of ``price:prob`` pairs.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field, fields, replace
from pathlib import Path
from typing import Union

from .core import MarketParams
from .measures import DiscretePriceLaw
from .models.specs import GbmSpec, HyperbolicSpec, MixtureSpec
from .numerics import DEFAULT_QUADRATURE, QuadratureSpec

ModelSpec = Union[GbmSpec, MixtureSpec, HyperbolicSpec, DiscretePriceLaw]

MODEL_KEYS = {
    "gbm": ("sigma",),
    "mixture": ("weights", "scales"),
    "hyperbolic": ("zeta", "delta"),
    "discrete": ("atoms",),
}
MARKET_KEYS = ("s0", "strike", "interest", "t0", "T")
TOLERANCE_KEYS = tuple(f.name for f in fields(QuadratureSpec))
OTHER_KEYS = ("model", "format", "grid_size")
KNOWN_KEYS = frozenset(OTHER_KEYS + MARKET_KEYS + TOLERANCE_KEYS
                       + tuple(k for ks in MODEL_KEYS.values() for k in ks))
FORMATS = ("json", "csv")


class ConfigError(ValueError):
    """Malformed configuration; the message starts with ``source:line:``."""

    def __init__(self, source: str, line: int, message: str):
        super().__init__(f"{source}:{line}: {message}")
        self.line = line


@dataclass(frozen=True)
class RunConfig:
    model: ModelSpec
    market: MarketParams
    output_format: str = "json"
    quadrature: QuadratureSpec = DEFAULT_QUADRATURE
    grid_size: int = 64
    model_name: str = field(default="", compare=False)


def _number(text: str, source: str, line: int, key: str) -> float:
    try:
        value = float(text)
    except ValueError:
        raise ConfigError(source, line, f"{key}: not a number: {text!r}") from None
    if not math.isfinite(value):
        raise ConfigError(source, line, f"{key}: must be finite, got {text!r}")
    return value


def _number_list(text: str, source: str, line: int, key: str) -> tuple[float, ...]:
    parts = [p.strip() for p in text.split(",")]
    if not all(parts):
        raise ConfigError(source, line, f"{key}: empty entry in comma list {text!r}")
    return tuple(_number(p, source, line, key) for p in parts)


def _atoms(text: str, source: str, line: int) -> tuple[tuple[float, float], ...]:
    out = []
    for chunk in text.split(";"):
        chunk = chunk.strip()
        if not chunk:
            continue
        price, sep, prob = chunk.partition(":")
        if not sep:
            raise ConfigError(source, line, f"atoms: expected price:prob, got {chunk!r}")
        out.append((_number(price, source, line, "atoms"), _number(prob, source, line, "atoms")))
    if not out:
        raise ConfigError(source, line, "atoms: no atoms given")
    return tuple(out)


def parse_config(text: str, source: str = "<config>") -> RunConfig:
    """Parse and validate a configuration text.

    Raises
    ------
    ConfigError
        With the offending line number (line 0 when a key is missing).
    """
    raw: dict[str, tuple[str, int]] = {}
    for lineno, line in enumerate(text.splitlines(), start=1):
        body = line.split("#", 1)[0].strip()
        if not body:
            continue
        key, sep, value = body.partition("=")
        key, value = key.strip(), value.strip()
        if not sep:
            raise ConfigError(source, lineno, f"expected 'key = value', got {body!r}")
        if key not in KNOWN_KEYS:
            raise ConfigError(source, lineno, f"unknown key {key!r}")
        if key in raw:
            raise ConfigError(source, lineno, f"duplicate key {key!r} (first on line {raw[key][1]})")
        if not value:
            raise ConfigError(source, lineno, f"{key}: empty value")
        raw[key] = (value, lineno)

    def need(key: str) -> tuple[str, int]:
        if key not in raw:
            raise ConfigError(source, 0, f"missing required key {key!r}")
        return raw[key]

    name, model_line = need("model")
    name = name.lower()
    if name == "toy":
        name = "discrete"
    if name not in MODEL_KEYS:
        raise ConfigError(source, model_line,
                          f"model must be one of {sorted(MODEL_KEYS)}, got {name!r}")
    for other, keys in MODEL_KEYS.items():
        for key in keys:
            if other != name and key in raw and key not in MODEL_KEYS[name]:
                raise ConfigError(source, raw[key][1], f"{key} does not apply to model {name!r}")

    try:
        if name == "gbm":
            text_, model_line = need("sigma")
            model = GbmSpec(_number(text_, source, model_line, "sigma"))
        elif name == "mixture":
            w, wl = need("weights")
            a, al = need("scales")
            weights = _number_list(w, source, wl, "weights")
            scales = _number_list(a, source, al, "scales")
            model_line = wl
            model = MixtureSpec(weights, scales)
        elif name == "hyperbolic":
            z, zl = need("zeta")
            d, dl = need("delta")
            model_line = dl
            model = HyperbolicSpec(_number(z, source, zl, "zeta"), _number(d, source, dl, "delta"))
        else:
            a, model_line = need("atoms")
            model = DiscretePriceLaw(_atoms(a, source, model_line))
    except ConfigError:
        raise
    except ValueError as exc:
        raise ConfigError(source, model_line, str(exc)) from None

    market_vals = {}
    for key in MARKET_KEYS:
        if key == "t0" and key not in raw:
            market_vals[key] = 0.0
            continue
        v, ln = need(key)
        market_vals[key] = _number(v, source, ln, key)
    try:
        market = MarketParams(**market_vals)
    except ValueError as exc:
        last = max(raw[k][1] for k in MARKET_KEYS if k in raw)
        raise ConfigError(source, last, str(exc)) from None

    overrides = {}
    for key in TOLERANCE_KEYS:
        if key in raw:
            v, ln = raw[key]
            num = _number(v, source, ln, key)
            overrides[key] = int(num) if key == "max_subdivisions" else num
    try:
        quad = replace(DEFAULT_QUADRATURE, **overrides)
    except ValueError as exc:
        ln = max((raw[k][1] for k in overrides), default=0)
        raise ConfigError(source, ln, str(exc)) from None

    fmt = "json"
    if "format" in raw:
        fmt, ln = raw["format"]
        if fmt not in FORMATS:
            raise ConfigError(source, ln, f"format must be one of {FORMATS}, got {fmt!r}")
    grid = 64
    if "grid_size" in raw:
        v, ln = raw["grid_size"]
        num = _number(v, source, ln, "grid_size")
        if num != int(num) or num < 16:
            raise ConfigError(source, ln, f"grid_size must be an integer >= 16, got {v!r}")
        grid = int(num)
    return RunConfig(model=model, market=market, output_format=fmt, quadrature=quad,
                     grid_size=grid, model_name=name)


def load_config(path: Union[str, Path]) -> RunConfig:
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as exc:
        raise ConfigError(str(path), 0, f"cannot read config: {exc.strerror}") from None
    return parse_config(text, str(path))
