"""Run configuration: one JSON document declaring a family and its runs.

Unknown keys are rejected anywhere in the document, and every validation
error names the offending field, so config typos fail fast instead of
silently changing a run.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass

from .expressions import ExprError, ProfileFunction
from .surfaces import FamilyKind, GeodesicState, SurfaceFamily, Variant

__all__ = ["ConfigError", "GeodesicSection", "CurvatureSection",
           "OutputSection", "RunConfig", "load_config", "parse_config"]

_FAMILY_NAMES = {k.value for k in FamilyKind}
_VARIANT_NAMES = {v.value for v in Variant}


class ConfigError(ValueError):
    """Invalid run configuration; ``field`` is the dotted path."""

    def __init__(self, field_path: str, message: str):
        super().__init__(f"{field_path}: {message}")
        self.field = field_path


def _require_mapping(value, path: str) -> dict:
    if not isinstance(value, dict):
        raise ConfigError(path, "must be an object")
    return value

def _reject_unknown(mapping: dict, allowed: set[str], path: str):
    unknown = sorted(set(mapping) - allowed)
    if unknown:
        raise ConfigError(f"{path}.{unknown[0]}" if path else unknown[0],
                          "unknown key")

def _number(mapping: dict, key: str, path: str) -> float:
    if key not in mapping:
        raise ConfigError(f"{path}.{key}", "missing")
    value = mapping[key]
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise ConfigError(f"{path}.{key}", "must be a number")
    if not math.isfinite(value):
        raise ConfigError(f"{path}.{key}", "must be finite")
    return float(value)

def _string(mapping: dict, key: str, path: str) -> str:
    if key not in mapping:
        raise ConfigError(f"{path}.{key}", "missing")
    value = mapping[key]
    if not isinstance(value, str) or not value.strip():
        raise ConfigError(f"{path}.{key}", "must be a non-empty string")
    return value


@dataclass(frozen=True)
class GeodesicSection:
    initial: dict
    length: float
    step: float
    normalize: bool = False

    @property
    def angle_style(self) -> bool:
        return "phi" in self.initial


@dataclass(frozen=True)
class CurvatureSection:
    angle_u_text: str
    angle_v_text: str
    nt: int = 10
    ns: int = 10
    fd_step: float | None = None


@dataclass(frozen=True)
class OutputSection:
    path: str
    format: str = "csv"


@dataclass(frozen=True)
class RunConfig:
    family: FamilyKind
    variant: Variant
    fa_text: str
    fb_text: str
    t_min: float
    t_max: float
    geodesic: GeodesicSection | None = None
    curvature: CurvatureSection | None = None
    output: OutputSection | None = None

    def build_family(self) -> SurfaceFamily:
        try:
            fa = ProfileFunction.from_text(self.fa_text, self.t_min, self.t_max)
        except ExprError as exc:
            raise ConfigError("profiles.fa", str(exc)) from exc
        try:
            fb = ProfileFunction.from_text(self.fb_text, self.t_min, self.t_max)
        except ExprError as exc:
            raise ConfigError("profiles.fb", str(exc)) from exc
        return SurfaceFamily(self.family, self.variant, fa, fb)

    def angle_profile(self, which: str) -> ProfileFunction:
        if self.curvature is None:
            raise ConfigError("curvature", "missing")
        text = (self.curvature.angle_u_text if which == "u"
                else self.curvature.angle_v_text)
        key = "xAngle" if which == "u" else "vAngle"
        try:
            return ProfileFunction.from_text(text, self.t_min, self.t_max)
        except ExprError as exc:
            raise ConfigError(f"curvature.{key}", str(exc)) from exc


_VELOCITY_KEYS = {"u", "v", "t", "du", "dv", "dt"}
_ANGLE_KEYS = {"u", "v", "t", "phi", "theta"}


def _parse_geodesic(section: dict) -> GeodesicSection:
    _reject_unknown(section, {"initial", "length", "step", "normalize"},
                    "geodesic")
    initial = _require_mapping(section.get("initial"), "geodesic.initial")
    keys = set(initial)
    if keys != _VELOCITY_KEYS and keys != _ANGLE_KEYS:
        raise ConfigError(
            "geodesic.initial",
            "must contain exactly u, v, t, du, dv, dt or u, v, t, phi, theta")
    parsed_initial = {key: _number(initial, key, "geodesic.initial")
                      for key in sorted(keys)}
    length = _number(section, "length", "geodesic")
    if length <= 0:
        raise ConfigError("geodesic.length", "must be > 0")
    step = _number(section, "step", "geodesic")
    if step <= 0:
        raise ConfigError("geodesic.step", "must be > 0")
    if step > length:
        raise ConfigError("geodesic.step", "must be <= geodesic.length")
    normalize = section.get("normalize", False)
    if not isinstance(normalize, bool):
        raise ConfigError("geodesic.normalize", "must be a boolean")
    return GeodesicSection(parsed_initial, length, step, normalize)


def _parse_curvature(section: dict) -> CurvatureSection:
    _reject_unknown(section, {"xAngle", "vAngle", "grid", "fd_step"},
                    "curvature")
    angle_u = _string(section, "xAngle", "curvature")
    angle_v = _string(section, "vAngle", "curvature")
    nt = ns = 10
    if "grid" in section:
        grid = _require_mapping(section["grid"], "curvature.grid")
        _reject_unknown(grid, {"nt", "ns"}, "curvature.grid")
        nt = int(_number(grid, "nt", "curvature.grid"))
        ns = int(_number(grid, "ns", "curvature.grid"))
        if nt < 1 or ns < 1:
            raise ConfigError("curvature.grid", "nt and ns must be >= 1")
    fd_step = None
    if "fd_step" in section:
        fd_step = _number(section, "fd_step", "curvature")
        if fd_step <= 0:
            raise ConfigError("curvature.fd_step", "must be > 0")
    return CurvatureSection(angle_u, angle_v, nt, ns, fd_step)


def _parse_output(section: dict) -> OutputSection:
    _reject_unknown(section, {"path", "format"}, "output")
    path = _string(section, "path", "output")
    fmt = section.get("format", "csv")
    if fmt not in ("csv", "json"):
        raise ConfigError("output.format", "must be 'csv' or 'json'")
    return OutputSection(path, fmt)


def parse_config(document: dict) -> RunConfig:
    """Validate a parsed JSON document into a RunConfig."""
    _require_mapping(document, "config")
    _reject_unknown(document, {"family", "variant", "profiles", "domain",
                               "geodesic", "curvature", "output"}, "")
    family_name = _string(document, "family", "")
    if family_name not in _FAMILY_NAMES:
        raise ConfigError("family",
                          f"must be one of {sorted(_FAMILY_NAMES)}")
    variant_name = document.get("variant", "A")
    if variant_name not in _VARIANT_NAMES:
        raise ConfigError("variant", "must be 'A' or 'B'")

    profiles = _require_mapping(document.get("profiles"), "profiles")
    _reject_unknown(profiles, {"fa", "fb"}, "profiles")
    fa_text = _string(profiles, "fa", "profiles")
    fb_text = _string(profiles, "fb", "profiles")

    domain = document.get("domain")
    if (not isinstance(domain, (list, tuple)) or len(domain) != 2
            or any(isinstance(x, bool) or not isinstance(x, (int, float))
                   for x in domain)):
        raise ConfigError("domain", "must be [t_min, t_max]")
    t_min, t_max = float(domain[0]), float(domain[1])
    if not (math.isfinite(t_min) and math.isfinite(t_max) and t_min < t_max):
        raise ConfigError("domain", "must satisfy t_min < t_max, both finite")

    geodesic = None
    if "geodesic" in document:
        geodesic = _parse_geodesic(_require_mapping(document["geodesic"],
                                                    "geodesic"))
    curvature = None
    if "curvature" in document:
        curvature = _parse_curvature(_require_mapping(document["curvature"],
                                                      "curvature"))
    output = None
    if "output" in document:
        output = _parse_output(_require_mapping(document["output"], "output"))

    config = RunConfig(FamilyKind(family_name), Variant(variant_name),
                       fa_text, fb_text, t_min, t_max,
                       geodesic, curvature, output)
    # profiles must parse even if no command consumes them yet
    config.build_family()
    return config


def load_config(path: str) -> RunConfig:
    try:
        with open(path, "r", encoding="utf-8") as handle:
            document = json.load(handle)
    except OSError as exc:
        raise ConfigError("config", f"cannot read {path!r}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise ConfigError("config", f"invalid JSON: {exc}") from exc
    return parse_config(document)


def initial_state(config: RunConfig, fam: SurfaceFamily):
    """Initial GeodesicState plus the angle-conversion residual (or None).

    Angle-style initial conditions go through the family decomposition;
    the returned residual measures how exactly the produced state
    reproduces the requested angles.
    """
    from .geodesics import extract_angles, state_from_angles

    section = config.geodesic
    if section is None:
        raise ConfigError("geodesic", "missing")
    values = section.initial
    residual = None
    if section.angle_style:
        state = state_from_angles(fam, values["u"], values["v"], values["t"],
                                  values["phi"], values["theta"])
        residual = extract_angles(fam, state).residual
    else:
        state = GeodesicState(values["u"], values["v"], values["t"],
                              values["du"], values["dv"], values["dt"])
    if section.normalize:
        state = fam.normalize_timelike(state)
    return state, residual
