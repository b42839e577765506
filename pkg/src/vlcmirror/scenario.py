"""Scenario configuration: the reference room, flat config files, defaults.

The reference scenario is a 4 x 4 m room, 3 m tall, with the receiver plane
1 m above the floor.  A 0.2 x 0.2 m ceiling panel radiates 20 W downward
with an 80 degree half-intensity semi-angle; the mirror hangs on the wall
``y = 0`` centered 2 m along it and 2 m above the floor.  The photodetector
is a 4 cm^2, 0.4 A/W diode and the noise floor is 2.5e-20 W/Hz over 1 MHz.

Config files are flat UTF-8 ``key = value`` lines (``#`` comments allowed);
unknown keys and out-of-range values raise :class:`ConfigError` naming the
offending key.  A run manifest (JSON) can stand in for a config file, which
reruns the experiment that produced it.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, fields, replace
from pathlib import Path

import numpy as np

from .blockage import Cylinder
from .geometry import MirrorShape, Paraboloid, Plane, SemiSphere
from .metrics import NoiseModel
from .radiometry import Photodetector, SourcePanel


class ConfigError(ValueError):
    """Raised for unreadable, unknown, or out-of-range configuration."""


@dataclass(frozen=True)
class ScenarioConfig:
    room_width: float = 4.0        # m, along the mirror wall (x)
    room_depth: float = 4.0        # m, away from the wall (y)
    room_height: float = 3.0       # m, floor to ceiling
    receiver_height: float = 1.0   # m, receiver plane above the floor
    mirror_center_x: float = 2.0   # m along the wall
    mirror_center_height: float = 2.0  # m above the floor
    mirror_shape: str = "paraboloid"
    w_par: float = 0.4
    l_par: float = 0.1
    h_par: float = 0.5
    r_sph: float = 0.2236
    plane_width: float = 0.4
    plane_height: float = 0.3927
    reflectivity: float = 0.99
    source_x: float = 2.0          # m along the wall (room coordinates)
    source_y: float = 2.0          # m from the mirror wall
    source_width: float = 0.2
    source_length: float = 0.2
    source_power: float = 20.0
    half_angle_deg: float = 80.0
    window_length: float | None = None  # ray-gating window y-extent; None = source length
    detector_area: float = 4e-4
    responsivity: float = 0.4
    bandwidth: float = 1e6
    noise_psd: float = 2.5e-20
    grid_n: int = 80
    mesh_n: int = 256
    quadrature_n: int = 50
    zero_threshold: float = 1e-12
    seed: int = 12345
    n_users: int = 10000
    body_height: float = 1.75
    body_radius: float = 0.15
    device_offset: float = 0.3

    # -- derived frame quantities -------------------------------------------

    @property
    def ceiling_z(self) -> float:
        """Source plane height in the mirror frame (negative: above center)."""
        return -(self.room_height - self.mirror_center_height)

    @property
    def receiver_z(self) -> float:
        """Receiver plane height in the mirror frame (positive: below center)."""
        return self.mirror_center_height - self.receiver_height

    @property
    def floor_z(self) -> float:
        return self.mirror_center_height

    @property
    def x_bounds(self) -> tuple[float, float]:
        return (-self.mirror_center_x, self.room_width - self.mirror_center_x)

    @property
    def y_bounds(self) -> tuple[float, float]:
        return (0.0, self.room_depth)

    # -- domain objects ------------------------------------------------------

    def mirror(self) -> MirrorShape:
        if self.mirror_shape == "paraboloid":
            return Paraboloid(w_par=self.w_par, l_par=self.l_par, h_par=self.h_par)
        if self.mirror_shape == "semisphere":
            return SemiSphere(r_sph=self.r_sph)
        if self.mirror_shape == "plane":
            return Plane(width=self.plane_width, height=self.plane_height)
        raise ConfigError(
            "mirror.shape must be one of paraboloid, semisphere, plane"
        )

    def source(self) -> SourcePanel:
        return SourcePanel(
            center=np.array(
                [self.source_x - self.mirror_center_x, self.source_y, self.ceiling_z]
            ),
            width=self.source_width,
            length=self.source_length,
            power=self.source_power,
            half_angle=np.radians(self.half_angle_deg),
            window_length=(
                self.source_length if self.window_length is None else self.window_length
            ),
        )

    def detector(self) -> Photodetector:
        return Photodetector(area=self.detector_area, responsivity=self.responsivity)

    def noise(self) -> NoiseModel:
        return NoiseModel(bandwidth=self.bandwidth, psd=self.noise_psd)

    def body_cylinder_z(self) -> tuple[float, float]:
        return (self.floor_z - self.body_height, self.floor_z)

    def standing_body(self, body_xy: np.ndarray) -> Cylinder:
        z_min, z_max = self.body_cylinder_z()
        return Cylinder(
            center_xy=np.asarray(body_xy, float),
            radius=self.body_radius,
            z_min=z_min,
            z_max=z_max,
        )

    def receiver_grid(self) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
        """Cell centers (x, y) and flattened (n^2, 3) receiver points.

        x varies along the first axis of any (n, n) field built from these
        points, matching ``points.reshape(n, n, ...)`` row-major.
        """
        n = self.grid_n
        x0, x1 = self.x_bounds
        y0, y1 = self.y_bounds
        cx = x0 + (np.arange(n) + 0.5) * ((x1 - x0) / n)
        cy = y0 + (np.arange(n) + 0.5) * ((y1 - y0) / n)
        gx, gy = np.meshgrid(cx, cy, indexing="ij")
        pts = np.stack(
            [gx.ravel(), gy.ravel(), np.full(gx.size, self.receiver_z)], axis=1
        )
        return cx, cy, pts


# config key -> (attribute, parser)
_SCHEMA: dict[str, tuple[str, type]] = {
    "room.width": ("room_width", float),
    "room.depth": ("room_depth", float),
    "room.height": ("room_height", float),
    "receiver.height": ("receiver_height", float),
    "mirror.center_x": ("mirror_center_x", float),
    "mirror.center_height": ("mirror_center_height", float),
    "mirror.shape": ("mirror_shape", str),
    "mirror.w_par": ("w_par", float),
    "mirror.l_par": ("l_par", float),
    "mirror.h_par": ("h_par", float),
    "mirror.r_sph": ("r_sph", float),
    "mirror.plane_width": ("plane_width", float),
    "mirror.plane_height": ("plane_height", float),
    "mirror.reflectivity": ("reflectivity", float),
    "source.x": ("source_x", float),
    "source.y": ("source_y", float),
    "source.width": ("source_width", float),
    "source.length": ("source_length", float),
    "source.power": ("source_power", float),
    "source.half_angle_deg": ("half_angle_deg", float),
    "source.window_length": ("window_length", float),
    "detector.area": ("detector_area", float),
    "detector.responsivity": ("responsivity", float),
    "noise.bandwidth": ("bandwidth", float),
    "noise.psd": ("noise_psd", float),
    "grid.n": ("grid_n", int),
    "mesh.n": ("mesh_n", int),
    "quadrature.n": ("quadrature_n", int),
    "zero_threshold": ("zero_threshold", float),
    "seed": ("seed", int),
    "blockage.users": ("n_users", int),
    "blockage.body_height": ("body_height", float),
    "blockage.body_radius": ("body_radius", float),
    "blockage.device_offset": ("device_offset", float),
}

_ATTR_TO_KEY = {attr: key for key, (attr, _) in _SCHEMA.items()}

# (attribute, predicate on value, requirement text)
_CHECKS = [
    ("room_width", lambda v: v > 0, "must be positive"),
    ("room_depth", lambda v: v > 0, "must be positive"),
    ("room_height", lambda v: v > 0, "must be positive"),
    ("receiver_height", lambda v: v >= 0, "must be non-negative"),
    ("mirror_center_height", lambda v: v > 0, "must be positive"),
    ("mirror_shape", lambda v: v in ("paraboloid", "semisphere", "plane"),
     "must be one of paraboloid, semisphere, plane"),
    ("w_par", lambda v: v > 0, "must be positive"),
    ("l_par", lambda v: v >= 0, "must be non-negative"),
    ("h_par", lambda v: v > 0, "must be positive"),
    ("r_sph", lambda v: v > 0, "must be positive"),
    ("plane_width", lambda v: v > 0, "must be positive"),
    ("plane_height", lambda v: v > 0, "must be positive"),
    ("reflectivity", lambda v: 0.0 <= v <= 1.0, "must lie in [0, 1]"),
    ("source_width", lambda v: v > 0, "must be positive"),
    ("source_length", lambda v: v > 0, "must be positive"),
    ("source_power", lambda v: v > 0, "must be positive"),
    ("half_angle_deg", lambda v: 0 < v < 90, "must lie in (0, 90) degrees"),
    ("window_length", lambda v: v is None or v > 0, "must be positive"),
    ("detector_area", lambda v: v >= 0, "must be non-negative"),
    ("responsivity", lambda v: v > 0, "must be positive"),
    ("bandwidth", lambda v: v > 0, "must be positive"),
    ("noise_psd", lambda v: v > 0, "must be positive"),
    ("grid_n", lambda v: v >= 1, "must be at least 1"),
    ("mesh_n", lambda v: v >= 1, "must be at least 1"),
    ("quadrature_n", lambda v: v >= 1, "must be at least 1"),
    ("zero_threshold", lambda v: v > 0, "must be positive"),
    ("n_users", lambda v: v >= 1, "must be at least 1"),
    ("body_height", lambda v: v > 0, "must be positive"),
    ("body_radius", lambda v: v >= 0, "must be non-negative"),
    ("device_offset", lambda v: v >= 0, "must be non-negative"),
]


def validate(cfg: ScenarioConfig) -> ScenarioConfig:
    for attr, ok, req in _CHECKS:
        value = getattr(cfg, attr)
        if not ok(value):
            key = _ATTR_TO_KEY.get(attr, attr)
            raise ConfigError(f"{key} {req} (got {value!r})")
    if cfg.receiver_height >= cfg.room_height:
        raise ConfigError("receiver.height must be below room.height")
    if cfg.mirror_center_height > cfg.room_height:
        raise ConfigError("mirror.center_height must not exceed room.height")
    if not 0 <= cfg.source_y <= cfg.room_depth:
        raise ConfigError("source.y must lie inside the room depth")
    return cfg


def _parse_entries(text: str, origin: str) -> dict[str, str]:
    entries: dict[str, str] = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ConfigError(f"{origin}:{lineno}: expected 'key = value'")
        key, value = (part.strip() for part in line.split("=", 1))
        if key in entries:
            raise ConfigError(f"{origin}:{lineno}: duplicate key {key}")
        entries[key] = value
    return entries


def config_from_mapping(mapping: dict, origin: str = "<config>") -> ScenarioConfig:
    """Build and validate a config from flat ``key -> value`` entries."""
    updates = {}
    for key, raw in mapping.items():
        if key not in _SCHEMA:
            raise ConfigError(f"{origin}: unknown config key {key}")
        attr, parser = _SCHEMA[key]
        try:
            value = parser(raw) if not isinstance(raw, parser) else raw
        except (TypeError, ValueError) as exc:
            raise ConfigError(f"{origin}: bad value for {key}: {raw!r}") from exc
        updates[attr] = value
    return validate(replace(ScenarioConfig(), **updates))


def load_config(path: str | Path | None) -> ScenarioConfig:
    """Read a flat config file; None or an empty file yields the defaults.

    A JSON run manifest (with a ``config`` object) is accepted too, so a
    finished run can be reproduced from its manifest alone.
    """
    if path is None:
        return validate(ScenarioConfig())
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as exc:
        raise ConfigError(f"cannot read config file {path}: {exc}") from exc
    if path.suffix == ".json" or text.lstrip().startswith("{"):
        try:
            payload = json.loads(text)
        except json.JSONDecodeError as exc:
            raise ConfigError(f"{path}: invalid JSON manifest: {exc}") from exc
        if not isinstance(payload, dict) or "config" not in payload:
            raise ConfigError(f"{path}: manifest lacks a 'config' object")
        return config_from_mapping(payload["config"], origin=str(path))
    return config_from_mapping(_parse_entries(text, str(path)), origin=str(path))


def resolved_mapping(cfg: ScenarioConfig) -> dict:
    """Flat ``key -> value`` view of a config, suitable for a manifest."""
    out = {}
    for f in fields(cfg):
        key = _ATTR_TO_KEY[f.name]
        value = getattr(cfg, f.name)
        if value is None:
            continue
        out[key] = value
    return out
