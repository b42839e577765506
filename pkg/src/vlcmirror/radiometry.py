"""Lambertian source model: direct-path irradiance and surface radiance.

The light source is a rectangular ceiling panel radiating downward with a
generalized-Lambertian intensity profile of order ``m`` derived from its
half-intensity semi-angle.  Direct-path irradiance at a receiver integrates
the panel with a midpoint quadrature; the radiance helper feeds the mirror
engine, gating each surface sample on whether its specular ray traces back
into the source window.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .geometry import (
    SurfaceSample,
    Vec3,
    segment_intersects_vertical_cylinder,
    unit,
)

def lambertian_order(half_angle: float) -> float:
    """Lambertian mode number for a half-intensity semi-angle in radians.

    >>> round(lambertian_order(np.radians(60.0)), 12)
    1.0
    """
    if not 0.0 < half_angle < np.pi / 2:
        raise ValueError("half-intensity semi-angle must lie in (0, pi/2)")
    return -1.0 / np.log2(np.cos(half_angle))


@dataclass(frozen=True)
class SourcePanel:
    """Rectangular downward-facing Lambertian panel on the ceiling plane.

    ``width`` spans x and ``length`` spans y around ``center``, which sits on
    the source plane ``z = center[2]``.  ``window_length`` is the y-extent of
    the window used when gating mirror-reflected rays (x-extent is the panel
    width itself); it defaults to the panel's own length, i.e. reflected rays
    must trace back to the emitting footprint.
    """

    center: Vec3
    width: float
    length: float
    power: float
    half_angle: float  # half-intensity semi-angle, radians
    window_length: float | None = None

    def __post_init__(self) -> None:
        if self.width <= 0 or self.length <= 0:
            raise ValueError("source panel dimensions must be positive")
        if self.power <= 0:
            raise ValueError("source optical power must be positive")
        if self.window_length is None:
            object.__setattr__(self, "window_length", self.length)
        if self.window_length <= 0:
            raise ValueError("source window length must be positive")
        lambertian_order(self.half_angle)  # validates the angle

    @property
    def area(self) -> float:
        return self.width * self.length

    @property
    def power_density(self) -> float:
        """Emitted optical power per unit panel area, W/m^2."""
        return self.power / self.area

    @property
    def order(self) -> float:
        return lambertian_order(self.half_angle)

    @property
    def radiance_scale(self) -> float:
        """Common factor (m+1) * power_density / (2 pi)."""
        return (self.order + 1.0) * self.power_density / (2.0 * np.pi)

    def quadrature_points(self, resolution: tuple[int, int]) -> tuple[np.ndarray, float]:
        """Midpoint quadrature nodes over the panel and the per-cell area."""
        nx, ny = resolution
        if nx < 1 or ny < 1:
            raise ValueError("quadrature resolution must be at least 1x1")
        cx, cy, cz = (float(c) for c in self.center)
        xs = cx - self.width / 2 + (np.arange(nx) + 0.5) * (self.width / nx)
        ys = cy - self.length / 2 + (np.arange(ny) + 0.5) * (self.length / ny)
        x, y = np.meshgrid(xs, ys, indexing="ij")
        pts = np.stack([x.ravel(), y.ravel(), np.full(x.size, cz)], axis=-1)
        return pts, (self.width / nx) * (self.length / ny)


@dataclass(frozen=True)
class Photodetector:
    """Flat upward-facing photodiode."""

    area: float          # m^2
    responsivity: float  # A/W

    def __post_init__(self) -> None:
        if self.area < 0:
            raise ValueError("photodetector area must be non-negative")
        if self.responsivity <= 0:
            raise ValueError("photodetector responsivity must be positive")


def los_irradiance_field(
    points: np.ndarray,
    source: SourcePanel,
    quadrature: tuple[int, int] = (50, 50),
) -> np.ndarray:
    """Direct-path irradiance (W/m^2) at each of ``points`` (n, 3).

    Integrates the panel as an extended source: each quadrature cell
    contributes ``cos^(m+1)(theta) / dist^2`` with theta the common angle off
    vertical at the downward-facing panel and upward-facing receiver.
    """
    points = np.atleast_2d(np.asarray(points, dtype=float))
    if np.any(points[:, 2] <= float(source.center[2])):
        raise ValueError("receiver must lie below the source plane")
    nodes, cell_area = source.quadrature_points(quadrature)
    m = source.order
    out = np.empty(len(points))
    for lo in range(0, len(points), 512):  # bound the (chunk, q, 3) temporary
        chunk = points[lo:lo + 512]
        v = chunk[:, None, :] - nodes[None, :, :]
        d2 = np.einsum("nqk,nqk->nq", v, v)
        cos_t = v[:, :, 2] / np.sqrt(d2)
        out[lo:lo + 512] = (cos_t ** (m + 1) / d2).sum(axis=1) * cell_area
    return source.radiance_scale * out


def los_irradiance(
    d_point: Vec3,
    source: SourcePanel,
    quadrature: tuple[int, int] = (50, 50),
    blocker=None,
) -> float:
    """Direct-path irradiance at one receiver, optionally shadowed.

    ``blocker``, when given, is a vertical cylinder (anything with
    ``center_xy``, ``radius``, ``z_min`` and ``z_max`` attributes); panel
    cells whose sight line to the receiver crosses it contribute nothing.
    """
    d_point = np.asarray(d_point, dtype=float)
    if float(d_point[2]) <= float(source.center[2]):
        raise ValueError("receiver must lie below the source plane")
    nodes, cell_area = source.quadrature_points(quadrature)
    m = source.order
    v = d_point[None, :] - nodes
    d2 = np.einsum("qk,qk->q", v, v)
    cos_t = v[:, 2] / np.sqrt(d2)
    terms = cos_t ** (m + 1) / d2
    if blocker is not None:
        hit = segment_intersects_vertical_cylinder(
            nodes,
            d_point,
            np.asarray(blocker.center_xy, dtype=float),
            float(blocker.radius),
            float(blocker.z_min),
            float(blocker.z_max),
        )
        terms = np.where(hit, 0.0, terms)
    return float(source.radiance_scale * terms.sum() * cell_area)


def los_received_power(irradiance: float, detector: Photodetector) -> float:
    """Optical power collected by the detector, W."""
    if irradiance < 0:
        raise ValueError("irradiance must be non-negative")
    return irradiance * detector.area


def radiance_at(
    sample: SurfaceSample, d_point: Vec3, source: SourcePanel
) -> tuple[float, bool]:
    """Source radiance seen in a mirror sample from a receiver, with a gate.

    Traces the receiver ray backwards through the mirror reflection at
    ``sample`` to the source plane.  Returns ``(radiance, True)`` when the
    traced point lands inside the source window and the geometry is
    front-side; otherwise ``(0.0, False)``.
    """
    rd = unit(np.asarray(d_point, dtype=float) - sample.point)
    c = float(np.dot(sample.normal, rd))
    if c < 0.0:
        return 0.0, False
    incident = rd - 2.0 * c * sample.normal
    dz = float(incident[2])
    if dz <= 0.0:
        return 0.0, False  # reflected ray never reaches the source plane
    t = (float(sample.point[2]) - float(source.center[2])) / dz
    if t <= 0.0:
        return 0.0, False
    hit_x = float(sample.point[0]) - t * float(incident[0])
    hit_y = float(sample.point[1]) - t * float(incident[1])
    if abs(hit_x - float(source.center[0])) > source.width / 2:
        return 0.0, False
    if abs(hit_y - float(source.center[1])) > source.window_length / 2:
        return 0.0, False
    # dz is the cosine between the incoming ray and vertical
    return source.radiance_scale * dz ** (source.order - 1.0), True
