"""Mirror-centered geometry: shapes, meshes, and specular ray operations.

Coordinate frame
----------------
All geometry lives in a right-handed frame anchored at the mirror center,
which sits on a wall:

* origin: mirror center, on the wall plane ``y = 0``
* ``+x``: along the wall
* ``+y``: into the room (every mirror surface normal has ``n.y >= 0``)
* ``+z``: from ceiling toward floor

With the ceiling a height ``z_s`` above the mirror center, the light-source
plane is ``z = -z_s`` and a receiver plane a height ``h`` below the mirror
center is ``z = +h``.  Positions are plain float64 numpy arrays of shape (3,).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator, Union

import numpy as np

Vec3 = np.ndarray

E1 = np.array([1.0, 0.0, 0.0])
E2 = np.array([0.0, 1.0, 0.0])
E3 = np.array([0.0, 0.0, 1.0])

_ON_SURFACE_TOL = 1e-9


class GeometryError(ValueError):
    """Raised for off-surface points, bad domains, and degenerate shapes."""


def unit(v: Vec3) -> Vec3:
    """Scale ``v`` to unit length."""
    n = float(np.linalg.norm(v))
    if n == 0.0:
        raise GeometryError("cannot normalize a zero vector")
    return v / n


@dataclass(frozen=True)
class Paraboloid:
    """Concave paraboloid bulging into the room.

    The surface is ``y = l_par * (1 - (2x/w_par)^2 - (2z/h_par)^2)`` over the
    elliptical footprint where that expression is positive, so the rim meets
    the wall on the ellipse inscribed in the ``w_par x h_par`` rectangle and
    the apex sits ``l_par`` into the room.
    """

    w_par: float  # full extent along the wall (x), m
    l_par: float  # apex depth into the room (y), m
    h_par: float  # full vertical extent (z), m

    def __post_init__(self) -> None:
        if self.w_par <= 0 or self.h_par <= 0:
            raise GeometryError("paraboloid w_par and h_par must be positive")
        if self.l_par < 0:
            raise GeometryError("paraboloid l_par must be non-negative")

    @property
    def wall_area(self) -> float:
        """Area of the elliptical wall footprint."""
        return np.pi * self.w_par * self.h_par / 4.0

    def depth(self) -> float:
        return self.l_par


@dataclass(frozen=True)
class SemiSphere:
    """Half-sphere of radius ``r_sph`` centered at the origin, ``y > 0``."""

    r_sph: float

    def __post_init__(self) -> None:
        if self.r_sph <= 0:
            raise GeometryError("semi-sphere radius must be positive")

    @property
    def wall_area(self) -> float:
        """Area of the circular wall footprint."""
        return np.pi * self.r_sph**2

    def depth(self) -> float:
        return self.r_sph


@dataclass(frozen=True)
class Plane:
    """Flat rectangular mirror lying in the wall plane ``y = 0``."""

    width: float   # extent along x, m
    height: float  # extent along z, m

    def __post_init__(self) -> None:
        if self.width <= 0 or self.height <= 0:
            raise GeometryError("plane mirror dimensions must be positive")

    @property
    def wall_area(self) -> float:
        return self.width * self.height

    def depth(self) -> float:
        return 0.0


MirrorShape = Union[Paraboloid, SemiSphere, Plane]


@dataclass(frozen=True)
class SurfaceSample:
    """One quadrature node on a mirror surface."""

    point: Vec3
    normal: Vec3
    area: float


@dataclass(frozen=True)
class SurfaceMesh:
    """Deterministic midpoint mesh of a mirror surface.

    Samples are ordered row-major in the parameter grid (first parameter
    outermost), so two meshes built from equal inputs are bit-identical.
    """

    shape: MirrorShape
    points: np.ndarray   # (n, 3)
    normals: np.ndarray  # (n, 3)
    areas: np.ndarray    # (n,)
    resolution: tuple[int, int]

    def __len__(self) -> int:
        return self.points.shape[0]

    @property
    def total_area(self) -> float:
        return float(self.areas.sum())

    def samples(self) -> Iterator[SurfaceSample]:
        for p, n, a in zip(self.points, self.normals, self.areas):
            yield SurfaceSample(point=p, normal=n, area=float(a))


def paraboloid_point(x: float, z: float, shape: Paraboloid) -> Vec3:
    """Surface point of a paraboloid above footprint coordinates (x, z).

    Raises a domain error when (x, z) falls outside the elliptical footprint
    (where the surface would dip behind the wall) and a degenerate-shape error
    for ``l_par == 0``; use :class:`Plane` for flat mirrors.
    """
    if shape.l_par == 0:
        raise GeometryError("degenerate paraboloid (l_par = 0); use Plane")
    ex = 2.0 * x / shape.w_par
    ez = 2.0 * z / shape.h_par
    if ex * ex + ez * ez >= 1.0:
        raise GeometryError(
            f"(x={x}, z={z}) outside the paraboloid footprint ellipse"
        )
    y = shape.l_par * (1.0 - ex * ex - ez * ez)
    return np.array([x, y, z])


def _paraboloid_gradient(x, z, shape: Paraboloid):
    """Slopes (-dy/dx, -dy/dz) of the surface, i.e. the in-plane normal part."""
    gx = 8.0 * shape.l_par * x / shape.w_par**2
    gz = 8.0 * shape.l_par * z / shape.h_par**2
    return gx, gz


def surface_normal(point: Vec3, shape: MirrorShape) -> Vec3:
    """Unit normal at an on-surface point, oriented into the room (n.y >= 0)."""
    x, y, z = (float(c) for c in point)
    if isinstance(shape, Paraboloid):
        expected = paraboloid_point(x, z, shape)
        if abs(y - expected[1]) > _ON_SURFACE_TOL:
            raise GeometryError("point is not on the paraboloid surface")
        gx, gz = _paraboloid_gradient(x, z, shape)
        return unit(np.array([gx, 1.0, gz]))
    if isinstance(shape, SemiSphere):
        r = float(np.linalg.norm(point))
        if abs(r - shape.r_sph) > _ON_SURFACE_TOL or y < 0:
            raise GeometryError("point is not on the semi-sphere surface")
        return point / r
    if isinstance(shape, Plane):
        if abs(y) > _ON_SURFACE_TOL:
            raise GeometryError("point is not on the plane mirror surface")
        if abs(x) > shape.width / 2 or abs(z) > shape.height / 2:
            raise GeometryError("point is outside the plane mirror rectangle")
        return E2.copy()
    raise GeometryError(f"unknown mirror shape {shape!r}")


def reflect_incident_direction(rd_hat: Vec3, n_hat: Vec3) -> Vec3 | None:
    """Incident light direction that a mirror sends along ``rd_hat``.

    ``rd_hat`` is the unit direction from the surface point toward the
    receiver and ``n_hat`` the surface normal there.  The returned unit
    vector points from the (unknown) upstream point toward the surface, so
    that mirror reflection of the incoming ray exits along ``rd_hat``.
    Returns None when the receiver lies behind the surface
    (``n_hat . rd_hat < 0``), which can contribute nothing.
    """
    c = float(np.dot(n_hat, rd_hat))
    if c < 0.0:
        return None
    return rd_hat - 2.0 * c * n_hat


def intersect_source_plane(
    r_point: Vec3, incident_dir: Vec3, source_plane_z: float
) -> Vec3 | None:
    """Trace ``incident_dir`` backwards from ``r_point`` to the source plane.

    ``incident_dir`` is the unit direction of light travel toward
    ``r_point``.  Returns the point on ``z = source_plane_z`` the ray came
    from, with its z-coordinate pinned exactly to the plane.  Returns None
    when the ray recedes from the plane (no contribution) and raises when it
    runs parallel to it.
    """
    dz = float(incident_dir[2])
    if dz == 0.0:
        raise GeometryError("incident direction is parallel to the source plane")
    t = (float(r_point[2]) - source_plane_z) / dz
    if t <= 0.0:
        return None
    hit = r_point - t * incident_dir
    hit[2] = source_plane_z
    return hit


def _midpoints(lo: float, hi: float, n: int) -> np.ndarray:
    step = (hi - lo) / n
    return lo + (np.arange(n) + 0.5) * step


def mesh_surface(shape: MirrorShape, resolution: tuple[int, int]) -> SurfaceMesh:
    """Midpoint-rule surface mesh with per-sample points, normals and areas.

    Resolution counts parameter cells (first parameter outermost in the
    sample ordering).  Paraboloid and plane mirrors are parametrized over
    (x, z); cells whose midpoint falls outside the paraboloid footprint
    ellipse are dropped.  Semi-spheres are parametrized in spherical angles
    restricted to the y > 0 half.  A paraboloid with ``l_par == 0`` meshes
    as its flat limit: the elliptical sheet in the wall plane.
    """
    nu, nv = resolution
    if nu < 1 or nv < 1:
        raise GeometryError("mesh resolution must be at least 1x1")

    if isinstance(shape, SemiSphere):
        r = shape.r_sph
        theta = _midpoints(0.0, np.pi, nu)   # polar angle from +z
        phi = _midpoints(0.0, np.pi, nv)     # azimuth sweep of the y > 0 half
        t, p = np.meshgrid(theta, phi, indexing="ij")
        st = np.sin(t)
        points = np.stack(
            [r * st * np.cos(p), r * st * np.sin(p), r * np.cos(t)], axis=-1
        ).reshape(-1, 3)
        normals = points / r
        areas = (r * r * st * (np.pi / nu) * (np.pi / nv)).ravel()
        return SurfaceMesh(shape, points, normals, areas, (nu, nv))

    if isinstance(shape, Paraboloid):
        xs = _midpoints(-shape.w_par / 2, shape.w_par / 2, nu)
        zs = _midpoints(-shape.h_par / 2, shape.h_par / 2, nv)
        x, z = np.meshgrid(xs, zs, indexing="ij")
        x, z = x.ravel(), z.ravel()
        inside = (2 * x / shape.w_par) ** 2 + (2 * z / shape.h_par) ** 2 < 1.0
        x, z = x[inside], z[inside]
        dx = shape.w_par / nu
        dz = shape.h_par / nv
        if shape.l_par == 0:
            points = np.stack([x, np.zeros_like(x), z], axis=-1)
            normals = np.tile(E2, (x.size, 1))
            areas = np.full(x.size, dx * dz)
            return SurfaceMesh(shape, points, normals, areas, (nu, nv))
        y = shape.l_par * (1 - (2 * x / shape.w_par) ** 2 - (2 * z / shape.h_par) ** 2)
        gx, gz = _paraboloid_gradient(x, z, shape)
        slope = np.sqrt(1.0 + gx * gx + gz * gz)
        points = np.stack([x, y, z], axis=-1)
        normals = np.stack([gx, np.ones_like(gx), gz], axis=-1) / slope[:, None]
        areas = slope * dx * dz
        return SurfaceMesh(shape, points, normals, areas, (nu, nv))

    if isinstance(shape, Plane):
        xs = _midpoints(-shape.width / 2, shape.width / 2, nu)
        zs = _midpoints(-shape.height / 2, shape.height / 2, nv)
        x, z = np.meshgrid(xs, zs, indexing="ij")
        x, z = x.ravel(), z.ravel()
        points = np.stack([x, np.zeros_like(x), z], axis=-1)
        normals = np.tile(E2, (x.size, 1))
        areas = np.full(x.size, (shape.width / nu) * (shape.height / nv))
        return SurfaceMesh(shape, points, normals, areas, (nu, nv))

    raise GeometryError(f"unknown mirror shape {shape!r}")


def segment_intersects_vertical_cylinder(
    p0: np.ndarray,
    p1: np.ndarray,
    center_xy: np.ndarray,
    radius: float,
    z_min: float,
    z_max: float,
) -> np.ndarray:
    """True where the open segment p0 -> p1 passes through a finite cylinder.

    The cylinder axis is vertical through ``center_xy`` with the given radius
    and z-extent.  Grazing contact (tangency, or endpoints exactly on the
    surface) does not count as blocking.  ``p0`` and ``p1`` broadcast against
    each other; the result follows the broadcast shape.  ``center_xy`` may be
    a single (2,) axis position or one position per broadcast segment.
    """
    p0 = np.asarray(p0, dtype=float)
    p1 = np.asarray(p1, dtype=float)
    b = np.broadcast_shapes(p0.shape, p1.shape)
    p0 = np.broadcast_to(p0, b).reshape(-1, 3)
    p1 = np.broadcast_to(p1, b).reshape(-1, 3)

    d = p1 - p0
    rel = p0[:, :2] - np.asarray(center_xy, dtype=float)
    a = np.einsum("ij,ij->i", d[:, :2], d[:, :2])
    bq = 2.0 * np.einsum("ij,ij->i", d[:, :2], rel)
    cq = np.einsum("ij,ij->i", rel, rel) - radius * radius

    # open t-interval where the horizontal distance is strictly inside
    degenerate = a <= 0.0  # vertically plumb segment: distance is constant
    with np.errstate(invalid="ignore", divide="ignore"):
        disc = bq * bq - 4.0 * a * cq
        sq = np.sqrt(np.maximum(disc, 0.0))
        r0 = (-bq - sq) / (2.0 * a)
        r1 = (-bq + sq) / (2.0 * a)
    has_2d = np.where(degenerate, cq < 0.0, disc > 0.0)
    t_lo = np.where(degenerate, 0.0, r0)
    t_hi = np.where(degenerate, 1.0, r1)

    # t-interval where z(t) sits inside the cylinder's vertical extent
    dz = d[:, 2]
    z0 = p0[:, 2]
    with np.errstate(invalid="ignore", divide="ignore"):
        ta = (z_min - z0) / dz
        tb = (z_max - z0) / dz
    z_lo = np.minimum(ta, tb)
    z_hi = np.maximum(ta, tb)
    flat = dz == 0.0
    in_band = (z0 >= z_min) & (z0 <= z_max)
    z_lo = np.where(flat, np.where(in_band, 0.0, 1.0), z_lo)
    z_hi = np.where(flat, np.where(in_band, 1.0, 0.0), z_hi)

    lo = np.maximum.reduce([t_lo, z_lo, np.zeros(len(p0))])
    hi = np.minimum.reduce([t_hi, z_hi, np.ones(len(p0))])
    hit = has_2d & (lo < hi)
    return hit.reshape(b[:-1]) if len(b) > 1 else hit.reshape(())
