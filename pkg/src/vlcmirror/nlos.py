"""Mirror-reflected irradiance: exact surface integral and patch shortcut.

The exact path sums, over every mesh sample R of the mirror, the radiance
the receiver sees in R times the usual projected-solid-angle factors:

    E(D) = rho * sum_R  L(R, D) * cos_det * cos_mir / |D - R|^2 * dA_R

where ``cos_det`` is the incidence cosine at the upward-facing receiver,
``cos_mir`` the cosine between the surface normal and the ray to the
receiver, and L gates each sample on its back-traced ray landing inside the
source window (see :mod:`vlcmirror.radiometry`).

The shortcut collapses the subset of samples that actually contribute (the
"patch") to a single virtual reflector: its centroid, summed area, and the
normal that bisects the directions toward source and receiver.  Both
routes share one mesh, so they are zero on exactly the same receivers.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from numba import njit, prange

from .geometry import SurfaceMesh, Vec3, unit
from .radiometry import SourcePanel


@dataclass(frozen=True)
class ContributingPatch:
    """Single-reflector stand-in for the samples visible from one receiver."""

    centroid: Vec3
    normal: Vec3  # unit bisector of the directions to source and receiver
    area: float
    member_count: int


@njit(cache=True)
def _contributions(
    d, pts, nrms, areas, src_x, src_y, src_z, half_wx, half_wy, m, scale
):
    """Per-sample integrand terms (before reflectivity) for one receiver."""
    n = pts.shape[0]
    out = np.zeros(n)
    for i in range(n):
        vx = d[0] - pts[i, 0]
        vy = d[1] - pts[i, 1]
        vz = d[2] - pts[i, 2]
        d2 = vx * vx + vy * vy + vz * vz
        if d2 <= 0.0:
            continue
        dist = np.sqrt(d2)
        rx, ry, rz = vx / dist, vy / dist, vz / dist
        cos_mir = nrms[i, 0] * rx + nrms[i, 1] * ry + nrms[i, 2] * rz
        if cos_mir < 0.0:
            continue
        cos_det = vz / dist
        if cos_det <= 0.0:
            continue
        # incident direction: reflection of the receiver ray at the sample
        ix = rx - 2.0 * cos_mir * nrms[i, 0]
        iy = ry - 2.0 * cos_mir * nrms[i, 1]
        iz = rz - 2.0 * cos_mir * nrms[i, 2]
        if iz <= 0.0:
            continue
        t = (pts[i, 2] - src_z) / iz
        if t <= 0.0:
            continue
        hx = pts[i, 0] - t * ix
        hy = pts[i, 1] - t * iy
        if abs(hx - src_x) > half_wx or abs(hy - src_y) > half_wy:
            continue
        radiance = scale * iz ** (m - 1.0)
        out[i] = radiance * cos_det * cos_mir / d2 * areas[i]
    return out


@njit(cache=True, parallel=True)
def _field_with_patch(
    points, pts, nrms, areas, src_x, src_y, src_z, half_wx, half_wy, m, scale
):
    """Exact integral plus patch statistics for a batch of receivers."""
    npts = points.shape[0]
    n = pts.shape[0]
    total = np.zeros(npts)
    count = np.zeros(npts, dtype=np.int64)
    patch_area = np.zeros(npts)
    cx = np.zeros(npts)
    cy = np.zeros(npts)
    cz = np.zeros(npts)
    for j in prange(npts):
        acc = 0.0
        k = 0
        a_sum = 0.0
        sx = 0.0
        sy = 0.0
        sz = 0.0
        for i in range(n):
            vx = points[j, 0] - pts[i, 0]
            vy = points[j, 1] - pts[i, 1]
            vz = points[j, 2] - pts[i, 2]
            d2 = vx * vx + vy * vy + vz * vz
            if d2 <= 0.0:
                continue
            dist = np.sqrt(d2)
            rx, ry, rz = vx / dist, vy / dist, vz / dist
            cos_mir = nrms[i, 0] * rx + nrms[i, 1] * ry + nrms[i, 2] * rz
            if cos_mir < 0.0:
                continue
            cos_det = vz / dist
            if cos_det <= 0.0:
                continue
            ix = rx - 2.0 * cos_mir * nrms[i, 0]
            iy = ry - 2.0 * cos_mir * nrms[i, 1]
            iz = rz - 2.0 * cos_mir * nrms[i, 2]
            if iz <= 0.0:
                continue
            t = (pts[i, 2] - src_z) / iz
            if t <= 0.0:
                continue
            hx = pts[i, 0] - t * ix
            hy = pts[i, 1] - t * iy
            if abs(hx - src_x) > half_wx or abs(hy - src_y) > half_wy:
                continue
            term = scale * iz ** (m - 1.0) * cos_det * cos_mir / d2 * areas[i]
            if term > 0.0:
                acc += term
                k += 1
                a_sum += areas[i]
                sx += pts[i, 0]
                sy += pts[i, 1]
                sz += pts[i, 2]
        total[j] = acc
        count[j] = k
        patch_area[j] = a_sum
        if k > 0:
            cx[j] = sx / k
            cy[j] = sy / k
            cz[j] = sz / k
    return total, count, patch_area, cx, cy, cz


def _source_args(source: SourcePanel) -> tuple:
    return (
        float(source.center[0]),
        float(source.center[1]),
        float(source.center[2]),
        source.width / 2.0,
        source.window_length / 2.0,
        source.order,
        source.radiance_scale,
    )


def exact_nlos_field(
    points: np.ndarray,
    mesh: SurfaceMesh,
    source: SourcePanel,
    reflectivity: float,
) -> np.ndarray:
    """Exact mirror-path irradiance (W/m^2) at each of ``points`` (n, 3)."""
    _check_reflectivity(reflectivity)
    points = np.ascontiguousarray(np.atleast_2d(points), dtype=float)
    total, *_ = _field_with_patch(
        points, mesh.points, mesh.normals, mesh.areas, *_source_args(source)
    )
    return reflectivity * total


def exact_nlos_irradiance(
    d_point: Vec3,
    mesh: SurfaceMesh,
    source: SourcePanel,
    reflectivity: float,
) -> float:
    """Exact mirror-path irradiance at a single receiver."""
    return float(exact_nlos_field(np.asarray(d_point, float)[None, :], mesh, source, reflectivity)[0])


def sample_contributions(
    d_point: Vec3, mesh: SurfaceMesh, source: SourcePanel
) -> np.ndarray:
    """Per-sample integrand terms for one receiver (no reflectivity factor).

    ``exact_nlos_irradiance`` equals ``reflectivity * sample_contributions(...).sum()``;
    exposed so callers and tests can enumerate the integral term by term.
    """
    d = np.asarray(d_point, dtype=float)
    return _contributions(
        d, mesh.points, mesh.normals, mesh.areas, *_source_args(source)
    )


def contributing_patch(
    d_point: Vec3, mesh: SurfaceMesh, source: SourcePanel
) -> ContributingPatch | None:
    """Collapse the samples contributing at ``d_point`` into one reflector.

    Returns None when no sample contributes.  The centroid is the plain mean
    of member sample points; the normal bisects the unit directions from the
    centroid to the source center and to the receiver.
    """
    terms = sample_contributions(d_point, mesh, source)
    members = terms > 0.0
    if not members.any():
        return None
    centroid = mesh.points[members].mean(axis=0)
    area = float(mesh.areas[members].sum())
    to_src = unit(np.asarray(source.center, float) - centroid)
    to_det = unit(np.asarray(d_point, float) - centroid)
    normal = unit(to_src + to_det)
    return ContributingPatch(
        centroid=centroid,
        normal=normal,
        area=area,
        member_count=int(members.sum()),
    )


def _approx_from_stats(
    d_points: np.ndarray,
    centroids: np.ndarray,
    areas: np.ndarray,
    counts: np.ndarray,
    source: SourcePanel,
    reflectivity: float,
) -> np.ndarray:
    """Vectorized single-reflector formula from patch statistics."""
    m = source.order
    src = np.asarray(source.center, dtype=float)
    out = np.zeros(len(d_points))
    have = counts > 0
    if not have.any():
        return out
    rc = centroids[have]
    to_src = src[None, :] - rc
    d_src = np.linalg.norm(to_src, axis=1)
    to_det = d_points[have] - rc
    d_det = np.linalg.norm(to_det, axis=1)
    u = to_src / d_src[:, None]
    v = to_det / d_det[:, None]
    nb = u + v
    nb /= np.linalg.norm(nb, axis=1, keepdims=True)
    cos_src = np.maximum(-u[:, 2], 0.0)   # e3 . unit(rc - src)
    cos_det = np.maximum(v[:, 2], 0.0)    # e3 . unit(d - rc)
    cos_mir = np.maximum(np.einsum("ij,ij->i", nb, v), 0.0)
    val = (
        reflectivity
        * (m + 1.0)
        * source.power_density
        * areas[have]
        * cos_src ** (m - 1.0)
        * cos_det
        * cos_mir
        / (2.0 * np.pi * d_det**2)
    )
    out[have] = val
    return out


def approx_nlos_irradiance(
    d_point: Vec3,
    mesh: SurfaceMesh,
    source: SourcePanel,
    reflectivity: float,
    patch: ContributingPatch | None = None,
) -> float:
    """Single-reflector approximation of the mirror-path irradiance.

    Uses ``patch`` when supplied, otherwise extracts it from ``mesh``.
    Returns 0 when no sample contributes, matching the exact route's zero
    set on the same mesh.
    """
    _check_reflectivity(reflectivity)
    if patch is None:
        patch = contributing_patch(d_point, mesh, source)
    if patch is None:
        return 0.0
    d = np.asarray(d_point, dtype=float)
    return float(
        _approx_from_stats(
            d[None, :],
            patch.centroid[None, :],
            np.array([patch.area]),
            np.array([patch.member_count]),
            source,
            reflectivity,
        )[0]
    )


def nlos_field_pair(
    points: np.ndarray,
    mesh: SurfaceMesh,
    source: SourcePanel,
    reflectivity: float,
) -> tuple[np.ndarray, np.ndarray]:
    """Exact and approximate mirror-path irradiance over a batch of receivers.

    One pass over the mesh serves both routes, so their zero sets agree
    exactly.
    """
    _check_reflectivity(reflectivity)
    points = np.ascontiguousarray(np.atleast_2d(points), dtype=float)
    total, count, area, cx, cy, cz = _field_with_patch(
        points, mesh.points, mesh.normals, mesh.areas, *_source_args(source)
    )
    exact = reflectivity * total
    centroids = np.stack([cx, cy, cz], axis=1)
    approx = _approx_from_stats(points, centroids, area, count, source, reflectivity)
    return exact, approx


def relative_error_field(
    points: np.ndarray,
    mesh: SurfaceMesh,
    source: SourcePanel,
    reflectivity: float,
    zero_threshold: float = 1e-12,
) -> np.ndarray:
    """Per-receiver |exact - approx| / exact; NaN where exact is dark.

    Receivers whose exact irradiance falls below ``zero_threshold`` carry no
    defined relative error and come back as NaN so callers can mask them.
    """
    exact, approx = nlos_field_pair(points, mesh, source, reflectivity)
    out = np.full(len(exact), np.nan)
    lit = exact >= zero_threshold
    out[lit] = np.abs(exact[lit] - approx[lit]) / exact[lit]
    return out


def _check_reflectivity(reflectivity: float) -> None:
    if not 0.0 <= reflectivity <= 1.0:
        raise ValueError("mirror reflectivity must lie in [0, 1]")
