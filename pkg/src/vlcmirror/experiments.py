"""Canned experiments over the reference room, one per CLI subcommand.

Each experiment consumes a :class:`~vlcmirror.scenario.ScenarioConfig` and
returns plain data (fields, row lists) that the CLI serializes.  The mirror
family constants reproduce the three wall-footprint tiers used throughout:
equal-area small / medium / large mirrors of each shape.
"""

from __future__ import annotations

import numpy as np

from .blockage import BlockageMap, potential_blockage_map
from .geometry import MirrorShape, Paraboloid, Plane, SemiSphere, mesh_surface
from .metrics import (
    IrradianceField,
    LinkState,
    empirical_cdf,
    shadowing_probability,
    snr_db,
)
from .nlos import nlos_field_pair, relative_error_field
from .radiometry import los_irradiance_field
from .scenario import ScenarioConfig

SIZE_TIERS = ("small", "medium", "large")

# Paraboloid (w_par, h_par) per tier; wall footprints pi*w*h/4 of
# 0.0314 / 0.1571 / 0.3142 m^2.
PARABOLOID_TIERS: dict[str, tuple[float, float]] = {
    "small": (0.4, 0.1),
    "medium": (0.4, 0.5),
    "large": (0.4, 1.0),
}
TIER_CURVATURE = 0.1  # l_par giving the best SNR spread among the sweeps

# Semi-sphere radii with the same wall footprints (pi r^2).
SPHERE_TIERS: dict[str, float] = {
    "small": 0.1,
    "medium": 0.2236,
    "large": 0.3162,
}

# Plane mirrors of equal wall footprint, keeping the 0.4 m width.
PLANE_TIERS: dict[str, tuple[float, float]] = {
    tier: (0.4, Paraboloid(w, TIER_CURVATURE, h).wall_area / 0.4)
    for tier, (w, h) in PARABOLOID_TIERS.items()
}

# Sweep grids for the approximation-error and shadowing studies.
ERROR_SWEEP_W = tuple(round(0.2 + 0.1 * k, 1) for k in range(9))
ERROR_SWEEP_L = (0.1, 0.15, 0.2)
ERROR_SWEEP_H = (0.1, 0.5, 1.0)
ERROR_SWEEP_R = (0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9, 1.0)
SHADOW_SWEEP_W = tuple(round(0.1 * k, 1) for k in range(1, 11))
SHADOW_SWEEP_L = (0.0, 0.05, 0.1, 0.15, 0.2)
SHADOW_SWEEP_H = (0.1, 0.5, 1.0)


def tier_mirrors(kind: str) -> dict[str, MirrorShape]:
    """The small/medium/large mirror family of one shape kind."""
    if kind == "paraboloid":
        return {
            t: Paraboloid(w, TIER_CURVATURE, h)
            for t, (w, h) in PARABOLOID_TIERS.items()
        }
    if kind == "semisphere":
        return {t: SemiSphere(r) for t, r in SPHERE_TIERS.items()}
    if kind == "plane":
        return {t: Plane(w, h) for t, (w, h) in PLANE_TIERS.items()}
    raise ValueError(f"unknown mirror kind {kind!r}")


def _mesh(cfg: ScenarioConfig, shape: MirrorShape):
    return mesh_surface(shape, (cfg.mesh_n, cfg.mesh_n))


def run_irradiance_field(cfg: ScenarioConfig) -> IrradianceField:
    """Direct, exact-mirror, and approximate-mirror irradiance over the grid."""
    cx, cy, pts = cfg.receiver_grid()
    source = cfg.source()
    n = cfg.grid_n
    e_los = los_irradiance_field(
        pts, source, (cfg.quadrature_n, cfg.quadrature_n)
    ).reshape(n, n)
    exact, approx = nlos_field_pair(pts, _mesh(cfg, cfg.mirror()), source, cfg.reflectivity)
    return IrradianceField(
        x=cx,
        y=cy,
        height=cfg.receiver_z,
        e_los=e_los,
        e_nlos_exact=exact.reshape(n, n),
        e_nlos_approx=approx.reshape(n, n),
    )


def nlos_exact_grid(cfg: ScenarioConfig, shape: MirrorShape) -> np.ndarray:
    """Exact mirror-path irradiance over the full receiver grid, (n, n)."""
    _, _, pts = cfg.receiver_grid()
    exact, _ = nlos_field_pair(pts, _mesh(cfg, shape), cfg.source(), cfg.reflectivity)
    return exact.reshape(cfg.grid_n, cfg.grid_n)


def sweep_peak_error(cfg: ScenarioConfig, shape: MirrorShape) -> float:
    """Peak per-cell relative error of the patch shortcut for one mirror.

    Receivers closer to the wall than the mirror's depth are excluded (the
    mirror body occupies that strip); dark receivers carry no error.
    """
    _, _, pts = cfg.receiver_grid()
    pts = pts[pts[:, 1] > shape.depth()]
    err = relative_error_field(
        pts, _mesh(cfg, shape), cfg.source(), cfg.reflectivity, cfg.zero_threshold
    )
    if np.isnan(err).all():
        return float("nan")
    return float(np.nanmax(err))


def run_relative_error(cfg: ScenarioConfig) -> list[dict]:
    """Peak approximation error across the paraboloid and sphere sweeps."""
    rows: list[dict] = []
    for h in ERROR_SWEEP_H:
        for l_par in ERROR_SWEEP_L:
            for w in ERROR_SWEEP_W:
                shape = Paraboloid(w, l_par, h)
                rows.append(
                    {
                        "shape": "paraboloid",
                        "w_par_m": w,
                        "l_par_m": l_par,
                        "h_par_m": h,
                        "r_sph_m": float("nan"),
                        "peak_error": sweep_peak_error(cfg, shape),
                    }
                )
    for r in ERROR_SWEEP_R:
        rows.append(
            {
                "shape": "semisphere",
                "w_par_m": float("nan"),
                "l_par_m": float("nan"),
                "h_par_m": float("nan"),
                "r_sph_m": r,
                "peak_error": sweep_peak_error(cfg, SemiSphere(r)),
            }
        )
    return rows


def run_shadowing_sweep(cfg: ScenarioConfig) -> list[dict]:
    """Shadowing probability across the paraboloid dimension sweep.

    ``l_par = 0`` rows use the flat elliptical sheet the paraboloid
    degenerates to, so each curvature sweep starts from a true plane mirror.
    """
    rows: list[dict] = []
    for h in SHADOW_SWEEP_H:
        for w in SHADOW_SWEEP_W:
            for l_par in SHADOW_SWEEP_L:
                field = nlos_exact_grid(cfg, Paraboloid(w, l_par, h))
                rows.append(
                    {
                        "h_par_m": h,
                        "w_par_m": w,
                        "l_par_m": l_par,
                        "probability": shadowing_probability(field, cfg.zero_threshold),
                    }
                )
    return rows


def snr_samples_nlos(cfg: ScenarioConfig, shape: MirrorShape) -> np.ndarray:
    """Mirror-only SNR (dB) for every receiver cell; -inf where dark."""
    field = nlos_exact_grid(cfg, shape)
    p_mirror = field.ravel() * cfg.detector_area
    return snr_db(
        0.0, p_mirror, LinkState.DIRECT_BLOCKED, cfg.detector(), cfg.noise()
    )


def snr_samples_with_direct(cfg: ScenarioConfig, shape: MirrorShape) -> np.ndarray:
    """SNR (dB) per cell when the direct path is also present."""
    _, _, pts = cfg.receiver_grid()
    source = cfg.source()
    e_los = los_irradiance_field(pts, source, (cfg.quadrature_n, cfg.quadrature_n))
    exact, _ = nlos_field_pair(pts, _mesh(cfg, shape), source, cfg.reflectivity)
    det = cfg.detector()
    return snr_db(
        e_los * det.area,
        exact * det.area,
        LinkState.DIRECT_PRESENT,
        det,
        cfg.noise(),
    )


def run_snr_cdf(cfg: ScenarioConfig) -> list[dict]:
    """Mirror-only SNR CDFs for the nine equal-footprint reference mirrors."""
    rows: list[dict] = []
    for kind in ("paraboloid", "semisphere", "plane"):
        for tier, shape in tier_mirrors(kind).items():
            values = snr_samples_nlos(cfg, shape)
            xs, ps = empirical_cdf(values)
            series = f"{kind}-{tier}"
            for x, p in zip(xs, ps):
                rows.append({"series": series, "snr_db": float(x), "cdf": float(p)})
    return rows


def run_blockage_map(cfg: ScenarioConfig) -> BlockageMap:
    """Potential self-blockage map for the configured panel and user count."""
    rng = np.random.default_rng(cfg.seed)
    return potential_blockage_map(
        rng,
        cfg.n_users,
        cfg.source(),
        (cfg.quadrature_n, cfg.quadrature_n),
        cfg.x_bounds,
        cfg.y_bounds,
        device_z=cfg.receiver_z,
        floor_z=cfg.floor_z,
        grid_n=cfg.grid_n,
        body_height=cfg.body_height,
        body_radius=cfg.body_radius,
        device_offset=cfg.device_offset,
    )
