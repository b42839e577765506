"""Self-blockage of the direct path by the user's own body.

A user is a device point on the receiver plane plus a vertical body
cylinder standing on the floor, offset horizontally from the device along
the user's orientation.  The direct path from a panel cell to the device is
blocked when its segment passes through the cylinder; a user with every
panel cell blocked loses the direct path entirely.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .geometry import Vec3, segment_intersects_vertical_cylinder
from .radiometry import SourcePanel

DEFAULT_BODY_HEIGHT = 1.75   # m
DEFAULT_BODY_RADIUS = 0.15   # m
DEFAULT_DEVICE_OFFSET = 0.3  # m, horizontal distance body axis <-> device


@dataclass(frozen=True)
class Cylinder:
    """Finite vertical cylinder: axis through ``center_xy``, z in [z_min, z_max]."""

    center_xy: np.ndarray
    radius: float
    z_min: float
    z_max: float

    def __post_init__(self) -> None:
        if self.radius < 0:
            raise ValueError("cylinder radius must be non-negative")
        if self.z_max < self.z_min:
            raise ValueError("cylinder z_max must not precede z_min")


@dataclass(frozen=True)
class UserSample:
    """One sampled user: device position, body axis, and facing angle."""

    device: Vec3          # on the receiver plane
    body_xy: np.ndarray   # horizontal body-axis position
    orientation: float    # radians, direction from device to body axis


def body_cylinder(
    user: UserSample,
    floor_z: float,
    body_height: float = DEFAULT_BODY_HEIGHT,
    body_radius: float = DEFAULT_BODY_RADIUS,
) -> Cylinder:
    """The user's body as a cylinder standing on the floor.

    The frame's z axis points floor-ward, so the body spans from the floor
    plane ``z = floor_z`` up to ``z = floor_z - body_height``.
    """
    return Cylinder(
        center_xy=user.body_xy,
        radius=body_radius,
        z_min=floor_z - body_height,
        z_max=floor_z,
    )


def _draw_users(
    rng: np.random.Generator,
    n: int,
    x_bounds: tuple[float, float],
    y_bounds: tuple[float, float],
) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Device positions and orientations; fixed draw order (x, y, angle)."""
    if n < 1:
        raise ValueError("must sample at least one user")
    xs = rng.uniform(x_bounds[0], x_bounds[1], n)
    ys = rng.uniform(y_bounds[0], y_bounds[1], n)
    thetas = rng.uniform(0.0, 2.0 * np.pi, n)
    return xs, ys, thetas


def sample_users(
    rng: np.random.Generator,
    n: int,
    x_bounds: tuple[float, float],
    y_bounds: tuple[float, float],
    device_z: float,
    device_offset: float = DEFAULT_DEVICE_OFFSET,
) -> list[UserSample]:
    """Draw ``n`` users: device uniform over the room, orientation uniform.

    A given seed always yields the same users regardless of downstream use.
    """
    xs, ys, thetas = _draw_users(rng, n, x_bounds, y_bounds)
    users = []
    for x, y, th in zip(xs, ys, thetas):
        device = np.array([x, y, device_z])
        body_xy = np.array([x + device_offset * np.cos(th), y + device_offset * np.sin(th)])
        users.append(UserSample(device=device, body_xy=body_xy, orientation=float(th)))
    return users


def sample_user(
    rng: np.random.Generator,
    x_bounds: tuple[float, float],
    y_bounds: tuple[float, float],
    device_z: float,
    device_offset: float = DEFAULT_DEVICE_OFFSET,
) -> UserSample:
    return sample_users(rng, 1, x_bounds, y_bounds, device_z, device_offset)[0]


def segment_blocked(p0: Vec3, p1: Vec3, body: Cylinder) -> bool:
    """True when the open segment p0 -> p1 passes through the body."""
    hit = segment_intersects_vertical_cylinder(
        np.asarray(p0, dtype=float),
        np.asarray(p1, dtype=float),
        np.asarray(body.center_xy, dtype=float),
        float(body.radius),
        float(body.z_min),
        float(body.z_max),
    )
    return bool(hit)


def los_fully_blocked(
    user: UserSample,
    source: SourcePanel,
    quadrature: tuple[int, int],
    floor_z: float,
    body_height: float = DEFAULT_BODY_HEIGHT,
    body_radius: float = DEFAULT_BODY_RADIUS,
) -> bool:
    """True when every panel quadrature cell is blocked by the user's body."""
    body = body_cylinder(user, floor_z, body_height, body_radius)
    nodes, _ = source.quadrature_points(quadrature)
    hit = segment_intersects_vertical_cylinder(
        nodes,
        np.asarray(user.device, dtype=float),
        np.asarray(body.center_xy, dtype=float),
        float(body.radius),
        float(body.z_min),
        float(body.z_max),
    )
    return bool(np.all(hit))


def _fully_blocked_mask(
    devices: np.ndarray,
    bodies_xy: np.ndarray,
    nodes: np.ndarray,
    body_radius: float,
    z_min: float,
    z_max: float,
) -> np.ndarray:
    """Vectorized all-cells-blocked test; survivors shrink cell by cell."""
    n = len(devices)
    alive = np.arange(n)
    for node in nodes:
        hit = segment_intersects_vertical_cylinder(
            node,
            devices[alive],
            bodies_xy[alive],
            body_radius,
            z_min,
            z_max,
        )
        alive = alive[np.asarray(hit, dtype=bool)]
        if alive.size == 0:
            break
    mask = np.zeros(n, dtype=bool)
    mask[alive] = True
    return mask


@dataclass(frozen=True)
class BlockageMap:
    """Boolean room map: cells where some sampled user lost the direct path."""

    x: np.ndarray        # cell centers along the wall
    y: np.ndarray        # cell centers into the room
    blocked: np.ndarray  # (len(x), len(y)) bool

    @property
    def shaded_fraction(self) -> float:
        return float(self.blocked.mean())


def potential_blockage_map(
    rng: np.random.Generator,
    n_users: int,
    source: SourcePanel,
    quadrature: tuple[int, int],
    x_bounds: tuple[float, float],
    y_bounds: tuple[float, float],
    device_z: float,
    floor_z: float,
    grid_n: int = 80,
    body_height: float = DEFAULT_BODY_HEIGHT,
    body_radius: float = DEFAULT_BODY_RADIUS,
    device_offset: float = DEFAULT_DEVICE_OFFSET,
) -> BlockageMap:
    """Sample users and mark the grid cells where one could self-block fully.

    A cell is marked when at least one sampled user whose device falls in it
    has every panel cell blocked by their own body.
    """
    if grid_n < 1:
        raise ValueError("blockage map grid must be at least 1x1")
    xs, ys, thetas = _draw_users(rng, n_users, x_bounds, y_bounds)
    devices = np.stack([xs, ys, np.full(n_users, device_z)], axis=1)
    bodies_xy = np.stack(
        [xs + device_offset * np.cos(thetas), ys + device_offset * np.sin(thetas)],
        axis=1,
    )
    nodes, _ = source.quadrature_points(quadrature)
    blocked_users = _fully_blocked_mask(
        devices, bodies_xy, nodes, body_radius, floor_z - body_height, floor_z
    )

    step_x = (x_bounds[1] - x_bounds[0]) / grid_n
    step_y = (y_bounds[1] - y_bounds[0]) / grid_n
    ix = np.clip(((xs - x_bounds[0]) / step_x).astype(int), 0, grid_n - 1)
    iy = np.clip(((ys - y_bounds[0]) / step_y).astype(int), 0, grid_n - 1)
    grid = np.zeros((grid_n, grid_n), dtype=bool)
    np.logical_or.at(grid, (ix[blocked_users], iy[blocked_users]), True)

    cx = x_bounds[0] + (np.arange(grid_n) + 0.5) * step_x
    cy = y_bounds[0] + (np.arange(grid_n) + 0.5) * step_y
    return BlockageMap(x=cx, y=cy, blocked=grid)
