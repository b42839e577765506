"""Indoor visible-light link simulator with wall-mounted mirror reflectors."""

from .geometry import (
    GeometryError,
    MirrorShape,
    Paraboloid,
    Plane,
    SemiSphere,
    SurfaceMesh,
    SurfaceSample,
    mesh_surface,
    paraboloid_point,
    reflect_incident_direction,
    intersect_source_plane,
    surface_normal,
)
from .radiometry import (
    Photodetector,
    SourcePanel,
    lambertian_order,
    los_irradiance,
    los_irradiance_field,
    los_received_power,
    radiance_at,
)
from .nlos import (
    ContributingPatch,
    approx_nlos_irradiance,
    contributing_patch,
    exact_nlos_field,
    exact_nlos_irradiance,
    nlos_field_pair,
    relative_error_field,
)
from .metrics import (
    IrradianceField,
    LinkState,
    NoiseModel,
    empirical_cdf,
    floor_mass,
    shadowing_probability,
    snr_db,
)
from .blockage import (
    BlockageMap,
    Cylinder,
    UserSample,
    los_fully_blocked,
    potential_blockage_map,
    sample_user,
    sample_users,
)
from .scenario import (
    ConfigError,
    ScenarioConfig,
    config_from_mapping,
    load_config,
    resolved_mapping,
)

__version__ = "0.1.0"
