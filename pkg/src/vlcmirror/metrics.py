"""Link-quality metrics: shadowing probability, SNR, and empirical CDFs."""

from __future__ import annotations

import enum
from dataclasses import dataclass

import numpy as np

from .radiometry import Photodetector

DEFAULT_ZERO_THRESHOLD = 1e-12  # W/m^2; below this a receiver counts as dark


@dataclass(frozen=True)
class NoiseModel:
    """Additive noise floor: one-sided PSD integrated over the bandwidth."""

    bandwidth: float  # Hz
    psd: float        # W/Hz

    def __post_init__(self) -> None:
        if self.bandwidth <= 0 or self.psd <= 0:
            raise ValueError("noise bandwidth and PSD must be positive")

    @property
    def power(self) -> float:
        return self.bandwidth * self.psd


class LinkState(enum.Enum):
    """Whether the direct source-receiver path contributes."""

    DIRECT_PRESENT = "direct_present"
    DIRECT_BLOCKED = "direct_blocked"

    @property
    def direct_on(self) -> bool:
        return self is LinkState.DIRECT_PRESENT


@dataclass(frozen=True)
class IrradianceField:
    """Per-cell irradiance values over a rectangular receiver grid.

    ``x`` and ``y`` hold cell-center coordinates; value arrays are shaped
    ``(len(x), len(y))`` with x varying along the first axis.
    """

    x: np.ndarray
    y: np.ndarray
    height: float  # z of the receiver plane in the mirror frame
    e_los: np.ndarray | None
    e_nlos_exact: np.ndarray
    e_nlos_approx: np.ndarray | None


def shadowing_probability(
    nlos_field, threshold: float = DEFAULT_ZERO_THRESHOLD
) -> float:
    """Fraction of receiver cells whose mirror-path irradiance is dark.

    Accepts an :class:`IrradianceField` or a bare array of exact mirror-path
    irradiance values.
    """
    values = getattr(nlos_field, "e_nlos_exact", nlos_field)
    values = np.asarray(values, dtype=float)
    if values.size == 0:
        raise ValueError("shadowing probability needs at least one cell")
    return float((values < threshold).mean())


def snr_db(
    p_direct,
    p_mirror,
    state: LinkState,
    detector: Photodetector,
    noise: NoiseModel,
):
    """Electrical SNR in dB for received optical powers (scalars or arrays).

    The photocurrent is ``responsivity * (direct + mirror)`` with the direct
    term dropped when the state says the path is blocked.  Zero total power
    maps to ``-inf``.
    """
    p_direct = np.asarray(p_direct, dtype=float)
    p_mirror = np.asarray(p_mirror, dtype=float)
    if np.any(p_direct < 0) or np.any(p_mirror < 0):
        raise ValueError("received powers must be non-negative")
    total = (p_direct if state.direct_on else 0.0) + p_mirror
    current = detector.responsivity * total
    with np.errstate(divide="ignore"):
        out = 10.0 * np.log10(current**2 / noise.power)
    if out.ndim == 0:
        return float(out)
    return out


def empirical_cdf(values, at=None) -> tuple[np.ndarray, np.ndarray]:
    """Right-continuous empirical CDF of ``values``.

    Without ``at``, returns the step points ``(unique values, cumulative
    probability)``; ``-inf`` entries show up as mass on the left-most step.
    With ``at``, returns ``(at, P[X <= at])`` evaluated at the given points.

    >>> empirical_cdf([1.0, 2.0, 3.0], at=[2.0])[1].tolist()
    [0.6666666666666666]
    """
    values = np.asarray(values, dtype=float)
    if values.size == 0:
        raise ValueError("empirical CDF needs at least one value")
    if np.isnan(values).any():
        raise ValueError("empirical CDF values must not contain NaN")
    xs = np.sort(values)
    if at is None:
        uniq, counts = np.unique(xs, return_counts=True)
        return uniq, np.cumsum(counts) / values.size
    at = np.asarray(at, dtype=float)
    probs = np.searchsorted(xs, at, side="right") / values.size
    return at, probs


def floor_mass(values) -> float:
    """Probability mass sitting at -inf (receivers with no signal at all)."""
    values = np.asarray(values, dtype=float)
    if values.size == 0:
        raise ValueError("floor mass needs at least one value")
    return float(np.isneginf(values).mean())
