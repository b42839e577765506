"""Shadowing probability, SNR conversion, and empirical CDF tests."""

import numpy as np
import pytest

from vlcmirror.metrics import (
    IrradianceField,
    LinkState,
    NoiseModel,
    empirical_cdf,
    floor_mass,
    shadowing_probability,
    snr_db,
)
from vlcmirror.radiometry import Photodetector

DET = Photodetector(area=4e-4, responsivity=0.4)
NOISE = NoiseModel(bandwidth=1e6, psd=2.5e-20)


def test_noise_model():
    assert NOISE.power == pytest.approx(2.5e-14)
    with pytest.raises(ValueError):
        NoiseModel(bandwidth=0.0, psd=2.5e-20)
    with pytest.raises(ValueError):
        NoiseModel(bandwidth=1e6, psd=-1.0)


def test_link_state_flags():
    assert LinkState.DIRECT_PRESENT.direct_on
    assert not LinkState.DIRECT_BLOCKED.direct_on


# -- SNR -------------------------------------------------------------------------


def test_snr_reference_arithmetic():
    # 1 uW total at 0.4 A/W over a 2.5e-14 W noise floor:
    # 10 log10((0.4e-6)^2 / 2.5e-14) = 10 log10(6.4)
    got = snr_db(1e-6, 0.0, LinkState.DIRECT_PRESENT, DET, NOISE)
    assert got == pytest.approx(8.061799739838872, abs=1e-12)


def test_snr_blocked_state_drops_direct_power():
    present = snr_db(1e-6, 2e-7, LinkState.DIRECT_PRESENT, DET, NOISE)
    blocked = snr_db(1e-6, 2e-7, LinkState.DIRECT_BLOCKED, DET, NOISE)
    only_mirror = snr_db(0.0, 2e-7, LinkState.DIRECT_PRESENT, DET, NOISE)
    assert blocked == pytest.approx(only_mirror)
    assert present > blocked


def test_snr_zero_power_is_neg_inf():
    assert snr_db(0.0, 0.0, LinkState.DIRECT_PRESENT, DET, NOISE) == float("-inf")
    assert snr_db(1.0, 0.0, LinkState.DIRECT_BLOCKED, DET, NOISE) == float("-inf")


def test_snr_power_decade_adds_twenty_db():
    base = snr_db(3e-7, 1e-7, LinkState.DIRECT_PRESENT, DET, NOISE)
    tenfold = snr_db(3e-6, 1e-6, LinkState.DIRECT_PRESENT, DET, NOISE)
    assert tenfold - base == pytest.approx(20.0, abs=1e-9)


def test_snr_strictly_increasing_in_power():
    powers = np.linspace(1e-8, 1e-5, 50)
    vals = snr_db(powers, 0.0, LinkState.DIRECT_PRESENT, DET, NOISE)
    assert (np.diff(vals) > 0).all()


def test_snr_array_shapes_and_inf_mix():
    p = np.array([0.0, 1e-6, 0.0, 5e-7])
    out = snr_db(0.0, p, LinkState.DIRECT_BLOCKED, DET, NOISE)
    assert out.shape == p.shape
    assert np.isneginf(out[[0, 2]]).all()
    assert np.isfinite(out[[1, 3]]).all()


def test_snr_rejects_negative_power():
    with pytest.raises(ValueError):
        snr_db(-1e-6, 0.0, LinkState.DIRECT_PRESENT, DET, NOISE)
    with pytest.raises(ValueError):
        snr_db(0.0, np.array([1e-6, -1e-9]), LinkState.DIRECT_BLOCKED, DET, NOISE)


# -- empirical CDF -----------------------------------------------------------------


def test_cdf_thirds_example():
    _, p = empirical_cdf([1.0, 2.0, 3.0], at=[2.0])
    assert p.tolist() == [pytest.approx(2 / 3)]


def test_cdf_single_step_when_constant():
    xs, ps = empirical_cdf([5.0, 5.0, 5.0, 5.0])
    assert xs.tolist() == [5.0]
    assert ps.tolist() == [1.0]


def test_cdf_step_points_properties():
    rng = np.random.default_rng(1)
    values = rng.normal(size=500)
    xs, ps = empirical_cdf(values)
    assert (np.diff(xs) > 0).all()
    assert (np.diff(ps) > 0).all()
    assert ps[-1] == pytest.approx(1.0)
    # right-continuity: evaluating at a step point includes its mass
    _, at_first = empirical_cdf(values, at=[xs[0]])
    assert at_first[0] == pytest.approx(1 / 500)


def test_cdf_evaluation_bounds():
    values = [1.0, 2.0, 4.0]
    _, p = empirical_cdf(values, at=[0.0, 1.0, 3.0, 4.0, 9.0])
    assert p.tolist() == [0.0, pytest.approx(1 / 3), pytest.approx(2 / 3), 1.0, 1.0]


def test_cdf_carries_floor_mass_at_neg_inf():
    values = [-np.inf, -np.inf, 3.0, 5.0]
    xs, ps = empirical_cdf(values)
    assert np.isneginf(xs[0])
    assert ps[0] == pytest.approx(0.5)
    assert floor_mass(values) == pytest.approx(0.5)


def test_cdf_rejects_empty_and_nan():
    with pytest.raises(ValueError):
        empirical_cdf([])
    with pytest.raises(ValueError):
        empirical_cdf([1.0, np.nan])
    with pytest.raises(ValueError):
        floor_mass([])


# -- shadowing probability -----------------------------------------------------------


def test_shadowing_probability_threshold_semantics():
    field = np.array([0.0, 5e-13, 1e-12, 2.0])
    # strictly-below-threshold cells count as dark
    assert shadowing_probability(field, threshold=1e-12) == pytest.approx(0.5)
    assert shadowing_probability(np.ones(4)) == 0.0
    assert shadowing_probability(np.zeros(4)) == 1.0


def test_shadowing_probability_accepts_field_object():
    field = IrradianceField(
        x=np.array([0.0]),
        y=np.array([0.0, 1.0]),
        height=1.0,
        e_los=None,
        e_nlos_exact=np.array([[0.0, 1.0]]),
        e_nlos_approx=None,
    )
    assert shadowing_probability(field) == pytest.approx(0.5)


def test_shadowing_probability_rejects_empty():
    with pytest.raises(ValueError):
        shadowing_probability(np.array([]))
