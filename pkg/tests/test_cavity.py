'''
Tests of the static cavity model.\n
Copyright (c) 2017 Aimirim STI.\n
## Dependencies are:
* numpy
* pydantic
* pytest
'''

# Import system libs
import numpy as np
import pytest
from pydantic import ValidationError

# Import custom libs
from src.env import Enviroment as Env
from src.errors import ValidationFailure
from src.cavity import optics, losses
from src.cavity.schemas import CavityConfig

#######################################

# --------------------
def test_derive_bare_cavity(bare):
    d = optics.derive(bare)
    assert d.fsr == pytest.approx(4.6e9, rel=0.01)
    assert d.finesse == pytest.approx(310, rel=0.05)
    assert d.linewidth_fwhm == pytest.approx(15e6, rel=0.10)
    assert d.quality_factor == pytest.approx(2.7e7, rel=0.10)
    assert d.beam_waist_w0 == pytest.approx(140e-6, rel=0.02)
    assert d.mode_volume == pytest.approx(0.50e-9, rel=0.05)
    assert d.intracavity_loss < 1e-50
# --------------------

# --------------------
def test_derive_diamond_cavity(diamond):
    d = optics.derive(diamond)
    assert d.optical_length == pytest.approx(27.3e-3, rel=1e-3)
    assert d.fsr == pytest.approx(5.5e9, rel=0.01)
    assert 90*0.95 <= d.finesse <= 93*1.05
    assert d.linewidth_fwhm == pytest.approx(60e6, rel=0.10)
    assert d.quality_factor == pytest.approx(6.5e6, rel=0.10)
    assert d.beam_waist_w0 == pytest.approx(135e-6, rel=0.02)
    assert d.mode_volume == pytest.approx(0.39e-9, rel=0.05)
    assert d.intracavity_loss == pytest.approx(0.048106, rel=1e-3)
# --------------------

# --------------------
@pytest.mark.parametrize('preset', ['bare', 'diamond'])
def test_fsr_times_length_is_c(preset, request):
    cav = request.getfixturevalue(preset)
    d = optics.derive(cav)
    assert d.fsr*2*d.optical_length == pytest.approx(Env.SPEED_OF_LIGHT, rel=1e-15)
    assert d.linewidth_fwhm == pytest.approx(d.fsr/d.finesse, rel=1e-12)
    assert d.linewidth_in_length_DeltaL == pytest.approx(cav.wavelength_lambda/(2*d.finesse))
# --------------------

# --------------------
def test_half_wavelength_moves_one_fsr(bare):
    d = optics.derive(bare)
    kappa = optics.detuning_per_length(bare)
    assert kappa*bare.wavelength_lambda/2 == pytest.approx(d.fsr, rel=1e-12)
    assert kappa*d.linewidth_in_length_DeltaL == pytest.approx(d.linewidth_fwhm, rel=1e-12)
# --------------------

# --------------------
def test_finesse_grows_without_bound_in_the_lossless_limit(bare):
    finesses = []
    for R in (0.99, 0.999, 0.9999, 0.99999):
        d = optics.derive(bare.copy(update={'mirror_reflectivity_R1': R, 'mirror_reflectivity_R2': R}))
        finesses.append(d.finesse)
        assert d.round_trip_loss_total == pytest.approx(2*(1-R), rel=1e-6)
    assert np.all(np.diff(finesses) > 0)
    assert finesses[-1] > 3e5
# --------------------

# --------------------
def test_reflection_is_total_at_antiresonance_when_lossless(bare):
    cav = bare.copy(update={'mirror_reflectivity_R1': 0.999999, 'mirror_reflectivity_R2': 0.999999})
    F = optics.reflection_coefficient(cav, optics.fsr(cav)/2)
    assert abs(F) == pytest.approx(1.0, abs=1e-9)
# --------------------

# --------------------
def test_reflection_vanishes_when_impedance_matched(bare):
    F = optics.reflection_coefficient(bare, 0.0)
    assert abs(F) < 1e-9
    dips = np.abs(optics.reflection_coefficient(bare, np.linspace(-2e9, 2e9, 1001)))
    assert np.all(dips <= 1.0 + 1e-12)
# --------------------

# --------------------
def test_reflection_dip_half_depth_at_half_linewidth(diamond):
    d = optics.derive(diamond)
    R0 = abs(optics.reflection_coefficient(diamond, 0.0))**2
    Rmax = abs(optics.reflection_coefficient(diamond, d.fsr/2))**2
    Rhalf = abs(optics.reflection_coefficient(diamond, d.linewidth_fwhm/2))**2
    assert Rhalf == pytest.approx(0.5*(R0+Rmax), rel=2e-3)
# --------------------

# --------------------
def test_reflection_derivative_matches_finite_difference(diamond):
    h = 1e3
    for delta in (0.0, 2e7, -4.5e7, 1.5e8):
        numeric = (optics.reflection_coefficient(diamond, delta+h)
            - optics.reflection_coefficient(diamond, delta-h))/(2*h)
        analytic = optics.reflection_derivative(diamond, delta)
        assert abs(analytic-numeric) <= 1e-5*abs(analytic) + 1e-18
# --------------------

# --------------------
def test_transmission_peak_and_periodicity(bare):
    free_range = optics.fsr(bare)
    T0 = optics.transmission(bare, 0.0)
    assert T0 == pytest.approx(1.0, rel=1e-9)
    assert optics.transmission(bare, free_range) == pytest.approx(T0, rel=1e-9)
    assert optics.transmission(bare, free_range/2) < 1e-4
# --------------------

# --------------------
def test_unstable_geometry_is_rejected(bare):
    raw = bare.dict()
    raw['roc_top_mirror'] = 0.02
    with pytest.raises(ValidationError):
        CavityConfig(**raw)
# --------------------

# --------------------
def test_invalid_reflectivity_is_rejected(bare):
    raw = bare.dict()
    raw['mirror_reflectivity_R1'] = 1.0
    with pytest.raises(ValidationError):
        CavityConfig(**raw)
# --------------------

# --------------------
@pytest.mark.parametrize('dl, expected', [(30e-12, 1.2e4), (63e-12, 5.8e3)])
def test_max_lockable_finesse(dl, expected):
    assert optics.max_lockable_finesse(dl, 737e-9) == pytest.approx(expected, rel=0.03)

def test_max_lockable_finesse_unit_limit():
    assert optics.max_lockable_finesse(737e-9/2, 737e-9) == pytest.approx(1.0)

@pytest.mark.parametrize('dl', [0.0, -1e-12, float('nan')])
def test_max_lockable_finesse_rejects_non_positive(dl):
    with pytest.raises(ValidationFailure):
        optics.max_lockable_finesse(dl, 737e-9)
# --------------------

# --------------------
def test_single_loss_mechanisms():
    assert losses.scattering_loss(1.5e-9, 737e-9, 2.4) == pytest.approx(0.0037679, rel=1e-3)
    assert losses.scattering_loss(0.0, 737e-9, 2.4) == 0.0
    assert losses.absorption_loss(0.15, 0.5e-3) == pytest.approx(1-10**-0.015, rel=1e-12)
    assert losses.absorption_loss(0.15, 0.5e-3, 'natural') == pytest.approx(1-np.exp(-0.015), rel=1e-12)
    assert losses.clipping_loss(3e-3, 135e-6) < 1e-50
    alpha = losses.absorption_alpha(losses.absorption_loss(0.15, 0.5e-3), 0.5e-3)
    assert alpha == pytest.approx(0.15, rel=1e-12)
# --------------------
