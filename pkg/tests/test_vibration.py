'''
Tests of the vibration spectrum model and the
seeded trace synthesis.\n
Copyright (c) 2017 Aimirim STI.\n
## Dependencies are:
* numpy
* scipy
* pytest
'''

# Import system libs
import numpy as np
import pytest
from pydantic import ValidationError
from scipy import signal as sps

# Import custom libs
from src.errors import ValidationFailure
from src.vibration import synthesis
from src.vibration.schemas import NoiseSpec, AsdSegment, AsdPeak
from src.analysis import spectral

#######################################

# --------------------
def test_mk15_model_anchors(mk15_on):
    assert synthesis.asd_model(mk15_on, 10.0) == pytest.approx(1e-10, rel=0.2)
    assert synthesis.asd_model(mk15_on, 2e5) == pytest.approx(7e-12, rel=0.05)
    assert synthesis.band_rms(mk15_on, 0.0, 100.0) == pytest.approx(5.6e-9, rel=0.02)
# --------------------

# --------------------
def test_power_law_ratio():
    spec = NoiseSpec(segments=[AsdSegment(f_lo=0.0, f_hi=1.0, asd_at_f_lo=1e-9, exponent_p=0.0),
        AsdSegment(f_lo=1.0, f_hi=1e4, asd_at_f_lo=1e-9, exponent_p=-2.0)])
    assert synthesis.asd_model(spec, 200.0)/synthesis.asd_model(spec, 100.0) == pytest.approx(0.25)
# --------------------

# --------------------
def test_peaks_add_lorentzian_lines(quiet):
    spec = synthesis.with_peaks(quiet, [{'f0': 100.0, 'peak_asd': 2e-10, 'quality_q': 10.0}])
    assert synthesis.asd_model(spec, 100.0) == pytest.approx(2e-10)
    assert synthesis.asd_model(spec, 105.0) == pytest.approx(1e-10)
# --------------------

# --------------------
def test_segments_must_be_contiguous():
    with pytest.raises(ValidationError):
        NoiseSpec(segments=[AsdSegment(f_lo=0.0, f_hi=1.0, asd_at_f_lo=1e-9, exponent_p=0.0),
            AsdSegment(f_lo=2.0, f_hi=3.0, asd_at_f_lo=1e-9, exponent_p=0.0)])
    with pytest.raises(ValidationError):
        AsdPeak(f0=-1.0, peak_asd=1e-9, quality_q=1.0)
# --------------------

# --------------------
def test_negative_frequency_is_rejected(mk15_on):
    with pytest.raises(ValidationFailure):
        synthesis.asd_model(mk15_on, -1.0)
# --------------------

# --------------------
def test_zero_spectrum_gives_zero_trace(quiet):
    trace = synthesis.synthesize(quiet, 0.1, 1e4, seed=1)
    assert np.all(trace.values == 0.0)
# --------------------

# --------------------
def test_flat_spectrum_matches_parseval():
    a, f_n = 1e-11, 5e3
    spec = NoiseSpec(segments=[AsdSegment(f_lo=0.0, f_hi=1e9, asd_at_f_lo=a, exponent_p=0.0)])
    trace = synthesis.synthesize(spec, 10.0, 2*f_n, seed=2)
    assert trace.rms() == pytest.approx(a*np.sqrt(f_n), rel=0.05)
# --------------------

# --------------------
def test_floor_only_band_rms():
    spec = NoiseSpec.parse_obj({'segments': [], 'floor_asd': 0.0})
    assert synthesis.band_rms(spec.copy(update={'floor_asd': 1e-12}), 0.0, 1.0) == pytest.approx(1e-12)

def test_mk15_synthesized_band_rms(mk15_on):
    trace = synthesis.synthesize(mk15_on, 10.0, 50e3, seed=0)
    assert spectral.rms_band(trace, 0.0, 100.0) == pytest.approx(5.6e-9, rel=0.10)
    assert trace.metadata['seed'] == '0'
    assert trace.metadata['rng'] == 'numpy.PCG64'
# --------------------

# --------------------
def test_welch_asd_follows_model_per_octave(mk15_on):
    fs = 20e3
    trace = synthesis.synthesize(mk15_on, 20.0, fs, seed=4)
    f, psd = sps.welch(trace.values, fs=fs, window='hann', nperseg=2**14)
    lo = 16.0
    while 2*lo <= 0.4*fs:
        band = (f>=lo) & (f<2*lo)
        measured = np.sqrt(np.mean(psd[band]))
        model = np.sqrt(np.mean(synthesis.asd_model(mk15_on, f[band])**2))
        assert abs(20*np.log10(measured/model)) < 3.0, f"octave at {lo} Hz"
        lo *= 2
# --------------------

# --------------------
def test_floor_converges_to_instrumental_level(mk15_on):
    fs = 200e3
    trace = synthesis.synthesize(mk15_on, 2.0, fs, seed=9)
    table = spectral.compute_asd(trace, segments=16)
    high = (table.f>50e3) & (table.f<90e3)
    assert np.median(table.asd[high]) == pytest.approx(7e-12, rel=0.2)
# --------------------

# --------------------
def test_synthesis_is_seeded(mk15_on):
    a = synthesis.synthesize(mk15_on, 1.0, 1e3, seed=11)
    b = synthesis.synthesize(mk15_on, 1.0, 1e3, seed=11)
    c = synthesis.synthesize(mk15_on, 1.0, 1e3, seed=12)
    np.testing.assert_array_equal(a.values, b.values)
    assert not np.array_equal(a.values, c.values)
# --------------------

# --------------------
def test_displacement_spec_drops_the_floor(mk15_on):
    motion = mk15_on.displacement_spec()
    assert motion.floor_asd == 0.0
    assert synthesis.asd_model(motion, 2e5) < 7e-12
# --------------------
