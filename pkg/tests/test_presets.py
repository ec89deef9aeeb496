'''
Tests of the preset tables and json configuration files.\n
Copyright (c) 2017 Aimirim STI.\n
## Dependencies are:
* numpy
* pytest
'''

# Import system libs
import json
import numpy as np
import pytest

# Import custom libs
from src.errors import ValidationFailure
from src.presets import Tcavity, Tpdh, Tscan, Tnoise, Tplant, Tservo, Tscenario
from src.cavity.schemas import CavityConfig
from src.vibration.synthesis import asd_model

#######################################

# --------------------
@pytest.mark.parametrize('table, names', [
    (Tcavity, {'bare', 'diamond'}),
    (Tplant, {'bare', 'diamond'}),
    (Tservo, {'bare', 'diamond'}),
    (Tscan, {'wide', 'single'}),
    (Tnoise, {'mk15-pt-on', 'mk15-pt-off', '4k-pt-on', '4k-pt-off', 'rt-pt-off'}),
])
def test_shipped_presets_parse(table, names):
    assert names <= set(table.get_names())
    for name in table.get_names():
        assert table.get_defaults(name) is not None
# --------------------

# --------------------
def test_unknown_preset_lists_valid_names():
    with pytest.raises(ValidationFailure) as err:
        Tcavity.get_defaults('sapphire')
    assert 'bare' in err.value.detail
    assert err.value.exit_code == 1
# --------------------

# --------------------
def test_raw_presets_are_copies():
    raw = Tpdh.get_raw('default')
    raw['modulation_depth_beta'] = 2.0
    assert Tpdh.get_defaults('default').modulation_depth_beta == pytest.approx(0.3)
# --------------------

# --------------------
def test_resolve_reads_json_files(tmp_path):
    raw = Tcavity.get_raw('bare')
    raw['air_gap_length'] = 20e-3
    path = tmp_path/'cav.json'
    path.write_text(json.dumps(raw))
    cav = Tcavity.resolve(str(path))
    assert isinstance(cav, CavityConfig)
    assert cav.air_gap_length == pytest.approx(20e-3)
    assert Tcavity.resolve('diamond').diamond_thickness_d > 0
# --------------------

# --------------------
def test_resolve_rejects_bad_files(tmp_path):
    with pytest.raises(ValidationFailure):
        Tcavity.resolve(str(tmp_path/'missing.json'))
    broken = tmp_path/'broken.json'
    broken.write_text('{"air_gap_length": ')
    with pytest.raises(ValidationFailure):
        Tcavity.resolve(str(broken))
    raw = Tcavity.get_raw('bare')
    raw['mirror_reflectivity_R1'] = 1.5
    invalid = tmp_path/'invalid.json'
    invalid.write_text(json.dumps(raw))
    with pytest.raises(ValidationFailure) as err:
        Tcavity.resolve(str(invalid))
    assert 'mirror_reflectivity_R1' in err.value.detail
# --------------------

# --------------------
def test_every_scenario_refers_to_existing_presets():
    names = Tscenario.get_names()
    assert len(names) >= 6
    for name in names:
        sc = Tscenario.get_defaults(name)
        assert sc.name == name
        Tcavity.get_defaults(sc.cavity)
        Tnoise.get_defaults(sc.noise)
        Tplant.get_defaults(sc.plant)
        Tservo.get_defaults(sc.servo)
        assert sc.reported_rms is None or 1e-12 < sc.reported_rms < 1e-10
# --------------------

# --------------------
@pytest.mark.parametrize('pulse_tube', ['on', 'off'])
def test_4k_spectra_follow_the_reported_rms(pulse_tube):
    cold = Tnoise.get_defaults(f"4k-pt-{pulse_tube}").displacement_spec()
    colder = Tnoise.get_defaults(f"mk15-pt-{pulse_tube}").displacement_spec()
    ratio = (Tscenario.get_defaults(f"bare-4k-pt-{pulse_tube}").reported_rms
        /Tscenario.get_defaults(f"bare-mk15-pt-{pulse_tube}").reported_rms)
    assert ratio != 1.0
    f = np.geomspace(0.5, 5e4, 400)
    np.testing.assert_allclose(asd_model(cold, f)/asd_model(colder, f), ratio, rtol=1e-5)
# --------------------
