'''
Tests of the PID controller, the lock state machine,
the closed loop engine and the Bode measurement.\n
Copyright (c) 2017 Aimirim STI.\n
## Dependencies are:
* numpy
* pytest
'''

# Import system libs
import logging
import numpy as np
import pytest

# Import custom libs
from src.errors import ValidationFailure
from src.presets import Tcavity, Tpdh, Tnoise, Tplant, Tservo, Tscenario
from src.vibration import synthesis
from src.pdh import signal
from src.analysis.spectral import compute_asd
from src.servo.schemas import ServoConfig, LockState
from src.servo.controller import PidController, LockStateMachine
from src.servo.engine import run_closed_loop, longest_run, Discriminator, LoopSimulator
from src.servo.loop_model import LoopModel
from src.servo.bode import bode_measure

#######################################

# --------------------
def _servo(**changes) -> ServoConfig:
    raw = Tservo.get_raw('bare')
    raw.update(changes)
    return(ServoConfig.parse_obj(raw))
# --------------------

# --------------------
def test_pid_proportional_and_polarity():
    pid = PidController(_servo(kp=2.0, ki=0.0, polarity=-1))
    assert pid.update(0.5) == pytest.approx(-1.0)
    assert not pid.saturated
# --------------------

# --------------------
def test_pid_integrator_is_clamped():
    pid = PidController(_servo(kp=0.0, ki=1e6, integrator_clamp=0.5))
    for _ in range(100):
        u = pid.update(1.0)
    assert u == pytest.approx(0.5)
    assert pid.integral == pytest.approx(0.5)
# --------------------

# --------------------
def test_pid_output_saturates():
    pid = PidController(_servo(kp=100.0, ki=0.0))
    assert pid.update(1.0) == pytest.approx(5.0)
    assert pid.saturated
    assert pid.update(-1.0) == pytest.approx(-5.0)
# --------------------

# --------------------
def test_pid_has_no_derivative_kick_on_the_first_sample():
    pid = PidController(_servo(kp=0.0, ki=0.0, kd=1e-6))
    assert pid.update(0.3) == 0.0
    assert pid.update(0.4) == pytest.approx(1e-6*0.1*1e6)
    pid.reset()
    assert pid.update(-0.2) == 0.0
# --------------------

# --------------------
def test_state_machine_engages_locks_and_unlocks():
    sm = LockStateMachine(_servo(engage_samples=3, unlock_samples=2))
    assert sm.update(0.1) == LockState.SCAN
    assert sm.update(0.9) == LockState.ENGAGE
    assert sm.update(0.9) == LockState.ENGAGE
    assert sm.update(0.9) == LockState.LOCKED
    assert sm.update(0.3) == LockState.LOCKED
    assert sm.update(0.1) == LockState.LOCKED
    assert sm.update(0.1) == LockState.SCAN
    assert (sm.lock_count, sm.unlock_count) == (1, 1)
# --------------------

# --------------------
def test_state_machine_engage_needs_consecutive_samples():
    sm = LockStateMachine(_servo(engage_samples=3, unlock_samples=50))
    sm.update(0.9)
    sm.update(0.4)
    sm.update(0.9)
    assert sm.update(0.9) == LockState.ENGAGE
    assert sm.update(0.9) == LockState.LOCKED
# --------------------

# --------------------
def test_longest_run():
    assert longest_run(np.array([0,1,1,0,1,1,1,0], dtype=bool)) == (4, 7)
    assert longest_run(np.zeros(5, dtype=bool)) == (0, 0)
# --------------------

# --------------------
def test_discriminator_reads_the_analytic_curves(bare, pdh):
    disc = Discriminator(bare, pdh)
    for delta in (0.0, 1.3e6, -7.1e6, 1.5e8):
        e, tr = disc.read(disc.wrap(delta))
        assert e == pytest.approx(float(signal.error_signal(bare, pdh, delta)), abs=1e-4)
        assert tr == pytest.approx(float(signal.transmission_signal(bare, pdh, delta)), abs=1e-4)
    assert disc.wrap(disc.fsr+10.0) == pytest.approx(10.0, abs=1e-3)
# --------------------

# --------------------
def test_noiseless_loop_locks_to_zero(bare, pdh, quiet, stiff_plant, bare_servo):
    run = run_closed_loop(bare, pdh, quiet, stiff_plant, bare_servo, 0.02, seed=0)
    rep = run.report
    assert rep.lock_acquired
    assert rep.final_state == 'LOCKED'
    assert rep.time_to_lock == pytest.approx(2.26e-3, rel=0.1)
    assert rep.rms_displacement < 1e-12
    assert abs(run.traces['deviation'].values[-1]) < 1e-15
    assert rep.relock_count == 0
    assert sum(rep.state_counts.values()) == 20000
# --------------------

# --------------------
def test_disabled_servo_free_runs(bare, pdh, flat_noise, stiff_plant, caplog):
    servo = _servo(kp=0.0, ki=0.0, kd=0.0)
    with caplog.at_level(logging.WARNING):
        run = run_closed_loop(bare, pdh, flat_noise, stiff_plant, servo, 0.02, seed=3)
    rep = run.report
    assert not rep.lock_acquired
    assert rep.time_to_lock is None
    assert rep.locked_fraction == 0.0
    expected = synthesis.band_rms(flat_noise, 0.0, 1e5)
    assert rep.rms_displacement == pytest.approx(expected, rel=0.05)
    assert 'never acquired' in caplog.text
# --------------------

# --------------------
def test_bare_lock_residual_in_the_expected_range(bare, pdh, mk15_on, bare_plant, bare_servo):
    rep = run_closed_loop(bare, pdh, mk15_on, bare_plant, bare_servo, 0.05, seed=1, record=False).report
    assert rep.lock_acquired
    assert rep.locked_fraction > 0.9
    assert 20e-12 <= rep.rms_displacement <= 100e-12
    assert rep.residual_error is None
# --------------------

# --------------------
def test_bare_lock_persists_for_a_minute(bare, pdh, mk15_on, bare_plant, bare_servo):
    rep = run_closed_loop(bare, pdh, mk15_on, bare_plant, bare_servo, 60.0, seed=0, record=False).report
    assert rep.locked_fraction >= 0.99
    assert 20e-12 <= rep.rms_displacement <= 100e-12
# --------------------

# --------------------
def test_diamond_residual_exceeds_bare(pdh, mk15_on):
    residual = {}
    for name in ('bare-mk15-pt-on', 'diamond-mk15-pt-on'):
        sc = Tscenario.get_defaults(name)
        noise = synthesis.with_peaks(Tnoise.get_defaults(sc.noise), sc.extra_peaks)
        rep = run_closed_loop(Tcavity.get_defaults(sc.cavity), pdh, noise, Tplant.get_defaults(sc.plant),
            Tservo.get_defaults(sc.servo), 0.05, seed=2, record=False).report
        assert rep.lock_acquired
        residual[sc.cavity] = rep.rms_displacement
    assert residual['diamond'] > residual['bare']
# --------------------

# --------------------
def test_loop_rejects_disturbances_at_10_hz(bare, pdh, bare_plant, bare_servo):
    model = LoopModel(bare, pdh, bare_plant, bare_servo)
    assert 20*np.log10(abs(model.sensitivity(10.0))) < -40.0
    f_c, pm, gm = model.margins()
    assert 10e3 < f_c < 200e3
    assert pm > 20.0
# --------------------

# --------------------
def test_closed_loop_is_deterministic(bare, pdh, mk15_on, bare_plant, bare_servo):
    a = run_closed_loop(bare, pdh, mk15_on, bare_plant, bare_servo, 5e-3, seed=4)
    b = run_closed_loop(bare, pdh, mk15_on, bare_plant, bare_servo, 5e-3, seed=4)
    for key in a.traces:
        np.testing.assert_array_equal(a.traces[key].values, b.traces[key].values)
    assert a.report.config_hash == b.report.config_hash
# --------------------

# --------------------
def test_too_short_duration_is_rejected(bare, pdh, quiet, stiff_plant, bare_servo):
    with pytest.raises(ValidationFailure):
        run_closed_loop(bare, pdh, quiet, stiff_plant, bare_servo, 1e-6)
# --------------------

# --------------------
@pytest.fixture(scope='module')
def locked_mk15():
    ''' Two seconds of the bare cavity locked under the 15 mK spectrum,
    with the free running motion of the same seed.\n
    '''
    cavity, pdh = Tcavity.get_defaults('bare'), Tpdh.get_defaults('default')
    plant, servo = Tplant.get_defaults('bare'), Tservo.get_defaults('bare')
    noise = Tnoise.get_defaults('mk15-pt-on')
    fs = servo.sample_rate_fs
    rep = run_closed_loop(cavity, pdh, noise, plant, servo, 2.0, seed=3, record=False).report
    resid = rep.residual_displacement
    skip = int(0.05*fs)
    start = int(round(resid.t0*fs)) + skip
    free = synthesis.synthesize(noise.displacement_spec(), 2.0, fs, 3)
    free = free.segment(start, start+resid.n-skip)
    model = LoopModel(cavity, pdh, plant, servo)
    return(resid.segment(skip, resid.n), free, noise, model)
# --------------------

# --------------------
def test_residual_over_sensitivity_gives_back_the_input_spectrum(locked_mk15):
    resid, free, noise, model = locked_mk15
    table = compute_asd(resid, segment_length=1<<19)
    f = table.f
    keep = (f>=20.0) & (f<=1000.0)
    for p in noise.peaks:
        keep &= np.abs(f-p.f0) > 0.2*p.f0
    recovered = table.asd[keep]/np.abs(model.sensitivity(f[keep]))
    expected = synthesis.asd_model(noise.displacement_spec(), f[keep])
    edges = np.geomspace(20.0, 1000.0, 9)
    checked = 0
    for lo, hi in zip(edges[:-1], edges[1:]):
        band = (f[keep]>=lo) & (f[keep]<hi)
        if np.count_nonzero(band)<3:
            continue
        ratio_db = 10*np.log10(np.mean(recovered[band]**2)/np.mean(expected[band]**2))
        assert abs(ratio_db) <= 3.0, f"{lo:.0f}-{hi:.0f} Hz off by {ratio_db:.2f} dB"
        checked += 1
    assert checked >= 6
# --------------------

# --------------------
def test_lock_suppresses_10_hz_motion_by_40_db(locked_mk15):
    resid, free, noise, model = locked_mk15
    locked = compute_asd(resid, segment_length=1<<19)
    loose = compute_asd(free, segment_length=1<<19)
    band = (locked.f>=8.0) & (locked.f<=12.0)
    suppression = 10*np.log10(np.mean(loose.asd[band]**2)/np.mean(locked.asd[band]**2))
    assert suppression >= 40.0
# --------------------

# --------------------
def test_bode_matches_the_loop_model(bare, pdh, bare_plant, bare_servo):
    result = bode_measure(bare, pdh, bare_plant, bare_servo, [200.0, 2e3, 9e3], 1e-3)
    assert len(result.points) == 3
    for p in result.points:
        assert p.gain_db == pytest.approx(p.model_gain_db, abs=1.0)
        dphase = (p.phase_deg - p.model_phase_deg + 180.0) % 360.0 - 180.0
        assert abs(dphase) < 5.0
        assert not p.retried
# --------------------

# --------------------
@pytest.mark.parametrize('amplitude, freqs', [(0.0, [1e3]), (1e-3, [6e5]), (1e-3, [])])
def test_bode_rejects_bad_requests(bare, pdh, bare_plant, bare_servo, amplitude, freqs):
    with pytest.raises(ValidationFailure):
        bode_measure(bare, pdh, bare_plant, bare_servo, freqs, amplitude)
# --------------------

# --------------------
def test_bode_needs_a_closed_loop(bare, pdh, bare_plant):
    with pytest.raises(ValidationFailure):
        bode_measure(bare, pdh, bare_plant, _servo(kp=0.0, ki=0.0), [1e3], 1e-3)
# --------------------

# --------------------
class _DropsLock(LoopSimulator):
    ''' Reports the lock lost on the injected runs listed in `dropped`.\n '''
    dropped = ()

    def __init__(self, *args, **kwargs):
        super().__init__(*args, **kwargs)
        self.injected = 0

    def run(self, n_samples, noise=None, injection=None, record=True):
        rec = super().run(n_samples, noise=noise, injection=injection, record=record)
        if injection is not None:
            self.injected += 1
            if self.injected in self.dropped:
                rec['state'][n_samples//2:] = LockState.SCAN
        return(rec)
# --------------------

# --------------------
@pytest.mark.parametrize('dropped, valid', [((2,), True), ((2, 3), False)])
def test_bode_lock_loss_is_retried_then_flagged(bare, pdh, bare_plant, bare_servo, monkeypatch, caplog,
                                                dropped, valid):
    monkeypatch.setattr(_DropsLock, 'dropped', dropped)
    monkeypatch.setattr('src.servo.bode.LoopSimulator', _DropsLock)
    with caplog.at_level(logging.WARNING):
        result = bode_measure(bare, pdh, bare_plant, bare_servo, [500.0, 2e3, 5e3], 1e-3)
    first, lost, last = result.points
    assert lost.retried
    assert lost.valid == valid
    assert lost.amplitude == pytest.approx(0.5e-3)
    assert ('flagged invalid' in caplog.text) == (not valid)
    for p in (first, last):
        assert p.valid and not p.retried
        assert p.gain_db == pytest.approx(p.model_gain_db, abs=1.0)
# --------------------

# --------------------
def _wrapped(deg):
    return((deg + 180.0) % 360.0 - 180.0)
# --------------------

# --------------------
def test_bode_on_the_log_grid_matches_the_model(bare, pdh, bare_plant, bare_servo):
    result = bode_measure(bare, pdh, bare_plant, bare_servo, np.geomspace(100.0, 40e3, 20), 1e-3)
    assert len(result.points) == 20
    modes = [m.f0 for m in bare_plant.modes]
    checked = 0
    for p in result.points:
        assert p.valid
        if any(abs(p.f_hz/f0-1) < 0.1 for f0 in modes):
            continue
        assert p.gain_db == pytest.approx(p.model_gain_db, abs=1.0)
        assert abs(_wrapped(p.phase_deg - p.model_phase_deg)) < 5.0
        checked += 1
    assert checked >= 15
# --------------------

# --------------------
def test_bode_shows_the_actuator_modes(bare, pdh, bare_plant, bare_servo):
    modes = [m.f0 for m in bare_plant.modes]
    assert modes == [6e3, 18e3, 30e3]
    result = bode_measure(bare, pdh, bare_plant, bare_servo, modes, 1e-3)
    featureless = LoopModel(bare, pdh, bare_plant.copy(update={'modes': []}), bare_servo)
    for p in result.points:
        assert p.gain_db == pytest.approx(p.model_gain_db, abs=1.0)
        assert abs(_wrapped(p.phase_deg - p.model_phase_deg)) < 5.0
        flat_db = 20*np.log10(abs(featureless.injection_response(p.f_hz)))
        assert abs(p.gain_db - flat_db) > 0.3
# --------------------
