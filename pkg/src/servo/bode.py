'''
In loop transfer function measurement: a small sine is
added to the piezo drive and the error signal is demodulated on an
integer number of periods.\n
Copyright (c) 2017 Aimirim STI.\n
## Dependencies are:
* numpy
'''

# Import system libs
import logging
import math
from typing import Iterable
import numpy as np

# Import custom libs
from ..errors import ValidationFailure, AnalysisFailure
from ..trace.io import config_hash
from .schemas import LockState, BodePoint, BodeResult, ServoConfig
from .engine import LoopSimulator
from .loop_model import LoopModel

#######################################

logger = logging.getLogger(__name__)

# --------------------
def _window(f:float, fs:float, min_window:float, min_periods:int):
    ''' Measurement window holding an integer number of periods.\n
    return (n, f_snap) (int, float): Window length and snapped frequency.\n
    '''
    periods = max(min_periods, int(math.ceil(min_window*f)))
    n = int(round(periods*fs/f))
    return(n, periods*fs/n)
# --------------------

# --------------------
def _demodulate(values:np.ndarray, f:float, fs:float) -> complex:
    k = np.arange(values.size)
    return(complex(np.sum(values*np.exp(-2j*np.pi*f*k/fs))))
# --------------------

# --------------------
def _relock(sim:LoopSimulator, servo:ServoConfig, settle:int):
    budget = int(round(2*sim.fs/servo.scan_ramp.frequency))+settle
    if sim.run_until_locked(budget)<0:
        raise AnalysisFailure('lock could not be acquired for the Bode measurement')
    sim.run(settle, record=False)
# --------------------

# --------------------
def bode_measure(cavity, pdh, plant, servo:ServoConfig, f_points:Iterable[float],
                 injection_amplitude:float, seed:int=0, settle_time:float=10e-3,
                 min_window:float=2e-3, min_periods:int=4) -> BodeResult:
    ''' Measure the error response to a drive injection at each frequency.\n
    `cavity`, `pdh`, `plant`, `servo`: Loop configuration.\n
    `f_points` (list): Requested frequencies in Hz.\n
    `injection_amplitude` (float): Sine amplitude in V.\n
    `seed` (int): Seed of the detector noise.\n
    `settle_time` (float): Injection time discarded before each window in s.\n
    `min_window` (float): Shortest demodulation window in s.\n
    `min_periods` (int): Fewest periods in a window.\n
    return `result` (BodeResult): Measured and modeled gain and phase.\n
    '''
    fs = servo.sample_rate_fs
    freqs = [float(f) for f in f_points]
    if not (np.isfinite(injection_amplitude) and injection_amplitude>0):
        raise ValidationFailure('injection amplitude must be positive')
    if not freqs or any(not (0<f<fs/2) for f in freqs):
        raise ValidationFailure(f"Bode frequencies must lie in (0, {fs/2:g}) Hz")
    if not servo.enabled:
        raise ValidationFailure('Bode measurement needs a closed loop, all gains are zero')

    model = LoopModel(cavity, pdh, plant, servo)
    swing = injection_amplitude*np.abs(model.injection_detuning(np.array(freqs)))
    if np.max(swing)>0.5*model.linewidth:
        worst = freqs[int(np.argmax(swing))]
        raise ValidationFailure(f"injection of {injection_amplitude:g} V swings the detuning by "
            f"{np.max(swing):.3g} Hz at {worst:g} Hz, beyond half a linewidth")

    sim = LoopSimulator(cavity, pdh, plant, servo, seed)
    settle = int(round(settle_time*fs))
    _relock(sim, servo, settle)

    points = []
    for f in freqs:
        amplitude = injection_amplitude
        retried = False
        valid = True
        while True:
            n_meas, f_snap = _window(f, fs, min_window, min_periods)
            k = np.arange(settle+n_meas)
            inj = amplitude*np.sin(2*np.pi*f_snap*k/fs)
            rec = sim.run(k.size, injection=inj, record=True)
            if np.all(rec['state']==LockState.LOCKED):
                break
            _relock(sim, servo, settle)
            if retried:
                logger.warning("lock lost twice while measuring %.6g Hz, point flagged invalid", f)
                valid = False
                break
            logger.warning("lock lost while measuring %.6g Hz, retrying at half amplitude", f)
            retried = True
            amplitude = 0.5*amplitude

        err = _demodulate(rec['error'][settle:], f_snap, fs)
        ref = _demodulate(inj[settle:], f_snap, fs)
        H = err/ref
        H_model = complex(model.injection_response(f_snap))
        points.append(BodePoint(
            f_hz=f_snap,
            requested_f_hz=f,
            gain_db=20*np.log10(abs(H)),
            phase_deg=float(np.degrees(np.angle(H))),
            model_gain_db=20*np.log10(abs(H_model)),
            model_phase_deg=float(np.degrees(np.angle(H_model))),
            amplitude=amplitude,
            retried=retried,
            valid=valid,
        ))
        logger.debug("bode %.6g Hz: %.3f dB", f_snap, points[-1].gain_db)

    digest = config_hash(cavity, pdh, plant, servo, {'seed': seed})
    return(BodeResult(points=points, injection_amplitude=injection_amplitude, config_hash=digest))
# --------------------
