'''
Interferometric length readout: fringe calibration
by a sine fit and the arcsin conversion to displacement.\n
Copyright (c) 2017 Aimirim STI.\n
## Dependencies are:
* numpy
* scipy
'''

# Import system libs
import logging
import numpy as np

# Import custom libs
from ..errors import ValidationFailure, AnalysisFailure
from ..trace.schemas import Trace
from .fitting import least_squares_fit
from .schemas import IfmCalibration, DisplacementResult

#######################################

logger = logging.getLogger(__name__)

# --------------------
def fringe_scan(calibration:IfmCalibration, duration:float, sample_rate:float) -> Trace:
    ''' Fringe recorded while the mirror moves at constant speed.\n
    `calibration` (IfmCalibration): Fringe amplitude, frequency, phase and
    offset.\n
    `duration` (float): Trace length in s.\n
    `sample_rate` (float): Sample rate in Hz.\n
    return `trace` (Trace): Detector voltage.\n
    '''
    n = int(round(duration*sample_rate))
    if n<4:
        raise ValidationFailure('fringe scan needs at least 4 samples')
    t = np.arange(n)/sample_rate
    c = calibration
    y = c.amplitude*np.sin(2*np.pi*c.frequency*t + c.phase) + c.offset
    return(Trace(values=y, sample_rate=sample_rate, units='V'))
# --------------------

# --------------------
def interferometer_calibrate(scan_fringe:Trace) -> IfmCalibration:
    ''' Fit y = A sin(2 pi f t + phi) + D to a fringe scan.\n
    `scan_fringe` (Trace): At least one full fringe.\n
    return `cal` (IfmCalibration): Fitted parameters, A made positive.\n
    '''
    y = scan_fringe.values
    n = scan_fringe.n
    fs = scan_fringe.sample_rate
    if n<8:
        raise ValidationFailure('fringe trace too short')

    pad = 8*n
    spec = np.fft.rfft(y-np.mean(y), n=pad)
    freq = np.fft.rfftfreq(pad, d=1.0/fs)
    k = int(np.argmax(np.abs(spec[1:])))+1
    f0 = freq[k]
    # the padded guess overestimates short traces, the fitted frequency decides
    if f0*scan_fringe.duration<1:
        raise ValidationFailure('fringe trace spans less than one full fringe')

    t = np.arange(n)/fs
    amp0 = 0.5*(np.max(y)-np.min(y))
    D0 = 0.5*(np.max(y)+np.min(y))
    # phase from projection on the guessed frequency
    proj = np.sum((y-D0)*np.exp(-2j*np.pi*f0*t))
    phi0 = float(np.angle(proj)) + np.pi/2

    def residual(p):
        A, f, phi, D = p
        return(A*np.sin(2*np.pi*f*t + phi) + D - y)

    res, std = least_squares_fit(residual, [amp0, f0, phi0, D0])
    A, f, phi, D = res.x
    if f<0:
        A, f, phi = -A, -f, -phi
    if f*scan_fringe.duration<1:
        raise ValidationFailure(f"fringe trace spans {f*scan_fringe.duration:.3g} fringes, "
            "at least one is needed")
    if A<0:
        A, phi = -A, phi+np.pi
    phi = float(np.angle(np.exp(1j*phi)))
    norm = float(np.linalg.norm(res.fun))
    if norm>0.1*abs(A)*np.sqrt(n):
        raise AnalysisFailure(f"fringe fit residual norm {norm:.4g} is too large")
    return(IfmCalibration(amplitude=float(A), frequency=float(f), phase=phi, offset=float(D),
        residual_norm=norm, std_errors=[float(s) for s in std], metadata=dict(scan_fringe.metadata)))
# --------------------

# --------------------
def interferometer_signal(displacement:Trace, calibration:IfmCalibration, wavelength:float) -> Trace:
    ''' Detector voltage at mid fringe, y = A sin(4 pi x / lambda) + D.\n
    `displacement` (Trace): Mirror displacement in m.\n
    `calibration` (IfmCalibration): Fringe amplitude and offset.\n
    `wavelength` (float): Wavelength in m.\n
    return `signal` (Trace): Voltage trace.\n
    '''
    y = calibration.amplitude*np.sin(4*np.pi*displacement.values/wavelength) + calibration.offset
    return(displacement.with_values(y, units='V'))
# --------------------

# --------------------
def interferometer_convert(signal:Trace, calibration:IfmCalibration, wavelength:float) -> DisplacementResult:
    ''' Displacement arcsin((y - D)/A) lambda / (4 pi), sample by sample.\n
    `signal` (Trace): Detector voltage.\n
    `calibration` (IfmCalibration): Fringe fit.\n
    `wavelength` (float): Wavelength in m.\n
    return `result` (DisplacementResult): Displacement in m; samples beyond
    the fringe amplitude are clipped to one quarter fringe and counted.\n
    '''
    if not (wavelength>0 and calibration.amplitude>0):
        raise ValidationFailure('wavelength and fringe amplitude must be positive')
    x = (signal.values-calibration.offset)/calibration.amplitude
    clipped = np.abs(x)>1
    n_clip = int(np.count_nonzero(clipped))
    if n_clip:
        logger.warning("%d samples outside the fringe, clipped", n_clip)
    values = np.arcsin(np.clip(x, -1.0, 1.0))*wavelength/(4*np.pi)
    good = values[~clipped]
    trace = signal.with_values(values, units='m', clipped=n_clip)
    return(DisplacementResult(trace=trace, length_scale=wavelength/(4*np.pi), clipped=n_clip,
        rms=float(np.std(good)) if good.size else 0.0))
# --------------------
