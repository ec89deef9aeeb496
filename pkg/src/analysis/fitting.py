'''
Scan calibration: Lorentzian peak fits, sideband based
axis calibration, tanh fit of the error slope and the conversion of
error signals to cavity length.\n
Copyright (c) 2017 Aimirim STI.\n
## Dependencies are:
* numpy
* scipy
'''

# Import system libs
import logging
import numpy as np
from scipy import optimize, signal

# Import custom libs
from ..errors import ValidationFailure, AnalysisFailure
from ..trace.schemas import Trace
from .schemas import LorentzPeak, LorentzFit, ScanFit, ErrorCalibration, DisplacementResult

#######################################

logger = logging.getLogger(__name__)

TOLERANCE = 1e-9
'''`TOLERANCE` (float): Relative xtol and ftol of every least squares fit.'''

SIDEBAND_MIN_RATIO = 1e-4
'''`SIDEBAND_MIN_RATIO` (float): Sideband to carrier height below which
no sidebands are considered present.'''

# --------------------
def _lorentz(x, center, fwhm, height):
    return(height/(1.0 + (2.0*(x-center)/fwhm)**2))
# --------------------

# --------------------
def least_squares_fit(fun, p0):
    ''' Levenberg-Marquardt fit with the shared tolerances.\n
    return (result, std) (OptimizeResult, ndarray): Solver output and
    parameter standard errors from the Jacobian.\n
    '''
    p0 = np.asarray(p0, dtype=float)
    try:
        res = optimize.least_squares(fun, p0, method='lm', xtol=TOLERANCE, ftol=TOLERANCE,
            max_nfev=200*(p0.size+1))
    except ValueError as exc:
        raise AnalysisFailure(f"fit failed: {exc}")
    if not (res.status>0 and np.all(np.isfinite(res.x))):
        raise AnalysisFailure(f"fit did not converge: {res.message}, residual norm "
            f"{np.linalg.norm(res.fun):.4g}")
    dof = max(res.fun.size-p0.size, 1)
    s_sq = 2*res.cost/dof
    try:
        cov = np.linalg.pinv(res.jac.T @ res.jac)*s_sq
        std = np.sqrt(np.clip(np.diag(cov), 0, None))
    except np.linalg.LinAlgError:
        std = np.full(p0.size, np.nan)
    return(res, std)
# --------------------

# --------------------
def _pick_peaks(y:np.ndarray, prominence:float, count:int=None):
    ''' Prominent peaks, by descending height when a count is requested.\n '''
    idx, _ = signal.find_peaks(y, prominence=prominence)
    if count is not None:
        idx = idx[np.argsort(-y[idx], kind='stable')][:count]
    return(np.sort(idx))
# --------------------

# --------------------
def fit_lorentzians(trace:Trace, n_peaks:int=None, prominence:float=0.05) -> LorentzFit:
    ''' Free fit of a sum of Lorentzians.\n
    `trace` (Trace): Peaked signal.\n
    `n_peaks` (int): Number of peaks, default all above `prominence`.\n
    `prominence` (float): Minimum prominence relative to the maximum.\n
    return `fit` (LorentzFit): Peaks on the trace time axis.\n
    '''
    y = trace.values
    if trace.n<4:
        raise ValidationFailure('trace too short for a peak fit')
    idx = _pick_peaks(y, prominence*np.max(y), n_peaks)
    if idx.size==0 or (n_peaks is not None and idx.size<n_peaks):
        raise AnalysisFailure(f"found {idx.size} peaks, need {n_peaks or 1}")
    widths = signal.peak_widths(y, idx, rel_height=0.5)[0]

    x = np.arange(trace.n, dtype=float)
    p0 = np.ravel([[i, max(w,1.0), y[i]] for i,w in zip(idx, widths)])

    def residual(p):
        model = np.zeros_like(x)
        for c,w,h in p.reshape(-1,3):
            model += _lorentz(x, c, w, h)
        return(model-y)

    res, std = least_squares_fit(residual, p0)
    peaks = [LorentzPeak(center=trace.t0+c*trace.dt, fwhm=abs(w)*trace.dt, height=h)
        for c,w,h in res.x.reshape(-1,3)]
    return(LorentzFit(peaks=peaks, residual_norm=float(np.linalg.norm(res.fun)),
        std_errors=[float(s) for s in std]))
# --------------------

# --------------------
def _fit_triplet(y:np.ndarray, center:int, width:float, offset:float):
    ''' Carrier plus two sidebands sharing one width and one sideband height.\n
    `y` (ndarray): Full transmission samples.\n
    `center` (int): Carrier index guess.\n
    `width` (float): Carrier FWHM guess in samples.\n
    `offset` (float): Sideband offset guess in samples.\n
    return (params, std, norm): [center, fwhm, carrier height, sideband
    height, sideband offset] in samples, standard errors, residual norm.\n
    '''
    half = int(np.ceil(offset + 6*width))
    lo, hi = max(center-half, 0), min(center+half+1, y.size)
    x = np.arange(lo, hi, dtype=float)
    yw = y[lo:hi]

    hc0 = y[center]
    side = int(round(center+offset))
    if side>=y.size:
        side = int(round(center-offset))
    tail = _lorentz(offset, 0.0, width, hc0)
    hs0 = max(y[min(max(side,0),y.size-1)]-tail, SIDEBAND_MIN_RATIO*hc0)

    def residual(p):
        c, w, hc, hs, s = p
        return(_lorentz(x, c, w, hc) + _lorentz(x, c-s, w, hs) + _lorentz(x, c+s, w, hs) - yw)

    res, std = least_squares_fit(residual, [center, width, hc0, hs0, offset])
    params = res.x.copy()
    params[1] = abs(params[1])
    params[4] = abs(params[4])
    return(params, std, float(np.linalg.norm(res.fun)))
# --------------------

# --------------------
def fit_scan(transmission:Trace, modulation_frequency:float, ramp_span:float,
             fsr:float=None) -> ScanFit:
    ''' Fit carrier triplets of a cavity scan and calibrate its axis.\n
    `transmission` (Trace): Scan transmission, detuning linear in time.\n
    `modulation_frequency` (float): Sideband offset in Hz.\n
    `ramp_span` (float): Nominal detuning swept over the trace in Hz.\n
    `fsr` (float): Known FSR in Hz, needed with a single carrier.\n
    return `fit` (ScanFit): FSR, finesse, linewidth and calibration.\n
    '''
    if not (modulation_frequency>0 and np.isfinite(ramp_span) and ramp_span!=0):
        raise ValidationFailure('modulation frequency and ramp span must be positive')
    y = transmission.values
    fs = transmission.sample_rate
    if transmission.n<16:
        raise ValidationFailure('scan too short to fit')

    nominal = abs(ramp_span)/transmission.duration
    carriers = _pick_peaks(y, 0.5*np.max(y))
    if carriers.size==0:
        raise AnalysisFailure('no carrier peak found in the scan')
    width0 = signal.peak_widths(y, carriers, rel_height=0.5)[0]
    offset0 = modulation_frequency/nominal*fs

    fits = []
    norm_sq = 0.0
    for idx, w in zip(carriers, width0):
        params, std, norm = _fit_triplet(y, int(idx), max(float(w),1.0), offset0)
        fits.append((params, std))
        norm_sq += norm**2
    P = np.array([p for p,_ in fits])
    S = np.array([s for _,s in fits])

    ratio = float(np.mean(P[:,3]/P[:,2]))
    found = ratio>SIDEBAND_MIN_RATIO
    if found:
        calibration = modulation_frequency/(np.mean(P[:,4])/fs)
    elif carriers.size>=2:
        calibration = nominal
        logger.warning("no sidebands found, using the nominal ramp rate")
    else:
        raise AnalysisFailure('a single carrier without sidebands cannot calibrate the scan')

    linewidth = float(np.mean(P[:,1])/fs*calibration)
    if carriers.size>=2:
        fsr = float(np.mean(np.diff(P[:,0]))/fs*calibration)
    finesse = fsr/linewidth if fsr else None

    diag = {
        'linewidth_rel_err': float(np.sqrt(np.sum(S[:,1]**2))/len(fits)/np.mean(P[:,1])),
        'calibration_rel_err': float(np.sqrt(np.sum(S[:,4]**2))/len(fits)/np.mean(P[:,4])) if found else 0.0,
    }
    to_s = lambda i: transmission.t0 + i/fs
    carrier_peaks = [LorentzPeak(center=to_s(p[0]), fwhm=p[1]/fs, height=p[2]) for p in P]
    sideband_peaks = []
    if found:
        for p in P:
            sideband_peaks.append(LorentzPeak(center=to_s(p[0]-p[4]), fwhm=p[1]/fs, height=p[3]))
            sideband_peaks.append(LorentzPeak(center=to_s(p[0]+p[4]), fwhm=p[1]/fs, height=p[3]))

    return(ScanFit(
        fsr=fsr,
        finesse=finesse,
        linewidth=linewidth,
        axis_calibration=float(calibration),
        modulation_frequency=modulation_frequency,
        carrier_count=int(carriers.size),
        sidebands_found=found,
        sideband_ratio=ratio,
        carriers=carrier_peaks,
        sidebands=sideband_peaks,
        residual_norm=float(np.sqrt(norm_sq)),
        diagnostics=diag,
        metadata=dict(transmission.metadata),
    ))
# --------------------

# --------------------
def calibrate_error_slope(error:Trace, scan_fit:ScanFit, carrier:int=0) -> ErrorCalibration:
    ''' Fit A tanh((t - t0)/w) + offset between the error extrema around a
    carrier.\n
    `error` (Trace): Error signal of the same scan.\n
    `scan_fit` (ScanFit): Fit of the scan transmission.\n
    `carrier` (int): Index of the carrier to use.\n
    return `cal` (ErrorCalibration): Amplitude, center and width in s and Hz.\n
    '''
    if not (0<=carrier<len(scan_fit.carriers)):
        raise ValidationFailure(f"scan fit has no carrier {carrier}")
    peak = scan_fit.carriers[carrier]
    fs = error.sample_rate
    c = (peak.center-error.t0)*fs
    half = peak.fwhm*fs
    lo = max(int(np.floor(c-half)), 0)
    hi = min(int(np.ceil(c+half))+1, error.n)
    if hi-lo<4:
        raise AnalysisFailure('error trace does not cover the carrier slope')

    window = error.values[lo:hi]
    i_a, i_b = sorted((int(np.argmin(window)), int(np.argmax(window))))
    seg = window[i_a:i_b+1]
    if seg.size<4:
        raise AnalysisFailure('slope region between the error extrema is too short')
    steps = np.diff(seg)
    if not (np.all(steps>0) or np.all(steps<0)):
        raise AnalysisFailure('slope region between the error extrema is not monotone')

    x = np.arange(lo+i_a, lo+i_b+1, dtype=float)
    mid = 0.5*(x[0]+x[-1])
    span = 0.5*(x[-1]-x[0])
    a0 = 0.5*(seg[-1]-seg[0])/np.tanh(2.0)
    k0 = 2.0/span
    # slope s = A/w and inverse width k = 1/w, a straight segment converges to k = 0
    p0 = [a0*k0, mid, k0, 0.5*(seg[-1]+seg[0])]

    def residual(p):
        s, x0, k, off = p
        u = x-x0
        shape = u if k==0 else np.tanh(k*u)/k
        return(s*shape + off - seg)

    res, std = least_squares_fit(residual, p0)
    s, x0, k, off = res.x
    k = np.copysign(max(abs(k), 1e-12/span), k)
    A, w = s/k, 1.0/k
    if w<0:
        A, w = -A, -w

    center_s = error.t0 + x0/fs
    width_s = w/fs
    width_hz = width_s*scan_fit.axis_calibration
    return(ErrorCalibration(
        amplitude=float(A),
        offset=float(off),
        center_s=float(center_s),
        width_s=float(width_s),
        center_hz=float((center_s-peak.center)*scan_fit.axis_calibration),
        width_hz=float(width_hz),
        linear_range_hz=float(width_hz),
        slope_v_per_hz=float(A/width_hz),
        residual_norm=float(np.linalg.norm(res.fun)),
        metadata=dict(error.metadata),
    ))
# --------------------

# --------------------
def length_scale(calibration:ErrorCalibration, linewidth:float, finesse:float, wavelength:float) -> float:
    ''' Length per unit of atanh, (w_hz/linewidth) lambda/(2 finesse).\n '''
    if not (linewidth>0 and finesse>0 and wavelength>0):
        raise ValidationFailure('linewidth, finesse and wavelength must be positive')
    return(calibration.width_hz/linewidth*wavelength/(2*finesse))
# --------------------

# --------------------
def error_to_displacement(error:Trace, calibration:ErrorCalibration, linewidth:float,
                          finesse:float, wavelength:float) -> DisplacementResult:
    ''' Invert the tanh model sample by sample.\n
    `error` (Trace): Error signal in V.\n
    `calibration` (ErrorCalibration): Slope fit.\n
    `linewidth` (float): Cavity linewidth in Hz.\n
    `finesse` (float): Cavity finesse.\n
    `wavelength` (float): Wavelength in m.\n
    return `result` (DisplacementResult): Length trace in m; samples at or
    beyond the tanh amplitude are clipped, counted and left out of `rms`.\n
    '''
    scale = length_scale(calibration, linewidth, finesse, wavelength)
    x = (error.values-calibration.offset)/calibration.amplitude
    clipped = np.abs(x)>=1
    limit = np.nextafter(1.0, 0.0)
    values = scale*np.arctanh(np.clip(x, -limit, limit))

    n_clip = int(np.count_nonzero(clipped))
    if n_clip:
        logger.warning("%d samples beyond the calibrated error range", n_clip)
    good = values[~clipped]
    rms = float(np.std(good)) if good.size else 0.0
    trace = error.with_values(values, units='m', clipped=n_clip)
    return(DisplacementResult(trace=trace, length_scale=scale, clipped=n_clip, rms=rms))
# --------------------
