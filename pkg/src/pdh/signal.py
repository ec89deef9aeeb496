'''
Pound-Drever-Hall error signal, sideband transmission
and synthetic cavity scans.\n
Copyright (c) 2017 Aimirim STI.\n
## Dependencies are:
* numpy
* scipy
'''

# Import system libs
import logging
import numpy as np
from scipy.special import jv

# Import custom libs
from ..env import Enviroment as Env
from ..cavity.schemas import CavityConfig
from ..cavity import optics
from ..trace.schemas import Trace
from .schemas import PdhConfig, ScanRamp, ScanResult

#######################################

logger = logging.getLogger(__name__)

# --------------------
def sideband_amplitudes(pdh:PdhConfig):
    ''' Bessel amplitudes of carrier and first sidebands.\n
    `pdh` (PdhConfig): Modulation settings.\n
    return (J0, J1) (float, float): Field amplitudes.\n
    '''
    beta = pdh.modulation_depth_beta
    return(float(jv(0,beta)), float(jv(1,beta)))
# --------------------

# --------------------
def error_signal(cavity:CavityConfig, pdh:PdhConfig, detuning, rng:np.random.Generator=None):
    ''' Demodulated PDH error signal.\n
    `cavity` (CavityConfig): Cavity parameters.\n
    `pdh` (PdhConfig): Modulation settings.\n
    `detuning` (float|array): Carrier detuning in Hz.\n
    `rng` (Generator): Source of detector noise, none means noiseless.\n
    return `error` (float|array): Error signal in volts.\n
    '''
    delta = np.asarray(detuning, dtype=float)
    omega = pdh.modulation_frequency_Omega
    j0, j1 = sideband_amplitudes(pdh)
    F0 = optics.reflection_coefficient(cavity, delta)
    Fp = optics.reflection_coefficient(cavity, delta+omega)
    Fm = optics.reflection_coefficient(cavity, delta-omega)
    beat = F0*np.conj(Fp) - np.conj(F0)*Fm
    error = pdh.detector_gain*2*j0*j1*np.imag(beat)
    if (rng is not None and pdh.detector_noise_rms>0):
        error = error + rng.normal(0.0, pdh.detector_noise_rms, size=np.shape(error))
    return(error)
# --------------------

# --------------------
def error_slope(cavity:CavityConfig, pdh:PdhConfig) -> float:
    ''' Analytic slope of the error signal at resonance.\n
    `cavity` (CavityConfig): Cavity parameters.\n
    `pdh` (PdhConfig): Modulation settings.\n
    return `slope` (float): d(error)/d(delta) at 0 in V/Hz.\n
    '''
    omega = pdh.modulation_frequency_Omega
    j0, j1 = sideband_amplitudes(pdh)
    F0 = optics.reflection_coefficient(cavity, 0.0)
    Fp = optics.reflection_coefficient(cavity, omega)
    Fm = optics.reflection_coefficient(cavity, -omega)
    dF0 = optics.reflection_derivative(cavity, 0.0)
    dFp = optics.reflection_derivative(cavity, omega)
    dFm = optics.reflection_derivative(cavity, -omega)
    d_beat = (dF0*np.conj(Fp) + F0*np.conj(dFp)
        - np.conj(dF0)*Fm - np.conj(F0)*dFm)
    return(float(pdh.detector_gain*2*j0*j1*np.imag(d_beat)))
# --------------------

# --------------------
def transmission_signal(cavity:CavityConfig, pdh:PdhConfig, detuning):
    ''' Transmitted power of carrier plus sidebands, normalized so the
    carrier on resonance reads 1.\n
    `cavity` (CavityConfig): Cavity parameters.\n
    `pdh` (PdhConfig): Modulation settings.\n
    `detuning` (float|array): Carrier detuning in Hz.\n
    return `signal` (float|array): Normalized transmission.\n
    '''
    delta = np.asarray(detuning, dtype=float)
    omega = pdh.modulation_frequency_Omega
    j0, j1 = sideband_amplitudes(pdh)
    peak = optics.transmission(cavity, 0.0)
    total = (j0**2*optics.transmission(cavity, delta)
        + j1**2*(optics.transmission(cavity, delta+omega) + optics.transmission(cavity, delta-omega)))
    return(total/(j0**2*peak))
# --------------------

# --------------------
def _carriers_in(start:float, stop:float, free_range:float, margin:float=0.0) -> int:
    ''' Resonances k FSR with k FSR +- margin inside the sweep.\n '''
    lo, hi = min(start,stop)+margin, max(start,stop)-margin
    if hi<lo:
        return(0)
    return(max(int(np.floor(hi/free_range) - np.ceil(lo/free_range) + 1), 0))
# --------------------

# --------------------
def scan_spectrum(cavity:CavityConfig, pdh:PdhConfig, ramp:ScanRamp, seed:int=0) -> ScanResult:
    ''' Sweep the detuning linearly and record transmission and error.\n
    `cavity` (CavityConfig): Cavity parameters.\n
    `pdh` (PdhConfig): Modulation settings.\n
    `ramp` (ScanRamp): Detuning sweep.\n
    `seed` (int): Seed of the detector noise.\n
    return `scan` (ScanResult): Both traces on one time base.\n
    '''
    n = ramp.n_samples
    t = np.arange(n)/ramp.sample_rate
    delta = ramp.start + ramp.rate*t

    rng = np.random.Generator(np.random.PCG64(seed))
    error = error_signal(cavity, pdh, delta, rng)
    trans = transmission_signal(cavity, pdh, delta)

    free_range = optics.fsr(cavity)
    carriers = _carriers_in(ramp.start, delta[-1], free_range)
    triplets = _carriers_in(ramp.start, delta[-1], free_range, pdh.modulation_frequency_Omega)
    crosses = triplets>=1
    if carriers<1:
        logger.warning("scan from %.6g Hz to %.6g Hz never crosses a resonance",
            ramp.start, delta[-1])
    elif not crosses:
        logger.warning("scan from %.6g Hz to %.6g Hz misses the sidebands at +-%.6g Hz",
            ramp.start, delta[-1], pdh.modulation_frequency_Omega)

    meta = {
        'seed': str(seed),
        'rng': Env.RNG_NAME,
        'scan_start_hz': repr(ramp.start),
        'scan_rate_hz_per_s': repr(ramp.rate),
        'modulation_frequency_hz': repr(pdh.modulation_frequency_Omega),
    }
    result = ScanResult(
        transmission=Trace(values=trans, sample_rate=ramp.sample_rate, units='normalized', metadata=meta),
        error=Trace(values=error, sample_rate=ramp.sample_rate, units='V', metadata=meta),
        ramp=ramp,
        crosses_resonance=crosses,
        carriers_in_range=carriers,
        triplets_in_range=triplets,
    )
    return(result)
# --------------------
