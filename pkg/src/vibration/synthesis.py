'''
Evaluation of the parameterized displacement spectrum
and seeded inverse spectral synthesis of time traces.\n
Copyright (c) 2017 Aimirim STI.\n
## Dependencies are:
* numpy
* scipy
'''

# Import system libs
import logging
from typing import Iterable
import numpy as np
from scipy import integrate

# Import custom libs
from ..env import Enviroment as Env
from ..errors import ValidationFailure
from ..trace.schemas import Trace
from .schemas import NoiseSpec, AsdPeak

#######################################

logger = logging.getLogger(__name__)

# --------------------
def asd_model(spec:NoiseSpec, f):
    ''' Evaluate max(floor, segment) + peaks.\n
    `spec` (NoiseSpec): Spectrum parameters.\n
    `f` (float|array): Frequency in Hz, not negative.\n
    return `asd` (float|array): Amplitude spectral density in m/sqrt(Hz).\n
    '''
    freq = np.asarray(f, dtype=float)
    if np.any(~np.isfinite(freq)) or np.any(freq<0):
        raise ValidationFailure('asd_model needs finite non negative frequencies')

    seg = np.zeros_like(freq)
    for s in spec.segments:
        mask = (freq>=s.f_lo) & (freq<s.f_hi)
        if not np.any(mask):
            continue
        if (s.exponent_p==0 or s.f_lo==0):
            seg[mask] = s.asd_at_f_lo
        else:
            seg[mask] = s.asd_at_f_lo*(freq[mask]/s.f_lo)**s.exponent_p
    asd = np.maximum(spec.floor_asd, seg)

    for p in spec.peaks:
        asd = asd + p.peak_asd/(1.0 + (2*p.quality_q*(freq-p.f0)/p.f0)**2)

    if np.ndim(f)==0:
        return(float(asd))
    return(asd)
# --------------------

# --------------------
def with_peaks(spec:NoiseSpec, peaks:Iterable) -> NoiseSpec:
    ''' Add resonance lines to a spectrum.\n
    `spec` (NoiseSpec): Base spectrum.\n
    `peaks` (list): AsdPeak or dicts with f0, peak_asd, quality_q.\n
    return `spec` (NoiseSpec): New spectrum with the extra lines.\n
    '''
    extra = [p if isinstance(p, AsdPeak) else AsdPeak(**p) for p in peaks]
    return(NoiseSpec(segments=spec.segments, peaks=list(spec.peaks)+extra,
        floor_asd=spec.floor_asd, floor_is_instrumental=spec.floor_is_instrumental,
        seed=spec.seed))
# --------------------

# --------------------
def band_rms(spec:NoiseSpec, f_lo:float, f_hi:float) -> float:
    ''' Model rms in a frequency band, sqrt of the integral of ASD^2.\n
    `spec` (NoiseSpec): Spectrum parameters.\n
    `f_lo` (float): Band start in Hz.\n
    `f_hi` (float): Band end in Hz, finite.\n
    return `rms` (float): Displacement rms in m.\n
    '''
    if not (np.isfinite(f_hi) and 0<=f_lo<f_hi):
        raise ValidationFailure(f"invalid band [{f_lo}, {f_hi}]")
    edges = {f_lo, f_hi}
    edges.update(s.f_lo for s in spec.segments if f_lo<s.f_lo<f_hi)
    edges.update(p.f0 for p in spec.peaks if f_lo<p.f0<f_hi)
    edges = sorted(edges)

    power = 0.0
    for a,b in zip(edges[:-1], edges[1:]):
        val, _ = integrate.quad(lambda x: asd_model(spec, x)**2, a, b, limit=400)
        power += val
    return(float(np.sqrt(power)))
# --------------------

# --------------------
def synthesize(spec:NoiseSpec, duration:float, sample_rate:float, seed:int=None) -> Trace:
    ''' Build a displacement trace whose spectrum follows `spec`.\n
    Bin k of the one sided spectrum gets magnitude N ASD(f_k) sqrt(df/2)
    and a uniform random phase. DC and Nyquist bins stay empty.\n
    `spec` (NoiseSpec): Spectrum parameters.\n
    `duration` (float): Trace length in s.\n
    `sample_rate` (float): Sample rate in Hz.\n
    `seed` (int): Generator seed, defaults to `spec.seed`.\n
    return `trace` (Trace): Displacement in m.\n
    '''
    if not (np.isfinite(duration) and np.isfinite(sample_rate) and sample_rate>0 and duration>0):
        raise ValidationFailure('duration and sample_rate must be positive and finite')
    n = int(round(duration*sample_rate))
    if (n<2):
        raise ValidationFailure(f"synthesis needs at least 2 samples, got {n}")
    seed = spec.seed if seed is None else int(seed)

    df = sample_rate/n
    freq = np.fft.rfftfreq(n, d=1.0/sample_rate)
    rng = np.random.Generator(np.random.PCG64(seed))
    phase = 2*np.pi*rng.random(freq.size)

    mag = np.zeros(freq.size)
    mag[1:] = n*asd_model(spec, freq[1:])*np.sqrt(df/2)
    if (n%2==0):
        mag[-1] = 0.0
    bins = np.exp(1j*phase)
    bins *= mag
    values = np.fft.irfft(bins, n=n)

    logger.debug("synthesized %d samples at %.6g Hz with seed %d", n, sample_rate, seed)
    meta = {'seed': str(seed), 'rng': Env.RNG_NAME}
    return(Trace(values=values, sample_rate=sample_rate, units='m', metadata=meta))
# --------------------
