'''
Spectral estimation: Welch amplitude spectral density
and band limited rms.\n
Copyright (c) 2017 Aimirim STI.\n
## Dependencies are:
* numpy
* scipy
'''

# Import system libs
import logging
from typing import Union
import numpy as np
from scipy import signal

# Import custom libs
from ..errors import ValidationFailure
from ..trace.schemas import Trace
from .schemas import AsdTable

#######################################

logger = logging.getLogger(__name__)

# --------------------
def compute_asd(trace:Trace, window:str='hann', segments:int=8, overlap:float=0.5,
                segment_length:int=None) -> AsdTable:
    ''' Welch averaged one sided ASD.\n
    `trace` (Trace): Uniformly sampled input.\n
    `window` (str): Window name understood by scipy.\n
    `segments` (int): Number of averaged segments, used when
    `segment_length` is not given.\n
    `overlap` (float): Segment overlap fraction in [0,1).\n
    `segment_length` (int): Samples per segment.\n
    return `table` (AsdTable): Frequencies, ASD and Parseval check.\n
    '''
    if not (0<=overlap<1):
        raise ValidationFailure(f"overlap must lie in [0,1), got {overlap}")
    if segment_length is None:
        if (segments<1):
            raise ValidationFailure('segments must be at least 1')
        segment_length = int(trace.n/(1+(segments-1)*(1-overlap)))
    if (segment_length<2 or trace.n<segment_length):
        raise ValidationFailure(f"trace of {trace.n} samples is shorter than the segment length {segment_length}")
    noverlap = int(overlap*segment_length)

    try:
        f, psd = signal.welch(trace.values, fs=trace.sample_rate, window=window,
            nperseg=segment_length, noverlap=noverlap, detrend='constant', scaling='density')
    except ValueError as exc:
        raise ValidationFailure(f"invalid spectral settings: {exc}")

    variance = float(np.var(trace.values))
    power = float(np.sum(psd)*trace.sample_rate/segment_length)
    ratio = power/variance if variance>0 else None
    if ratio is not None and abs(ratio-1)>0.05:
        logger.info("Welch power is %.4g of the trace variance", ratio)

    meta = dict(trace.metadata)
    meta.update({'window': window, 'nperseg': str(segment_length), 'noverlap': str(noverlap)})
    return(AsdTable(f=f, asd=np.sqrt(psd), units=f"{trace.units}/sqrt(Hz)", window=window,
        nperseg=segment_length, noverlap=noverlap, sample_rate=trace.sample_rate,
        parseval_ratio=ratio, metadata=meta))
# --------------------

# --------------------
def rms_band(source:Union[Trace,AsdTable], f_lo:float, f_hi:float) -> float:
    ''' rms within [f_lo, f_hi], edges included.\n
    `source` (Trace|AsdTable): A trace (periodogram, exact Parseval) or a
    spectrum.\n
    `f_lo` (float): Band start in Hz.\n
    `f_hi` (float): Band end in Hz.\n
    return `rms` (float): Band limited rms in the source units.\n
    '''
    if not (np.isfinite(f_lo) and np.isfinite(f_hi) and 0<=f_lo<=f_hi):
        raise ValidationFailure(f"invalid band [{f_lo}, {f_hi}]")
    if isinstance(source, Trace):
        if (source.n<2):
            raise ValidationFailure('rms_band needs at least two samples')
        f, psd = signal.periodogram(source.values, fs=source.sample_rate, window='boxcar',
            detrend='constant', scaling='density')
        df = source.sample_rate/source.n
    else:
        f, psd = source.f, source.asd**2
        df = source.df
    band = (f>=f_lo) & (f<=f_hi)
    return(float(np.sqrt(np.sum(psd[band])*df)))
# --------------------

# --------------------
def asd_columns(table:AsdTable):
    ''' Columns and header of the ASD CSV form.\n
    return (columns, metadata) (dict, dict).\n
    '''
    meta = dict(table.metadata)
    meta.update({
        'units': table.units,
        'window': table.window,
        'nperseg': str(table.nperseg),
        'noverlap': str(table.noverlap),
        'sample_rate_hz': repr(float(table.sample_rate)),
        'parseval_ratio': repr(table.parseval_ratio),
    })
    return({'f_hz': table.f, 'asd': table.asd}, meta)
# --------------------

# --------------------
def asd_from_columns(meta:dict, columns:dict) -> AsdTable:
    ''' Rebuild an AsdTable from its CSV form.\n '''
    try:
        ratio = meta.get('parseval_ratio', 'None')
        known = ('units', 'window', 'nperseg', 'noverlap', 'sample_rate_hz', 'parseval_ratio')
        return(AsdTable(f=columns['f_hz'], asd=columns['asd'], units=meta.get('units', ''),
            window=meta.get('window', 'hann'), nperseg=int(meta['nperseg']),
            noverlap=int(meta.get('noverlap', 0)), sample_rate=float(meta['sample_rate_hz']),
            parseval_ratio=None if ratio=='None' else float(ratio),
            metadata={k:v for k,v in meta.items() if k not in known}))
    except (KeyError, ValueError) as exc:
        raise ValidationFailure(f"incomplete ASD table: {exc}")
# --------------------
