'''
This module contains the schemas of the
analysis reports: spectra, fits, calibrations and loss budgets.\n
Copyright (c) 2017 Aimirim STI.\n
## Dependencies are:
* numpy
* pydantic
'''

# Import system libs
from typing import Dict, List, Optional
import numpy as np
from pydantic import BaseModel, validator

# Import custom libs
from ..trace.schemas import Trace

#######################################

class AsdTable(BaseModel):
    ''' One sided amplitude spectral density in units/sqrt(Hz).\n
    '''
    f: np.ndarray
    asd: np.ndarray
    units: str
    window: str = 'hann'
    nperseg: int
    noverlap: int
    sample_rate: float
    parseval_ratio: Optional[float]
    metadata: Dict[str, str] = {}

    class Config:
        arbitrary_types_allowed = True

    @validator('f', 'asd', pre=True)
    def _as_array(cls, val):
        arr = np.asarray(val, dtype=float)
        if (arr.ndim!=1):
            raise ValueError('spectrum columns must be one dimensional')
        return(arr)

    @property
    def df(self) -> float:
        return(self.sample_rate/self.nperseg)

class LorentzPeak(BaseModel):
    ''' Peak position and width in seconds of the scan time axis.\n '''
    center: float
    fwhm: float
    height: float

class LorentzFit(BaseModel):
    peaks: List[LorentzPeak]
    residual_norm: float
    std_errors: List[float]

class ScanFit(BaseModel):
    fsr: Optional[float]
    finesse: Optional[float]
    linewidth: float
    axis_calibration: float
    modulation_frequency: float
    carrier_count: int
    sidebands_found: bool
    sideband_ratio: float
    carriers: List[LorentzPeak]
    sidebands: List[LorentzPeak]
    residual_norm: float
    diagnostics: Dict[str, float] = {}
    metadata: Dict[str, str] = {}

class ErrorCalibration(BaseModel):
    ''' Fit of A tanh((t - t0)/w) + offset on the central slope.\n '''
    amplitude: float
    offset: float
    center_s: float
    width_s: float
    center_hz: float
    width_hz: float
    linear_range_hz: float
    slope_v_per_hz: float
    residual_norm: float
    metadata: Dict[str, str] = {}

class DisplacementResult(BaseModel):
    trace: Trace
    length_scale: float
    clipped: int
    rms: float

class IfmCalibration(BaseModel):
    ''' Fringe fit y = A sin(2 pi f t + phi) + D.\n '''
    amplitude: float
    frequency: float
    phase: float
    offset: float
    residual_norm: float
    std_errors: List[float] = []
    metadata: Dict[str, str] = {}

class LossBudget(BaseModel):
    mirror_loss: float
    scattering_single_pass: float
    scattering_roundtrip: float
    clipping: float
    absorption: float
    interface: float
    total: float
    implied_finesse: float
    measured_finesse: Optional[float]
    implied_alpha: Optional[float]
    over_explained: bool = False
    absorption_base: str = 'decadic'
