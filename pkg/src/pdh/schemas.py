'''
This module contains the schemas of the
phase modulation and of the cavity scans.\n
Copyright (c) 2017 Aimirim STI.\n
## Dependencies are:
* pydantic
* scipy
'''

# Import system libs
import numpy as np
from scipy.special import jv
from pydantic import BaseModel, validator, root_validator

# Import custom libs
from ..trace.schemas import Trace

#######################################

class PdhConfig(BaseModel):
    ''' Phase modulation and detection chain.\n
    '''
    modulation_frequency_Omega: float = 150e6
    modulation_depth_beta: float = 0.3
    detector_gain: float = 1.0
    detector_noise_rms: float = 0.0

    class Config:
        allow_mutation = False
        extra = 'forbid'

    @validator('modulation_frequency_Omega')
    def _omega(cls, val):
        if not (np.isfinite(val) and val>0):
            raise ValueError('modulation_frequency_Omega must be positive')
        return(val)

    @validator('modulation_depth_beta', 'detector_noise_rms')
    def _non_negative(cls, val, field):
        if not (np.isfinite(val) and val>=0):
            raise ValueError(f"{field.name} must not be negative")
        return(val)

    @validator('detector_gain')
    def _gain(cls, val):
        if not (np.isfinite(val) and val!=0):
            raise ValueError('detector_gain must be finite and non zero')
        return(val)

    @root_validator(skip_on_failure=True)
    def _powers(cls, values):
        beta = values['modulation_depth_beta']
        if (jv(0,beta)**2 + 2*jv(1,beta)**2 > 1+1e-12):
            raise ValueError('carrier and sideband powers exceed unity')
        return(values)

    @property
    def carrier_power(self) -> float:
        return(float(jv(0,self.modulation_depth_beta)**2))

    @property
    def sideband_power(self) -> float:
        return(float(jv(1,self.modulation_depth_beta)**2))

class ScanRamp(BaseModel):
    ''' Linear detuning sweep, the rising half of a triangular drive.\n
    '''
    start: float
    stop: float
    duration: float
    sample_rate: float

    class Config:
        allow_mutation = False
        extra = 'forbid'

    @validator('duration', 'sample_rate')
    def _positive(cls, val, field):
        if not (np.isfinite(val) and val>0):
            raise ValueError(f"{field.name} must be positive")
        return(val)

    @root_validator(skip_on_failure=True)
    def _span(cls, values):
        if (values['start']==values['stop']):
            raise ValueError('scan start and stop must differ')
        if (round(values['duration']*values['sample_rate'])<2):
            raise ValueError('scan needs at least two samples')
        return(values)

    @property
    def n_samples(self) -> int:
        return(int(round(self.duration*self.sample_rate)))

    @property
    def rate(self) -> float:
        ''' Detuning sweep rate in Hz/s.\n '''
        return((self.stop-self.start)/self.duration)

    @classmethod
    def across(cls, fsr:float, start_fsr:float, stop_fsr:float, duration:float, sample_rate:float):
        ''' Build a ramp with start and stop given in units of FSR.\n '''
        return(cls(start=start_fsr*fsr, stop=stop_fsr*fsr, duration=duration, sample_rate=sample_rate))

class ScanResult(BaseModel):
    ''' `crosses_resonance` holds when at least one carrier is swept
    together with both of its sidebands.\n
    '''
    transmission: Trace
    error: Trace
    ramp: ScanRamp
    crosses_resonance: bool
    carriers_in_range: int
    triplets_in_range: int = 0

class ScanPreset(BaseModel):
    ''' Scan ramp with start and stop in units of FSR.\n
    '''
    start_fsr: float
    stop_fsr: float
    duration: float
    sample_rate: float

    def ramp(self, fsr:float) -> ScanRamp:
        return(ScanRamp.across(fsr, self.start_fsr, self.stop_fsr, self.duration, self.sample_rate))
