'''
This module contains the schemas of the
parameterized displacement noise spectrum.\n
Copyright (c) 2017 Aimirim STI.\n
## Dependencies are:
* pydantic
'''

# Import system libs
from typing import List
import numpy as np
from pydantic import BaseModel, validator

#######################################

class AsdSegment(BaseModel):
    ''' Power law piece, ASD = asd_at_f_lo * (f/f_lo)^p on [f_lo, f_hi).\n
    '''
    f_lo: float
    f_hi: float
    asd_at_f_lo: float
    exponent_p: float = 0.0

    class Config:
        allow_mutation = False
        extra = 'forbid'

    @validator('f_hi')
    def _ordered(cls, val, values):
        if 'f_lo' in values and not (val>values['f_lo']):
            raise ValueError('segment f_hi must exceed f_lo')
        return(val)

    @validator('f_lo', 'asd_at_f_lo')
    def _non_negative(cls, val, field):
        if not (np.isfinite(val) and val>=0):
            raise ValueError(f"{field.name} must be finite and not negative")
        return(val)

    @validator('exponent_p')
    def _exponent(cls, val, values):
        if not np.isfinite(val):
            raise ValueError('exponent_p must be finite')
        if values.get('f_lo')==0 and val!=0 and values.get('asd_at_f_lo',0)>0:
            raise ValueError('a segment starting at 0 Hz must be flat')
        return(val)

class AsdPeak(BaseModel):
    ''' Resonance line with amplitude peak_asd / (1 + (2q(f-f0)/f0)^2).\n
    '''
    f0: float
    peak_asd: float
    quality_q: float

    class Config:
        allow_mutation = False
        extra = 'forbid'

    @validator('f0', 'quality_q')
    def _positive(cls, val, field):
        if not (np.isfinite(val) and val>0):
            raise ValueError(f"{field.name} must be positive")
        return(val)

    @validator('peak_asd')
    def _non_negative(cls, val):
        if not (np.isfinite(val) and val>=0):
            raise ValueError('peak_asd must be finite and not negative')
        return(val)

class NoiseSpec(BaseModel):
    ''' One sided displacement ASD in m/sqrt(Hz).\n
    '''
    segments: List[AsdSegment] = []
    peaks: List[AsdPeak] = []
    floor_asd: float = 0.0
    floor_is_instrumental: bool = True
    seed: int = 0

    class Config:
        allow_mutation = False
        extra = 'forbid'

    @validator('segments')
    def _contiguous(cls, val):
        for prev, nxt in zip(val[:-1], val[1:]):
            if (prev.f_hi!=nxt.f_lo):
                raise ValueError(f"segments not contiguous at {prev.f_hi} Hz / {nxt.f_lo} Hz")
        return(val)

    @validator('floor_asd')
    def _floor(cls, val):
        if not (np.isfinite(val) and val>=0):
            raise ValueError('floor_asd must be finite and not negative')
        return(val)

    def displacement_spec(self):
        ''' Same spectrum without the instrumental floor.\n
        return `spec` (NoiseSpec): Spectrum of the true cavity motion.\n
        '''
        if not self.floor_is_instrumental:
            return(self)
        return(self.copy(update={'floor_asd': 0.0}))
