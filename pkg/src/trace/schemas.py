'''
This module contains the Trace schema, the uniformly
sampled time series exchanged by every module.\n
Copyright (c) 2017 Aimirim STI.\n
## Dependencies are:
* numpy
* pydantic
'''

# Import system libs
from typing import Dict
import numpy as np
from pydantic import BaseModel, validator

#######################################

class Trace(BaseModel):
    ''' Uniformly sampled time series with units and metadata.\n
    '''
    values: np.ndarray
    sample_rate: float
    units: str
    t0: float = 0.0
    metadata: Dict[str, str] = {}

    class Config:
        arbitrary_types_allowed = True

    @validator('values', pre=True)
    def _as_array(cls, val):
        arr = np.asarray(val, dtype=float)
        if (arr.ndim!=1):
            raise ValueError('trace values must be one dimensional')
        if (not np.all(np.isfinite(arr))):
            raise ValueError('trace values must be finite')
        return(arr)

    @validator('sample_rate')
    def _positive_rate(cls, val):
        if (not np.isfinite(val) or val<=0):
            raise ValueError('sample_rate must be positive')
        return(val)

    @property
    def n(self) -> int:
        return(int(self.values.size))

    @property
    def dt(self) -> float:
        return(1.0/self.sample_rate)

    @property
    def duration(self) -> float:
        return(self.n*self.dt)

    @property
    def time(self) -> np.ndarray:
        return(self.t0 + np.arange(self.n)*self.dt)

    # --------------------
    def segment(self, start:int, stop:int):
        ''' Cut a contiguous piece of the trace.\n
        `start` (int): First sample index.\n
        `stop` (int): One past the last sample index.\n
        return `trace` (Trace): The sub trace with shifted `t0`.\n
        '''
        return(Trace(values=self.values[start:stop], sample_rate=self.sample_rate,
            units=self.units, t0=self.t0 + start*self.dt, metadata=dict(self.metadata)))
    # --------------------

    # --------------------
    def with_values(self, values, units:str=None, **metadata):
        ''' Build a trace on the same time base with new values.\n
        `values` (array): New sample values, same length.\n
        `units` (str): New units, defaults to the current ones.\n
        return `trace` (Trace): The new trace, metadata merged.\n
        '''
        meta = dict(self.metadata)
        meta.update({k:str(v) for k,v in metadata.items()})
        return(Trace(values=values, sample_rate=self.sample_rate,
            units=units or self.units, t0=self.t0, metadata=meta))
    # --------------------

    def rms(self) -> float:
        ''' Standard deviation about the mean.\n '''
        if (self.n==0):
            return(0.0)
        return(float(np.std(self.values)))
