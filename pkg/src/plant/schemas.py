'''
This module contains the schemas of the
piezo actuator and its mechanical modes.\n
Copyright (c) 2017 Aimirim STI.\n
## Dependencies are:
* pydantic
'''

# Import system libs
from typing import List, Tuple
import numpy as np
from pydantic import BaseModel, validator

#######################################

class MechanicalMode(BaseModel):
    f0: float
    quality_q: float
    modal_weight: float

    class Config:
        allow_mutation = False
        extra = 'forbid'

    @validator('f0', 'quality_q')
    def _positive(cls, val, field):
        if not (np.isfinite(val) and val>0):
            raise ValueError(f"{field.name} must be positive")
        return(val)

    @validator('modal_weight')
    def _weight(cls, val):
        if not (np.isfinite(val) and 0<=val<=1):
            raise ValueError('modal_weight must lie in [0,1]')
        return(val)

class PlantConfig(BaseModel):
    ''' Piezo gain in m/V, voltage range in V, loop delay in s.\n
    '''
    piezo_gain: float
    voltage_range: Tuple[float, float]
    modes: List[MechanicalMode] = []
    loop_delay: float = 2e-6

    class Config:
        allow_mutation = False
        extra = 'forbid'

    @validator('piezo_gain')
    def _gain(cls, val):
        if not (np.isfinite(val) and val>0):
            raise ValueError('piezo_gain must be positive')
        return(val)

    @validator('voltage_range')
    def _range(cls, val):
        if not (np.all(np.isfinite(val)) and val[0]<val[1]):
            raise ValueError('voltage_range must be [V_min, V_max] with V_min < V_max')
        return(val)

    @validator('modes')
    def _normalized(cls, val):
        if sum(m.modal_weight for m in val) > 1+1e-12:
            raise ValueError('modal weights sum above 1, DC gain cannot be normalized')
        return(val)

    @validator('loop_delay')
    def _delay(cls, val):
        if not (np.isfinite(val) and val>=0):
            raise ValueError('loop_delay must not be negative')
        return(val)

    @property
    def direct_weight(self) -> float:
        ''' Share of the response passing without dynamics.\n '''
        return(1.0 - sum(m.modal_weight for m in self.modes))
