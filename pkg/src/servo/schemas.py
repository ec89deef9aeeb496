'''
This module contains the schemas of the digital
servo and of the lock and Bode measurement reports.\n
Copyright (c) 2017 Aimirim STI.\n
## Dependencies are:
* pydantic
'''

# Import system libs
from enum import IntEnum
from typing import Dict, List, Optional, Tuple
import numpy as np
from pydantic import BaseModel, validator, root_validator

# Import custom libs
from ..trace.schemas import Trace

#######################################

class LockState(IntEnum):
    SCAN = 0
    ENGAGE = 1
    LOCKED = 2

class RampDrive(BaseModel):
    ''' Triangular scan drive, amplitude in V and frequency in Hz.\n
    '''
    amplitude: float = 5.0
    frequency: float = 50.0

    class Config:
        allow_mutation = False
        extra = 'forbid'

    @validator('amplitude')
    def _amplitude(cls, val):
        if not (np.isfinite(val) and val>=0):
            raise ValueError('ramp amplitude must not be negative')
        return(val)

    @validator('frequency')
    def _frequency(cls, val):
        if not (np.isfinite(val) and val>0):
            raise ValueError('ramp frequency must be positive')
        return(val)

class ServoConfig(BaseModel):
    ''' Digital PID and lock acquisition settings. Gains act on the error
    in volts, `ki` in 1/s and `kd` in s.\n
    '''
    sample_rate_fs: float = 1e6
    kp: float
    ki: float
    kd: float = 0.0
    polarity: int = 1
    output_limits: Tuple[float, float] = (-5.0, 5.0)
    integrator_clamp: float = 5.0
    lock_engage_threshold: float = 0.5
    unlock_threshold: float = 0.2
    engage_samples: int = 50
    unlock_samples: int = 100
    scan_ramp: RampDrive = RampDrive()
    initial_detuning_fsr: float = 0.3

    class Config:
        allow_mutation = False
        extra = 'forbid'

    @validator('sample_rate_fs', 'integrator_clamp')
    def _positive(cls, val, field):
        if not (np.isfinite(val) and val>0):
            raise ValueError(f"{field.name} must be positive")
        return(val)

    @validator('kp', 'ki', 'kd')
    def _gain(cls, val, field):
        if not (np.isfinite(val) and val>=0):
            raise ValueError(f"{field.name} must be finite and not negative")
        return(val)

    @validator('polarity')
    def _polarity(cls, val):
        if val not in (-1, 1):
            raise ValueError('polarity must be +1 or -1')
        return(val)

    @validator('output_limits')
    def _limits(cls, val):
        if not (np.all(np.isfinite(val)) and val[0]<val[1]):
            raise ValueError('output_limits must be [V_min, V_max] with V_min < V_max')
        return(val)

    @validator('lock_engage_threshold', 'unlock_threshold')
    def _threshold(cls, val, field):
        if not (0<val<1):
            raise ValueError(f"{field.name} must lie in (0,1)")
        return(val)

    @validator('engage_samples', 'unlock_samples')
    def _count(cls, val, field):
        if (val<1):
            raise ValueError(f"{field.name} must be at least 1")
        return(val)

    @validator('initial_detuning_fsr')
    def _detuning(cls, val):
        if not (-0.5<=val<=0.5):
            raise ValueError('initial_detuning_fsr must lie in [-0.5, 0.5]')
        return(val)

    @root_validator(skip_on_failure=True)
    def _thresholds(cls, values):
        if not (values['lock_engage_threshold']>values['unlock_threshold']):
            raise ValueError('lock_engage_threshold must exceed unlock_threshold')
        return(values)

    @property
    def enabled(self) -> bool:
        return(self.kp!=0 or self.ki!=0 or self.kd!=0)

class LockReport(BaseModel):
    lock_acquired: bool
    time_to_lock: Optional[float]
    locked_fraction: float
    residual_error: Optional[Trace]
    residual_displacement: Optional[Trace]
    rms_displacement: float
    residual_rms_band: float
    saturation_events: int
    relock_count: int
    final_state: str
    state_counts: Dict[str, int]
    duration: float
    seed: int
    config_hash: str

    def summary(self) -> dict:
        ''' Report without the trace payloads, for the json file.\n '''
        return(self.dict(exclude={'residual_error', 'residual_displacement'}))

class LockRun(BaseModel):
    report: LockReport
    traces: Dict[str, Trace]

class BodePoint(BaseModel):
    f_hz: float
    requested_f_hz: float
    gain_db: float
    phase_deg: float
    model_gain_db: float
    model_phase_deg: float
    amplitude: float
    retried: bool = False
    valid: bool = True

class BodeResult(BaseModel):
    points: List[BodePoint]
    injection_amplitude: float
    config_hash: str
