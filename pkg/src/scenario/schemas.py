'''
This module contains the schemas of the
measurement scenarios and of their reports.\n
Copyright (c) 2017 Aimirim STI.\n
## Dependencies are:
* pydantic
'''

# Import system libs
from typing import Dict, List, Optional
from pydantic import BaseModel

# Import custom libs
from ..vibration.schemas import AsdPeak

#######################################

class Scenario(BaseModel):
    ''' One measured condition: cavity, vibration, actuator and servo
    presets, with the rms length fluctuation reported for it.\n
    '''
    name: str
    cavity: str
    noise: str
    plant: str
    servo: str
    temperature: str
    pulse_tube: str
    reported_rms: Optional[float]
    extra_peaks: List[AsdPeak] = []

class ScenarioReport(BaseModel):
    scenario: Scenario
    duration: float
    seed: int
    config_hash: str
    created_by: str
    derived: Dict[str, float]
    scan: Dict[str, Optional[float]]
    error_calibration: Dict[str, float]
    lock: Dict
    vibration: Dict[str, float]
    simulated_rms: float
    calibrated_rms: float
    residual_rms_band: float
    reported_rms: Optional[float]
    max_lockable_finesse: Optional[float]
    reported_max_lockable_finesse: Optional[float]
