'''
Preset tables, one per configuration type.\n
Copyright (c) 2017 Aimirim STI.\n
'''

# Import custom libs
from ..cavity.schemas import CavityConfig
from ..pdh.schemas import PdhConfig, ScanPreset
from ..vibration.schemas import NoiseSpec
from ..plant.schemas import PlantConfig
from ..servo.schemas import ServoConfig
from ..scenario.schemas import Scenario
from .base import Tpreset

#######################################

class Tcavity(Tpreset):
    SECTION = 'Cavity'
    SCHEMA = CavityConfig

class Tpdh(Tpreset):
    SECTION = 'Pdh'
    SCHEMA = PdhConfig

class Tscan(Tpreset):
    SECTION = 'Scan'
    SCHEMA = ScanPreset

class Tnoise(Tpreset):
    SECTION = 'Noise'
    SCHEMA = NoiseSpec

class Tplant(Tpreset):
    SECTION = 'Plant'
    SCHEMA = PlantConfig

class Tservo(Tpreset):
    SECTION = 'Servo'
    SCHEMA = ServoConfig

class Tscenario(Tpreset):
    ''' Scenario presets. The entry name is the scenario name.\n
    '''
    SECTION = 'Scenario'
    SCHEMA = Scenario

    # --------------------
    @classmethod
    def get_defaults(cls, name:str) -> Scenario:
        raw = cls.get_raw(name)
        raw['name'] = name
        return(Scenario.parse_obj(raw))
    # --------------------
