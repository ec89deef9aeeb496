'''
Shared fixtures of the test suite.\n
Copyright (c) 2017 Aimirim STI.\n
## Dependencies are:
* pytest
'''

# Import system libs
import pytest

# Import custom libs
from src.presets import Tcavity, Tpdh, Tnoise, Tplant, Tservo
from src.vibration.schemas import NoiseSpec, AsdSegment
from src.plant.schemas import PlantConfig

#######################################

@pytest.fixture
def bare():
    return(Tcavity.get_defaults('bare'))

@pytest.fixture
def diamond():
    return(Tcavity.get_defaults('diamond'))

@pytest.fixture
def pdh():
    return(Tpdh.get_defaults('default'))

@pytest.fixture
def bare_plant():
    return(Tplant.get_defaults('bare'))

@pytest.fixture
def stiff_plant(bare_plant):
    ''' Same actuator without mechanical modes.\n '''
    return(PlantConfig(piezo_gain=bare_plant.piezo_gain, voltage_range=bare_plant.voltage_range,
        modes=[], loop_delay=bare_plant.loop_delay))

@pytest.fixture
def bare_servo():
    return(Tservo.get_defaults('bare'))

@pytest.fixture
def mk15_on():
    return(Tnoise.get_defaults('mk15-pt-on'))

@pytest.fixture
def quiet():
    ''' Spectrum without any motion.\n '''
    return(NoiseSpec())

@pytest.fixture
def flat_noise():
    ''' White 10 pm/sqrt(Hz) up to 100 kHz.\n '''
    return(NoiseSpec(segments=[AsdSegment(f_lo=0.0, f_hi=1e5, asd_at_f_lo=1e-11, exponent_p=0.0)],
        floor_asd=0.0))
