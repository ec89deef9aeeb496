'''
This module holds all application settings
that are used by the simulator.\n
Copyright (c) 2017 Aimirim STI.\n
## Dependencies are:
* scipy
'''

# Import system libs
import json
from pathlib import Path
from scipy import constants

# Import custom libs
from . import AppInfo

#######################################

class Enviroment:
    ''' This class hold the set of settings that affect this application.
    The command line reads no environment variables, so every value here is
    either a constant or resolved from the repository layout.\n
    '''
    ROOT_DIR = Path(__file__).resolve().parents[1]
    '''`ROOT_DIR` (Path): Repository root, used to locate the `config` folder.'''

    DEFAULT_FILE = ROOT_DIR / 'config' / 'defaults.json'
    '''`DEFAULT_FILE` (Path): Path to the json file with every shipped preset.
    Default is `"config/defaults.json"`'''

    DEFAULTS = json.loads(DEFAULT_FILE.read_text(encoding='utf-8'))
    '''`DEFAULTS` (json): Loaded presets from DEFAULT_FILE'''

    SPEED_OF_LIGHT = constants.c
    '''`SPEED_OF_LIGHT` (float): Speed of light in vacuum, m/s.'''

    CREATED_BY = f"cavsim {AppInfo.version}"
    '''`CREATED_BY` (str): Provenance tag written in every output file.'''

    RNG_NAME = 'numpy.PCG64'
    '''`RNG_NAME` (str): Name of the seeded generator behind every random draw.
    It is part of the trace file contract.'''

    LOG_FORMAT = '%(levelname)s %(name)s: %(message)s'
    '''`LOG_FORMAT` (str): Format of the log lines written on stderr.'''
