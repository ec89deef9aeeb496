'''
This module holds the commands of the cavity
feature.\n
Copyright (c) 2017 Aimirim STI.\n
## Dependencies are:
* click
'''

# Import system libs
import click

# Import custom libs
from . import optics
from ..presets import Tcavity
from ..cli import stamp, emit, config_or_preset

#######################################

# --------------------
@click.command()
@click.option('--config', help='Cavity json file.')
@click.option('--preset', help='Cavity preset name.')
@click.option('--out', help='Destination json, stdout when absent.')
def derive(config:str, preset:str, out:str):
    ''' Derive FSR, finesse, linewidth, Q, waist and mode volume of a cavity.\n
    '''
    cavity = config_or_preset(Tcavity, config, preset)
    derived = optics.derive(cavity)
    emit(stamp({'config': cavity, 'derived': derived}, cavity), out)
# --------------------
