'''
This module holds the commands of the vibration
feature.\n
Copyright (c) 2017 Aimirim STI.\n
## Dependencies are:
* click
'''

# Import system libs
import click

# Import custom libs
from . import synthesis
from ..presets import Tnoise
from ..trace.io import config_hash, write_trace
from ..cli import seed_option, config_or_preset

#######################################

# --------------------
@click.command()
@click.option('--preset', help='Noise preset name.')
@click.option('--spec', help='NoiseSpec json file.')
@click.option('--duration', type=float, default=10.0, show_default=True, help='Length in s.')
@click.option('--sample-rate', type=float, default=2e3, show_default=True, help='Sample rate in Hz.')
@click.option('--no-floor', is_flag=True, help='Leave the instrumental floor out.')
@click.option('--out', required=True, help='Destination trace CSV.')
@seed_option
def synth_noise(preset:str, spec:str, duration:float, sample_rate:float, no_floor:bool,
                out:str, seed:int):
    ''' Synthesize a displacement trace whose ASD follows a noise spectrum.\n
    '''
    noise = config_or_preset(Tnoise, spec, preset)
    if no_floor:
        noise = noise.displacement_spec()
    trace = synthesis.synthesize(noise, duration, sample_rate, seed)
    write_trace(trace.with_values(trace.values, config_hash=config_hash(noise, {'seed': seed})), out)
# --------------------
