'''
This module holds the commands of the PDH
signal feature.\n
Copyright (c) 2017 Aimirim STI.\n
## Dependencies are:
* click
'''

# Import system libs
import logging
import click

# Import custom libs
from . import signal
from .schemas import ScanRamp
from ..cavity import optics
from ..presets import Tcavity, Tpdh, Tscan
from ..trace.io import config_hash, write_trace
from ..cli import seed_option, stamp, emit

#######################################

logger = logging.getLogger(__name__)

# --------------------
@click.command()
@click.option('--cavity', default='bare', show_default=True, help='Cavity preset or json file.')
@click.option('--pdh', default='default', show_default=True, help='PDH preset or json file.')
@click.option('--start', type=float, help='Ramp start in FSR units.')
@click.option('--stop', type=float, help='Ramp stop in FSR units.')
@click.option('--duration', type=float, help='Ramp duration in s.')
@click.option('--sample-rate', type=float, help='Sample rate in Hz.')
@click.option('--out-transmission', required=True, help='Transmission trace CSV.')
@click.option('--out-error', required=True, help='Error signal trace CSV.')
@seed_option
def scan(cavity:str, pdh:str, start:float, stop:float, duration:float, sample_rate:float,
         out_transmission:str, out_error:str, seed:int):
    ''' Sweep the detuning linearly and record transmission and error signal.
    Unset ramp options come from the `wide` scan preset.\n
    '''
    cav = Tcavity.resolve(cavity)
    mod = Tpdh.resolve(pdh)
    preset = Tscan.get_defaults('wide')
    free_range = optics.fsr(cav)
    ramp = ScanRamp.across(free_range,
        preset.start_fsr if start is None else start,
        preset.stop_fsr if stop is None else stop,
        preset.duration if duration is None else duration,
        preset.sample_rate if sample_rate is None else sample_rate)

    result = signal.scan_spectrum(cav, mod, ramp, seed)
    digest = config_hash(cav, mod, ramp, {'seed': seed})
    write_trace(result.transmission.with_values(result.transmission.values, config_hash=digest), out_transmission)
    write_trace(result.error.with_values(result.error.values, config_hash=digest), out_error)
    emit(stamp({'ramp': ramp, 'ramp_span_hz': ramp.stop-ramp.start, 'fsr': free_range,
        'crosses_resonance': result.crosses_resonance,
        'carriers_in_range': result.carriers_in_range,
        'triplets_in_range': result.triplets_in_range}, cav, mod, ramp, seed=seed))
# --------------------
