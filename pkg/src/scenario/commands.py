'''
This module holds the command that runs
a measured condition end to end.\n
Copyright (c) 2017 Aimirim STI.\n
## Dependencies are:
* click
'''

# Import system libs
import click

# Import custom libs
from .runner import list_scenarios, run_scenario, write_outputs
from ..presets import Tscenario
from ..cli import seed_option, emit

#######################################

# --------------------
@click.command()
@click.option('--name', help='Scenario preset name.')
@click.option('--duration', type=float, default=0.2, show_default=True, help='Closed loop time in s.')
@click.option('--out-dir', help='Folder for the report, traces and spectra.')
@click.option('--list', 'show_list', is_flag=True, help='List the scenarios and exit.')
@seed_option
def scenario(name:str, duration:float, out_dir:str, show_list:bool, seed:int):
    ''' Scan, calibrate, lock and report one measured condition.\n
    '''
    if show_list:
        emit({key: {'cavity': s.cavity, 'noise': s.noise, 'temperature': s.temperature,
            'pulse_tube': s.pulse_tube, 'reported_rms': s.reported_rms}
            for key, s in list_scenarios().items()})
        return
    if not (name and out_dir):
        raise click.UsageError('--name and --out-dir are required')
    report, outputs = run_scenario(Tscenario.get_defaults(name), duration, seed)
    write_outputs(out_dir, report, outputs)
# --------------------
