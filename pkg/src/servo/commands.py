'''
This module holds the commands of the servo
feature: the closed loop run and the Bode measurement.\n
Copyright (c) 2017 Aimirim STI.\n
## Dependencies are:
* click
* numpy
'''

# Import system libs
from pathlib import Path
import click
import numpy as np

# Import custom libs
from .engine import run_closed_loop
from .bode import bode_measure
from .loop_model import LoopModel
from ..presets import Tcavity, Tpdh, Tnoise, Tplant, Tservo
from ..trace.io import write_json, write_trace, write_table
from ..cli import seed_option, stamp, emit

#######################################

# --------------------
@click.command()
@click.option('--cavity', default='bare', show_default=True, help='Cavity preset or json file.')
@click.option('--pdh', default='default', show_default=True, help='PDH preset or json file.')
@click.option('--noise', default='mk15-pt-on', show_default=True, help='Noise preset or json file.')
@click.option('--plant', default='bare', show_default=True, help='Plant preset or json file.')
@click.option('--servo', default='bare', show_default=True, help='Servo preset or json file.')
@click.option('--duration', type=float, default=0.05, show_default=True, help='Simulated time in s.')
@click.option('--out-dir', required=True, help='Folder for the report and traces.')
@seed_option
def lock(cavity:str, pdh:str, noise:str, plant:str, servo:str, duration:float,
         out_dir:str, seed:int):
    ''' Run scan, lock acquisition and locked operation of the closed loop.\n
    '''
    configs = (Tcavity.resolve(cavity), Tpdh.resolve(pdh), Tnoise.resolve(noise),
        Tplant.resolve(plant), Tservo.resolve(servo))
    run = run_closed_loop(*configs, duration, seed)
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)

    for name, trace in run.traces.items():
        write_trace(trace, out/f"{name}.csv")
    report = run.report
    if report.residual_displacement is not None:
        write_trace(report.residual_displacement, out/'residual_displacement.csv')
    if report.residual_error is not None:
        write_trace(report.residual_error, out/'residual_error.csv')
    write_json(stamp(report.summary(), *configs, seed=seed), out/'report.json')
# --------------------

# --------------------
@click.command()
@click.option('--cavity', default='bare', show_default=True, help='Cavity preset or json file.')
@click.option('--pdh', default='default', show_default=True, help='PDH preset or json file.')
@click.option('--plant', default='bare', show_default=True, help='Plant preset or json file.')
@click.option('--servo', default='bare', show_default=True, help='Servo preset or json file.')
@click.option('--points', type=int, default=20, show_default=True, help='Number of frequencies.')
@click.option('--f-min', type=float, default=100.0, show_default=True, help='Lowest frequency in Hz.')
@click.option('--f-max', type=float, default=4e4, show_default=True, help='Highest frequency in Hz.')
@click.option('--amplitude', type=float, default=1e-3, show_default=True, help='Injection amplitude in V.')
@click.option('--out', required=True, help='Destination CSV.')
@seed_option
def bode(cavity:str, pdh:str, plant:str, servo:str, points:int, f_min:float, f_max:float,
         amplitude:float, out:str, seed:int):
    ''' Inject a sine at the drive and demodulate the error signal, on log
    spaced frequencies.\n
    '''
    if not (points>=1 and 0<f_min<=f_max):
        raise click.BadParameter('need points >= 1 and 0 < f-min <= f-max')
    configs = (Tcavity.resolve(cavity), Tpdh.resolve(pdh), Tplant.resolve(plant), Tservo.resolve(servo))
    freqs = np.geomspace(f_min, f_max, points)
    result = bode_measure(*configs, freqs, amplitude, seed)

    columns = {key: np.array([getattr(p, key) for p in result.points]) for key in
        ('f_hz', 'gain_db', 'phase_deg', 'model_gain_db', 'model_phase_deg', 'amplitude', 'valid')}
    meta = {'seed': str(seed), 'config_hash': result.config_hash,
        'injection_amplitude': repr(float(amplitude))}
    write_table(out, columns, meta)

    f_c, pm, gm = LoopModel(*configs).margins()
    emit(stamp({'unity_gain_hz': f_c, 'phase_margin_deg': pm, 'gain_margin_db': gm,
        'retried': [p.f_hz for p in result.points if p.retried],
        'invalid': [p.f_hz for p in result.points if not p.valid]}, *configs, seed=seed))
# --------------------
