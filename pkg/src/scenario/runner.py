'''
One command per measured condition: scan and calibrate
the cavity, emulate the relative vibration measurement, run the lock
and compare the residual with the reported value.\n
Copyright (c) 2017 Aimirim STI.\n
## Dependencies are:
* numpy
'''

# Import system libs
import logging
from pathlib import Path
from typing import Dict
import numpy as np

# Import custom libs
from ..env import Enviroment as Env
from ..presets import Tcavity, Tpdh, Tscan, Tnoise, Tplant, Tservo, Tscenario
from ..cavity import optics
from ..pdh import signal
from ..vibration import synthesis
from ..servo.engine import run_closed_loop
from ..analysis import fitting, spectral
from ..trace.io import config_hash, write_json, write_trace, write_table
from .schemas import Scenario, ScenarioReport

#######################################

logger = logging.getLogger(__name__)

VIBRATION_DURATION = 10.0
'''`VIBRATION_DURATION` (float): Length of the emulated vibration record in s.'''

VIBRATION_RATE = 2e3
'''`VIBRATION_RATE` (float): Sample rate of the emulated vibration record in Hz.'''

VIBRATION_BAND = 100.0
'''`VIBRATION_BAND` (float): Upper edge of the vibration rms band in Hz.'''

# --------------------
def list_scenarios() -> Dict[str, Scenario]:
    return({name: Tscenario.get_defaults(name) for name in Tscenario.get_names()})
# --------------------

# --------------------
def run_scenario(scenario:Scenario, duration:float, seed:int=0):
    ''' Execute a scenario end to end.\n
    `scenario` (Scenario): Presets of the condition.\n
    `duration` (float): Closed loop time in s.\n
    `seed` (int): Seed of every random draw.\n
    return (report, outputs) (ScenarioReport, dict): Report and the traces
    and tables to write.\n
    '''
    cavity = Tcavity.get_defaults(scenario.cavity)
    pdh = Tpdh.get_defaults('default')
    noise = synthesis.with_peaks(Tnoise.get_defaults(scenario.noise), scenario.extra_peaks)
    plant = Tplant.get_defaults(scenario.plant)
    servo = Tservo.get_defaults(scenario.servo)
    derived = optics.derive(cavity)
    digest = config_hash(cavity, pdh, noise, plant, servo, scenario, {'seed': seed, 'duration': duration})
    logger.info("scenario %s, hash %s", scenario.name, digest)

    # Calibration scan
    ramp = Tscan.get_defaults('wide').ramp(derived.fsr)
    scan = signal.scan_spectrum(cavity, pdh, ramp, seed)
    scan_fit = fitting.fit_scan(scan.transmission, pdh.modulation_frequency_Omega, ramp.stop-ramp.start)
    err_cal = fitting.calibrate_error_slope(scan.error, scan_fit)

    # Relative vibration record, instrumental floor included
    vib = synthesis.synthesize(noise, VIBRATION_DURATION, VIBRATION_RATE, seed)
    vibration = {
        'rms_band': spectral.rms_band(vib, 0.0, VIBRATION_BAND),
        'band_hi_hz': VIBRATION_BAND,
        'peak_to_peak': float(np.ptp(vib.values)),
        'model_rms_band': synthesis.band_rms(noise, 0.0, VIBRATION_BAND),
    }

    run = run_closed_loop(cavity, pdh, noise, plant, servo, duration, seed)
    lock = run.report
    calibrated = fitting.error_to_displacement(lock.residual_error, err_cal,
        scan_fit.linewidth, scan_fit.finesse, cavity.wavelength_lambda)

    lam = cavity.wavelength_lambda
    sim_rms = lock.rms_displacement
    report = ScenarioReport(
        scenario=scenario,
        duration=lock.duration,
        seed=seed,
        config_hash=digest,
        created_by=Env.CREATED_BY,
        derived=derived.dict(),
        scan={'fsr': scan_fit.fsr, 'finesse': scan_fit.finesse, 'linewidth': scan_fit.linewidth,
            'axis_calibration': scan_fit.axis_calibration},
        error_calibration={k:v for k,v in err_cal.dict().items() if k!='metadata'},
        lock=lock.summary(),
        vibration=vibration,
        simulated_rms=sim_rms,
        calibrated_rms=calibrated.rms,
        residual_rms_band=lock.residual_rms_band,
        reported_rms=scenario.reported_rms,
        max_lockable_finesse=optics.max_lockable_finesse(sim_rms, lam) if sim_rms>0 else None,
        reported_max_lockable_finesse=(optics.max_lockable_finesse(scenario.reported_rms, lam)
            if scenario.reported_rms else None),
    )

    outputs = {
        'scan_transmission': scan.transmission,
        'scan_error': scan.error,
        'residual_displacement': lock.residual_displacement,
        'residual_error': lock.residual_error,
        'calibrated_displacement': calibrated.trace,
    }
    if lock.residual_displacement.n>=64:
        outputs['residual_asd'] = spectral.compute_asd(lock.residual_displacement)
    return(report, outputs)
# --------------------

# --------------------
def write_outputs(out_dir, report:ScenarioReport, outputs:dict):
    ''' Write the report and every trace of a scenario run.\n
    `out_dir` (str|Path): Destination folder.\n
    '''
    out = Path(out_dir)
    stamp = {'seed': str(report.seed), 'config_hash': report.config_hash}
    for name, item in outputs.items():
        if name=='residual_asd':
            cols, meta = spectral.asd_columns(item)
            meta.update(stamp)
            write_table(out/f"{name}.csv", cols, meta)
        else:
            write_trace(item.with_values(item.values, **stamp), out/f"{name}.csv")
    write_json(report, out/'report.json')
# --------------------
