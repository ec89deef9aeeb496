'''
This module holds the commands of the analysis
feature: scan fits, calibrations, spectra and the loss budget.\n
Copyright (c) 2017 Aimirim STI.\n
## Dependencies are:
* click
'''

# Import system libs
import click

# Import custom libs
from . import fitting, spectral, interferometer, losses
from .schemas import ScanFit, ErrorCalibration
from ..errors import ValidationFailure
from ..presets import Tcavity
from ..trace.io import read_trace, write_trace, read_table, write_table, column_names, config_hash
from ..cli import stamp, emit, config_or_preset

#######################################

# --------------------
def _load_report(schema, path:str):
    ''' Parse a json report written by another command.\n '''
    try:
        return(schema.parse_file(path))
    except OSError as exc:
        raise ValidationFailure(f"cannot read '{path}': {exc.strerror}")
# --------------------

# --------------------
@click.command()
@click.option('--transmission', required=True, help='Scan transmission trace CSV.')
@click.option('--modulation-frequency', type=float, default=150e6, show_default=True,
    help='Sideband offset in Hz.')
@click.option('--ramp-span', type=float, help='Detuning swept over the trace in Hz, '
    'read from the trace header when absent.')
@click.option('--fsr', type=float, help='Known FSR in Hz, for a single carrier scan.')
@click.option('--out', help='Destination json, stdout when absent.')
def fit_scan(transmission:str, modulation_frequency:float, ramp_span:float, fsr:float, out:str):
    ''' Fit the carrier and sideband Lorentzians of a scan.\n
    '''
    trace = read_trace(transmission)
    if ramp_span is None:
        rate = trace.metadata.get('scan_rate_hz_per_s')
        if rate is None:
            raise ValidationFailure('--ramp-span is required, the trace has no scan rate')
        ramp_span = float(rate)*trace.duration
    fit = fitting.fit_scan(trace, modulation_frequency, ramp_span, fsr)
    seed = int(trace.metadata.get('seed', 0))
    emit(stamp(fit, {'modulation_frequency': modulation_frequency, 'ramp_span': ramp_span,
        'fsr': fsr, 'source': trace.metadata.get('config_hash', '')}, seed=seed), out)
# --------------------

# --------------------
@click.command()
@click.option('--error', 'error_path', required=True, help='Scan error signal trace CSV.')
@click.option('--scan-fit', required=True, help='Json written by fit-scan.')
@click.option('--carrier', type=int, default=0, show_default=True, help='Carrier to calibrate on.')
@click.option('--out', help='Destination json, stdout when absent.')
def calibrate_error(error_path:str, scan_fit:str, carrier:int, out:str):
    ''' Fit the tanh model to the central slope of the error signal.\n
    '''
    trace = read_trace(error_path)
    fit = _load_report(ScanFit, scan_fit)
    cal = fitting.calibrate_error_slope(trace, fit, carrier)
    emit(stamp(cal, fit, {'carrier': carrier}, seed=int(trace.metadata.get('seed', 0))), out)
# --------------------

# --------------------
@click.command()
@click.option('--error', 'error_path', required=True, help='Error signal trace CSV in V.')
@click.option('--calibration', required=True, help='Json written by calibrate-error.')
@click.option('--scan-fit', required=True, help='Json written by fit-scan.')
@click.option('--wavelength', type=float, default=737e-9, show_default=True, help='Wavelength in m.')
@click.option('--out', required=True, help='Destination trace CSV.')
def err2len(error_path:str, calibration:str, scan_fit:str, wavelength:float, out:str):
    ''' Convert an error signal to cavity length through the inverse tanh.\n
    '''
    trace = read_trace(error_path)
    cal = _load_report(ErrorCalibration, calibration)
    fit = _load_report(ScanFit, scan_fit)
    if fit.finesse is None:
        raise ValidationFailure('scan fit has no finesse, refit it with --fsr')
    result = fitting.error_to_displacement(trace, cal, fit.linewidth, fit.finesse, wavelength)
    digest = config_hash(cal, fit, {'wavelength': wavelength})
    write_trace(result.trace.with_values(result.trace.values, config_hash=digest,
        clipped=result.clipped), out)
    emit({'rms': result.rms, 'clipped': result.clipped, 'length_scale': result.length_scale,
        'config_hash': digest, 'seed': int(trace.metadata.get('seed', 0))})
# --------------------

# --------------------
@click.command()
@click.option('--fringe', required=True, help='Interferometer fringe scan trace CSV.')
@click.option('--signal', 'signal_path', help='Interferometer signal to convert.')
@click.option('--wavelength', type=float, default=737e-9, show_default=True,
    help='Interferometer wavelength in m.')
@click.option('--out', help='Destination json, stdout when absent.')
@click.option('--out-displacement', help='Converted displacement trace CSV, with --signal.')
def ifm_calib(fringe:str, signal_path:str, wavelength:float, out:str, out_displacement:str):
    ''' Fit a sine to the fringe scan, then optionally convert a signal to
    displacement.\n
    '''
    scan = read_trace(fringe)
    cal = interferometer.interferometer_calibrate(scan)
    payload = stamp(cal, seed=int(scan.metadata.get('seed', 0)))
    if signal_path:
        if not out_displacement:
            raise click.UsageError('--signal needs --out-displacement')
        result = interferometer.interferometer_convert(read_trace(signal_path), cal, wavelength)
        write_trace(result.trace.with_values(result.trace.values,
            config_hash=payload['config_hash'], clipped=result.clipped), out_displacement)
        payload.update({'rms': result.rms, 'clipped': result.clipped, 'wavelength': wavelength})
    emit(payload, out)
# --------------------

# --------------------
@click.command()
@click.option('--trace', 'trace_path', required=True, help='Trace CSV.')
@click.option('--segments', type=int, default=8, show_default=True, help='Welch segments.')
@click.option('--overlap', type=float, default=0.5, show_default=True, help='Segment overlap fraction.')
@click.option('--window', default='hann', show_default=True, help='Window name.')
@click.option('--segment-length', type=int, help='Samples per segment, overrides --segments.')
@click.option('--out', required=True, help='Destination CSV with f_hz and asd columns.')
def asd(trace_path:str, segments:int, overlap:float, window:str, segment_length:int, out:str):
    ''' Welch amplitude spectral density of a trace.\n
    '''
    trace = read_trace(trace_path)
    table = spectral.compute_asd(trace, window, segments, overlap, segment_length)
    columns, meta = spectral.asd_columns(table)
    write_table(out, columns, meta)
# --------------------

# --------------------
@click.command()
@click.option('--trace', 'trace_path', required=True, help='Trace or ASD table CSV.')
@click.option('--f-lo', type=float, default=0.0, show_default=True, help='Band start in Hz.')
@click.option('--f-hi', type=float, required=True, help='Band end in Hz.')
@click.option('--out', help='Destination json, stdout when absent.')
def rms(trace_path:str, f_lo:float, f_hi:float, out:str):
    ''' Band limited rms of a trace or of an ASD table.\n
    '''
    if 'asd' in column_names(trace_path):
        meta, columns = read_table(trace_path)
        source = spectral.asd_from_columns(meta, columns)
        units = source.units.replace('/sqrt(Hz)', '')
    else:
        source = read_trace(trace_path)
        units = source.units
        meta = source.metadata
    value = spectral.rms_band(source, f_lo, f_hi)
    emit({'rms': value, 'units': units, 'f_lo': f_lo, 'f_hi': f_hi,
        'seed': int(meta.get('seed', 0)), 'config_hash': meta.get('config_hash', '')}, out)
# --------------------

# --------------------
@click.command()
@click.option('--config', help='Cavity json file.')
@click.option('--preset', help='Cavity preset name.')
@click.option('--measured-finesse', type=float, help='Infer the absorption from this finesse.')
@click.option('--natural-log', is_flag=True, help='Absorption as 1 - exp(-2 d alpha).')
@click.option('--out', help='Destination json, stdout when absent.')
def loss_budget(config:str, preset:str, measured_finesse:float, natural_log:bool, out:str):
    ''' Round trip loss budget of a cavity, or the absorption implied by a
    measured finesse.\n
    '''
    cavity = config_or_preset(Tcavity, config, preset)
    base = 'natural' if natural_log else 'decadic'
    budget = losses.loss_budget(cavity, measured_finesse, base)
    emit(stamp(budget, cavity, {'measured_finesse': measured_finesse, 'base': base}), out)
# --------------------
