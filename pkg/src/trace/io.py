'''
This module reads and writes trace CSV files and json
reports, with provenance and atomic file replacement.\n
Copyright (c) 2017 Aimirim STI.\n
## Dependencies are:
* numpy
* pydantic
'''

# Import system libs
import io
import os
import json
import hashlib
import tempfile
import logging
from pathlib import Path
from typing import Any, Dict
import numpy as np
from pydantic import BaseModel

# Import custom libs
from ..env import Enviroment as Env
from ..errors import ValidationFailure
from .schemas import Trace

#######################################

logger = logging.getLogger(__name__)

_RESERVED_KEYS = ('sample_rate_hz', 'units', 't0')

# --------------------
def _plain(obj:Any):
    ''' Convert schemas and arrays to json compatible values.\n
    `obj` (Any): Object to convert.\n
    return (Any): Json compatible object.\n
    '''
    if isinstance(obj, BaseModel):
        return(json.loads(obj.json()))
    if isinstance(obj, np.ndarray):
        return(obj.tolist())
    if isinstance(obj, (np.floating, np.integer)):
        return(obj.item())
    if isinstance(obj, dict):
        return({str(k):_plain(v) for k,v in obj.items()})
    if isinstance(obj, (list, tuple)):
        return([_plain(v) for v in obj])
    return(obj)
# --------------------

# --------------------
def config_hash(*configs) -> str:
    ''' Hash a set of configurations for provenance.\n
    `configs` (BaseModel|dict): Every config that produced an output.\n
    return `digest` (str): First 16 hex digits of the SHA-256 of the
    canonical json.\n
    '''
    canon = json.dumps([_plain(c) for c in configs], sort_keys=True, separators=(',',':'))
    return(hashlib.sha256(canon.encode('utf-8')).hexdigest()[:16])
# --------------------

# --------------------
def atomic_write(path, text:str):
    ''' Write a text file through a temporary file and a rename.\n
    `path` (str|Path): Destination.\n
    `text` (str): File content.\n
    '''
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    fd, tmp = tempfile.mkstemp(dir=str(path.parent), prefix=f".{path.name}.", suffix='.tmp')
    try:
        with os.fdopen(fd, 'w', encoding='utf-8', newline='\n') as fid:
            fid.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.remove(tmp)
        raise
# --------------------

# --------------------
def dump_json(obj:Any) -> str:
    ''' Serialize a report deterministically.\n
    `obj` (Any): Schema, dict or list.\n
    return (str): Indented json with sorted keys.\n
    '''
    return(json.dumps(_plain(obj), indent=2, sort_keys=True, allow_nan=False) + '\n')
# --------------------

# --------------------
def write_json(obj:Any, path):
    ''' Write a json report atomically.\n
    `obj` (Any): Schema, dict or list.\n
    `path` (str|Path): Destination.\n
    '''
    atomic_write(path, dump_json(obj))
# --------------------

# --------------------
def trace_to_csv(trace:Trace) -> str:
    ''' Format a trace as the CSV file form.\n
    `trace` (Trace): Trace to format.\n
    return `text` (str): Header comments, `t,value` row and data rows.\n
    '''
    header = {
        'sample_rate_hz': repr(float(trace.sample_rate)),
        'units': trace.units,
        't0': repr(float(trace.t0)),
    }
    header.update({k:v for k,v in trace.metadata.items() if k not in _RESERVED_KEYS})
    header.setdefault('created_by', Env.CREATED_BY)

    buf = io.StringIO()
    for key in sorted(header.keys()):
        buf.write(f"# {key}={header[key]}\n")
    buf.write('t,value\n')
    data = np.column_stack((trace.time, trace.values))
    np.savetxt(buf, data, fmt='%.17g', delimiter=',')
    return(buf.getvalue())
# --------------------

# --------------------
def write_trace(trace:Trace, path):
    ''' Write a trace CSV atomically.\n
    `trace` (Trace): Trace to write.\n
    `path` (str|Path): Destination.\n
    '''
    atomic_write(path, trace_to_csv(trace))
    logger.debug("wrote %d samples to %s", trace.n, path)
# --------------------

# --------------------
def read_trace(path) -> Trace:
    ''' Read and validate a trace CSV.\n
    `path` (str|Path): Source file.\n
    return `trace` (Trace): The parsed trace.\n
    '''
    try:
        lines = Path(path).read_text(encoding='utf-8').splitlines()
    except OSError as exc:
        raise ValidationFailure(f"cannot read trace '{path}': {exc.strerror}")

    meta:Dict[str,str] = {}
    body_start = None
    for i,line in enumerate(lines):
        if line.startswith('#'):
            key, sep, val = line[1:].strip().partition('=')
            if not sep:
                raise ValidationFailure(f"malformed header line {i+1} in '{path}'")
            meta[key.strip()] = val.strip()
        elif line.strip().lower().replace(' ','')=='t,value':
            body_start = i+1
            break
        else:
            raise ValidationFailure(f"missing 't,value' header row in '{path}'")
    if body_start is None:
        raise ValidationFailure(f"missing 't,value' header row in '{path}'")
    if 'sample_rate_hz' not in meta or 'units' not in meta:
        raise ValidationFailure(f"trace '{path}' must declare sample_rate_hz and units")

    try:
        fs = float(meta.pop('sample_rate_hz'))
        units = meta.pop('units')
        meta.pop('t0', None)
        body = '\n'.join(lines[body_start:])
        data = np.loadtxt(io.StringIO(body), delimiter=',', ndmin=2) if body.strip() else np.empty((0,2))
    except ValueError as exc:
        raise ValidationFailure(f"malformed data in '{path}': {exc}")
    if data.shape[1]!=2:
        raise ValidationFailure(f"trace '{path}' rows must be 't,value'")
    if not np.all(np.isfinite(data)):
        raise ValidationFailure(f"trace '{path}' contains non finite values")

    t = data[:,0]
    _check_uniform(t, fs, path)
    t0 = float(t[0]) if t.size else 0.0
    try:
        trace = Trace(values=data[:,1], sample_rate=fs, units=units, t0=t0, metadata=meta)
    except ValueError as exc:
        raise ValidationFailure(f"invalid trace '{path}': {exc}")
    return(trace)
# --------------------

# --------------------
def _check_uniform(t:np.ndarray, fs:float, path):
    ''' Verify monotone uniform sampling against the declared rate.\n
    `t` (ndarray): Time column.\n
    `fs` (float): Declared sample rate.\n
    '''
    if (fs<=0):
        raise ValidationFailure(f"trace '{path}' declares a non positive sample rate")
    if (t.size<2):
        return
    dt = 1.0/fs
    steps = np.diff(t)
    if np.any(steps<=0):
        raise ValidationFailure(f"trace '{path}' time column is not monotone")
    if np.max(np.abs(steps - dt)) > 1e-6*dt + 1e-12*np.max(np.abs(t)):
        raise ValidationFailure(f"trace '{path}' is not uniformly sampled")
    measured = (t.size-1)/(t[-1]-t[0])
    if abs(measured-fs) > 1e-6*fs:
        raise ValidationFailure(f"trace '{path}' sample rate disagrees with its time column")
# --------------------

# --------------------
def write_table(path, columns:Dict[str,np.ndarray], metadata:Dict[str,str]=None):
    ''' Write named columns as CSV with `# key=value` header lines.\n
    `path` (str|Path): Destination.\n
    `columns` (dict): Column name to equal length arrays, in order.\n
    `metadata` (dict): Header entries.\n
    '''
    header = dict(metadata or {})
    header.setdefault('created_by', Env.CREATED_BY)
    buf = io.StringIO()
    for key in sorted(header.keys()):
        buf.write(f"# {key}={header[key]}\n")
    buf.write(','.join(columns.keys()) + '\n')
    if columns:
        data = np.column_stack([np.asarray(v, dtype=float) for v in columns.values()])
        np.savetxt(buf, data, fmt='%.17g', delimiter=',')
    atomic_write(path, buf.getvalue())
# --------------------

# --------------------
def read_table(path):
    ''' Read a CSV written by `write_table` or `write_trace`.\n
    `path` (str|Path): Source file.\n
    return (metadata, columns) (dict, dict): Header entries and named
    float columns.\n
    '''
    try:
        lines = Path(path).read_text(encoding='utf-8').splitlines()
    except OSError as exc:
        raise ValidationFailure(f"cannot read '{path}': {exc.strerror}")
    meta:Dict[str,str] = {}
    i = 0
    while i<len(lines) and lines[i].startswith('#'):
        key, _, val = lines[i][1:].strip().partition('=')
        meta[key.strip()] = val.strip()
        i += 1
    if i>=len(lines):
        raise ValidationFailure(f"'{path}' has no column header row")
    names = [n.strip() for n in lines[i].split(',')]
    body = '\n'.join(lines[i+1:])
    try:
        data = np.loadtxt(io.StringIO(body), delimiter=',', ndmin=2) if body.strip() else np.empty((0,len(names)))
    except ValueError as exc:
        raise ValidationFailure(f"malformed data in '{path}': {exc}")
    if data.shape[1]!=len(names):
        raise ValidationFailure(f"'{path}' rows do not match its header")
    return(meta, {n:data[:,k] for k,n in enumerate(names)})
# --------------------

# --------------------
def column_names(path) -> list:
    ''' Names in the column header row of a CSV file.\n '''
    try:
        with open(path, encoding='utf-8') as fid:
            for line in fid:
                if not line.startswith('#'):
                    return([n.strip() for n in line.split(',')])
    except OSError as exc:
        raise ValidationFailure(f"cannot read '{path}': {exc.strerror}")
    return([])
# --------------------
