'''
Closed loop simulation of the locked cavity: vibration
and actuator move the length, the PDH discriminator reads the detuning
and the PID drives the piezo. The sample loop is a compiled kernel over
the state arrays of the plant, the controller and the lock logic.\n
Copyright (c) 2017 Aimirim STI.\n
## Dependencies are:
* numba
* numpy
'''

# Import system libs
import logging
import math
import numpy as np
from numba import njit

# Import custom libs
from ..env import Enviroment as Env
from ..errors import ValidationFailure
from ..cavity.schemas import CavityConfig
from ..cavity import optics
from ..pdh.schemas import PdhConfig
from ..pdh import signal
from ..plant.schemas import PlantConfig
from ..plant import actuator
from ..plant.actuator import plant_respond, plant_push
from ..vibration.schemas import NoiseSpec
from ..vibration import synthesis
from ..trace.schemas import Trace
from ..trace.io import config_hash
from ..analysis.spectral import rms_band
from .schemas import ServoConfig, LockState, LockReport, LockRun
from .controller import PidController, LockStateMachine, pid_step, pid_reset, machine_step, SCAN, LOCKED

#######################################

logger = logging.getLogger(__name__)

CHUNK = 1<<18
'''`CHUNK` (int): Samples handed to the loop kernel at once.'''

RESIDUAL_BAND = 10e3
'''`RESIDUAL_BAND` (float): Upper edge of the reported residual band in Hz.'''

# --------------------
@njit(cache=True)
def wrap_detuning(detuning, fsr):
    ''' Detuning from the nearest resonance.\n '''
    half = 0.5*fsr
    return((detuning+half)%fsr - half)
# --------------------

# --------------------
@njit(cache=True)
def read_tables(detuning, origin, step, error, transmission):
    ''' Linear interpolation of the tabulated (error, transmission) at a
    wrapped detuning.\n
    '''
    x = (detuning-origin)/step
    i = int(x)
    last = error.shape[0]-2
    if i>last:
        i = last
    frac = x-i
    e0 = error[i]
    t0 = transmission[i]
    return(e0 + frac*(error[i+1]-e0), t0 + frac*(transmission[i+1]-t0))
# --------------------

# --------------------
@njit(cache=True)
def ramp_voltage(tau, amplitude, frequency):
    ''' Triangle starting at 0 V and moving down first.\n '''
    x = (tau*frequency)%1.0
    if x<0.25:
        return(-4*amplitude*x)
    if x<0.75:
        return(amplitude*(4*x-2))
    return(amplitude*(4-4*x))
# --------------------

class Discriminator:
    ''' Error and transmission tabulated over one FSR on a grid of
    linewidth/200 that contains zero, read by linear interpolation.\n
    '''
    def __init__(self, cavity:CavityConfig, pdh:PdhConfig, points_per_linewidth:int=200):
        derived = optics.derive(cavity)
        self.fsr = derived.fsr
        self.step = derived.linewidth_fwhm/points_per_linewidth
        half = int(math.ceil(0.5*self.fsr/self.step))+1
        grid = np.arange(-half, half+1)*self.step
        self.origin = float(grid[0])
        self.error = np.ascontiguousarray(signal.error_signal(cavity, pdh, grid), dtype=float)
        self.transmission = np.ascontiguousarray(signal.transmission_signal(cavity, pdh, grid), dtype=float)

    def wrap(self, detuning:float) -> float:
        ''' Detuning from the nearest resonance.\n '''
        return(float(wrap_detuning(float(detuning), self.fsr)))

    def read(self, detuning:float):
        ''' Interpolated (error, transmission) at a wrapped detuning.\n '''
        e, tr = read_tables(float(detuning), self.origin, self.step, self.error, self.transmission)
        return(float(e), float(tr))

# --------------------
@njit(cache=True)
def _loop_kernel(noise, inj, det, dev_out, state_out, len_out, err_out, ctl_out, tr_out, record,
                 gain, direct, coeffs, z, delay, head, v_min, v_max,
                 fsr, origin, step, err_tab, tr_tab,
                 pid_par, pid_st, thr, counts, sm_st,
                 kappa, detuning0, dt, enabled, ramp_amp, ramp_freq, loop_st, sample0):
    ''' Advance the loop over one chunk. `loop_st` holds the ramp clock, the
    first locked sample (-1 before), the saturation event count and the
    saturated flag.\n
    '''
    for j in range(noise.shape[0]):
        y = plant_respond(gain, direct, coeffs, z, delay, head) + noise[j]
        d = wrap_detuning(kappa*y + detuning0, fsr)
        e, tr = read_tables(d, origin, step, err_tab, tr_tab)
        e += det[j]

        if enabled:
            before = sm_st[0]
            state = machine_step(thr, counts, sm_st, tr)
            ramp = ramp_voltage(loop_st[0], ramp_amp, ramp_freq)
            if state==SCAN:
                if before!=SCAN:
                    pid_reset(pid_st)
                u = 0.0
                loop_st[0] += dt
                pid_sat = False
            else:
                if before==SCAN:
                    pid_reset(pid_st)
                u = pid_step(pid_par, pid_st, e)
                pid_sat = pid_st[3]>0.0
                if state==LOCKED and loop_st[1]<0.0:
                    loop_st[1] = sample0+j
        else:
            state = SCAN
            u = 0.0
            ramp = 0.0
            pid_sat = False

        raw = ramp + u + inj[j]
        drive = raw
        if drive<v_min:
            drive = v_min
        elif drive>v_max:
            drive = v_max
        sat = pid_sat or drive!=raw
        if sat and loop_st[3]==0.0:
            loop_st[2] += 1.0
        loop_st[3] = 1.0 if sat else 0.0
        plant_push(delay, head, drive)

        dev_out[j] = d/kappa
        state_out[j] = state
        if record:
            len_out[j] = y
            err_out[j] = e
            ctl_out[j] = drive
            tr_out[j] = tr
# --------------------

class LoopSimulator:
    ''' Owns the state of one closed loop run and advances it in place.\n
    `cavity` (CavityConfig): Cavity parameters.\n
    `pdh` (PdhConfig): Modulation and detector.\n
    `plant` (PlantConfig): Actuator.\n
    `servo` (ServoConfig): Controller and lock logic.\n
    `seed` (int): Seed of the detector noise stream.\n
    '''
    def __init__(self, cavity:CavityConfig, pdh:PdhConfig, plant:PlantConfig,
                 servo:ServoConfig, seed:int=0):
        self.fs = servo.sample_rate_fs
        self.dt = 1.0/self.fs
        self.kappa = optics.detuning_per_length(cavity)
        self.disc = Discriminator(cavity, pdh)
        self.detuning0 = servo.initial_detuning_fsr*self.disc.fsr
        self.plant = actuator.init_state(plant, self.fs)
        self.pid = PidController(servo)
        self.machine = LockStateMachine(servo)
        self.enabled = bool(servo.enabled)
        self.ramp_amp = servo.scan_ramp.amplitude
        self.ramp_freq = servo.scan_ramp.frequency
        self.detector_rms = pdh.detector_noise_rms
        self.rng = np.random.Generator(np.random.PCG64(np.random.SeedSequence([seed, 1])))
        self.loop_st = np.array([0.0, -1.0, 0.0, 0.0])
        self.sample = 0

    @property
    def state(self) -> LockState:
        return(self.machine.state)

    @property
    def first_lock(self):
        ''' Sample index of the first LOCKED sample, none before.\n '''
        return(int(self.loop_st[1]) if self.loop_st[1]>=0 else None)

    @property
    def saturation_events(self) -> int:
        return(int(self.loop_st[2]))

    # --------------------
    def run(self, n_samples:int, noise:np.ndarray=None, injection:np.ndarray=None, record:bool=True):
        ''' Advance the loop.\n
        `n_samples` (int): Samples to simulate.\n
        `noise` (ndarray): Length disturbance in m per sample, or none.\n
        `injection` (ndarray): Voltage added at the drive summing node.\n
        `record` (bool): Keep length, error, control and transmission.\n
        return `rec` (dict): `deviation` (m, from the nearest resonance) and
        `state` always, the other signals when `record` is set.\n
        '''
        rec = {
            'deviation': np.empty(n_samples),
            'state': np.empty(n_samples, dtype=np.int8),
        }
        if record:
            for key in ('length', 'error', 'control', 'transmission'):
                rec[key] = np.empty(n_samples)

        for start in range(0, n_samples, CHUNK):
            stop = min(start+CHUNK, n_samples)
            self._run_chunk(start, stop, noise, injection, rec, record)
        return(rec)
    # --------------------

    def _run_chunk(self, start, stop, noise, injection, rec, record):
        m = stop-start
        noise_c = np.ascontiguousarray(noise[start:stop], dtype=float) if noise is not None else np.zeros(m)
        inj_c = np.ascontiguousarray(injection[start:stop], dtype=float) if injection is not None else np.zeros(m)
        if self.detector_rms>0:
            det_c = self.rng.normal(0.0, self.detector_rms, size=m)
        else:
            det_c = np.zeros(m)
        unused = np.empty(0)
        outs = [rec[key][start:stop] if record else unused for key in ('length', 'error', 'control', 'transmission')]

        plant, disc = self.plant, self.disc
        _loop_kernel(noise_c, inj_c, det_c, rec['deviation'][start:stop], rec['state'][start:stop], *outs, record,
            float(plant.gain), float(plant.direct), plant.coeffs, plant.z, plant.delay, plant.head,
            float(plant.v_min), float(plant.v_max),
            disc.fsr, disc.origin, disc.step, disc.error, disc.transmission,
            self.pid.par, self.pid.st, self.machine.thr, self.machine.counts, self.machine.st,
            self.kappa, self.detuning0, self.dt, self.enabled, self.ramp_amp, self.ramp_freq,
            self.loop_st, self.sample)
        self.sample += m

    # --------------------
    def run_until_locked(self, max_samples:int, noise:np.ndarray=None) -> int:
        ''' Advance until the LOCKED state is reached.\n
        `max_samples` (int): Give up after this many samples.\n
        `noise` (ndarray): Optional disturbance for these samples.\n
        return `used` (int): Samples consumed, -1 when the lock never came.\n
        '''
        used = 0
        block = 1000
        while used<max_samples:
            n = min(block, max_samples-used)
            chunk = noise[used:used+n] if noise is not None else None
            rec = self.run(n, noise=chunk, record=False)
            locked = np.flatnonzero(rec['state']==LockState.LOCKED)
            if locked.size:
                return(used+int(locked[0])+1)
            used += n
        return(-1)
    # --------------------

# --------------------
def longest_run(mask:np.ndarray):
    ''' Longest contiguous run of True.\n
    `mask` (ndarray): Boolean samples.\n
    return (start, stop) (int, int): Slice bounds, (0, 0) when empty.\n
    '''
    if not mask.any():
        return(0, 0)
    padded = np.concatenate(([0], mask.astype(np.int8), [0]))
    edges = np.diff(padded)
    starts = np.flatnonzero(edges==1)
    stops = np.flatnonzero(edges==-1)
    best = int(np.argmax(stops-starts))
    return(int(starts[best]), int(stops[best]))
# --------------------

# --------------------
def run_closed_loop(cavity:CavityConfig, pdh:PdhConfig, noise_spec:NoiseSpec, plant:PlantConfig,
                    servo:ServoConfig, duration:float, seed:int=0, record:bool=True) -> LockRun:
    ''' Simulate scan, lock acquisition and locked operation.\n
    `cavity` (CavityConfig): Cavity parameters.\n
    `pdh` (PdhConfig): Modulation and detector.\n
    `noise_spec` (NoiseSpec): Vibration spectrum; its instrumental floor is
    not applied to the cavity.\n
    `plant` (PlantConfig): Actuator.\n
    `servo` (ServoConfig): Controller and lock logic.\n
    `duration` (float): Simulated time in s.\n
    `seed` (int): Seed of vibration and detector noise.\n
    `record` (bool): Return the full length, error, control and
    transmission traces.\n
    return `run` (LockRun): Report and traces.\n
    '''
    fs = servo.sample_rate_fs
    if not (np.isfinite(duration) and duration>=10/fs):
        raise ValidationFailure(f"duration must be at least 10 samples, got {duration} s")
    n = int(round(duration*fs))
    digest = config_hash(cavity, pdh, noise_spec, plant, servo, {'seed': seed})

    noise = synthesis.synthesize(noise_spec.displacement_spec(), n/fs, fs, seed).values
    sim = LoopSimulator(cavity, pdh, plant, servo, seed)
    logger.info("closed loop: %d samples at %.6g Hz, seed %d", n, fs, seed)
    rec = sim.run(n, noise=noise, record=record)

    meta = {'seed': str(seed), 'config_hash': digest, 'rng': Env.RNG_NAME}
    states = rec['state']
    locked = states==LockState.LOCKED
    start, stop = longest_run(locked)
    acquired = sim.first_lock is not None

    if acquired:
        resid_disp = Trace(values=rec['deviation'][start:stop], sample_rate=fs, units='m',
            t0=start/fs, metadata=meta)
        resid_err = None
        if record:
            resid_err = Trace(values=rec['error'][start:stop], sample_rate=fs, units='V',
                t0=start/fs, metadata=meta)
    else:
        free = rec['length'] if record else rec['deviation']
        resid_disp = Trace(values=free, sample_rate=fs, units='m', metadata=meta)
        resid_err = Trace(values=rec['error'], sample_rate=fs, units='V', metadata=meta) if record else None
        logger.warning("lock never acquired within %.6g s", duration)

    band_hi = min(RESIDUAL_BAND, fs/2)
    report = LockReport(
        lock_acquired=acquired,
        time_to_lock=(sim.first_lock/fs if acquired else None),
        locked_fraction=float(np.count_nonzero(locked))/n,
        residual_error=resid_err,
        residual_displacement=resid_disp,
        rms_displacement=resid_disp.rms(),
        residual_rms_band=(rms_band(resid_disp, 0.0, band_hi) if resid_disp.n>=2 else 0.0),
        saturation_events=sim.saturation_events,
        relock_count=max(sim.machine.lock_count-1, 0),
        final_state=sim.state.name,
        state_counts={s.name: int(np.count_nonzero(states==s)) for s in LockState},
        duration=n/fs,
        seed=seed,
        config_hash=digest,
    )
    if sim.saturation_events:
        logger.warning("controller output clamped %d times", sim.saturation_events)

    traces = {}
    if record:
        units = {'length':'m', 'deviation':'m', 'error':'V', 'control':'V',
            'transmission':'normalized', 'state':'code'}
        for key,unit in units.items():
            traces[key] = Trace(values=rec[key], sample_rate=fs, units=unit, metadata=meta)
    return(LockRun(report=report, traces=traces))
# --------------------
