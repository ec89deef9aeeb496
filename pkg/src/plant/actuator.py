'''
Piezo actuator with second order mechanical modes,
continuous response and discrete time realization.\n
Copyright (c) 2017 Aimirim STI.\n
## Dependencies are:
* numba
* numpy
* scipy
'''

# Import system libs
import logging
import numpy as np
from numba import njit
from scipy import signal

# Import custom libs
from ..errors import ValidationFailure
from .schemas import PlantConfig, MechanicalMode

#######################################

logger = logging.getLogger(__name__)

# --------------------
def transfer_function(plant:PlantConfig, f):
    ''' Continuous actuator response normalized to the DC gain.\n
    `plant` (PlantConfig): Actuator parameters.\n
    `f` (float|array): Frequency in Hz.\n
    return `H` (complex|array): (1 - sum w) + sum w f0^2/(f0^2 - f^2 + i f f0/q),
    times the loop delay phasor.\n
    '''
    freq = np.asarray(f, dtype=float)
    H = np.full(freq.shape, plant.direct_weight, dtype=complex)
    for m in plant.modes:
        H = H + m.modal_weight*m.f0**2/(m.f0**2 - freq**2 + 1j*freq*m.f0/m.quality_q)
    return(H*np.exp(-2j*np.pi*freq*plant.loop_delay))
# --------------------

# --------------------
def delay_samples(plant:PlantConfig, sample_rate:float) -> int:
    ''' Loop delay in whole samples, at least one.\n '''
    return(max(1, int(round(plant.loop_delay*sample_rate))))
# --------------------

# --------------------
def section_coefficients(mode:MechanicalMode, sample_rate:float):
    ''' Bilinear biquad of one mode, pre-warped at its resonance.\n
    `mode` (MechanicalMode): Mode parameters.\n
    `sample_rate` (float): Sample rate in Hz.\n
    return (b, a) (tuple, tuple): Numerator and denominator, a[0] = 1.\n
    '''
    w0 = 2*np.pi*mode.f0
    if (mode.f0>=sample_rate/2):
        raise ValidationFailure(f"mode at {mode.f0} Hz is above the Nyquist frequency")
    K = w0/np.tan(w0/(2*sample_rate))
    damp = K*w0/mode.quality_q
    a0 = K**2 + damp + w0**2
    a1 = 2*(w0**2 - K**2)
    a2 = K**2 - damp + w0**2
    gain = mode.modal_weight*w0**2
    b = (gain/a0, 2*gain/a0, gain/a0)
    a = (1.0, a1/a0, a2/a0)
    return(b, a)
# --------------------

# --------------------
def discrete_response(plant:PlantConfig, f, sample_rate:float):
    ''' Exact response of the discrete realization, delay line included.\n
    `plant` (PlantConfig): Actuator parameters.\n
    `f` (float|array): Frequency in Hz.\n
    `sample_rate` (float): Sample rate in Hz.\n
    return `H` (complex|array): Response normalized to the DC gain.\n
    '''
    freq = np.asarray(f, dtype=float)
    flat = np.atleast_1d(freq).ravel()
    H = np.full(flat.shape, plant.direct_weight, dtype=complex)
    for m in plant.modes:
        b, a = section_coefficients(m, sample_rate)
        _, h = signal.freqz(b, a, worN=flat, fs=sample_rate)
        H = H + h
    H = H*np.exp(-2j*np.pi*flat*delay_samples(plant, sample_rate)/sample_rate)
    return(H.reshape(freq.shape))
# --------------------

# --------------------
@njit(cache=True)
def plant_respond(gain, direct, coeffs, z, delay, head):
    ''' Output for the current sample, driven by the oldest entry of the
    delay ring. Each row of `coeffs` is b0, b1, b2, a1, a2 of one direct
    form II transposed section with its state in the same row of `z`.\n
    '''
    v = delay[head[0]]
    out = direct*v
    for i in range(coeffs.shape[0]):
        y = coeffs[i, 0]*v + z[i, 0]
        z[i, 0] = coeffs[i, 1]*v - coeffs[i, 3]*y + z[i, 1]
        z[i, 1] = coeffs[i, 2]*v - coeffs[i, 4]*y
        out += y
    return(gain*out)
# --------------------

# --------------------
@njit(cache=True)
def plant_push(delay, head, voltage):
    ''' Overwrite the oldest delay entry and move the head.\n '''
    delay[head[0]] = voltage
    head[0] = (head[0]+1)%delay.shape[0]
# --------------------

class PlantState:
    ''' Mutable state of the discrete actuator: one biquad per mode and the
    loop delay ring, kept in arrays the loop kernels update in place.\n
    '''
    __slots__ = ('gain', 'v_min', 'v_max', 'dt', 'direct', 'coeffs', 'z', 'delay', 'head')

    def __init__(self, plant:PlantConfig, sample_rate:float):
        if not (np.isfinite(sample_rate) and sample_rate>0):
            raise ValidationFailure('sample_rate must be positive')
        self.gain = plant.piezo_gain
        self.v_min, self.v_max = plant.voltage_range
        self.dt = 1.0/sample_rate
        self.direct = plant.direct_weight
        rows = []
        for m in plant.modes:
            b, a = section_coefficients(m, sample_rate)
            rows.append([b[0], b[1], b[2], a[1], a[2]])
        self.coeffs = np.array(rows, dtype=float).reshape(-1, 5)
        self.z = np.zeros((len(rows), 2))
        self.delay = np.zeros(delay_samples(plant, sample_rate))
        self.head = np.zeros(1, dtype=np.int64)

    def clamp(self, voltage:float) -> float:
        if voltage<self.v_min:
            return(self.v_min)
        if voltage>self.v_max:
            return(self.v_max)
        return(voltage)

    def respond(self) -> float:
        ''' Actuated length change in m for the current sample.\n '''
        return(float(plant_respond(self.gain, self.direct, self.coeffs, self.z, self.delay, self.head)))

    def push(self, voltage:float):
        ''' Enter a clamped drive sample into the delay line.\n '''
        plant_push(self.delay, self.head, float(voltage))

    def advance(self, voltage:float) -> float:
        ''' One full sample: respond, then push `voltage`.\n '''
        out = self.respond()
        self.push(voltage)
        return(out)

# --------------------
def init_state(plant:PlantConfig, sample_rate:float) -> PlantState:
    ''' Zero state of the discrete actuator.\n '''
    return(PlantState(plant, sample_rate))
# --------------------

# --------------------
def step(state:PlantState, control_voltage:float, noise_displacement:float, dt:float) -> float:
    ''' Advance the actuator by one sample.\n
    `state` (PlantState): Actuator state, updated in place.\n
    `control_voltage` (float): Drive in V, clamped to the voltage range.\n
    `noise_displacement` (float): Vibration added to the length in m.\n
    `dt` (float): Sample period in s, must match the state.\n
    return `offset` (float): Cavity length offset in m.\n
    '''
    if not (np.isfinite(control_voltage) and np.isfinite(noise_displacement)):
        raise ValidationFailure('plant inputs must be finite')
    if not (dt>0 and abs(dt-state.dt)<=1e-9*state.dt):
        raise ValidationFailure(f"dt={dt} does not match the plant sample period {state.dt}")
    return(state.advance(state.clamp(control_voltage)) + noise_displacement)
# --------------------
