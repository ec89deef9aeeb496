'''
Digital PID controller and lock acquisition state machine.
The per sample updates are compiled kernels over small state arrays so
the closed loop engine can call them without leaving machine code.\n
Copyright (c) 2017 Aimirim STI.\n
## Dependencies are:
* numba
* numpy
'''

# Import system libs
import numpy as np
from numba import njit

# Import custom libs
from .schemas import ServoConfig, LockState

#######################################

SCAN = int(LockState.SCAN)
ENGAGE = int(LockState.ENGAGE)
LOCKED = int(LockState.LOCKED)

# --------------------
@njit(cache=True)
def pid_reset(st):
    ''' Zero the integrator, arm the derivative for a fresh start.\n '''
    st[0] = 0.0
    st[1] = 0.0
    st[2] = 1.0
    st[3] = 0.0
# --------------------

# --------------------
@njit(cache=True)
def pid_step(par, st, error):
    ''' One PID sample.\n
    `par` (ndarray): kp, ki dt, kd / dt, polarity, integrator clamp, output
    low, output high.\n
    `st` (ndarray): integral, previous error, fresh flag, saturated flag.\n
    `error` (float): Error signal in V.\n
    return `u` (float): Controller output in V.\n
    '''
    if st[2]>0.0:
        st[1] = error
        st[2] = 0.0
    integral = st[0] + par[1]*error
    if integral>par[4]:
        integral = par[4]
    elif integral<-par[4]:
        integral = -par[4]
    st[0] = integral
    raw = par[3]*(par[0]*error + integral + par[2]*(error-st[1]))
    st[1] = error
    if raw>par[6]:
        st[3] = 1.0
        return(par[6])
    if raw<par[5]:
        st[3] = 1.0
        return(par[5])
    st[3] = 0.0
    return(raw)
# --------------------

# --------------------
@njit(cache=True)
def machine_step(thr, counts, st, transmission):
    ''' One sample of the lock state machine.\n
    `thr` (ndarray): Engage and unlock thresholds.\n
    `counts` (ndarray): Engage and unlock sample counts.\n
    `st` (ndarray): state, samples above, samples below, locks, unlocks.\n
    `transmission` (float): Normalized transmission.\n
    return `state` (int): State after this sample.\n
    '''
    if st[0]==SCAN:
        if transmission>=thr[0]:
            st[0] = ENGAGE
            st[1] = 1
            st[2] = 0
            if counts[0]<=1:
                st[0] = LOCKED
                st[3] += 1
        return(st[0])

    if transmission<thr[1]:
        st[2] += 1
    else:
        st[2] = 0
    if st[2]>=counts[1]:
        st[0] = SCAN
        st[1] = 0
        st[2] = 0
        st[4] += 1
        return(st[0])

    if st[0]==ENGAGE:
        if transmission>=thr[0]:
            st[1] += 1
        else:
            st[1] = 0
        if st[1]>=counts[0]:
            st[0] = LOCKED
            st[3] += 1
    return(st[0])
# --------------------

class PidController:
    ''' u = polarity (kp e + ki sum(e) dt + kd (e - e_prev)/dt), with the
    integral term and the output clamped.\n
    '''
    __slots__ = ('par', 'st')

    def __init__(self, servo:ServoConfig):
        dt = 1.0/servo.sample_rate_fs
        lo, hi = servo.output_limits
        self.par = np.array([servo.kp, servo.ki*dt, servo.kd/dt, servo.polarity,
            servo.integrator_clamp, lo, hi], dtype=float)
        self.st = np.zeros(4)
        self.reset()

    @property
    def integral(self) -> float:
        return(float(self.st[0]))

    @property
    def saturated(self) -> bool:
        return(bool(self.st[3]>0))

    def reset(self):
        pid_reset(self.st)

    def update(self, error:float) -> float:
        ''' Advance one sample.\n
        `error` (float): Error signal in V.\n
        return `u` (float): Controller output in V.\n
        '''
        return(float(pid_step(self.par, self.st, float(error))))

class LockStateMachine:
    ''' SCAN until the transmission reaches the engage threshold, ENGAGE
    until it stays there for `engage_samples`, then LOCKED. Any state
    falls back to SCAN after `unlock_samples` below the unlock threshold.\n
    '''
    __slots__ = ('thr', 'counts', 'st')

    def __init__(self, servo:ServoConfig):
        self.thr = np.array([servo.lock_engage_threshold, servo.unlock_threshold], dtype=float)
        self.counts = np.array([servo.engage_samples, servo.unlock_samples], dtype=np.int64)
        self.st = np.zeros(5, dtype=np.int64)

    @property
    def state(self) -> LockState:
        return(LockState(int(self.st[0])))

    @property
    def lock_count(self) -> int:
        return(int(self.st[3]))

    @property
    def unlock_count(self) -> int:
        return(int(self.st[4]))

    def update(self, transmission:float) -> LockState:
        ''' Feed one transmission sample.\n
        `transmission` (float): Normalized transmission.\n
        return `state` (LockState): State after this sample.\n
        '''
        return(LockState(int(machine_step(self.thr, self.counts, self.st, float(transmission)))))
