'''
Analytic small signal model of the discrete loop around
the lock point, evaluated on the unit circle.\n
Copyright (c) 2017 Aimirim STI.\n
## Dependencies are:
* numpy
* scipy
'''

# Import system libs
import numpy as np
from scipy import optimize

# Import custom libs
from ..cavity.schemas import CavityConfig
from ..cavity import optics
from ..pdh.schemas import PdhConfig
from ..pdh import signal
from ..plant.schemas import PlantConfig
from ..plant import actuator
from .schemas import ServoConfig

#######################################

class LoopModel:
    ''' Linearized loop: discriminator slope, length to detuning scale,
    discrete actuator with delay line and discrete PID.\n
    '''
    def __init__(self, cavity:CavityConfig, pdh:PdhConfig, plant:PlantConfig, servo:ServoConfig):
        self.plant = plant
        self.servo = servo
        self.fs = servo.sample_rate_fs
        self.slope = signal.error_slope(cavity, pdh)
        self.kappa = optics.detuning_per_length(cavity)
        self.linewidth = optics.derive(cavity).linewidth_fwhm

    def controller(self, f):
        ''' Discrete PID response C(z), polarity excluded.\n '''
        zi = np.exp(-2j*np.pi*np.asarray(f, dtype=float)/self.fs)
        dt = 1.0/self.fs
        s = self.servo
        return(s.kp + s.ki*dt/(1-zi) + s.kd*(1-zi)/dt)

    def actuation(self, f):
        ''' Detuning per volt of drive, kappa g H_d(z) z^-n, in Hz/V.\n '''
        H = actuator.discrete_response(self.plant, f, self.fs)
        return(self.kappa*self.plant.piezo_gain*H)

    def open_loop(self, f):
        ''' Loop gain L(f), positive real at DC for a stable polarity.\n '''
        return(-self.servo.polarity*self.slope*self.actuation(f)*self.controller(f))

    def sensitivity(self, f):
        ''' Disturbance to residual transfer 1/(1+L).\n '''
        return(1.0/(1.0+self.open_loop(f)))

    def injection_response(self, f):
        ''' Error signal per volt injected at the drive summing node.\n '''
        return(self.slope*self.actuation(f)*self.sensitivity(f))

    def injection_detuning(self, f):
        ''' Detuning per volt injected at the drive summing node.\n '''
        return(self.actuation(f)*self.sensitivity(f))

    # --------------------
    def margins(self, f_min:float=10.0):
        ''' Unity gain frequency, phase margin and gain margin.\n
        `f_min` (float): Lower edge of the search grid in Hz.\n
        return (f_c, pm_deg, gm_db) (float, float, float): None where the
        curve has no crossing.\n
        '''
        f = np.geomspace(f_min, 0.499*self.fs, 20000)
        L = self.open_loop(f)
        mag = np.abs(L)
        f_c = pm = gm = None
        phase = np.unwrap(np.angle(L))
        idx = np.flatnonzero((mag[:-1]>=1) & (mag[1:]<1))
        if idx.size:
            i = idx[0]
            f_c = optimize.brentq(lambda x: abs(self.open_loop(x))-1, f[i], f[i+1])
            pm = 180.0 + float(np.degrees(np.interp(f_c, f, phase)))
        jdx = np.flatnonzero((phase[:-1]>-np.pi) & (phase[1:]<=-np.pi))
        if jdx.size:
            j = jdx[0]
            gm = -20*float(np.log10(mag[j+1]))
        return(f_c, pm, gm)
    # --------------------
