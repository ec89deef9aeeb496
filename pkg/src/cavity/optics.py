'''
Static optical model of the cavity: derived figures,
complex reflection, transmission and the finesse bound.\n
Copyright (c) 2017 Aimirim STI.\n
## Dependencies are:
* numpy
'''

# Import system libs
import logging
import numpy as np

# Import custom libs
from ..env import Enviroment as Env
from ..errors import ValidationFailure
from .schemas import CavityConfig, DerivedCavity
from . import losses

#######################################

logger = logging.getLogger(__name__)

# --------------------
def waist(config:CavityConfig) -> float:
    ''' Waist on the flat mirror, from the geometric length.\n
    `config` (CavityConfig): Cavity parameters.\n
    return `w0` (float): Beam radius in m.\n
    '''
    L = config.geometric_length
    w0_sq = (config.wavelength_lambda/np.pi)*np.sqrt(L*(config.roc_top_mirror-L))
    return(float(np.sqrt(w0_sq)))
# --------------------

# --------------------
def intracavity_loss(config:CavityConfig, base:str='decadic') -> float:
    ''' Round trip power loss not caused by mirror transmission.\n
    `config` (CavityConfig): Cavity parameters.\n
    `base` (str): Absorption convention, see `losses.absorption_loss`.\n
    return `l_int` (float): Fraction lost per round trip.\n
    '''
    clipping = losses.clipping_loss(config.coating_aperture_D, waist(config))
    loss = clipping + 2*config.ar_residual_reflectivity
    if (config.diamond_thickness_d>0):
        scat = losses.scattering_loss(config.surface_roughness_Rq,
            config.wavelength_lambda, config.refractive_index_n)
        loss += 2*scat + losses.absorption_loss(config.absorption_alpha,
            config.diamond_thickness_d, base)
    return(float(loss))
# --------------------

# --------------------
def _check_geometry(config:CavityConfig):
    g = 1.0 - config.geometric_length/config.roc_top_mirror
    if not (0<g<=1):
        raise ValidationFailure(f"unstable geometry: L={config.geometric_length:.6g} m "
            f"with roc={config.roc_top_mirror:.6g} m")
    return(g)
# --------------------

# --------------------
def fsr(config:CavityConfig) -> float:
    ''' Free spectral range c/(2 L_opt) in Hz.\n '''
    return(Env.SPEED_OF_LIGHT/(2*config.optical_length))
# --------------------

# --------------------
def derive(config:CavityConfig) -> DerivedCavity:
    ''' Compute the derived cavity quantities.\n
    `config` (CavityConfig): Cavity parameters.\n
    return `derived` (DerivedCavity): Lengths, FSR, finesse, linewidth,
    beam and loss figures.\n
    '''
    g_stab = _check_geometry(config)
    lam = config.wavelength_lambda
    L_opt = config.optical_length
    L_geom = config.geometric_length

    l_int = intracavity_loss(config)
    mirror = (1-config.mirror_reflectivity_R1) + (1-config.mirror_reflectivity_R2)
    total = mirror + l_int

    a = np.sqrt(config.mirror_reflectivity_R1*config.mirror_reflectivity_R2)*np.sqrt(1-l_int)
    finesse = np.pi*np.sqrt(a)/(1-a)
    free_range = fsr(config)
    linewidth = free_range/finesse
    w0 = waist(config)

    derived = DerivedCavity(
        optical_length=L_opt,
        geometric_length=L_geom,
        fsr=free_range,
        finesse=finesse,
        finesse_approx=2*np.pi/total,
        linewidth_fwhm=linewidth,
        quality_factor=(Env.SPEED_OF_LIGHT/lam)/linewidth,
        beam_waist_w0=w0,
        rayleigh_range=np.pi*w0**2/lam,
        mode_volume=np.pi*w0**2*L_geom/4,
        stability_g=g_stab,
        mirror_loss=mirror,
        intracavity_loss=l_int,
        round_trip_loss_total=total,
        linewidth_in_length_DeltaL=lam/(2*finesse),
    )
    logger.debug("derived cavity: fsr=%.6g finesse=%.6g", free_range, finesse)
    return(derived)
# --------------------

# --------------------
def _coefficients(config:CavityConfig):
    ''' Amplitude coefficients of the Airy response.\n
    return (r1, b, c, fsr): b = r2 g and c = r1 r2 g.\n
    '''
    r1 = np.sqrt(config.mirror_reflectivity_R1)
    r2 = np.sqrt(config.mirror_reflectivity_R2)
    g = np.sqrt(1-intracavity_loss(config))
    return(r1, r2*g, r1*r2*g, fsr(config))
# --------------------

# --------------------
def reflection_coefficient(config:CavityConfig, detuning):
    ''' Steady state amplitude reflection F(delta).\n
    `config` (CavityConfig): Cavity parameters.\n
    `detuning` (float|array): Laser detuning from resonance in Hz.\n
    return `F` (complex|array): Complex reflection, |F| <= 1.\n
    '''
    r1, b, c, free_range = _coefficients(config)
    z = np.exp(2j*np.pi*np.asarray(detuning, dtype=float)/free_range)
    return((-r1 + b*z)/(1 - c*z))
# --------------------

# --------------------
def reflection_derivative(config:CavityConfig, detuning):
    ''' Analytic derivative dF/d(delta) in 1/Hz.\n
    `config` (CavityConfig): Cavity parameters.\n
    `detuning` (float|array): Laser detuning in Hz.\n
    return `dF` (complex|array): Derivative of `reflection_coefficient`.\n
    '''
    r1, b, c, free_range = _coefficients(config)
    z = np.exp(2j*np.pi*np.asarray(detuning, dtype=float)/free_range)
    d_phi = 1j*z*(b - r1*c)/(1 - c*z)**2
    return(d_phi*2*np.pi/free_range)
# --------------------

# --------------------
def transmission(config:CavityConfig, detuning):
    ''' Power transmission of the cavity.\n
    `config` (CavityConfig): Cavity parameters.\n
    `detuning` (float|array): Laser detuning in Hz.\n
    return `T` (float|array): Transmitted power fraction.\n
    '''
    r1, b, c, free_range = _coefficients(config)
    z = np.exp(2j*np.pi*np.asarray(detuning, dtype=float)/free_range)
    g = c/(r1*np.sqrt(config.mirror_reflectivity_R2))
    numer = (1-config.mirror_reflectivity_R1)*(1-config.mirror_reflectivity_R2)*g
    return(numer/np.abs(1 - c*z)**2)
# --------------------

# --------------------
def detuning_per_length(config:CavityConfig) -> float:
    ''' Detuning change per meter of cavity length, 2 FSR / lambda.\n '''
    return(2*fsr(config)/config.wavelength_lambda)
# --------------------

# --------------------
def max_lockable_finesse(delta_L_rms:float, wavelength:float) -> float:
    ''' Highest finesse whose linewidth in length still exceeds twice the
    rms length fluctuation.\n
    `delta_L_rms` (float): rms cavity length fluctuation in m.\n
    `wavelength` (float): Wavelength in m.\n
    return `finesse` (float): lambda / (2 dL_rms).\n
    '''
    if not (np.isfinite(delta_L_rms) and delta_L_rms>0):
        raise ValidationFailure(f"length fluctuation must be positive, got {delta_L_rms}")
    if not (np.isfinite(wavelength) and wavelength>0):
        raise ValidationFailure(f"wavelength must be positive, got {wavelength}")
    return(wavelength/(2*delta_L_rms))
# --------------------
