'''
Round trip loss budget of the cavity, forward and
inverted from a measured finesse.\n
Copyright (c) 2017 Aimirim STI.\n
## Dependencies are:
* numpy
'''

# Import system libs
import logging
import numpy as np

# Import custom libs
from ..errors import ValidationFailure
from ..cavity.schemas import CavityConfig
from ..cavity import losses, optics
from .schemas import LossBudget

#######################################

logger = logging.getLogger(__name__)

# --------------------
def loss_budget(cavity:CavityConfig, measured_finesse:float=None, absorption_base:str='decadic') -> LossBudget:
    ''' Sum the loss mechanisms, or attribute a measured finesse to absorption.\n
    `cavity` (CavityConfig): Cavity parameters.\n
    `measured_finesse` (float): When given, the absorption coefficient that
    explains it is returned as `implied_alpha`.\n
    `absorption_base` (str): `decadic` or `natural`.\n
    return `budget` (LossBudget): Components, total and implied finesse.\n
    '''
    if absorption_base not in ('decadic', 'natural'):
        raise ValidationFailure(f"unknown absorption base '{absorption_base}'")
    w0 = optics.derive(cavity).beam_waist_w0
    has_membrane = cavity.diamond_thickness_d>0

    mirror = (1-cavity.mirror_reflectivity_R1) + (1-cavity.mirror_reflectivity_R2)
    single = losses.scattering_loss(cavity.surface_roughness_Rq, cavity.wavelength_lambda,
        cavity.refractive_index_n) if has_membrane else 0.0
    clipping = losses.clipping_loss(cavity.coating_aperture_D, w0)
    absorption = losses.absorption_loss(cavity.absorption_alpha, cavity.diamond_thickness_d,
        absorption_base) if has_membrane else 0.0
    interface = 2*cavity.ar_residual_reflectivity
    total = mirror + 2*single + clipping + absorption + interface

    implied_alpha = None
    over = False
    if measured_finesse is not None:
        if not (np.isfinite(measured_finesse) and measured_finesse>0):
            raise ValidationFailure('measured finesse must be positive')
        residual = 2*np.pi/measured_finesse - mirror - 2*single - clipping - interface
        if residual<0:
            over = True
            logger.warning("loss budget over explained by %.4g without absorption", -residual)
        elif not has_membrane:
            logger.warning("no membrane, absorption coefficient cannot be inferred")
        else:
            implied_alpha = losses.absorption_alpha(residual, cavity.diamond_thickness_d, absorption_base)

    return(LossBudget(
        mirror_loss=mirror,
        scattering_single_pass=single,
        scattering_roundtrip=2*single,
        clipping=clipping,
        absorption=absorption,
        interface=interface,
        total=total,
        implied_finesse=2*np.pi/total,
        measured_finesse=measured_finesse,
        implied_alpha=implied_alpha,
        over_explained=over,
        absorption_base=absorption_base,
    ))
# --------------------
