'''
Single loss mechanisms of the intracavity beam.
All functions return power fractions.\n
Copyright (c) 2017 Aimirim STI.\n
## Dependencies are:
* numpy
'''

# Import system libs
import numpy as np

#######################################

# --------------------
def scattering_loss(roughness:float, wavelength:float, index:float) -> float:
    ''' Total integrated scattering of a rough interface, single pass.\n
    `roughness` (float): rms surface roughness Rq in m.\n
    `wavelength` (float): Vacuum wavelength in m.\n
    `index` (float): Refractive index of the membrane.\n
    return `S` (float): (4 pi Rq / (lambda/n))^2.\n
    '''
    return(float((4*np.pi*roughness*index/wavelength)**2))
# --------------------

# --------------------
def absorption_loss(alpha:float, thickness:float, base:str='decadic') -> float:
    ''' Round trip absorption inside the membrane.\n
    `alpha` (float): Attenuation coefficient in cm^-1.\n
    `thickness` (float): Membrane thickness in m.\n
    `base` (str): `decadic` for 1-10^(-2 d alpha), `natural` for 1-e^(-2 d alpha).\n
    return `A` (float): Absorbed fraction per round trip.\n
    '''
    depth = 2*thickness*100.0*alpha
    if (base=='decadic'):
        return(float(-np.expm1(-depth*np.log(10.0))))
    if (base=='natural'):
        return(float(-np.expm1(-depth)))
    raise ValueError(f"unknown absorption base '{base}'")
# --------------------

# --------------------
def clipping_loss(aperture:float, waist:float) -> float:
    ''' Power outside a circular coating of diameter D for a Gaussian beam.\n
    `aperture` (float): Coating diameter D in m.\n
    `waist` (float): Beam radius w0 in m.\n
    return `C` (float): exp(-2 (D/2w0)^2).\n
    '''
    return(float(np.exp(-2.0*(aperture/(2.0*waist))**2)))
# --------------------

# --------------------
def absorption_alpha(loss:float, thickness:float, base:str='decadic') -> float:
    ''' Inverse of `absorption_loss`.\n
    `loss` (float): Round trip absorbed fraction in [0,1).\n
    `thickness` (float): Membrane thickness in m, positive.\n
    return `alpha` (float): Coefficient in cm^-1.\n
    '''
    depth = 2*thickness*100.0
    if (base=='decadic'):
        return(float(-np.log10(1.0-loss)/depth))
    if (base=='natural'):
        return(float(-np.log1p(-loss)/depth))
    raise ValueError(f"unknown absorption base '{base}'")
# --------------------
