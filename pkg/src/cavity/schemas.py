'''
This module contains the schemas of the
optical cavity configuration and its derived quantities.\n
Copyright (c) 2017 Aimirim STI.\n
## Dependencies are:
* pydantic
'''

# Import system libs
from pydantic import BaseModel, validator, root_validator

#######################################

class CavityConfig(BaseModel):
    ''' Plano-concave cavity, optionally with a diamond membrane on the
    flat mirror. Lengths in meters, `absorption_alpha` decadic in cm^-1.\n
    '''
    wavelength_lambda: float
    air_gap_length: float
    diamond_thickness_d: float = 0.0
    refractive_index_n: float = 1.0
    mirror_reflectivity_R1: float
    mirror_reflectivity_R2: float
    roc_top_mirror: float
    coating_aperture_D: float
    surface_roughness_Rq: float = 0.0
    absorption_alpha: float = 0.0
    ar_residual_reflectivity: float = 0.0

    class Config:
        allow_mutation = False
        extra = 'forbid'

    @validator('wavelength_lambda', 'roc_top_mirror')
    def _positive(cls, val, field):
        if (val<=0):
            raise ValueError(f"{field.name} must be positive")
        return(val)

    @validator('air_gap_length', 'diamond_thickness_d', 'coating_aperture_D',
        'surface_roughness_Rq', 'absorption_alpha')
    def _non_negative(cls, val, field):
        if (val<0):
            raise ValueError(f"{field.name} must not be negative")
        return(val)

    @validator('mirror_reflectivity_R1', 'mirror_reflectivity_R2')
    def _reflectivity(cls, val, field):
        if not (0<val<1):
            raise ValueError(f"{field.name} must lie in (0,1)")
        return(val)

    @validator('ar_residual_reflectivity')
    def _fraction(cls, val):
        if not (0<=val<1):
            raise ValueError('ar_residual_reflectivity must lie in [0,1)')
        return(val)

    @validator('refractive_index_n')
    def _index(cls, val):
        if (val<1):
            raise ValueError('refractive_index_n must be at least 1')
        return(val)

    @root_validator(skip_on_failure=True)
    def _stable(cls, values):
        g = 1.0 - (values['air_gap_length']+values['diamond_thickness_d'])/values['roc_top_mirror']
        if not (0<g<=1):
            raise ValueError(f"unstable geometry: 1 - L/roc = {g:.6g} outside (0,1]")
        return(values)

    @property
    def geometric_length(self) -> float:
        return(self.air_gap_length + self.diamond_thickness_d)

    @property
    def optical_length(self) -> float:
        return(self.air_gap_length + self.refractive_index_n*self.diamond_thickness_d)

class DerivedCavity(BaseModel):
    ''' Quantities computed from a CavityConfig. Frequencies in Hz.\n
    '''
    optical_length: float
    geometric_length: float
    fsr: float
    finesse: float
    finesse_approx: float
    linewidth_fwhm: float
    quality_factor: float
    beam_waist_w0: float
    rayleigh_range: float
    mode_volume: float
    stability_g: float
    mirror_loss: float
    intracavity_loss: float
    round_trip_loss_total: float
    linewidth_in_length_DeltaL: float
