"""Spectral correlations of SPDC photon pairs.

Times are in ps, frequency offsets in rad/ps and wavelengths in nm.
"""

from ._core import (
    ConfigError,
    DegenerateGroupVelocities,
    EmptyGrid,
    Error,
    JsaGrid,
    NoRootInBracket,
    OutOfValidityRange,
    Scenario,
    SvdFailure,
    data_dir,
    ellipse,
    gauss_bandwidths,
    jsa,
    load_scenario,
    optimal_pump,
    schmidt_gauss,
    solve,
    sweep,
)

__all__ = [name for name in dir() if not name.startswith("_")]
