"""Workbench for toroidal electromagnetic solitons in saturable media."""

from toroton._toroton import (  # noqa: F401
    MediumParams,
    RadialProfile,
    ScalarField,
    TorusSolution,
    WaveParams,
    centroid,
    critical_power,
    curl_sq_curved,
    curl_sq_straight,
    delta_mu,
    embed_profile,
    epsilon_of_intensity,
    find_fixed_point,
    gamma_of_c,
    index,
    make_gaussian,
    power,
    power_of,
    propagate,
    quantize,
    solve_profile,
    step,
    torus_energy,
    width,
)

__all__ = [
    "MediumParams",
    "RadialProfile",
    "ScalarField",
    "TorusSolution",
    "WaveParams",
    "centroid",
    "critical_power",
    "curl_sq_curved",
    "curl_sq_straight",
    "delta_mu",
    "embed_profile",
    "epsilon_of_intensity",
    "find_fixed_point",
    "gamma_of_c",
    "index",
    "make_gaussian",
    "power",
    "power_of",
    "propagate",
    "quantize",
    "solve_profile",
    "step",
    "torus_energy",
    "width",
]
