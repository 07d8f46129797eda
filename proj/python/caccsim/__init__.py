"""Python bindings for the caccsim platoon simulator."""

from ._core import (
    ConfigError,
    ControllerFault,
    FeedforwardFilter,
    GeometryError,
    IdmParams,
    Scenario,
    Trace,
    amplification_ratios,
    collision_and_min_gap,
    desired_spacing,
    gains_from_bandwidth,
    headway_rmse,
    idm_acceleration,
    idm_desired_gap,
    idm_equilibrium_gap,
    max_abs_spacing_error,
    polar_to_cartesian,
    run,
    run_cli,
    time_headway,
)

__all__ = [
    "ConfigError",
    "ControllerFault",
    "FeedforwardFilter",
    "GeometryError",
    "IdmParams",
    "Scenario",
    "Trace",
    "amplification_ratios",
    "collision_and_min_gap",
    "desired_spacing",
    "gains_from_bandwidth",
    "headway_rmse",
    "idm_acceleration",
    "idm_desired_gap",
    "idm_equilibrium_gap",
    "max_abs_spacing_error",
    "polar_to_cartesian",
    "run",
    "run_cli",
    "time_headway",
]
