"""Giant-atom interference simulator."""

from ._gatom import (
    ConfigError,
    IntegrationDiverged,
    ScenarioConfig,
    annihilation,
    coherent_state,
    collective_mode,
    estimate_inversion_time,
    expectation,
    geometric_phase,
    known_keys,
    ncol_expected_analytic,
    resultant_amplitude,
    run,
    run_fig1c,
    simulate_two_mode,
    write_files,
)

__all__ = [
    "ConfigError",
    "IntegrationDiverged",
    "ScenarioConfig",
    "annihilation",
    "coherent_state",
    "collective_mode",
    "estimate_inversion_time",
    "expectation",
    "geometric_phase",
    "known_keys",
    "ncol_expected_analytic",
    "resultant_amplitude",
    "run",
    "run_fig1c",
    "simulate_two_mode",
    "write_files",
]
