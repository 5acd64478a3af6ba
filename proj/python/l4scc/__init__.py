"""Steady-state analysis of scalable congestion controls at a shared bottleneck."""

from ._core import (
    AqmConfig,
    AqmMode,
    Equilibrium,
    FlowState,
    Scenario,
    SignalLevel,
    SignalMode,
    SimVerdict,
    SolverConfig,
    classic_window_floor,
    comp5_marks_per_rtt,
    comp5_marks_per_sec,
    dump_scenario,
    equilibrium_json,
    figure_data,
    load_scenario,
    parse_scenario,
    rate_imbalance_comp5,
    saturation_rtt_bound,
    signal_from_p,
    signal_from_u,
    simulate,
    solve_dualq,
    solve_single_queue,
    status_summary,
    table1,
)

__all__ = [name for name in dir() if not name.startswith("_")]
