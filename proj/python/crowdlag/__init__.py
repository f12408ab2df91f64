"""Lagrangian moving-mesh crowd flow simulator."""

from crowdlag._core import (  # noqa: F401
    CaseId,
    GradientScheme,
    Interval,
    Mesh,
    ModelParams,
    NumericalParams,
    RunConfig,
    RunSummary,
    ScenarioSpec,
    SimulationState,
    Triangle,
    Vec2,
    advect_tracer,
    analytic_mass,
    analytic_streamline,
    centroid,
    compose_velocity,
    fundamental_speed,
    initial_density,
    make_initial_state,
    parse_config,
    run_collect,
    run_with_config,
    scenario_preset,
    serialize_config,
    signed_area,
    static_field,
    step,
    triangle_area,
    triangle_intersection_area,
)

__all__ = [name for name in dir() if not name.startswith("_")]
