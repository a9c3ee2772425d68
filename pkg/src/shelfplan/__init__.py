"""Rearrangement planning for confined, front-opening workspaces.

A multi-stage Monte Carlo tree search moves uniquely labeled cylindrical
objects between start and goal arrangements using linear pick-and-place
motions whose swept volumes are tilted rectangular tunnels.
"""

from .bench import MetricsRow, SuiteConfig, aggregate, run_suite, summarize
from .geometry import (
    Disc,
    Point,
    Tunnel,
    Workspace,
    disc_in_workspace,
    discs_overlap,
    distance,
    tunnel_intersects_disc,
    tunnel_to,
)
from .mcts import (
    SearchBudget,
    SearchNode,
    StageContext,
    StageExhausted,
    StageFailure,
    StageTimeout,
    backpropagate,
    expand,
    get_blocking_objects,
    new_region,
    select,
    simulate,
    solve_stage,
    stage_complete,
)
from .motion import Action, SweptVolume, action_valid, collision_objs, home_tunnel, swept_volume
from .planner import (
    InvalidPlanError,
    Plan,
    PlanCheck,
    PlanReport,
    optimize_plan,
    plan,
    plan_from_dict,
    plan_from_json,
    plan_to_dict,
    plan_to_json,
    validate_plan,
)
from .scene import (
    Arrangement,
    ObjectId,
    Scene,
    SceneConfig,
    SceneGenerationError,
    arrangement_valid,
    candidate_grid,
    generate_scene,
    make_scene,
    scene_from_dict,
    scene_from_json,
    scene_to_dict,
    scene_to_json,
)
from .svg import render_svg
from .topology import CycleError, DependencyGraph, build_dependency_graph, stage_order

__version__ = "0.1.0"

__all__ = [
    "Action",
    "Arrangement",
    "CycleError",
    "DependencyGraph",
    "Disc",
    "InvalidPlanError",
    "MetricsRow",
    "ObjectId",
    "Plan",
    "PlanCheck",
    "PlanReport",
    "Point",
    "Scene",
    "SceneConfig",
    "SceneGenerationError",
    "SearchBudget",
    "SearchNode",
    "StageContext",
    "StageExhausted",
    "StageFailure",
    "StageTimeout",
    "SuiteConfig",
    "SweptVolume",
    "Tunnel",
    "Workspace",
    "action_valid",
    "aggregate",
    "arrangement_valid",
    "backpropagate",
    "build_dependency_graph",
    "candidate_grid",
    "collision_objs",
    "disc_in_workspace",
    "discs_overlap",
    "distance",
    "expand",
    "generate_scene",
    "get_blocking_objects",
    "home_tunnel",
    "make_scene",
    "new_region",
    "optimize_plan",
    "plan",
    "plan_from_dict",
    "plan_from_json",
    "plan_to_dict",
    "plan_to_json",
    "render_svg",
    "run_suite",
    "scene_from_dict",
    "scene_from_json",
    "scene_to_dict",
    "scene_to_json",
    "select",
    "simulate",
    "solve_stage",
    "stage_complete",
    "stage_order",
    "summarize",
    "swept_volume",
    "tunnel_intersects_disc",
    "tunnel_to",
    "validate_plan",
]
