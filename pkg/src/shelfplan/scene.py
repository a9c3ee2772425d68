"""Workspace instances: candidate grids, arrangements, and the random scene generator."""

from __future__ import annotations

import json
from dataclasses import dataclass
from functools import cached_property

import numpy as np

from .geometry import Disc, Point, Workspace, disc_in_workspace, discs_overlap

ObjectId = int
Arrangement = tuple[Point, ...]

# Rejection-sampling limits for scene generation.
_MAX_DRAWS = 10_000
_STALL_LIMIT = 500


class SceneGenerationError(RuntimeError):
    """Rejection sampling could not place all objects."""


def candidate_grid(workspace: Workspace, object_radius: float, resolution: float) -> list[Point]:
    """All grid points (pitch ``resolution``) whose disc fits inside the workspace.

    Points are returned row-major: x varies fastest, y slowest, both ascending.
    Raises ``ValueError`` when no placement fits.
    """
    if resolution <= 0:
        raise ValueError("grid resolution must be positive")
    span_x = workspace.width - 2.0 * object_radius
    span_y = workspace.depth - 2.0 * object_radius
    if span_x < 0 or span_y < 0:
        raise ValueError("no disc placement fits inside the workspace")
    nx = int(span_x / resolution + 1e-9) + 1
    ny = int(span_y / resolution + 1e-9) + 1
    b = object_radius
    return [Point(b + i * resolution, b + j * resolution) for j in range(ny) for i in range(nx)]


def _points_ok(points: Arrangement, workspace: Workspace, radius: float) -> bool:
    discs = [Disc(p, radius) for p in points]
    if not all(disc_in_workspace(d, workspace) for d in discs):
        return False
    for i in range(len(discs)):
        for j in range(i + 1, len(discs)):
            if discs_overlap(discs[i], discs[j]):
                return False
    return True


@dataclass(frozen=True)
class Scene:
    """An immutable planning instance.

    ``candidates`` is the discretized set of legal placement centers; start and
    goal positions of generated scenes are drawn from it.
    """

    workspace: Workspace
    object_radius: float
    robot_home: Point
    tunnel_width: float
    grid_resolution: float
    start: Arrangement
    goal: Arrangement
    candidates: tuple[Point, ...]

    def __post_init__(self) -> None:
        if self.object_radius <= 0 or self.tunnel_width <= 0:
            raise ValueError("object radius and tunnel width must be positive")
        if self.robot_home.y >= 0:
            raise ValueError("robot home must sit outside the workspace, in front of the opening")
        if len(self.start) != len(self.goal):
            raise ValueError("start and goal must place the same objects")
        if not self.candidates:
            raise ValueError("scene needs at least one placement candidate")
        for name, points in (("start", self.start), ("goal", self.goal)):
            if not _points_ok(points, self.workspace, self.object_radius):
                raise ValueError(f"{name} arrangement is not collision-free inside the workspace")

    @property
    def n_objects(self) -> int:
        return len(self.start)

    @cached_property
    def start_array(self) -> np.ndarray:
        return np.asarray(self.start, dtype=float)

    @cached_property
    def goal_array(self) -> np.ndarray:
        return np.asarray(self.goal, dtype=float)

    @cached_property
    def candidate_array(self) -> np.ndarray:
        return np.asarray(self.candidates, dtype=float)


def make_scene(
    start: Arrangement,
    goal: Arrangement,
    *,
    width: float = 20.0,
    depth: float = 20.0,
    object_radius: float = 1.0,
    tunnel_width: float = 4.0,
    grid_resolution: float = 1.0,
    robot_home: Point | None = None,
) -> Scene:
    """Build a scene with the default desk-scale parameters."""
    workspace = Workspace(width, depth)
    if robot_home is None:
        robot_home = Point(width / 2.0, -3.0)
    grid = candidate_grid(workspace, object_radius, grid_resolution)
    return Scene(
        workspace=workspace,
        object_radius=object_radius,
        robot_home=Point(*robot_home),
        tunnel_width=tunnel_width,
        grid_resolution=grid_resolution,
        start=tuple(Point(*p) for p in start),
        goal=tuple(Point(*p) for p in goal),
        candidates=tuple(grid),
    )


@dataclass
class SceneConfig:
    """Parameters for random scene generation."""

    width: float = 20.0
    depth: float = 20.0
    n_objects: int = 4
    object_radius: float = 1.0
    min_center_separation: float = 4.0
    tunnel_width: float = 4.0
    grid_resolution: float = 1.0
    rng_seed: int = 0

    def __post_init__(self) -> None:
        if self.n_objects < 1:
            raise ValueError("need at least one object")
        if self.min_center_separation < 2.0 * self.object_radius:
            raise ValueError("separation below one object diameter would allow overlaps")
        if self.grid_resolution <= 0:
            raise ValueError("grid resolution must be positive")


def _sample_indices(
    rng: np.random.Generator, grid: np.ndarray, n: int, min_separation: float
) -> list[int]:
    """Draw n grid indices with pairwise center distance >= min_separation."""
    min2 = min_separation * min_separation
    chosen: list[int] = []
    placed = np.empty((n, 2), dtype=float)
    stall = 0
    for _ in range(_MAX_DRAWS):
        i = int(rng.integers(len(grid)))
        p = grid[i]
        if chosen:
            d2 = ((placed[: len(chosen)] - p) ** 2).sum(axis=1)
            if (d2 < min2).any():
                stall += 1
                if stall >= _STALL_LIMIT:
                    # Dead end: scrap the partial arrangement and start over.
                    chosen.clear()
                    stall = 0
                continue
        placed[len(chosen)] = p
        chosen.append(i)
        stall = 0
        if len(chosen) == n:
            return chosen
    raise SceneGenerationError(
        f"could not place {n} objects with separation {min_separation} "
        f"within {_MAX_DRAWS} rejection rounds"
    )


def generate_scene(config: SceneConfig) -> Scene:
    """Sample a random scene; deterministic for a given ``config.rng_seed``."""
    workspace = Workspace(config.width, config.depth)
    grid = candidate_grid(workspace, config.object_radius, config.grid_resolution)
    grid_arr = np.asarray(grid, dtype=float)
    rng = np.random.default_rng(config.rng_seed)
    start_idx = _sample_indices(rng, grid_arr, config.n_objects, config.min_center_separation)
    goal_idx = _sample_indices(rng, grid_arr, config.n_objects, config.min_center_separation)
    return make_scene(
        start=tuple(grid[i] for i in start_idx),
        goal=tuple(grid[i] for i in goal_idx),
        width=config.width,
        depth=config.depth,
        object_radius=config.object_radius,
        tunnel_width=config.tunnel_width,
        grid_resolution=config.grid_resolution,
    )


def arrangement_valid(a: Arrangement, scene: Scene) -> bool:
    """True iff every disc fits the workspace and no pair overlaps."""
    if len(a) != scene.n_objects:
        return False
    return _points_ok(tuple(Point(*p) for p in a), scene.workspace, scene.object_radius)


def scene_to_dict(scene: Scene) -> dict:
    return {
        "workspace": {"width": scene.workspace.width, "depth": scene.workspace.depth},
        "object_radius": scene.object_radius,
        "robot_home": [scene.robot_home.x, scene.robot_home.y],
        "tunnel_width": scene.tunnel_width,
        "grid_resolution": scene.grid_resolution,
        "start": [[p.x, p.y] for p in scene.start],
        "goal": [[p.x, p.y] for p in scene.goal],
    }


def scene_from_dict(data: dict) -> Scene:
    return make_scene(
        start=tuple(Point(float(x), float(y)) for x, y in data["start"]),
        goal=tuple(Point(float(x), float(y)) for x, y in data["goal"]),
        width=float(data["workspace"]["width"]),
        depth=float(data["workspace"]["depth"]),
        object_radius=float(data["object_radius"]),
        tunnel_width=float(data["tunnel_width"]),
        grid_resolution=float(data["grid_resolution"]),
        robot_home=Point(float(data["robot_home"][0]), float(data["robot_home"][1])),
    )


def scene_to_json(scene: Scene, indent: int | None = None) -> str:
    return json.dumps(scene_to_dict(scene), sort_keys=True, indent=indent)


def scene_from_json(text: str) -> Scene:
    return scene_from_dict(json.loads(text))
