"""Linear pick-and-place motions: swept tunnels and relocation validity.

The gripper always returns to its home location between the pick and the
place leg, so one relocation sweeps exactly two home-anchored tunnels.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, NamedTuple

import numpy as np

from .geometry import Disc, Point, Tunnel, disc_in_workspace, tunnel_disc_mask, tunnel_to
from .scene import ObjectId, Scene


@dataclass(frozen=True)
class Action:
    """One pick-and-place relocation of a single object."""

    obj: ObjectId
    src: Point
    dst: Point

    def __post_init__(self) -> None:
        if self.src == self.dst:
            raise ValueError("relocation must change the object's region")

    @property
    def displacement(self) -> float:
        return math.hypot(self.dst.x - self.src.x, self.dst.y - self.src.y)


class SweptVolume(NamedTuple):
    pick: Tunnel
    place: Tunnel


def home_tunnel(scene: Scene, target: Point) -> Tunnel:
    """Tunnel swept by one gripper leg from the robot home to ``target``."""
    return tunnel_to(target, scene.robot_home, scene.object_radius, scene.tunnel_width)


def swept_volume(scene: Scene, action: Action) -> SweptVolume:
    """Pick and place tunnels of a relocation, both anchored at the robot home."""
    return SweptVolume(
        pick=home_tunnel(scene, action.src),
        place=home_tunnel(scene, action.dst),
    )


def action_valid(scene: Scene, arrangement, action: Action) -> bool:
    """Check the collision constraint for one relocation.

    Valid iff neither sweep tunnel touches any disc other than the moved
    object's, and the destination disc fits the workspace without overlapping
    another object. The moved object itself travels inside the tunnels and is
    ignored on both legs.
    """
    b = scene.object_radius
    if not disc_in_workspace(Disc(Point(*action.dst), b), scene.workspace):
        return False
    pos = np.asarray(arrangement, dtype=float)
    others = np.delete(pos, action.obj, axis=0)
    if len(others) == 0:
        return True
    d2 = ((others - np.asarray(action.dst, dtype=float)) ** 2).sum(axis=1)
    if (d2 < (2.0 * b) ** 2).any():
        return False
    vol = swept_volume(scene, action)
    if tunnel_disc_mask(vol.pick, others, b).any():
        return False
    if tunnel_disc_mask(vol.place, others, b).any():
        return False
    return True


def collision_objs(
    scene: Scene, arrangement, candidates: Iterable[ObjectId], t: Tunnel
) -> set[ObjectId]:
    """Subset of ``candidates`` whose current disc intersects the tunnel."""
    ids = sorted(candidates)
    if not ids:
        return set()
    pos = np.asarray(arrangement, dtype=float)
    hits = tunnel_disc_mask(t, pos[ids], scene.object_radius)
    return {o for o, hit in zip(ids, hits) if hit}


def placement_sweep_mask(scene: Scene, targets: np.ndarray, obstacles: np.ndarray) -> np.ndarray:
    """Which home->target placing tunnels clear every obstacle disc.

    ``targets`` is (n, 2), ``obstacles`` (k, 2); returns an (n,) bool array that
    is True where the tunnel to the target touches no obstacle.
    """
    if len(obstacles) == 0:
        return np.ones(len(targets), dtype=bool)
    b = scene.object_radius
    home = np.asarray(scene.robot_home, dtype=float)
    vec = targets - home
    dist = np.sqrt((vec**2).sum(axis=1))
    # Targets coinciding with the home anchor cannot be aimed at; mark blocked.
    degenerate = dist == 0.0
    dist[degenerate] = 1.0
    cos = vec[:, 0] / dist
    sin = vec[:, 1] / dist
    rel = obstacles - home
    u = rel[:, 0] * cos[:, None] + rel[:, 1] * sin[:, None]
    v = -rel[:, 0] * sin[:, None] + rel[:, 1] * cos[:, None]
    lengths = dist + b
    uc = np.clip(u, 0.0, lengths[:, None])
    h = 0.5 * scene.tunnel_width
    vc = np.clip(v, -h, h)
    hit = (u - uc) ** 2 + (v - vc) ** 2 <= b * b
    clear = ~hit.any(axis=1)
    clear[degenerate] = False
    return clear
