"""Planar primitives: discs, tilted rectangular tunnels, and their intersection tests.

The workspace frame puts the origin at the front-left corner of the floor,
+x to the right and +y pointing into the workspace, so the front opening lies
along y = 0 and the robot waits at negative y.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import cached_property
from typing import NamedTuple

import numpy as np

TOL = 1e-9


class Point(NamedTuple):
    """A location on the workspace floor."""

    x: float
    y: float


class Disc(NamedTuple):
    """Footprint of a cylindrical object."""

    center: Point
    radius: float


class Workspace(NamedTuple):
    """Interior floor dimensions of the confined region."""

    width: float
    depth: float


@dataclass(frozen=True)
class Tunnel:
    """Swept volume of one linear gripper motion.

    A rectangle anchored at the robot home: it extends ``length`` along the
    direction ``angle`` (signed radians measured from +x, in (-pi, pi]) and
    spans ``width / 2`` to either side of that spine.
    """

    anchor: Point
    length: float
    width: float
    angle: float

    @cached_property
    def _frame(self) -> tuple[float, float, float, float]:
        # One tunnel is tested against many discs; cache the rotation once.
        return (self.anchor[0], self.anchor[1], math.cos(self.angle), math.sin(self.angle))

    def corners(self) -> list[Point]:
        """Rectangle corners in counter-clockwise order."""
        ax, ay, c, s = self._frame
        h = 0.5 * self.width
        return [
            Point(ax + u * c - v * s, ay + u * s + v * c)
            for u, v in ((0.0, -h), (self.length, -h), (self.length, h), (0.0, h))
        ]


def distance(a: Point, b: Point) -> float:
    """Euclidean distance between two floor locations."""
    return math.hypot(b[0] - a[0], b[1] - a[1])


def tunnel_to(
    target: Point, anchor: Point, object_radius: float, tunnel_width: float
) -> Tunnel:
    """Tunnel that carries the gripper from ``anchor`` to an object at ``target``.

    The rectangle overshoots the target center by ``object_radius`` so its far
    end covers the whole footprint being grasped or released.

    Raises ``ValueError`` when ``target`` coincides with ``anchor`` (the aiming
    direction would be undefined).
    """
    dx = target[0] - anchor[0]
    dy = target[1] - anchor[1]
    dist = math.hypot(dx, dy)
    if dist == 0.0:
        raise ValueError("tunnel target coincides with its anchor")
    return Tunnel(
        anchor=Point(anchor[0], anchor[1]),
        length=dist + object_radius,
        width=tunnel_width,
        angle=math.atan2(dy, dx),
    )


def tunnel_intersects_disc(t: Tunnel, d: Disc) -> bool:
    """True iff the closed rectangle and the closed disc share a point.

    Boundary contact counts as an intersection: the sweep is treated
    conservatively.
    """
    ax, ay, c, s = t._frame
    dx = d.center[0] - ax
    dy = d.center[1] - ay
    u = dx * c + dy * s  # along the spine
    v = -dx * s + dy * c  # lateral offset
    uc = min(max(u, 0.0), t.length)
    h = 0.5 * t.width
    vc = min(max(v, -h), h)
    return (u - uc) ** 2 + (v - vc) ** 2 <= d.radius * d.radius


def tunnel_disc_mask(t: Tunnel, centers: np.ndarray, radius: float) -> np.ndarray:
    """Vectorized ``tunnel_intersects_disc`` for many same-radius discs.

    ``centers`` is an (n, 2) array of disc centers; returns an (n,) bool array.
    """
    ax, ay, c, s = t._frame
    dx = centers[:, 0] - ax
    dy = centers[:, 1] - ay
    u = dx * c + dy * s
    v = -dx * s + dy * c
    uc = np.clip(u, 0.0, t.length)
    h = 0.5 * t.width
    vc = np.clip(v, -h, h)
    return (u - uc) ** 2 + (v - vc) ** 2 <= radius * radius


def discs_overlap(a: Disc, b: Disc) -> bool:
    """Strict interior overlap; tangent discs do not overlap."""
    dx = b.center[0] - a.center[0]
    dy = b.center[1] - a.center[1]
    r = a.radius + b.radius
    return dx * dx + dy * dy < r * r


def disc_in_workspace(d: Disc, w: Workspace) -> bool:
    """True iff the disc lies fully on the floor; wall contact is allowed."""
    x, y = d.center
    r = d.radius
    return x - r >= 0.0 and y - r >= 0.0 and x + r <= w.width and y + r <= w.depth
