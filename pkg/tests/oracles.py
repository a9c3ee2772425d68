"""Independent oracles the tests check the library against.

Everything here is deliberately brute force: dense point sampling instead of
closed-form intersection, breadth-first search instead of tree search, scalar
re-derivations instead of the vectorized production paths.
"""

from __future__ import annotations

import math
from collections import deque

import numpy as np

from shelfplan import Action, Disc, Point, Scene, Tunnel, action_valid


def sampled_tunnel_disc_hit(t: Tunnel, d: Disc, pitch: float) -> bool:
    """Dense-grid membership test: sample the disc, check rectangle membership.

    Reliable whenever the true clearance (positive or negative) exceeds the
    sampling pitch.
    """
    cx, cy = d.center
    r = d.radius
    xs = np.arange(cx - r, cx + r + pitch / 2, pitch)
    ys = np.arange(cy - r, cy + r + pitch / 2, pitch)
    gx, gy = np.meshgrid(xs, ys)
    inside = (gx - cx) ** 2 + (gy - cy) ** 2 <= r * r
    px = gx[inside]
    py = gy[inside]
    c, s = math.cos(t.angle), math.sin(t.angle)
    dx = px - t.anchor.x
    dy = py - t.anchor.y
    u = dx * c + dy * s
    v = -dx * s + dy * c
    half = 0.5 * t.width
    in_rect = (u >= 0) & (u <= t.length) & (v >= -half) & (v <= half)
    return bool(in_rect.any())


def rect_disc_clearance(t: Tunnel, d: Disc) -> float:
    """Signed clearance: distance from disc boundary to the rectangle.

    Positive means separated, negative means overlapping; used only to filter
    out grazing pairs before comparing against the sampling oracle.
    """
    c, s = math.cos(t.angle), math.sin(t.angle)
    dx = d.center.x - t.anchor.x
    dy = d.center.y - t.anchor.y
    u = dx * c + dy * s
    v = -dx * s + dy * c
    uc = min(max(u, 0.0), t.length)
    half = 0.5 * t.width
    vc = min(max(v, -half), half)
    return math.hypot(u - uc, v - vc) - d.radius


def bfs_min_steps(scene: Scene, goal_test, max_depth: int = 12) -> int | None:
    """Optimal action count over candidate-grid arrangements, by BFS.

    Moves are every (object, candidate) relocation accepted by the collision
    checker. ``goal_test`` takes a tuple of Points. Returns None when no goal
    state is reachable within ``max_depth`` moves.
    """
    start = tuple(scene.start)
    if goal_test(start):
        return 0
    frontier = deque([(start, 0)])
    seen = {start}
    while frontier:
        state, depth = frontier.popleft()
        if depth >= max_depth:
            continue
        for obj in range(scene.n_objects):
            src = state[obj]
            for cand in scene.candidates:
                if cand == src:
                    continue
                if not action_valid(scene, state, Action(obj, src, cand)):
                    continue
                nxt = state[:obj] + (cand,) + state[obj + 1 :]
                if nxt in seen:
                    continue
                if goal_test(nxt):
                    return depth + 1
                seen.add(nxt)
                frontier.append((nxt, depth + 1))
    return None


def arrangement_goal_test(scene: Scene):
    goal = tuple(scene.goal)

    def test(state) -> bool:
        return tuple(state) == goal

    return test


def replay_plan(scene: Scene, actions) -> tuple[bool, list[Point] | None]:
    """Step-by-step replay used to double-check validate_plan."""
    positions = list(scene.start)
    for act in actions:
        if positions[act.obj] != act.src:
            return False, None
        if not action_valid(scene, tuple(positions), act):
            return False, None
        positions[act.obj] = act.dst
    return True, positions


def random_walk_instance(seed: int, n_objects: int = 3, steps: int = 6):
    """A scene whose goal is the endpoint of a random valid action walk.

    Returns (scene, actions); the walk re-moves objects often, so plan
    optimization has genuine merge opportunities.
    """
    from shelfplan import SceneConfig, generate_scene, make_scene

    rng = np.random.default_rng(seed)
    base = generate_scene(SceneConfig(n_objects=n_objects, rng_seed=seed))
    positions = list(base.start)
    actions: list[Action] = []
    guard = 0
    while len(actions) < steps and guard < 400:
        guard += 1
        obj = int(rng.integers(max(2, n_objects - 1)))  # bias toward repeat movers
        dst = base.candidates[int(rng.integers(len(base.candidates)))]
        if dst == positions[obj]:
            continue
        act = Action(obj, positions[obj], dst)
        if action_valid(base, tuple(positions), act):
            positions[obj] = dst
            actions.append(act)
    scene = make_scene(base.start, tuple(positions))
    return scene, actions
