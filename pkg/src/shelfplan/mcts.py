"""Single-stage Monte Carlo tree search that drives one focus object to its goal.

Tree nodes carry full object arrangements; edges are single relocations.
Expansion is subgoal-focused: it only proposes relocations that clear the
focus object's pickup and placement tunnels (or, recursively, the pickup
tunnels of the objects doing the clearing). Rewards are negated displacement
distances, so the search prefers short detours and nearby buffer regions.

A stage is complete once the focus object rests at its goal and no remaining
movable object would have its pickup tunnel blocked by the finished focus;
that second condition keeps later stages reachable.
"""

from __future__ import annotations

import math
import time
from dataclasses import dataclass
from functools import cached_property

import numpy as np

from .geometry import Disc, Point, tunnel_disc_mask, tunnel_intersects_disc
from .motion import Action, action_valid, collision_objs, home_tunnel, placement_sweep_mask
from .scene import Arrangement, ObjectId, Scene

_EPS = 1e-12


class StageFailure(RuntimeError):
    """A single-stage search could not produce a sub-plan."""


class StageTimeout(StageFailure):
    """The stage ran out of wall-clock time or iterations."""


class StageExhausted(StageFailure):
    """Every branch of the stage tree is dead; no sub-plan exists."""


class ExpansionExhausted(StageFailure):
    """A node admits no child relocation at all."""


@dataclass(frozen=True)
class StageContext:
    """Fixed data of one stage: who moves, who is done, and the goal."""

    scene: Scene
    focus: ObjectId
    static_ids: frozenset[ObjectId]
    movable_ids: frozenset[ObjectId]
    goal: Arrangement
    order: tuple[ObjectId, ...]

    def __post_init__(self) -> None:
        everything = self.static_ids | self.movable_ids
        if everything != set(range(self.scene.n_objects)) or (self.static_ids & self.movable_ids):
            raise ValueError("static and movable sets must partition the scene's objects")
        if self.focus not in self.movable_ids:
            raise ValueError("focus object must be movable")

    @classmethod
    def for_stage(cls, scene: Scene, order: list[ObjectId], index: int) -> "StageContext":
        return cls(
            scene=scene,
            focus=order[index],
            static_ids=frozenset(order[:index]),
            movable_ids=frozenset(order[index:]),
            goal=scene.goal,
            order=tuple(order),
        )

    @cached_property
    def goal_array(self) -> np.ndarray:
        return np.asarray(self.goal, dtype=float)

    @cached_property
    def topo_index(self) -> dict[ObjectId, int]:
        return {obj: i for i, obj in enumerate(self.order)}

    @cached_property
    def movers_except_focus(self) -> tuple[ObjectId, ...]:
        return tuple(sorted(self.movable_ids - {self.focus}))


@dataclass
class SearchBudget:
    """Knobs bounding one planning run."""

    max_iterations: int = 10_000
    wall_clock_limit: float | None = 30.0
    expansion_width: int = 5
    stuck_depth_threshold: int | None = None  # defaults to 3 * n_objects
    exploration_constant: float = math.sqrt(2.0)
    rollout_step_cap: int | None = None  # defaults to 4 * n_objects

    def stuck_threshold(self, n_objects: int) -> int:
        return self.stuck_depth_threshold if self.stuck_depth_threshold is not None else 3 * n_objects

    def rollout_limit(self, n_objects: int) -> int:
        return self.rollout_step_cap if self.rollout_step_cap is not None else 4 * n_objects


class SearchNode:
    """One tree node: an arrangement plus search statistics."""

    __slots__ = (
        "positions",
        "incoming",
        "parent",
        "children",
        "depth",
        "path_cost",
        "visits",
        "total_reward",
        "dead",
    )

    def __init__(
        self,
        positions: np.ndarray,
        incoming: Action | None = None,
        parent: "SearchNode | None" = None,
    ) -> None:
        self.positions = positions
        self.incoming = incoming
        self.parent = parent
        self.children: list[SearchNode] = []
        self.depth = 0 if parent is None else parent.depth + 1
        self.path_cost = 0.0 if parent is None else parent.path_cost + incoming.displacement
        self.visits = 0
        self.total_reward = 0.0
        self.dead = False

    @property
    def arrangement(self) -> Arrangement:
        return tuple(Point(float(x), float(y)) for x, y in self.positions)

    @property
    def mean_reward(self) -> float:
        return self.total_reward / self.visits if self.visits else 0.0


def _point_at(pos: np.ndarray, obj: ObjectId) -> Point:
    return Point(float(pos[obj, 0]), float(pos[obj, 1]))


def blocked_pickups_at_goal(ctx: StageContext, positions: np.ndarray) -> set[ObjectId]:
    """Movable objects whose pickup tunnel the focus would block once at its goal."""
    goal_disc = Disc(ctx.goal[ctx.focus], ctx.scene.object_radius)
    out = set()
    for obj in ctx.movers_except_focus:
        t = home_tunnel(ctx.scene, _point_at(positions, obj))
        if tunnel_intersects_disc(t, goal_disc):
            out.add(obj)
    return out


def stage_complete(ctx: StageContext, positions: np.ndarray) -> bool:
    """Focus rests at its goal and traps nobody's pickup tunnel there."""
    if not (positions[ctx.focus] == ctx.goal_array[ctx.focus]).all():
        return False
    return not blocked_pickups_at_goal(ctx, positions)


def get_blocking_objects(ctx: StageContext, arrangement) -> set[ObjectId]:
    """Movable objects standing between the focus and its finished goal.

    Collected are objects that touch the focus's pickup tunnel, objects that
    touch its goal placing tunnel, and objects whose own pickup tunnel would be
    blocked by the focus disc parked at the goal.
    """
    pos = np.asarray(arrangement, dtype=float)
    movers = ctx.movers_except_focus
    if not movers:
        return set()
    scene = ctx.scene
    b = scene.object_radius
    centers = pos[list(movers)]
    pick = home_tunnel(scene, _point_at(pos, ctx.focus))
    place = home_tunnel(scene, ctx.goal[ctx.focus])
    hit = tunnel_disc_mask(pick, centers, b) | tunnel_disc_mask(place, centers, b)
    out = {obj for obj, h in zip(movers, hit) if h}
    out |= blocked_pickups_at_goal(ctx, pos)
    return out


def new_region(
    ctx: StageContext,
    obj: ObjectId,
    deps: set[ObjectId],
    arrangement,
    m: int,
    keep_goal_access: bool = False,
) -> list[Point]:
    """Up to ``m`` buffer regions for ``obj``, nearest first.

    A candidate is accepted when its disc avoids every other object, stays off
    the focus's pickup and goal-placing tunnels and off the current pickup
    tunnels of all ``deps`` objects, and the placing motion to it sweeps past
    nobody. With ``keep_goal_access`` the candidate's own future pickup tunnel
    must additionally clear the focus disc parked at its goal, so the object
    does not land in a spot it could never leave once the stage finishes.
    Ties in distance fall to the lower grid index.
    """
    pos = np.asarray(arrangement, dtype=float)
    scene = ctx.scene
    b = scene.object_radius
    grid = scene.candidate_array
    d2 = ((grid - pos[obj]) ** 2).sum(axis=1)
    ok = d2 > _EPS  # staying put is not a relocation
    others = np.delete(pos, obj, axis=0)
    if len(others):
        gaps = grid[:, None, :] - others[None, :, :]
        ok &= ((gaps**2).sum(axis=-1) >= (2.0 * b) ** 2).all(axis=1)
    tunnels = [
        home_tunnel(scene, _point_at(pos, ctx.focus)),
        home_tunnel(scene, ctx.goal[ctx.focus]),
    ]
    tunnels.extend(home_tunnel(scene, _point_at(pos, d)) for d in sorted(deps) if d != obj)
    for t in tunnels:
        ok &= ~tunnel_disc_mask(t, grid, b)
    if ok.any():
        obstacles = others
        if keep_goal_access and obj != ctx.focus:
            goal_disc = np.asarray(ctx.goal[ctx.focus], dtype=float)[None, :]
            obstacles = np.vstack([others, goal_disc]) if len(others) else goal_disc
        if len(obstacles):
            ok &= placement_sweep_mask(scene, grid, obstacles)
    order = np.argsort(d2, kind="stable")
    chosen = order[ok[order]][:m]
    return [scene.candidates[int(i)] for i in chosen]


def _direct_move(ctx: StageContext, pos: np.ndarray) -> list[tuple[ObjectId, Point]]:
    src = _point_at(pos, ctx.focus)
    dst = ctx.goal[ctx.focus]
    if src == dst:
        return []
    if action_valid(ctx.scene, pos, Action(ctx.focus, src, dst)):
        return [(ctx.focus, dst)]
    return []


def _accessible_movables(ctx: StageContext, pos: np.ndarray) -> set[ObjectId]:
    """Movable objects whose pickup tunnel currently touches no other disc."""
    scene = ctx.scene
    out = set()
    for obj in sorted(ctx.movable_ids):
        t = home_tunnel(scene, _point_at(pos, obj))
        others = np.delete(pos, obj, axis=0)
        if not tunnel_disc_mask(t, others, scene.object_radius).any():
            out.add(obj)
    return out


def _relocation_moves(
    ctx: StageContext, pos: np.ndarray, width: int, blockers: set[ObjectId]
) -> list[tuple[ObjectId, Point]]:
    """Candidate relocations that clear the given blockers out of the way.

    Accessible blockers go straight to their goal when that is collision-free
    and keeps the focus's tunnels clear, otherwise to nearby buffer regions
    that spare the pickup tunnels of earlier-topology objects. A blocker whose
    own pickup tunnel is blocked is cleared indirectly by relocating whatever
    blocks it; anything still unreachable is retried in the next wave.
    """
    scene = ctx.scene
    b = scene.object_radius
    focus = ctx.focus
    goal_arr = ctx.goal_array
    moves: list[tuple[ObjectId, Point]] = []
    seen_keys: set[tuple[ObjectId, Point]] = set()

    def push(obj: ObjectId, dst: Point) -> None:
        key = (obj, dst)
        if key not in seen_keys:
            seen_keys.add(key)
            moves.append((obj, dst))

    def buffer_moves(obj: ObjectId, extra_dep: ObjectId | None = None) -> None:
        # Try the longest prefix of earlier-topology objects first and relax
        # the protected set until some buffer region survives. Spots the
        # finished focus would trap are a last resort only.
        for keep_access in (True, False):
            for cut in range(ctx.topo_index[obj], -1, -1):
                deps = set(ctx.order[:cut])
                if extra_dep is not None:
                    deps.add(extra_dep)
                points = new_region(ctx, obj, deps, pos, width, keep_goal_access=keep_access)
                if points:
                    for p in points:
                        push(obj, p)
                    return

    current = set(blockers)
    processed: set[ObjectId] = set()
    while True:
        next_wave: set[ObjectId] = set()
        for o_i in sorted(current):
            processed.add(o_i)
            pick_i = home_tunnel(scene, _point_at(pos, o_i))
            pick_blockers = collision_objs(scene, pos, ctx.movable_ids - {o_i}, pick_i)
            if not pick_blockers:
                goal_move_ok = False
                at_goal = bool((pos[o_i] == goal_arr[o_i]).all())
                if not at_goal:
                    place_i = home_tunnel(scene, ctx.goal[o_i])
                    place_blockers = collision_objs(scene, pos, ctx.movable_ids - {o_i}, place_i)
                    if not place_blockers:
                        move = Action(o_i, _point_at(pos, o_i), ctx.goal[o_i])
                        if o_i == focus:
                            goal_move_ok = not blocked_pickups_at_goal(ctx, pos) and action_valid(
                                scene, pos, move
                            )
                        else:
                            goal_disc = Disc(ctx.goal[o_i], b)
                            clear_of_focus = not tunnel_intersects_disc(
                                home_tunnel(scene, _point_at(pos, focus)), goal_disc
                            ) and not tunnel_intersects_disc(
                                home_tunnel(scene, ctx.goal[focus]), goal_disc
                            )
                            goal_move_ok = clear_of_focus and action_valid(scene, pos, move)
                if goal_move_ok:
                    push(o_i, ctx.goal[o_i])
                else:
                    buffer_moves(o_i)
            else:
                for o_j in sorted(pick_blockers):
                    pick_j = home_tunnel(scene, _point_at(pos, o_j))
                    if collision_objs(scene, pos, ctx.movable_ids - {o_j}, pick_j):
                        next_wave.add(o_j)  # not reachable yet either
                    else:
                        buffer_moves(o_j, extra_dep=o_i)
        if moves:
            return moves
        pending = next_wave - processed
        if not pending:
            return []
        current = pending


def _candidate_moves(ctx: StageContext, pos: np.ndarray, width: int) -> list[tuple[ObjectId, Point]]:
    blockers = get_blocking_objects(ctx, pos)
    if not blockers:
        return _direct_move(ctx, pos)
    return _relocation_moves(ctx, pos, width, blockers)


def select(root: SearchNode, c: float) -> SearchNode:
    """Descend from the root to a leaf by maximum upper confidence bound.

    Each child's mean reward is min-max normalized across its live siblings,
    making the exploration constant scale-free; unvisited children score
    infinity and are taken in creation order. Dead subtrees are skipped.
    """
    node = root
    while node.children:
        live = [ch for ch in node.children if not ch.dead]
        chosen = None
        for ch in live:
            if ch.visits == 0:
                chosen = ch
                break
        if chosen is None:
            means = [ch.total_reward / ch.visits for ch in live]
            lo = min(means)
            spread = max(means) - lo
            log_visits = math.log(max(node.visits, 1))
            best = -math.inf
            for ch, mean in zip(live, means):
                normalized = 0.5 if spread <= _EPS else (mean - lo) / spread
                score = normalized + c * math.sqrt(log_visits / ch.visits)
                if score > best:
                    best = score
                    chosen = ch
        node = chosen
    return node


def expand(ctx: StageContext, node: SearchNode, budget: SearchBudget) -> SearchNode:
    """Create all children of a visited node and return the first one.

    Past the stuck-depth threshold the blocker set is replaced by every
    currently accessible movable object, widening the tree enough to escape
    local dead ends. Raises ``ExpansionExhausted`` when no child exists.
    """
    pos = node.positions
    n = pos.shape[0]
    if node.depth >= budget.stuck_threshold(n):
        blockers = get_blocking_objects(ctx, pos)
        if blockers:
            reachable = _accessible_movables(ctx, pos)
            moves = _relocation_moves(ctx, pos, budget.expansion_width, reachable) if reachable else []
        else:
            moves = _direct_move(ctx, pos)
    else:
        moves = _candidate_moves(ctx, pos, budget.expansion_width)
    if not moves:
        raise ExpansionExhausted(f"no relocation possible at depth {node.depth}")
    for obj, dst in moves:
        updated = pos.copy()
        updated[obj] = dst
        child = SearchNode(updated, incoming=Action(obj, _point_at(pos, obj), dst), parent=node)
        node.children.append(child)
    return node.children[0]


def simulate(
    ctx: StageContext, node: SearchNode, budget: SearchBudget, rng: np.random.Generator
) -> float:
    """Random single-branch rollout; returns the (negative) reward.

    The rollout picks uniformly among the node's candidate relocations until
    the stage completes or the step cap is hit. The reward is the negated sum
    of all displacement distances from the root through the rollout; hitting
    the cap or getting stuck costs one workspace diagonal per leftover blocker.
    """
    scene = ctx.scene
    n = node.positions.shape[0]
    diagonal = math.hypot(scene.workspace.width, scene.workspace.depth)
    pos = node.positions.copy()
    cost = node.path_cost
    for _ in range(budget.rollout_limit(n)):
        if stage_complete(ctx, pos):
            break
        moves = _candidate_moves(ctx, pos, budget.expansion_width)
        if not moves:
            cost += diagonal * max(1, len(get_blocking_objects(ctx, pos)))
            break
        obj, dst = moves[int(rng.integers(len(moves)))]
        cost += math.hypot(pos[obj, 0] - dst.x, pos[obj, 1] - dst.y)
        pos[obj] = dst
    else:
        if not stage_complete(ctx, pos):
            cost += diagonal * max(1, len(get_blocking_objects(ctx, pos)))
    return -cost


def backpropagate(node: SearchNode, reward: float) -> None:
    """Add the reward and one visit to every node up to the root."""
    current: SearchNode | None = node
    while current is not None:
        current.visits += 1
        current.total_reward += reward
        current = current.parent


def _mark_dead(node: SearchNode) -> None:
    node.dead = True
    parent = node.parent
    while parent is not None and parent.children and all(ch.dead for ch in parent.children):
        parent.dead = True
        parent = parent.parent


def _action_chain(node: SearchNode) -> list[Action]:
    actions = []
    current = node
    while current.incoming is not None:
        actions.append(current.incoming)
        current = current.parent
    actions.reverse()
    return actions


def solve_stage(
    ctx: StageContext,
    start: Arrangement,
    budget: SearchBudget,
    rng: np.random.Generator | None = None,
    deadline: float | None = None,
) -> list[Action]:
    """Drive the focus object to its goal; returns the action chain.

    Runs select / expand / simulate / backpropagate rounds and halts on the
    first node whose arrangement completes the stage. Raises ``StageTimeout``
    when the deadline or iteration budget runs out and ``StageExhausted`` when
    the whole tree is dead.
    """
    positions = np.array(start, dtype=float)
    goal_arr = ctx.goal_array
    for obj in ctx.static_ids:
        if np.abs(positions[obj] - goal_arr[obj]).max() > 1e-9:
            raise ValueError(f"static object {obj} is not at its goal at stage entry")
    if rng is None:
        rng = np.random.default_rng(0)
    if deadline is None and budget.wall_clock_limit is not None:
        deadline = time.monotonic() + budget.wall_clock_limit
    if stage_complete(ctx, positions):
        return []
    root = SearchNode(positions)
    for _ in range(budget.max_iterations):
        if deadline is not None and time.monotonic() > deadline:
            raise StageTimeout("stage wall-clock budget exhausted")
        if root.dead:
            raise StageExhausted("every branch of the stage tree is dead")
        leaf = select(root, budget.exploration_constant)
        if leaf.visits == 0:
            backpropagate(leaf, simulate(ctx, leaf, budget, rng))
            continue
        try:
            first_child = expand(ctx, leaf, budget)
        except ExpansionExhausted:
            _mark_dead(leaf)
            continue
        for child in leaf.children:
            if stage_complete(ctx, child.positions):
                return _action_chain(child)
        backpropagate(first_child, simulate(ctx, first_child, budget, rng))
    raise StageTimeout("stage iteration budget exhausted")
