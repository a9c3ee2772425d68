
import numpy as np
import pytest

from shelfplan import (
    Action,
    Point,
    SceneConfig,
    SearchBudget,
    SearchNode,
    StageContext,
    action_valid,
    backpropagate,
    distance,
    expand,
    generate_scene,
    get_blocking_objects,
    make_scene,
    new_region,
    select,
    simulate,
    solve_stage,
    stage_complete,
)
from shelfplan.geometry import Disc, tunnel_intersects_disc
from shelfplan.motion import home_tunnel

from oracles import bfs_min_steps

BUDGET = SearchBudget(max_iterations=5000, wall_clock_limit=None)


def ctx_for(scene, order=None, index=0):
    if order is None:
        order = list(range(scene.n_objects))
    return StageContext.for_stage(scene, order, index)


def manual_children(root, stats):
    """Attach children with prescribed (visits, total_reward) to a root node."""
    children = []
    for i, (visits, total) in enumerate(stats):
        child = SearchNode(
            root.positions.copy(),
            incoming=Action(0, Point(1 + i, 1), Point(2 + i, 2)),
            parent=root,
        )
        child.visits = visits
        child.total_reward = total
        root.children.append(child)
        children.append(child)
    root.visits = sum(v for v, _ in stats)
    return children


class TestSelect:
    def setup_method(self):
        self.root = SearchNode(np.zeros((1, 2)))

    def test_unvisited_child_first(self):
        children = manual_children(self.root, [(0, 0.0), (5, -10.0)])
        assert select(self.root, 1.4) is children[0]

    def test_lower_visits_wins_on_equal_means(self):
        children = manual_children(self.root, [(2, -6.0), (8, -24.0)])
        assert select(self.root, 1.4) is children[0]

    def test_pure_exploitation_picks_best_mean(self):
        children = manual_children(self.root, [(3, -9.0), (3, -21.0)])
        assert select(self.root, 0.0) is children[0]

    def test_reward_shift_invariance(self):
        stats = [(4, -12.0), (2, -11.0), (6, -30.0)]
        children = manual_children(self.root, stats)
        pick = select(self.root, 0.9)
        shifted_root = SearchNode(np.zeros((1, 2)))
        shifted = manual_children(shifted_root, [(v, t + 7.5 * v) for v, t in stats])
        assert shifted[children.index(pick)] is select(shifted_root, 0.9)

    def test_dead_children_skipped(self):
        children = manual_children(self.root, [(1, -1.0), (4, -40.0)])
        children[0].dead = True
        assert select(self.root, 1.4) is children[1]


class TestGetBlockingObjects:
    def test_focus_alone(self):
        scene = make_scene([Point(10, 5)], [Point(10, 15)])
        ctx = ctx_for(scene)
        assert get_blocking_objects(ctx, scene.start) == set()

    def test_object_on_goal_placing_tunnel(self):
        scene = make_scene([Point(4, 5), Point(10, 8)], [Point(10, 12), Point(16, 14)])
        ctx = ctx_for(scene, order=[0, 1])
        assert get_blocking_objects(ctx, scene.start) == {1}

    def test_goal_shadow_blocks_future_pickup(self):
        # focus goal (10, 6) sits between home and object 1 at (10, 12)
        scene = make_scene([Point(4, 5), Point(10, 12)], [Point(10, 6), Point(16, 14)])
        ctx = ctx_for(scene, order=[0, 1])
        pick = home_tunnel(scene, scene.start[1])
        assert tunnel_intersects_disc(pick, Disc(scene.goal[0], 1.0))  # construction sanity
        assert get_blocking_objects(ctx, scene.start) == {1}


class TestNewRegion:
    def test_width_one_returns_nearest_valid(self):
        scene = make_scene(
            [Point(4, 4), Point(10, 10), Point(16, 16)],
            [Point(4, 12), Point(10, 18), Point(16, 8)],
        )
        ctx = ctx_for(scene, order=[0, 1, 2])
        got = new_region(ctx, 1, set(), scene.start, 1)
        assert len(got) == 1
        # scalar re-derivation of the acceptance rule, nearest first
        pos = np.asarray(scene.start, float)
        b = scene.object_radius
        tunnels = [home_tunnel(scene, scene.start[0]), home_tunnel(scene, scene.goal[0])]
        best = None
        for cand in sorted(scene.candidates, key=lambda p: (distance(p, scene.start[1]), p.y, p.x)):
            if cand == scene.start[1]:
                continue
            if any(distance(cand, scene.start[o]) < 2 * b for o in (0, 2)):
                continue
            if any(tunnel_intersects_disc(t, Disc(cand, b)) for t in tunnels):
                continue
            place = home_tunnel(scene, cand)
            if any(tunnel_intersects_disc(place, Disc(scene.start[o], b)) for o in (0, 2)):
                continue
            best = cand
            break
        assert got[0] == best

    def test_full_rejection_returns_empty(self):
        # a tunnel as wide as the workspace rejects every candidate
        scene = make_scene([Point(4, 4), Point(16, 16)], [Point(4, 12), Point(16, 8)], tunnel_width=40)
        ctx = ctx_for(scene, order=[0, 1])
        assert new_region(ctx, 1, set(), scene.start, 5) == []

    def test_accepted_regions_survive_action_validation(self):
        scene = make_scene(
            [Point(4, 4), Point(10, 10), Point(16, 16)],
            [Point(4, 12), Point(10, 18), Point(16, 8)],
        )
        ctx = ctx_for(scene, order=[0, 1, 2])
        for target in new_region(ctx, 1, {0}, scene.start, 5):
            act = Action(1, scene.start[1], target)
            assert action_valid(scene, scene.start, act)


class TestExpand:
    def test_unblocked_focus_single_goal_child(self):
        scene = make_scene([Point(10, 5)], [Point(10, 15)])
        ctx = ctx_for(scene)
        root = SearchNode(np.asarray(scene.start, float))
        root.visits = 1
        child = expand(ctx, root, BUDGET)
        assert len(root.children) == 1
        assert child.incoming == Action(0, Point(10, 5), Point(10, 15))
        reward = simulate(ctx, child, BUDGET, np.random.default_rng(0))
        assert reward == pytest.approx(-10.0)

    def test_single_blocker_children_relocate_it_only(self):
        scene = make_scene([Point(4, 5), Point(10, 8)], [Point(10, 12), Point(16, 14)])
        ctx = ctx_for(scene, order=[0, 1])
        root = SearchNode(np.asarray(scene.start, float))
        root.visits = 1
        expand(ctx, root, BUDGET)
        assert root.children
        for child in root.children:
            assert child.incoming.obj == 1
            assert action_valid(scene, root.arrangement, child.incoming)
            moved = [o for o in range(2) if child.arrangement[o] != root.arrangement[o]]
            assert moved == [1]

    def test_focus_relocates_itself_when_it_traps_its_blocker(self):
        # object 1 occupies the focus goal; its escape tunnel crosses the focus
        scene = make_scene([Point(10, 5), Point(10, 12)], [Point(10, 12), Point(16, 5)])
        ctx = ctx_for(scene, order=[0, 1])
        root = SearchNode(np.asarray(scene.start, float))
        root.visits = 1
        expand(ctx, root, BUDGET)
        assert any(child.incoming.obj == 0 for child in root.children)


class TestSimulate:
    def test_node_with_focus_at_goal(self):
        scene = make_scene([Point(10, 5)], [Point(10, 15)])
        ctx = ctx_for(scene)
        root = SearchNode(np.asarray(scene.start, float))
        root.visits = 1
        child = expand(ctx, root, BUDGET)
        assert stage_complete(ctx, child.positions)
        # rollout length 0: reward is the root-to-node distance, negated
        assert simulate(ctx, child, BUDGET, np.random.default_rng(3)) == pytest.approx(-10.0)

    def test_unblocked_focus_costs_straight_line(self):
        scene = make_scene([Point(10, 5)], [Point(13, 9)])
        ctx = ctx_for(scene)
        root = SearchNode(np.asarray(scene.start, float))
        assert simulate(ctx, root, BUDGET, np.random.default_rng(0)) == pytest.approx(-5.0)

    def test_same_seed_same_rollout(self, flip_scene):
        ctx = ctx_for(flip_scene, order=[0, 1, 2, 3])
        root = SearchNode(np.asarray(flip_scene.start, float))
        rewards = [
            simulate(ctx, root, BUDGET, np.random.default_rng(11)),
            simulate(ctx, root, BUDGET, np.random.default_rng(11)),
        ]
        assert rewards[0] == rewards[1]

    def test_rewards_never_positive(self):
        rng = np.random.default_rng(2)
        for seed in range(8):
            scene = generate_scene(SceneConfig(n_objects=4, rng_seed=seed))
            ctx = ctx_for(scene, order=list(range(4)))
            root = SearchNode(np.asarray(scene.start, float))
            assert simulate(ctx, root, BUDGET, rng) <= 0.0


class TestBackpropagate:
    def test_updates_whole_path(self):
        scene = make_scene([Point(10, 5)], [Point(10, 15)])
        nodes = [SearchNode(np.asarray(scene.start, float))]
        for depth in range(3):
            child = SearchNode(
                nodes[-1].positions.copy(),
                incoming=Action(0, Point(1 + depth, 1), Point(2 + depth, 2)),
                parent=nodes[-1],
            )
            nodes[-1].children.append(child)
            nodes.append(child)
        backpropagate(nodes[-1], -7.0)
        assert [n.visits for n in nodes] == [1, 1, 1, 1]
        backpropagate(nodes[-1], -3.0)
        assert all(n.total_reward == -10.0 for n in nodes)
        assert all(n.visits == 2 for n in nodes)


class TestSolveStage:
    def test_unblocked_focus_single_action(self):
        scene = make_scene([Point(10, 5), Point(16, 16)], [Point(10, 15), Point(16, 8)])
        ctx = ctx_for(scene, order=[0, 1])
        actions = solve_stage(ctx, scene.start, BUDGET, np.random.default_rng(0))
        assert actions == [Action(0, Point(10, 5), Point(10, 15))]

    def test_focus_already_at_goal(self):
        scene = make_scene([Point(10, 12), Point(4, 5)], [Point(10, 12), Point(4, 15)])
        ctx = ctx_for(scene, order=[0, 1])
        assert solve_stage(ctx, scene.start, BUDGET, np.random.default_rng(0)) == []

    def test_focus_at_goal_but_trapping_another(self):
        # the finished focus would seal object 1 in; the stage must shuffle
        scene = make_scene([Point(10, 5), Point(10, 12)], [Point(10, 5), Point(16, 12)])
        ctx = ctx_for(scene, order=[0, 1])
        actions = solve_stage(ctx, scene.start, BUDGET, np.random.default_rng(0))
        assert actions  # something had to move
        positions = list(scene.start)
        for act in actions:
            assert action_valid(scene, tuple(positions), act)
            positions[act.obj] = act.dst
        assert stage_complete(ctx, np.asarray(positions, float))

    def test_matches_bfs_on_swap_stage(self):
        # coarse 5x5 grid; object 1 sits on the focus goal
        scene = make_scene(
            [Point(5.5, 10), Point(10, 10)],
            [Point(10, 10), Point(14.5, 10)],
            grid_resolution=4.5,
        )
        ctx = ctx_for(scene, order=[0, 1])

        def stage_goal(state):
            if state[0] != scene.goal[0]:
                return False
            goal_disc = Disc(scene.goal[0], scene.object_radius)
            pick = home_tunnel(scene, state[1])
            return not tunnel_intersects_disc(pick, goal_disc)

        oracle = bfs_min_steps(scene, stage_goal, max_depth=4)
        actions = solve_stage(ctx, scene.start, BUDGET, np.random.default_rng(0))
        assert oracle == 2
        assert len(actions) == oracle

    def test_solution_replays_validly(self):
        for seed in (0, 1, 2, 3):
            scene = generate_scene(SceneConfig(n_objects=5, rng_seed=seed))
            ctx = ctx_for(scene, order=list(range(5)), index=0)
            actions = solve_stage(ctx, scene.start, BUDGET, np.random.default_rng(seed))
            positions = list(scene.start)
            for act in actions:
                assert action_valid(scene, tuple(positions), act)
                positions[act.obj] = act.dst
            assert positions[0] == scene.goal[0]
