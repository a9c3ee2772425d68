from __future__ import annotations

import pytest

from shelfplan import Point, Scene, make_scene


@pytest.fixture
def flip_scene() -> Scene:
    """Four objects in two rows, start and goal rows swapped front/back."""
    start = [Point(7, 6), Point(13, 6), Point(7, 14), Point(13, 14)]
    goal = [Point(7, 14), Point(13, 14), Point(7, 6), Point(13, 6)]
    return make_scene(start, goal)


@pytest.fixture
def collinear_scene() -> Scene:
    """Object 0 sits between the robot home and object 1 (same x as home)."""
    start = [Point(10, 5), Point(10, 12)]
    goal = [Point(4, 5), Point(16, 12)]
    return make_scene(start, goal)
