"""ASCII rendering of traces and states."""

import pytest

from angeldevil import AngelVariant, GameConfig, run_game
from angeldevil.adversaries import RandomAngel, ScriptedAngel, side_to_side_config
from angeldevil.devil_strategies import BigSigmaDevil, SigmaDevil, corner_squares
from angeldevil.game import initial_state
from angeldevil.render import render_state, render_trace, state_at_round


def test_fresh_board_shows_angel_at_center():
    state = initial_state(GameConfig(variant=AngelVariant.UNRESTRICTED, sneak=1, horizon=5))
    art = render_state(state, viewport=(-2, -2, 2, 2))
    assert art.splitlines() == [
        ".....",
        ".....",
        "..A..",
        ".....",
        ".....",
    ]


def test_walls_render_as_columns():
    n, m = 2, 3
    config = side_to_side_config(n, m, 0)
    state = initial_state(config)
    art = render_state(state, viewport=(-4, 0, 4, 2))
    assert art.splitlines() == [
        ".#.....#.",   # y = 2
        ".#.....#.",   # y = 1
        ".#..A..#.",   # y = 0
    ]


def test_revealed_marker_lags_the_angel():
    config = GameConfig(variant=AngelVariant.UPWARD_ONLY, sneak=2, horizon=3)

    class FarDevil:
        def __init__(self):
            self.r = 0

        def choose(self, view):
            self.r += 1
            return (30, 30 + self.r)

    trace = run_game(config, ScriptedAngel([(0, 1)] * 6), FarDevil())
    art = render_trace(trace, 1, viewport=(-1, 0, 1, 4))
    lines = art.splitlines()
    assert lines[0].startswith("round 1:")
    # angel has made 3 moves (burst of 2 plus one reply); marker trails by 2
    assert lines[1 + (4 - 3)] == ".A."
    assert lines[1 + (4 - 1)] == ".a."


def test_corner_walls_render():
    # after the corner phase the top-right L is exactly {(9,9),(10,9),(9,10)}
    n = 1
    config = GameConfig(variant=AngelVariant.UNRESTRICTED, sneak=0, horizon=500)
    trace = run_game(config, RandomAngel(2), BigSigmaDevil(n))
    art = render_trace(trace, 8 * n + 4, viewport=(8, 8, 11, 11))
    lines = art.splitlines()[1:]
    assert lines == [
        "....",   # y = 11
        ".#..",   # y = 10: (9,10)
        ".##.",   # y = 9:  (9,9), (10,9)
        "....",   # y = 8
    ]
    for sq in corner_squares(n):
        if 8 <= sq[0] <= 11 and 8 <= sq[1] <= 11:
            assert lines[11 - sq[1]][sq[0] - 8] == "#"


def test_render_round_out_of_range():
    config = GameConfig(variant=AngelVariant.UPWARD_ONLY, sneak=0, horizon=4)
    trace = run_game(config, ScriptedAngel([(0, 1)] * 6), SigmaDevil(100))
    with pytest.raises(ValueError):
        render_trace(trace, 99)
    with pytest.raises(ValueError):
        state_at_round(trace, -1)


def test_state_at_round_counts_deletions():
    config = GameConfig(variant=AngelVariant.UPWARD_ONLY, sneak=0, horizon=6)
    trace = run_game(config, ScriptedAngel([(0, 1)] * 7), SigmaDevil(5))
    for r in range(0, 6):
        state = state_at_round(trace, r)
        assert state.devil_rounds == r
