"""The two-stage row strategy: stage rules, light side, sizing rule.

Brute-force reference implementations live here and re-derive each choice
from the written conditions, independently of the production scan.
"""

from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from angeldevil import (
    AngelVariant,
    GameConfig,
    GameStatus,
    light_side,
    min_n_for_sneak,
    run_game,
    sigma_next,
)
from angeldevil.adversaries import ScriptedAngel
from angeldevil.devil_strategies import (
    InvariantViolation,
    NoCandidate,
    Side,
    SigmaDevil,
    SigmaStage,
    SigmaState,
    parse_devil,
)


def brute_stage_one(a_list, x, deleted, span=200):
    """Re-derive the stage-one choice by filtering all three conditions."""
    candidates = [
        b
        for b in range(x - span, x + span + 1)
        if b not in deleted and all(abs(b - a) > 1 for a in a_list)
    ]
    best = min(abs(b - x) for b in candidates)
    return min(b for b in candidates if abs(b - x) == best)


def brute_stage_two(deleted, x, light, span=200):
    candidates = [b for b in range(x - span, x + span + 1) if b not in deleted]
    best = min(abs(b - x) for b in candidates)
    ties = sorted(b for b in candidates if abs(b - x) == best)
    if len(ties) == 1:
        return ties[0]
    return ties[-1] if light is Side.RIGHT else ties[0]


def test_min_n_for_sneak_values():
    assert min_n_for_sneak(0) == 8
    assert min_n_for_sneak(1) == 12
    assert min_n_for_sneak(2) == 16
    for s in range(0, 12):
        n = min_n_for_sneak(s)
        assert (n // 2) // 2 - 2 >= s
        assert ((n - 1) // 2) // 2 - 2 < s


def test_light_side_examples():
    assert light_side([-4, -2, 0, 2], 0) is Side.RIGHT  # mean -1, 0 > -1
    assert light_side([-4, -2, 0, 2], -1) is Side.LEFT  # boundary goes left
    assert light_side([0], 5) is Side.RIGHT


@given(a_list=st.lists(st.integers(-40, 40), min_size=1, max_size=12),
       x=st.integers(-50, 50))
def test_light_side_matches_exact_mean(a_list, x):
    expected = Side.RIGHT if x > Fraction(sum(a_list), len(a_list)) else Side.LEFT
    assert light_side(a_list, x) is expected


def test_sigma_first_deletion_tracks_revealed_column():
    st_ = SigmaState(n=8)
    assert sigma_next(st_, 0, set()) == 0
    assert st_.a_list == [0]


def test_sigma_stage_one_examples():
    st_ = SigmaState(n=8, a_list=[0])
    assert sigma_next(st_, 1, {0}) == 2  # |2-1|=1 beats |-2-1|=3

    st_ = SigmaState(n=8, a_list=[0])
    assert sigma_next(st_, 0, {0}) == -2  # distance tie, leftmost wins


def test_sigma_stage_two_example():
    st_ = SigmaState(n=8, a_list=[-2, 0, 2, 4], stage=SigmaStage.TWO, light=Side.RIGHT)
    assert sigma_next(st_, 1, {-2, 0, 2, 4}) == 1  # odd gap right under the Angel


def test_stage_flips_after_half_and_light_fixed_once():
    n = 8  # half = 4
    st_ = SigmaState(n=n)
    deleted = set()
    for x in (0, 1, 2, 3):  # four stage-one rounds
        deleted.add(sigma_next(st_, x, deleted))
        assert st_.stage is SigmaStage.ONE
    assert st_.light is None
    deleted.add(sigma_next(st_, 4, deleted))  # fifth deletion flips the stage
    assert st_.stage is SigmaStage.TWO
    assert st_.light is Side.RIGHT  # x=4 > mean([0,2,4,6]) = 3
    light_then = st_.light
    deleted.add(sigma_next(st_, -10, deleted))
    assert st_.light is light_then  # computed once, never revised


@settings(max_examples=120, deadline=None)
@given(data=st.data())
def test_stage_one_matches_brute_force(data):
    n = data.draw(st.integers(4, 16))
    st_ = SigmaState(n=n)
    deleted = set()
    x = 0
    for _ in range(st_.half):
        a = sigma_next(st_, x, deleted)
        expected = brute_stage_one(st_.a_list[:-1], x, deleted)
        assert a == expected
        deleted.add(a)
        x += data.draw(st.integers(-1, 1))


@settings(max_examples=120, deadline=None)
@given(data=st.data())
def test_stage_two_matches_brute_force(data):
    n = data.draw(st.integers(4, 12))
    st_ = SigmaState(n=n)
    deleted = set()
    x = 0
    for step in range(n + 3):
        a = sigma_next(st_, x, deleted)
        if st_.stage is SigmaStage.TWO and len(st_.a_list) > st_.half + 1:
            assert a == brute_stage_two(deleted, x, st_.light)
        deleted.add(a)
        x += data.draw(st.integers(-1, 1))


def test_no_candidate_when_bounded_row_full():
    st_ = SigmaState(n=4, a_list=[0], stage=SigmaStage.TWO, light=Side.LEFT)
    deleted = set(range(-3, 4))
    with pytest.raises(NoCandidate):
        sigma_next(st_, 0, deleted, lo=-3, hi=3)


def test_bounded_stage_one_falls_back_to_nearest():
    # Everything non-adjacent is deleted; the strategy must still seal the row
    # rather than stall.
    st_ = SigmaState(n=8, a_list=[0])
    deleted = {a for a in range(-5, 6) if abs(a) > 1} | {0}
    a = sigma_next(st_, 0, deleted, lo=-5, hi=5)
    assert a in (-1, 1)


def test_sigma_devil_plays_row_n_and_enforces_block():
    config = GameConfig(variant=AngelVariant.UPWARD_ONLY, sneak=0, horizon=10)
    trace = run_game(config, ScriptedAngel([(0, 1)] * 6), SigmaDevil(5))
    assert trace.status is GameStatus.DEVIL_WON
    assert trace.final_round == 5
    deletions = [(e.square) for e in trace.events if hasattr(e, "square")]
    assert deletions == [(0, 5), (-2, 5), (2, 5), (-1, 5), (1, 5)]
    assert all(sq[1] == 5 for sq in deletions)


def test_sigma_devil_block_invariant_trips_on_poisoned_state():
    devil = SigmaDevil(8)
    devil.state.a_list = [0, 5]  # not an even block

    class _View:
        revealed = [(0, 2)]
        last_revealed = (0, 2)
        variant = AngelVariant.UPWARD_ONLY
        deleted = {(0, 8), (5, 8)}

    with pytest.raises(InvariantViolation):
        devil.choose(_View())


def test_parse_devil_grammar():
    assert parse_devil("sigma:n=5").n == 5
    assert parse_devil("sigma", sneak=0).n == 8  # defaults to the sizing rule
    assert parse_devil("sigma", sneak=2).n == 16
    hat = parse_devil("sigma_hat:n=8,m=72")
    assert (hat.n, hat.m) == (8, 72)
    assert parse_devil("sigma_hat:n=8").m == 72  # m defaults to 9n
    assert parse_devil("big_sigma:n=12").n == 12
    for bad in ("sigma:n=", "mystery", "sigma:k=3", "sigma:n=x"):
        with pytest.raises(ValueError):
            parse_devil(bad)
