"""Executable monitors for the row strategy's invariants.

Each predicate is a pure function, written independently of the strategy
code so the two sides cannot share a bug. Monitors attach to a game run and
observe every deletion; they never influence play.

Schedules are counted in deletion indices of the observed strategy instance,
with half = ceil(n/2) and q = (n // 2) // 2:

* ``even_block`` and ``center_tracking`` fire after each of the first
  ``half`` deletions (the block-building stage);
* ``hidden_bound`` fires on the same schedule but checks the true, still
  hidden position against the block's center;
* ``sealed_interval`` fires after deletions half+k+1 for k in [2, q], with
  sealed radius k-2 around the column the strategy just reacted to;
* ``sustained_radius`` fires after every later deletion with constant radius
  q-2;
* ``containment`` fires once, at deletion 8n+4 of the full trap, and checks
  that the true position is still strictly inside the box of radius 9n.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

from .board import Square
from .devil_strategies import BigSigmaDevil, SigmaDevil, SigmaHatDevil
from .game import GameConfig, GameState


def check_even_block(a_list: list[int]) -> bool:
    """Deleted columns form a consecutive block of step 2: {min + 2i}."""
    if not a_list:
        raise ValueError("a_list must be non-empty")
    expected = set(range(min(a_list), min(a_list) + 2 * len(a_list), 2))
    return set(a_list) == expected and len(set(a_list)) == len(a_list)


def check_center_tracking(a_list: list[int], last_x: int) -> bool:
    """|midrange(a_list) - last_x| <= 1, in exact arithmetic.

    The midrange may be half-integral, so compare 2*midrange against 2*x.
    """
    if not a_list:
        raise ValueError("a_list must be non-empty")
    return abs(min(a_list) + max(a_list) - 2 * last_x) <= 2


def check_hidden_bound(a_list: list[int], true_x: int, sneak: int) -> bool:
    """The hidden column is within sneak+1 of the block's midrange."""
    if not a_list:
        raise ValueError("a_list must be non-empty")
    return abs(min(a_list) + max(a_list) - 2 * true_x) <= 2 * (sneak + 1)


def check_sealed_interval(deleted_row, x1: int, k: int) -> bool:
    """Every column in [x1-(k-2), x1+(k-2)] is deleted on the target row.

    ``deleted_row`` answers membership for column indices. k = 2 reduces to
    the single column x1; the interval is empty (vacuously sealed) for k < 2.
    """
    return all(a in deleted_row for a in range(x1 - (k - 2), x1 + (k - 2) + 1))


@dataclass
class MonitorEntry:
    monitor: str
    round: int
    passed: bool
    context: dict


@dataclass
class MonitorReport:
    entries: list[MonitorEntry] = field(default_factory=list)

    @property
    def overall_pass(self) -> bool:
        return all(e.passed for e in self.entries)

    @property
    def failures(self) -> list[MonitorEntry]:
        return [e for e in self.entries if not e.passed]

    def to_json(self) -> dict:
        return {
            "overall_pass": self.overall_pass,
            "entries": [
                {
                    "monitor": e.monitor,
                    "round": e.round,
                    "passed": e.passed,
                    "context": e.context,
                }
                for e in self.entries
            ],
        }


class MonitorMisapplied(Exception):
    pass


class _SigmaView:
    """Locates the observable row-strategy instance inside a Devil strategy."""

    def __init__(self, devil) -> None:
        if isinstance(devil, SigmaDevil):
            self.state = devil.state
            self.frame = None
            self.n = devil.n
        elif isinstance(devil, SigmaHatDevil):
            self.state = devil.inner
            self.frame = devil.frame
            self.n = devil.n
        else:
            raise MonitorMisapplied(
                f"{type(devil).__name__} exposes no row-strategy state to monitor"
            )

    def lateral(self, sq: Square) -> int:
        return sq[0] if self.frame is None else self.frame.lateral_of(sq)

    def deleted_row(self, state: GameState):
        if self.frame is None:
            return state.deleted.row(self.n)
        frame, n, deleted = self.frame, self.n, state.deleted

        class _Row:
            def __contains__(self, a: int) -> bool:
                return frame.to_square(a, n) in deleted

        return _Row()


class SigmaMonitor:
    """Base for monitors that watch a row-strategy instance."""

    name = "sigma"

    def bind(self, config: GameConfig, devil) -> None:
        self.view = _SigmaView(devil)
        self.sneak = config.sneak

    def after_delete(self, state: GameState, rnd: int, last_revealed: Square) -> Optional[MonitorEntry]:
        raise NotImplementedError


class EvenBlockMonitor(SigmaMonitor):
    name = "even_block"

    def after_delete(self, state, rnd, last_revealed):
        st = self.view.state
        if rnd > st.half:
            return None
        a_list = list(st.a_list)
        return MonitorEntry(
            self.name,
            rnd,
            check_even_block(a_list),
            {"a_list": a_list},
        )


class CenterTrackingMonitor(SigmaMonitor):
    name = "center_tracking"

    def after_delete(self, state, rnd, last_revealed):
        st = self.view.state
        if rnd > st.half:
            return None
        a_list = list(st.a_list)
        x = self.view.lateral(last_revealed)
        return MonitorEntry(
            self.name,
            rnd,
            check_center_tracking(a_list, x),
            {"a_list": a_list, "last_x": x},
        )


class HiddenBoundMonitor(SigmaMonitor):
    name = "hidden_bound"

    def after_delete(self, state, rnd, last_revealed):
        st = self.view.state
        if rnd > st.half:
            return None
        a_list = list(st.a_list)
        true_x = self.view.lateral(state.angel)
        return MonitorEntry(
            self.name,
            rnd,
            check_hidden_bound(a_list, true_x, self.sneak),
            {"a_list": a_list, "true_x": true_x, "sneak": self.sneak},
        )


class SealedIntervalMonitor(SigmaMonitor):
    name = "sealed_interval"

    def after_delete(self, state, rnd, last_revealed):
        st = self.view.state
        half = st.half
        q = (st.n // 2) // 2
        k = rnd - half - 1
        if not 2 <= k <= q:
            return None
        x1 = self.view.lateral(last_revealed)
        row = self.view.deleted_row(state)
        return MonitorEntry(
            self.name,
            rnd,
            check_sealed_interval(row, x1, k),
            {"x1": x1, "k": k, "a_list": list(st.a_list)},
        )


class SustainedRadiusMonitor(SigmaMonitor):
    name = "sustained_radius"

    def after_delete(self, state, rnd, last_revealed):
        st = self.view.state
        half = st.half
        q = (st.n // 2) // 2
        if rnd <= half + q + 1:
            return None
        x1 = self.view.lateral(last_revealed)
        row = self.view.deleted_row(state)
        return MonitorEntry(
            self.name,
            rnd,
            check_sealed_interval(row, x1, q),  # constant radius q - 2
            {"x1": x1, "radius": q - 2, "a_list": list(st.a_list)},
        )


class ContainmentMonitor:
    """True position still strictly inside the 9n box when the corners finish."""

    name = "containment"

    def bind(self, config: GameConfig, devil) -> None:
        if not isinstance(devil, BigSigmaDevil):
            raise MonitorMisapplied("containment monitor requires the full-trap strategy")
        self.n = devil.n

    def after_delete(self, state, rnd, last_revealed):
        if rnd != 8 * self.n + 4:
            return None
        x, y = state.angel
        bound = 9 * self.n
        return MonitorEntry(
            self.name,
            rnd,
            max(abs(x), abs(y)) < bound,
            {"true_position": [x, y], "open_box_radius": bound},
        )


SIGMA_MONITORS = (
    EvenBlockMonitor,
    CenterTrackingMonitor,
    HiddenBoundMonitor,
    SealedIntervalMonitor,
    SustainedRadiusMonitor,
)


def standard_sigma_monitors() -> list:
    return [cls() for cls in SIGMA_MONITORS]


def attach_monitors(config: GameConfig, monitors) -> "callable":
    """Wrap run_game so the given monitors observe every deletion.

    Returns ``play(angel, devil) -> Trace`` with the report attached. Binding
    happens per game; incompatible monitor/strategy pairs raise
    MonitorMisapplied before play starts.
    """
    from .game import run_game

    def play(angel, devil):
        report = MonitorReport()
        bound_monitors = []
        for mon in monitors:
            mon.bind(config, devil)
            bound_monitors.append(mon)

        def observer(state, view, square):
            rnd = view.round
            last_revealed = view.last_revealed
            for mon in bound_monitors:
                entry = mon.after_delete(state, rnd, last_revealed)
                if entry is not None:
                    report.entries.append(entry)

        trace = run_game(config, angel, devil, observer=observer)
        trace.monitor_report = report
        return trace

    return play
