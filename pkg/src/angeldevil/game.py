"""Rules engine for the delayed-information Angel vs Devil game.

Round structure: the Angel first makes ``sneak`` moves unopposed; afterwards
the Devil deletes one square and the Angel replies with one move, repeating.
Equivalently, before the Devil's r-th deletion the Angel has made exactly
``sneak + r - 1`` moves, and the Devil has been shown only the first ``r - 1``
of them (plus the start square). With ``sneak = 0`` the Devil therefore acts
first and has perfect information.

The engine is the referee: it sees the full state, adjudicates capture the
moment the Angel must move and cannot, and declares survival once ``horizon``
Devil rounds have elapsed.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from typing import Optional, Protocol, Sequence

from .board import (
    AngelVariant,
    DeletedBoard,
    Square,
    has_legal_move,
    legal_angel_moves,
)


class GameStatus(Enum):
    AWAITING_ANGEL = "awaiting_angel"
    AWAITING_DEVIL = "awaiting_devil"
    DEVIL_WON = "devil_won"
    ANGEL_SURVIVED = "angel_survived"


class GameError(Exception):
    """Base class for rule violations surfaced by the engine."""


class WrongPhase(GameError):
    pass


class IllegalMove(GameError):
    """An Angel strategy proposed a move the rules forbid."""

    def __init__(self, message: str, move_index: int, square: Square) -> None:
        super().__init__(message)
        self.move_index = move_index
        self.square = square


class DuplicateDeletion(GameError):
    """A Devil strategy proposed a square that is already deleted."""

    def __init__(self, message: str, round_index: int, square: Square) -> None:
        super().__init__(message)
        self.round_index = round_index
        self.square = square


@dataclass(frozen=True)
class GameConfig:
    variant: AngelVariant
    sneak: int = 0
    preset_deleted: frozenset[Square] = frozenset()
    start: Square = (0, 0)
    horizon: int = 1000

    def __post_init__(self) -> None:
        if self.sneak < 0:
            raise ValueError("sneak must be non-negative")
        if self.horizon < 1:
            raise ValueError("horizon must be at least 1")


class _PrefixView(Sequence):
    """Read-only snapshot of the first ``length`` items of a growing list.

    Zero-copy: devil views are created every round and games can run for tens
    of thousands of rounds, so copying the prefix each time would be O(n^2).
    """

    __slots__ = ("_items", "_length")

    def __init__(self, items: list, length: int) -> None:
        self._items = items
        self._length = length

    def __len__(self) -> int:
        return self._length

    def __getitem__(self, idx):
        if isinstance(idx, slice):
            return list(self._items[: self._length])[idx]
        if idx < 0:
            idx += self._length
        if not 0 <= idx < self._length:
            raise IndexError(idx)
        return self._items[idx]

    def __iter__(self):
        for i in range(self._length):
            yield self._items[i]

    def __eq__(self, other) -> bool:
        return list(self) == list(other)


class DevilView:
    """Everything the Devil is allowed to see before choosing deletion ``round``.

    ``revealed`` holds the start square plus the Angel's first ``round - 1``
    moves; the Angel's latest ``sneak`` moves are hidden. ``deleted`` is the
    full deleted set, which the Devil knows anyway (presets plus its own
    deletions). Strategies must treat every field as read-only.
    """

    __slots__ = (
        "revealed",
        "_devil_moves",
        "preset_deleted",
        "round",
        "sneak",
        "variant",
        "deleted",
        "last_revealed",
    )

    def __init__(
        self, revealed, devil_moves, preset_deleted, round, sneak, variant, deleted,
        last_revealed=None,
    ):
        self.revealed = revealed
        self._devil_moves = devil_moves
        self.preset_deleted = preset_deleted
        self.round = round
        self.sneak = sneak
        self.variant = variant
        self.deleted = deleted
        self.last_revealed: Square = revealed[-1] if last_revealed is None else last_revealed

    @property
    def deletions(self) -> Sequence[Square]:
        return _PrefixView(self._devil_moves, self.round - 1)


@dataclass
class GameState:
    """Full true state of one game; mutated in place by the apply functions."""

    config: GameConfig
    positions: list[Square]
    deleted: DeletedBoard
    devil_moves: list[Square] = field(default_factory=list)
    status: GameStatus = GameStatus.AWAITING_ANGEL
    final_round: Optional[int] = None
    # Cached: does the angel's current square have at least one legal move?
    # Maintained by the apply functions; None means "not computed yet".
    _mobile: Optional[bool] = field(default=None, repr=False, compare=False)
    _offsets: tuple = field(default=(), repr=False, compare=False)
    _offset_set: frozenset = field(default=frozenset(), repr=False, compare=False)

    def __post_init__(self) -> None:
        self._offsets = self.config.variant.offsets
        self._offset_set = self.config.variant.offset_set

    @property
    def angel(self) -> Square:
        return self.positions[-1]

    @property
    def moves_made(self) -> int:
        return len(self.positions) - 1

    @property
    def devil_rounds(self) -> int:
        return len(self.devil_moves)

    def legal_moves(self) -> set[Square]:
        return legal_angel_moves(self.config.variant, self.angel, self.deleted)

    def _is_mobile(self) -> bool:
        if self._mobile is None:
            self._mobile = has_legal_move(self._offsets, self.angel, self.deleted.raw)
        return self._mobile


def initial_state(config: GameConfig) -> GameState:
    state = GameState(
        config=config,
        positions=[config.start],
        deleted=DeletedBoard(config.preset_deleted),
    )
    if config.sneak == 0:
        state.status = GameStatus.AWAITING_DEVIL
    elif not state._is_mobile():
        # The Angel must open the game with a move and has none.
        state.status = GameStatus.DEVIL_WON
        state.final_round = 0
    return state


def apply_angel_move(state: GameState, to: Square) -> GameState:
    if state.status is not GameStatus.AWAITING_ANGEL:
        raise WrongPhase(f"angel cannot move while {state.status.value}")
    index = len(state.positions)
    frm = state.positions[-1]
    raw = state.deleted.raw
    dy = to[1] - frm[1]
    if (to[0] - frm[0], dy) not in state._offset_set:
        raise IllegalMove(f"move {index}: {frm} -> {to} is not a legal offset", index, to)
    if to in raw:
        raise IllegalMove(f"move {index}: {to} is deleted", index, to)
    state.positions.append(to)
    # Mobility: if the move is reversible and the departed square is intact,
    # the angel can always step back, so no neighbourhood probe is needed.
    variant = state.config.variant
    if (
        (variant is AngelVariant.UNRESTRICTED or dy == 0)
        and frm not in raw
    ):
        state._mobile = True
    else:
        state._mobile = has_legal_move(state._offsets, to, raw)
    if index == state.config.sneak + len(state.devil_moves):
        state.status = GameStatus.AWAITING_DEVIL
    elif not state._mobile:
        # Still inside the opening burst and already stuck: the Angel is
        # obliged to keep moving, so this is capture.
        state.status = GameStatus.DEVIL_WON
        state.final_round = state.devil_rounds
    return state


def apply_devil_delete(state: GameState, sq: Square) -> GameState:
    if state.status is not GameStatus.AWAITING_DEVIL:
        raise WrongPhase(f"devil cannot delete while {state.status.value}")
    rnd = len(state.devil_moves) + 1
    raw = state.deleted.raw
    if sq in raw:
        raise DuplicateDeletion(f"round {rnd}: {sq} already deleted", rnd, sq)
    raw.add(sq)
    rows = state.deleted._rows
    if rows is not None:
        row = rows.get(sq[1])
        if row is None:
            rows[sq[1]] = {sq[0]}
        else:
            row.add(sq[0])
    state.devil_moves.append(sq)
    angel = state.positions[-1]
    if (
        abs(sq[0] - angel[0]) <= 1
        and abs(sq[1] - angel[1]) <= 1
    ):
        # Only a deletion touching the angel's neighbourhood (or its own
        # square) can change whether it has a move.
        state._mobile = has_legal_move(state._offsets, angel, raw)
    if not state._is_mobile():
        state.status = GameStatus.DEVIL_WON
        state.final_round = rnd
    elif rnd >= state.config.horizon:
        state.status = GameStatus.ANGEL_SURVIVED
        state.final_round = rnd
    else:
        state.status = GameStatus.AWAITING_ANGEL
    return state


def devil_view(state: GameState) -> DevilView:
    """Project the state down to what the Devil may know right now.

    Before deletion r the revealed prefix is exactly the start square plus the
    Angel's first r - 1 moves; nothing derived from later moves is included.
    """
    if state.status is not GameStatus.AWAITING_DEVIL:
        raise WrongPhase(f"no devil view while {state.status.value}")
    rnd = len(state.devil_moves) + 1
    return DevilView(
        _PrefixView(state.positions, rnd),
        state.devil_moves,
        state.config.preset_deleted,
        rnd,
        state.config.sneak,
        state.config.variant,
        state.deleted,
        state.positions[rnd - 1],
    )


class AngelStrategy(Protocol):
    def choose(self, state: GameState) -> Square: ...


class DevilStrategy(Protocol):
    def choose(self, view: DevilView) -> Square: ...


def run_game(config: GameConfig, angel, devil, observer=None, record: bool = True):
    """Play one full game and return its Trace.

    ``angel.choose`` receives the full true state (the Angel has perfect
    information); ``devil.choose`` receives only a DevilView. ``observer``,
    when given, is called as ``observer(state, view, square)`` after every
    deletion, before the Angel replies; it must not mutate anything.
    ``record=False`` skips event accumulation for bulk sweeps where only the
    outcome matters; the trace then has an empty event list.
    """
    from .trace import AngelMove, DevilDelete, Trace

    state = initial_state(config)
    events: list = []
    angel_choose = angel.choose
    devil_choose = devil.choose
    awaiting_angel = GameStatus.AWAITING_ANGEL
    awaiting_devil = GameStatus.AWAITING_DEVIL
    while True:
        status = state.status
        if status is awaiting_angel:
            mv = angel_choose(state)
            index = len(state.positions)
            apply_angel_move(state, mv)
            if record:
                events.append(AngelMove(index, mv))
        elif status is awaiting_devil:
            view = devil_view(state)
            sq = devil_choose(view)
            apply_devil_delete(state, sq)
            if record:
                events.append(DevilDelete(view.round, sq))
            if observer is not None:
                observer(state, view, sq)
        else:
            break
    return Trace(
        config=config,
        events=events,
        status=state.status,
        final_round=state.final_round,
        final_state=state,
    )
