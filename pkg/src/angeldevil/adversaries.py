"""Angel strategies and the search oracles that attack the Devil.

The Angel strategies are deliberately varied attackers: scripted move lists
for directed tests, a seeded random walker, a greedy evader, a zig-zag
sweeper, and a wall hugger. The oracles enumerate Angel behaviour against a
deterministic Devil: exhaustively for the upward-only game (small enough to
close), and budgeted with a transposition table for the side-to-side game.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Optional

from .board import AngelVariant, Square, square_key
from .game import GameConfig, GameState
from .devil_strategies import (
    SigmaDevil,
    SigmaHatDevil,
    SigmaState,
    sigma_next,
    wall_squares,
)


class StrategyMisuse(Exception):
    pass


class ScriptExhausted(StrategyMisuse):
    pass


_MASK64 = (1 << 64) - 1
_RING8 = ((-1, 1), (0, 1), (1, 1), (-1, 0), (1, 0), (-1, -1), (0, -1), (1, -1))


class SplitMix64:
    """SplitMix64 generator: 64-bit state, public-domain constants.

    Chosen over the stdlib generator so that traces are reproducible from the
    seed alone on any platform, by reimplementation if necessary.
    """

    __slots__ = ("state",)

    def __init__(self, seed: int) -> None:
        self.state = seed & _MASK64

    def next_u64(self) -> int:
        self.state = (self.state + 0x9E3779B97F4A7C15) & _MASK64
        z = self.state
        z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _MASK64
        z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _MASK64
        return z ^ (z >> 31)

    def below(self, bound: int) -> int:
        return self.next_u64() % bound


# Compass tokens accepted by the scripted-angel grammar; U/D/L/R aliases
# match the usual keyboard shorthand.
DIRECTION_OFFSETS: dict[str, Square] = {
    "N": (0, 1), "U": (0, 1),
    "S": (0, -1), "D": (0, -1),
    "E": (1, 0), "R": (1, 0),
    "W": (-1, 0), "L": (-1, 0),
    "NE": (1, 1), "UR": (1, 1),
    "NW": (-1, 1), "UL": (-1, 1),
    "SE": (1, -1), "DR": (1, -1),
    "SW": (-1, -1), "DL": (-1, -1),
}


class ScriptedAngel:
    """Plays a fixed list of offsets; any rule violation surfaces as-is."""

    def __init__(self, offsets: list[Square]) -> None:
        self.offsets = list(offsets)
        self._i = 0

    def choose(self, state: GameState) -> Square:
        if self._i >= len(self.offsets):
            raise ScriptExhausted(f"script ended after {self._i} moves but the game goes on")
        dx, dy = self.offsets[self._i]
        self._i += 1
        x, y = state.angel
        return (x + dx, y + dy)


class RandomAngel:
    """Uniform choice among legal moves, driven by a SplitMix64 stream.

    Legal moves are ranked row-major before the modular pick so the move
    sequence depends only on the seed.
    """

    def __init__(self, seed: int) -> None:
        self.seed = seed
        self._rng = SplitMix64(seed)
        self._offsets = None

    def choose(self, state: GameState) -> Square:
        x, y = state.positions[-1]
        raw = state.deleted.raw
        offsets = self._offsets
        if offsets is None:
            offsets = self._offsets = state.config.variant.canonical_offsets
        legal = [
            sq
            for dx, dy in offsets
            if (sq := (x + dx, y + dy)) not in raw
        ]
        if not legal:
            raise StrategyMisuse("no legal move to choose from")
        return legal[self._rng.next_u64() % len(legal)]


GREEDY_VISION = 2  # Chebyshev radius of the greedy evader's sight


class GreedyEscapeAngel:
    """Maximises distance to the nearest deleted square the Angel can see.

    The Angel's sight is the window of Chebyshev radius GREEDY_VISION around
    itself and distances are capped there, so with radius 2 a candidate
    scores 1 if some deleted square is adjacent to it and 2 otherwise (the
    cap makes the two formulations equivalent). Ties prefer forward progress
    (larger dy), then the leftmost square.

    An empty window is remembered between moves: the piece drifts one step
    per round and exactly one deletion lands per round, so only the rim that
    slid into view plus the newest deletions need re-checking.
    """

    def __init__(self) -> None:
        self._offsets = None
        self._empty_at = None  # ((x, y), deletions_seen) when the window was empty

    def _window_empty(self, cx: int, cy: int, raw, devil_moves) -> bool:
        reach = GREEDY_VISION
        memo = self._empty_at
        if memo is not None:
            (px, py), seen = memo
            if abs(cx - px) <= 1 and abs(cy - py) <= 1:
                ok = True
                for i in range(seen, len(devil_moves)):
                    sq = devil_moves[i]
                    if abs(sq[0] - cx) <= reach and abs(sq[1] - cy) <= reach:
                        ok = False
                        break
                if ok and cx != px:
                    edge = cx + (reach if cx > px else -reach)
                    for k in range(-reach, reach + 1):
                        if (edge, cy + k) in raw:
                            ok = False
                            break
                if ok and cy != py:
                    edge = cy + (reach if cy > py else -reach)
                    for k in range(-reach, reach + 1):
                        if (cx + k, edge) in raw:
                            ok = False
                            break
                if ok:
                    return True
        for wy in range(-reach, reach + 1):
            yy = cy + wy
            for wx in range(-reach, reach + 1):
                if (cx + wx, yy) in raw:
                    return False
        return True

    def choose(self, state: GameState) -> Square:
        cx, cy = state.positions[-1]
        raw = state.deleted.raw
        offsets = self._offsets
        if offsets is None:
            offsets = self._offsets = state.config.variant.canonical_offsets
        reach = GREEDY_VISION
        any_seen = not self._window_empty(cx, cy, raw, state.devil_moves)
        self._empty_at = None if any_seen else ((cx, cy), len(state.devil_moves))
        best = None
        best_key = None
        for odx, ody in offsets:
            sq = (cx + odx, cy + ody)
            if sq in raw:
                continue
            dist = reach
            if any_seen:
                x, y = sq
                for ddx, ddy in _RING8:
                    if (x + ddx, y + ddy) in raw:
                        dist = 1
                        break
            key = (dist, ody, -sq[0])
            if best_key is None or key > best_key:
                best_key = key
                best = sq
        if best is None:
            raise StrategyMisuse("no legal move to choose from")
        return best


class ZigZagAngel:
    """Sweeps sideways, flipping direction every ``period`` moves.

    Prefers climbing while drifting toward the current sweep direction;
    always falls back to any legal move.
    """

    def __init__(self, period: int = 4) -> None:
        if period < 1:
            raise ValueError("period must be positive")
        self.period = period
        self._count = 0

    def choose(self, state: GameState) -> Square:
        direction = 1 if (self._count // self.period) % 2 == 0 else -1
        self._count += 1
        x, y = state.positions[-1]
        raw = state.deleted.raw
        preference = (
            (direction, 1), (0, 1), (-direction, 1),
            (direction, 0), (-direction, 0),
            (direction, -1), (0, -1), (-direction, -1),
        )
        offsets = state._offset_set
        for off in preference:
            if off in offsets:
                sq = (x + off[0], y + off[1])
                if sq not in raw:
                    return sq
        raise StrategyMisuse("no legal move to choose from")


class WallHuggerAngel:
    """Moves to the square touching the most deleted neighbours.

    Ties prefer forward progress, then the leftmost square; on an untouched
    board this drifts up-left.
    """

    def __init__(self) -> None:
        self._offsets = None

    def choose(self, state: GameState) -> Square:
        cx, cy = state.positions[-1]
        raw = state.deleted.raw
        offsets = self._offsets
        if offsets is None:
            offsets = self._offsets = state.config.variant.canonical_offsets
        best = None
        best_key = None
        for odx, ody in offsets:
            sq = (cx + odx, cy + ody)
            if sq in raw:
                continue
            x, y = sq
            touching = 0
            for dx, dy in _RING8:
                if (x + dx, y + dy) in raw:
                    touching += 1
            key = (touching, ody, -x)
            if best_key is None or key > best_key:
                best_key = key
                best = sq
        if best is None:
            raise StrategyMisuse("no legal move to choose from")
        return best


def parse_angel(text: str):
    """Parse an Angel strategy string.

    Grammar: ``script:<dir>,<dir>,...`` | ``random[:seed=<int>]`` | ``greedy``
    | ``zigzag[:period=<int>]`` | ``wallhug``.
    """
    name, _, argstr = text.partition(":")
    name = name.strip()
    if name == "script":
        if not argstr:
            raise ValueError("script needs a comma-separated move list")
        offsets = []
        for token in argstr.split(","):
            token = token.strip().upper()
            if token not in DIRECTION_OFFSETS:
                raise ValueError(f"unknown direction {token!r}")
            offsets.append(DIRECTION_OFFSETS[token])
        return ScriptedAngel(offsets)
    args: dict[str, int] = {}
    if argstr:
        for part in argstr.split(","):
            key, _, value = part.partition("=")
            try:
                args[key.strip()] = int(value)
            except ValueError:
                raise ValueError(f"argument {part!r} is not key=int") from None
    if name == "random":
        return RandomAngel(seed=args.pop("seed", 0))
    if name == "greedy":
        return GreedyEscapeAngel()
    if name == "zigzag":
        return ZigZagAngel(period=args.pop("period", 4))
    if name == "wallhug":
        return WallHuggerAngel()
    raise ValueError(f"unknown angel strategy {name!r}")


def greedy_escape_move(state: GameState) -> Square:
    """The greedy evader's choice as a standalone function."""
    return GreedyEscapeAngel().choose(state)


# ---------------------------------------------------------------------------
# Verdicts and the search oracles
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class AllCaptured:
    max_devil_rounds: int
    paths_explored: int


@dataclass(frozen=True)
class Escape:
    witness: object  # Trace; replays to a game the Devil fails to win
    paths_explored: int = 0


@dataclass(frozen=True)
class Inconclusive:
    depth_limit: int
    paths_explored: int = 0


Verdict = object  # AllCaptured | Escape | Inconclusive


class _EscapeFound(Exception):
    def __init__(self, xs: list[int]) -> None:
        self.xs = xs


def exhaustive_check_upward(
    n: int,
    s: int,
    on_delete: Optional[Callable] = None,
    stop_on_escape: bool = True,
):
    """Enumerate every upward-only Angel against the row strategy on row n.

    The Angel's row equals its move count, so each path ends within n moves:
    either captured on row n - 1 with all three targets gone, or stepping
    onto row n, which refutes the strategy (it deletes nothing anywhere
    else). The full tree has at most 3^n paths; no pruning, no memoisation.

    ``on_delete(round, sigma_state, revealed_x, true_x, deleted_row)`` is
    called after every deletion on every path, letting monitors sweep all
    reachable strategy states. With ``stop_on_escape=False`` escapes are
    counted as leaves instead of aborting (used to cross-check the leaf count
    against an engine-driven enumeration).
    """
    st = SigmaState(n=n)
    xs = [0]  # Angel x by row index; the row IS the move index
    row: set[int] = set()  # deleted x-coordinates on row n
    stats = {"paths": 0, "max_rounds": 0, "escapes": 0}

    def devil_round(r: int):
        x_rev = xs[r]  # revealed prefix is p_0..p_r before deletion r + 1
        saved = (st.stage, st.light)
        a = sigma_next(st, x_rev, row)
        row.add(a)
        if on_delete is not None:
            on_delete(r + 1, st, x_rev, xs[-1], row)
        return (a, saved)

    def undo_devil(token) -> None:
        a, (stage, light) = token
        row.discard(a)
        st.a_list.pop()
        st.stage, st.light = stage, light

    def walk(t: int, r: int) -> None:
        if t == s + r:
            token = devil_round(r)
            try:
                walk(t, r + 1)
            finally:
                undo_devil(token)
            return
        # Angel's turn: moving from (xs[t], t) up to row t + 1.
        x = xs[t]
        if t + 1 == n:
            open_targets = [x + d for d in (-1, 0, 1) if x + d not in row]
            if open_targets:
                stats["escapes"] += len(open_targets)
                stats["paths"] += len(open_targets)
                if stop_on_escape:
                    raise _EscapeFound(xs + [open_targets[0]])
            else:
                stats["paths"] += 1
                if r > stats["max_rounds"]:
                    stats["max_rounds"] = r
            return
        for d in (-1, 0, 1):
            xs.append(x + d)
            walk(t + 1, r)
            xs.pop()

    try:
        walk(0, 0)
    except _EscapeFound as found:
        return Escape(witness=_upward_witness(n, s, found.xs), paths_explored=stats["paths"])
    if stats["escapes"]:
        return Escape(witness=None, paths_explored=stats["paths"])
    return AllCaptured(max_devil_rounds=stats["max_rounds"], paths_explored=stats["paths"])


def _partial_witness(config: GameConfig, devil, positions: list[Square]):
    """Drive a recorded Angel path through the real engine.

    Stops once the path is exhausted (or the game ends), returning the trace
    so far; an escape witness therefore ends with the Angel standing where
    the search said the Devil's strategy had failed.
    """
    from .game import (
        GameStatus,
        apply_angel_move,
        apply_devil_delete,
        devil_view,
        initial_state,
    )
    from .trace import AngelMove, DevilDelete, Trace

    state = initial_state(config)
    events: list = []
    i = 1
    while i < len(positions):
        if state.status is GameStatus.AWAITING_DEVIL:
            view = devil_view(state)
            sq = devil.choose(view)
            apply_devil_delete(state, sq)
            events.append(DevilDelete(view.round, sq))
        elif state.status is GameStatus.AWAITING_ANGEL:
            apply_angel_move(state, positions[i])
            events.append(AngelMove(i, positions[i]))
            i += 1
        else:
            break
    return Trace(
        config=config,
        events=events,
        status=state.status,
        final_round=state.final_round,
        final_state=state,
    )


def _upward_witness(n: int, s: int, xs: list[int]):
    config = GameConfig(variant=AngelVariant.UPWARD_ONLY, sneak=s, horizon=n + s + 2)
    positions = [(x, row) for row, x in enumerate(xs)]
    return _partial_witness(config, SigmaDevil(n), positions)


def count_upward_paths_via_engine(n: int, s: int) -> int:
    """Independent leaf count for tiny n, driving the real engine.

    Recursively explores every legal Angel move through fresh engine states;
    deliberately slow and simple so it cannot share bugs with the oracle.
    """
    from .game import (
        GameStatus,
        apply_angel_move,
        apply_devil_delete,
        devil_view,
        initial_state,
    )
    import copy

    config = GameConfig(variant=AngelVariant.UPWARD_ONLY, sneak=s, horizon=n + s + 2)

    def explore(state, devil) -> int:
        if state.status is GameStatus.AWAITING_DEVIL:
            sq = devil.choose(devil_view(state))
            apply_devil_delete(state, sq)
            if state.status is not GameStatus.AWAITING_ANGEL:
                return 1
            return explore(state, devil)
        if state.angel[1] == n:
            return 1  # crossed the wall row: escape leaf
        total = 0
        for mv in sorted(state.legal_moves(), key=square_key):
            st2 = copy.deepcopy(state)
            dv2 = copy.deepcopy(devil)
            apply_angel_move(st2, mv)
            if st2.status is GameStatus.DEVIL_WON:
                total += 1
            else:
                total += explore(st2, dv2)
        return total

    return explore(initial_state(config), SigmaDevil(n, enforce_block=False))


def side_to_side_config(n: int, m: int, s: int, horizon: Optional[int] = None) -> GameConfig:
    """Side-to-side game with the two prebuilt walls at +-m, rows 0..n."""
    from .devil_strategies import sigma_hat_horizon

    return GameConfig(
        variant=AngelVariant.SIDE_TO_SIDE,
        sneak=s,
        preset_deleted=wall_squares(n, m),
        horizon=horizon if horizon is not None else sigma_hat_horizon(n, m),
    )


class _BudgetExceeded(Exception):
    pass


def bounded_check_side_to_side(
    n: int,
    m: int,
    s: int,
    max_devil_rounds: Optional[int] = None,
    node_budget: int = 1_000_000,
    use_memo: bool = True,
):
    """Budgeted search over side-to-side Angels against the wall-assisted Devil.

    Depth-first over Angel moves (branching <= 5), memoised on the canonical
    Devil-relevant state: the strategy's own state (which, with the walls,
    determines the whole deleted set), the revealed/hidden position queue and
    the true position. Exhaustive closure is out of reach at interesting
    sizes, so the verdict is AllCaptured only when the reachable space closes
    within budget; otherwise Inconclusive. Any path that reaches the far row
    or outlives ``max_devil_rounds`` is an Escape with a replayable witness.
    """
    from .devil_strategies import sigma_hat_horizon

    import sys

    if max_devil_rounds is None:
        max_devil_rounds = sigma_hat_horizon(n, m)
    devil = SigmaHatDevil(n, m)
    deleted = set(wall_squares(n, m))
    positions: list[Square] = [(0, 0)]
    stats = {"paths": 0, "max_rounds": 0, "nodes": 0}
    memo: dict = {}
    offsets = AngelVariant.SIDE_TO_SIDE.offsets
    # One stack frame per move or deletion along a path.
    depth_needed = 2 * max_devil_rounds + s + 200
    old_limit = sys.getrecursionlimit()
    if depth_needed > old_limit:
        sys.setrecursionlimit(depth_needed)

    def walk(t: int, r: int) -> None:
        stats["nodes"] += 1
        if stats["nodes"] > node_budget:
            raise _BudgetExceeded
        if t == s + r:
            if r >= max_devil_rounds:
                raise _EscapeFound(list(positions))  # outlived the bound
            snap = devil.snapshot()
            sq = devil._choose(deleted, positions[r])
            devil.virtual_round += 1
            deleted.add(sq)
            try:
                walk(t, r + 1)
            finally:
                deleted.discard(sq)
                devil.restore(snap)
            return
        pos = positions[t]
        if pos[1] >= n:
            # Reached the far row: nothing above it is ever deleted.
            raise _EscapeFound(list(positions))
        legal = [
            (pos[0] + dx, pos[1] + dy)
            for dx, dy in offsets
            if (pos[0] + dx, pos[1] + dy) not in deleted
        ]
        if not legal:
            stats["paths"] += 1
            if r > stats["max_rounds"]:
                stats["max_rounds"] = r
            return
        if use_memo:
            # Devil-relevant suffix: the not-yet-revealed moves plus the true
            # position (with no lag that is just the true position).
            key = (tuple(positions[min(r, t):]), devil.memo_key())
            if key in memo:
                return
        for sq in legal:
            positions.append(sq)
            walk(t + 1, r)
            positions.pop()
        if use_memo:
            memo[key] = True

    try:
        walk(0, 0)
    except _BudgetExceeded:
        return Inconclusive(depth_limit=node_budget, paths_explored=stats["paths"])
    except _EscapeFound as found:
        config = side_to_side_config(n, m, s)
        return Escape(witness=_partial_witness(config, SigmaHatDevil(n, m), found.xs))
    finally:
        sys.setrecursionlimit(old_limit)
    return AllCaptured(max_devil_rounds=stats["max_rounds"], paths_explored=stats["paths"])
