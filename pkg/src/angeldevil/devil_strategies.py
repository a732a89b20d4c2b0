"""Deterministic Devil strategies.

Three strategy families, all driven purely by the Devil's view:

* ``SigmaDevil`` deletes only on row n. Stage one builds a block of
  even-spaced deletions tracking the Angel's last revealed column; stage two
  fills the remaining gaps nearest the Angel, breaking ties toward the side
  that ended up lighter.
* ``SigmaHatDevil`` runs the same row strategy sideways-agnostically inside a
  pair of prebuilt walls, feeding it the Angel's lateral coordinate only, then
  fills the walled rectangle once its far row is sealed.
* ``BigSigmaDevil`` first deletes four L-shaped corner walls, then methodically
  fills the big box, switching to a per-region ``SigmaHatDevil`` whenever the
  Angel's revealed position enters one of the four cardinal escape rectangles.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from typing import Optional

from .board import Square
from .game import DevilView


class StrategyError(Exception):
    pass


class NoCandidate(StrategyError):
    """The strategy's current search space is entirely deleted."""


class Exhausted(StrategyError):
    """Every square the strategy could ever delete is gone."""


class InvariantViolation(StrategyError):
    """A strategy self-check failed; indicates a bug, not a game outcome."""


def min_n_for_sneak(sneak: int) -> int:
    """Smallest row parameter certified to beat an Angel with this much lag.

    Scans upward for the least n with (n // 2) // 2 - 2 >= sneak.
    """
    if sneak < 0:
        raise ValueError("sneak must be non-negative")
    n = 1
    while (n // 2) // 2 - 2 < sneak:
        n += 1
    return n


class SigmaStage(Enum):
    ONE = "one"
    TWO = "two"


class Side(Enum):
    LEFT = "left"
    RIGHT = "right"


@dataclass
class SigmaState:
    """Mutable state of one row-strategy instance.

    ``a_list`` records the x-coordinates this instance has deleted on its
    target row, in deletion order. ``light`` is fixed once, at the moment the
    stage flips, and names the side with fewer deletions relative to the
    Angel at that instant.
    """

    n: int
    a_list: list[int] = field(default_factory=list)
    stage: SigmaStage = SigmaStage.ONE
    light: Optional[Side] = None

    @property
    def half(self) -> int:
        return (self.n + 1) // 2  # ceil(n / 2)


def light_side(a_list: list[int], x: int) -> Side:
    """Which side of the deleted block's mean the Angel is on.

    Right is light iff x exceeds the mean of ``a_list``; the boundary case
    goes Left. Compared in exact integer arithmetic (x * len > sum).
    """
    if not a_list:
        raise ValueError("a_list must be non-empty")
    return Side.RIGHT if x * len(a_list) > sum(a_list) else Side.LEFT


def sigma_next(
    st: SigmaState,
    x: int,
    deleted,
    lo: Optional[int] = None,
    hi: Optional[int] = None,
) -> int:
    """Choose and record this instance's next target-row deletion.

    ``x`` is the Angel's last revealed lateral coordinate; ``deleted``
    answers ``a in deleted`` for lateral coordinates already gone on the
    target row (this instance's own plus any others). ``lo``/``hi`` bound the
    playable segment when side walls exist.

    Stage one picks the square nearest x that is neither deleted nor adjacent
    to one of this instance's prior picks, leftmost on ties. When stage one's
    quota is met the light side is computed from the current block and x, and
    stage two thereafter picks the nearest undeleted square, breaking ties
    toward the light side.

    Raises NoCandidate when every in-bounds square is already deleted.
    """
    if st.stage is SigmaStage.ONE and len(st.a_list) >= st.half:
        st.light = light_side(st.a_list, x)
        st.stage = SigmaStage.TWO
    if st.stage is SigmaStage.ONE:
        a = _stage_one_pick(st.a_list, x, deleted, lo, hi)
        if a is None:
            # Every non-adjacent square is gone (possible only when outside
            # walls have eaten the row); degrade to nearest-undeleted so the
            # instance keeps sealing the row instead of stalling.
            a = _nearest_undeleted(x, deleted, lo, hi, None)
    else:
        a = _nearest_undeleted(x, deleted, lo, hi, st.light)
    if a is None:
        raise NoCandidate(f"row {st.n} has no undeleted square in [{lo}, {hi}]")
    st.a_list.append(a)
    return a


def _in_bounds(a: int, lo: Optional[int], hi: Optional[int]) -> bool:
    return (lo is None or a >= lo) and (hi is None or a <= hi)


def _stage_one_pick(a_list, x, deleted, lo, hi) -> Optional[int]:
    # Both obstruction sets are finite, so the outward scan always escapes
    # them in the unbounded case; in the bounded case it stops at the walls.
    blocked = set()
    for a in a_list:
        blocked.update((a - 1, a, a + 1))
    d = 0
    while True:
        left, right = x - d, x + d
        left_in = _in_bounds(left, lo, hi)
        right_in = _in_bounds(right, lo, hi)
        if not left_in and not right_in:
            return None
        if left_in and left not in blocked and left not in deleted:
            return left
        if d and right_in and right not in blocked and right not in deleted:
            return right
        d += 1


def _nearest_undeleted(x, deleted, lo, hi, prefer: Optional[Side]) -> Optional[int]:
    d = 0
    while True:
        left, right = x - d, x + d
        left_in = _in_bounds(left, lo, hi)
        right_in = _in_bounds(right, lo, hi)
        if not left_in and not right_in:
            return None
        left_ok = left_in and left not in deleted
        right_ok = d > 0 and right_in and right not in deleted
        if left_ok and right_ok:
            return right if prefer is Side.RIGHT else left
        if left_ok:
            return left
        if right_ok:
            return right
        d += 1


class _RowMembership:
    """Lateral-coordinate membership view of one board row."""

    __slots__ = ("_deleted", "_y")

    def __init__(self, deleted, y: int) -> None:
        self._deleted = deleted
        self._y = y

    def __contains__(self, a: int) -> bool:
        return (a, self._y) in self._deleted


def _is_even_block(a_list: list[int]) -> bool:
    xs = sorted(a_list)
    return all(b - a == 2 for a, b in zip(xs, xs[1:]))


class SigmaDevil:
    """Row strategy adapter: deletes squares (a, n) chosen by sigma_next."""

    def __init__(self, n: int, enforce_block: bool = True) -> None:
        if n < 1:
            raise ValueError("n must be positive")
        self.n = n
        self.state = SigmaState(n=n)
        self._enforce_block = enforce_block

    def choose(self, view: DevilView) -> Square:
        from .board import AngelVariant

        x = view.last_revealed[0]
        a = sigma_next(self.state, x, _RowMembership(view.deleted, self.n))
        if (
            self._enforce_block
            and view.variant is AngelVariant.UPWARD_ONLY
            and len(self.state.a_list) <= self.state.half
            and not _is_even_block(self.state.a_list)
        ):
            raise InvariantViolation(
                f"stage-one deletions {sorted(self.state.a_list)} are not an even block"
            )
        return (a, self.n)


class CardinalDirection(Enum):
    NORTH = (0, 1)
    EAST = (1, 0)
    SOUTH = (0, -1)
    WEST = (-1, 0)


@dataclass(frozen=True)
class Frame:
    """Maps (lateral, depth) strategy coordinates onto board squares.

    ``forward`` points away from the protected area; depth grows along it.
    Lateral runs along +x for vertical frames and along +y for horizontal
    ones, so every frame is a bijection between coordinate pairs and squares.
    Side walls sit at lateral offset +-m.
    """

    origin: Square
    forward: CardinalDirection
    m: int

    def to_square(self, lateral: int, depth: int) -> Square:
        ox, oy = self.origin
        if self.forward is CardinalDirection.NORTH:
            return (ox + lateral, oy + depth)
        if self.forward is CardinalDirection.SOUTH:
            return (ox + lateral, oy - depth)
        if self.forward is CardinalDirection.EAST:
            return (ox + depth, oy + lateral)
        return (ox - depth, oy + lateral)

    def lateral_of(self, sq: Square) -> int:
        if self.forward in (CardinalDirection.NORTH, CardinalDirection.SOUTH):
            return sq[0] - self.origin[0]
        return sq[1] - self.origin[1]

    def depth_of(self, sq: Square) -> int:
        ox, oy = self.origin
        if self.forward is CardinalDirection.NORTH:
            return sq[1] - oy
        if self.forward is CardinalDirection.SOUTH:
            return oy - sq[1]
        if self.forward is CardinalDirection.EAST:
            return sq[0] - ox
        return ox - sq[0]


def identity_frame(m: int) -> Frame:
    return Frame(origin=(0, 0), forward=CardinalDirection.NORTH, m=m)


def wall_squares(n: int, m: int, frame: Optional[Frame] = None) -> frozenset[Square]:
    """The two side walls a wall-assisted game starts with: (+-m, 0..n)."""
    frame = frame or identity_frame(m)
    out = set()
    for depth in range(n + 1):
        out.add(frame.to_square(-m, depth))
        out.add(frame.to_square(m, depth))
    return frozenset(out)


class _FrameRowMembership:
    """Membership of lateral coordinates on a frame's target row."""

    __slots__ = ("_deleted", "_frame", "_depth")

    def __init__(self, deleted, frame: Frame, depth: int) -> None:
        self._deleted = deleted
        self._frame = frame
        self._depth = depth

    def __contains__(self, lateral: int) -> bool:
        return self._frame.to_square(lateral, self._depth) in self._deleted


class HatPhase(Enum):
    ROW_N = "row_n"
    FILL = "fill"


class SigmaHatDevil:
    """Wall-assisted row strategy: seal the far row, then fill the rectangle.

    The inner row strategy is fed only the Angel's lateral coordinate (its
    forward progress is ignored) and is bounded by the side walls. If it
    proposes a square someone else already deleted, the candidate scan simply
    yields the next-best square. Once the far row between the walls is fully
    deleted the instance switches to filling the rectangle interior, outermost
    row first, each row scanned in increasing lateral coordinate.
    """

    def __init__(self, n: int, m: int, frame: Optional[Frame] = None) -> None:
        if n < 1 or m < 2:
            raise ValueError("need n >= 1 and m >= 2")
        self.n = n
        self.m = m
        self.frame = frame or identity_frame(m)
        self.inner = SigmaState(n=n)
        self.phase = HatPhase.ROW_N
        self.virtual_round = 0
        self._fill_depth = n - 1
        self._fill_lat = -m + 1
        self._raw = None

    def choose(self, view: DevilView) -> Square:
        raw = self._raw
        if raw is None:
            deleted = view.deleted
            raw = self._raw = deleted.raw if hasattr(deleted, "raw") else deleted
        sq = self._choose(raw, view.last_revealed)
        self.virtual_round += 1
        return sq

    def _choose(self, deleted, revealed_sq: Square) -> Square:
        if self.phase is HatPhase.ROW_N:
            lat = self.frame.lateral_of(revealed_sq)
            row = _FrameRowMembership(deleted, self.frame, self.n)
            try:
                a = sigma_next(self.inner, lat, row, lo=-self.m + 1, hi=self.m - 1)
                return self.frame.to_square(a, self.n)
            except NoCandidate:
                self.phase = HatPhase.FILL
        while self._fill_depth >= 0:
            if self._fill_lat > self.m - 1:
                self._fill_depth -= 1
                self._fill_lat = -self.m + 1
                continue
            sq = self.frame.to_square(self._fill_lat, self._fill_depth)
            self._fill_lat += 1
            if sq not in deleted:
                return sq
        raise NoCandidate("walled rectangle fully deleted")

    # Snapshot hooks for the bounded search: everything this strategy will
    # ever do is determined by these fields plus future views.
    def snapshot(self):
        return (
            len(self.inner.a_list),
            self.inner.stage,
            self.inner.light,
            self.phase,
            self.virtual_round,
            self._fill_depth,
            self._fill_lat,
        )

    def restore(self, snap) -> None:
        (n_a, stage, light, phase, vr, fd, fl) = snap
        del self.inner.a_list[n_a:]
        self.inner.stage = stage
        self.inner.light = light
        self.phase = phase
        self.virtual_round = vr
        self._fill_depth = fd
        self._fill_lat = fl

    def memo_key(self):
        return (
            tuple(sorted(self.inner.a_list)),
            self.inner.stage,
            self.inner.light,
            self.phase,
            self._fill_depth,
            self._fill_lat,
        )


class Region(Enum):
    INNER_BOX = "inner_box"
    NORTH = "north"
    SOUTH = "south"
    EAST = "east"
    WEST = "west"
    OUTSIDE = "outside"


def corner_squares(n: int) -> tuple[Square, ...]:
    """The 8n + 4 squares of the four L-shaped corner walls, in deletion order.

    Quadrants are visited (+,+), (-,+), (-,-), (+,-); within each, the
    horizontal arm (x = a(9n+k), y = b*9n) for k = 0..n, then the vertical arm
    (x = a*9n, y = b(9n+k)) for k = 1..n. Any fixed order works; this one is
    pinned for trace stability.
    """
    if n < 1:
        raise ValueError("n must be positive")
    base = 9 * n
    out: list[Square] = []
    for a, b in ((1, 1), (-1, 1), (-1, -1), (1, -1)):
        for k in range(n + 1):
            out.append((a * (base + k), b * base))
        for k in range(1, n + 1):
            out.append((a * base, b * (base + k)))
    return tuple(out)


def region_of(sq: Square, n: int) -> Region:
    """Locate a square relative to the corner walls.

    The inner box is the open square of radius 9n; each cardinal region is the
    rectangle between two corner arms, including its inner boundary line and
    excluding the arms themselves (those are deleted squares and come out as
    OUTSIDE, as does everything beyond radius 10n).
    """
    if n < 1:
        raise ValueError("n must be positive")
    x, y = sq
    near, far = 9 * n, 10 * n
    ax, ay = abs(x), abs(y)
    if ax < near and ay < near:
        return Region.INNER_BOX
    if ax < near:
        if near <= y < far:
            return Region.NORTH
        if near <= -y < far:
            return Region.SOUTH
    if ay < near:
        if near <= x < far:
            return Region.EAST
        if near <= -x < far:
            return Region.WEST
    return Region.OUTSIDE


_REGION_FRAMES = {
    Region.NORTH: (CardinalDirection.NORTH, (0, 1)),
    Region.SOUTH: (CardinalDirection.SOUTH, (0, -1)),
    Region.EAST: (CardinalDirection.EAST, (1, 0)),
    Region.WEST: (CardinalDirection.WEST, (-1, 0)),
}


def region_frame(region: Region, n: int) -> Frame:
    direction, (ux, uy) = _REGION_FRAMES[region]
    near = 9 * n
    return Frame(origin=(ux * near, uy * near), forward=direction, m=near)


class BigSigmaDevil:
    """Full trap: corner walls, box fill, and per-region wall-assisted play.

    The first 8n + 4 rounds delete the corner walls. Afterwards, while the
    Angel's revealed position stays in the inner box, the strategy fills
    [-10n, 10n]^2 row-major, skipping anything already gone; the cursor
    persists across interruptions. When the revealed position enters a
    cardinal region, that region's wall-assisted instance (created on first
    entry, kept across re-entries) takes over until it runs out of squares or
    the Angel leaves.
    """

    def __init__(self, n: int) -> None:
        if n < 1:
            raise ValueError("n must be positive")
        self.n = n
        self.corners = corner_squares(n)
        self._corner_idx = 0
        self._near = 9 * n
        self._bound = 10 * n
        self._box_x = -self._bound
        self._box_y = -self._bound
        self.region_devils: dict[Region, SigmaHatDevil] = {}
        self._raw = None

    def choose(self, view: DevilView) -> Square:
        raw = self._raw
        if raw is None:
            deleted = view.deleted
            raw = self._raw = deleted.raw if hasattr(deleted, "raw") else deleted
        while self._corner_idx < len(self.corners):
            sq = self.corners[self._corner_idx]
            self._corner_idx += 1
            if sq not in raw:
                return sq
        x, y = view.last_revealed
        near = self._near
        if -near < x < near and -near < y < near:
            return self._next_box_square(raw)
        region = region_of((x, y), self.n)
        if region is not Region.OUTSIDE:
            hat = self.region_devils.get(region)
            if hat is None:
                hat = SigmaHatDevil(self.n, 9 * self.n, region_frame(region, self.n))
                self.region_devils[region] = hat
            try:
                return hat.choose(view)
            except NoCandidate:
                pass  # region fully deleted; fall back to the box fill
        return self._next_box_square(raw)

    def _next_box_square(self, raw) -> Square:
        bound = self._bound
        x, y = self._box_x, self._box_y
        while y <= bound:
            if x > bound:
                y += 1
                x = -bound
                continue
            sq = (x, y)
            x += 1
            if sq not in raw:
                self._box_x, self._box_y = x, y
                return sq
        self._box_x, self._box_y = x, y
        raise Exhausted("every square of the big box is deleted")


def big_sigma_horizon(n: int) -> int:
    """Devil rounds after which the full trap can have nothing left to delete."""
    return (20 * n + 1) ** 2 + 8 * n + 4


def sigma_hat_horizon(n: int, m: int) -> int:
    """Upper bound on deletions available to a wall-assisted instance."""
    return (2 * m - 1) * (n + 1) + 2


def parse_devil(text: str, sneak: int = 0):
    """Parse a strategy selection string.

    Grammar: ``sigma[:n=<int>]`` | ``sigma_hat[:n=<int>[,m=<int>]]`` |
    ``big_sigma[:n=<int>]``. n defaults to min_n_for_sneak(sneak); m defaults
    to 9n.
    """
    name, _, argstr = text.partition(":")
    name = name.strip()
    args: dict[str, int] = {}
    if argstr:
        for part in argstr.split(","):
            key, _, value = part.partition("=")
            key = key.strip()
            if not value:
                raise ValueError(f"malformed strategy argument {part!r} in {text!r}")
            try:
                args[key] = int(value)
            except ValueError:
                raise ValueError(f"strategy argument {key}={value!r} is not an integer") from None
    n = args.pop("n", None)
    if n is None:
        n = min_n_for_sneak(sneak)
    if name == "sigma":
        extra = set(args)
        if extra:
            raise ValueError(f"sigma takes only n, got {extra}")
        return SigmaDevil(n)
    if name == "sigma_hat":
        m = args.pop("m", 9 * n)
        if args:
            raise ValueError(f"sigma_hat takes n and m, got {set(args)}")
        return SigmaHatDevil(n, m)
    if name == "big_sigma":
        if args:
            raise ValueError(f"big_sigma takes only n, got {set(args)}")
        return BigSigmaDevil(n)
    raise ValueError(f"unknown devil strategy {name!r}")
