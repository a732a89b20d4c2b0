"""Infinite-board primitives: squares, move offsets, and the sparse deleted set.

Squares are plain ``(x, y)`` integer tuples; the board is unbounded in all
directions, so the only stored structure is the set of deleted squares.
"""

from __future__ import annotations

from enum import Enum
from typing import Iterable, Iterator, Tuple

Square = Tuple[int, int]

# Chess-king offsets, fixed order for deterministic iteration.
KING_OFFSETS: tuple[Square, ...] = (
    (-1, 1), (0, 1), (1, 1),
    (-1, 0), (1, 0),
    (-1, -1), (0, -1), (1, -1),
)
# y strictly increases.
UPWARD_OFFSETS: tuple[Square, ...] = ((-1, 1), (0, 1), (1, 1))
# y never decreases.
SIDE_TO_SIDE_OFFSETS: tuple[Square, ...] = ((-1, 0), (1, 0), (-1, 1), (0, 1), (1, 1))


class AngelVariant(Enum):
    """Which move set the Angel piece is restricted to."""

    UNRESTRICTED = "unrestricted"
    UPWARD_ONLY = "upward"
    SIDE_TO_SIDE = "side_to_side"

    @property
    def offsets(self) -> tuple[Square, ...]:
        return _VARIANT_OFFSETS[self]

    @property
    def offset_set(self) -> frozenset[Square]:
        return _VARIANT_OFFSET_SETS[self]

    @property
    def canonical_offsets(self) -> tuple[Square, ...]:
        """Offsets sorted row-major; strategies iterate these so that move
        preference order is platform-independent."""
        return _VARIANT_CANONICAL[self]


_VARIANT_OFFSETS = {
    AngelVariant.UNRESTRICTED: KING_OFFSETS,
    AngelVariant.UPWARD_ONLY: UPWARD_OFFSETS,
    AngelVariant.SIDE_TO_SIDE: SIDE_TO_SIDE_OFFSETS,
}
_VARIANT_OFFSET_SETS = {v: frozenset(offs) for v, offs in _VARIANT_OFFSETS.items()}
_VARIANT_CANONICAL = {
    v: tuple(sorted(offs, key=lambda o: (o[1], o[0])))
    for v, offs in _VARIANT_OFFSETS.items()
}


def square_key(sq: Square) -> Square:
    """Canonical sort key: row-major, i.e. lexicographic by (y, x)."""
    return (sq[1], sq[0])


def chebyshev(a: Square, b: Square) -> int:
    return max(abs(a[0] - b[0]), abs(a[1] - b[1]))


class DeletedBoard:
    """Sparse set of deleted squares with a per-row index.

    Membership and insertion are O(1) expected; ``row(y)`` exposes the set of
    deleted x-coordinates on one row so strategies and monitors can scan rows
    without touching the full set. The row index is built on first use and
    maintained from then on, so games that never scan rows don't pay for it.
    """

    __slots__ = ("_squares", "_rows")

    def __init__(self, squares: Iterable[Square] = ()) -> None:
        self._squares: set[Square] = set(squares)
        self._rows: dict[int, set[int]] | None = None

    def add(self, sq: Square) -> None:
        self._squares.add(sq)
        rows = self._rows
        if rows is not None:
            row = rows.get(sq[1])
            if row is None:
                rows[sq[1]] = {sq[0]}
            else:
                row.add(sq[0])

    def discard(self, sq: Square) -> None:
        self._squares.discard(sq)
        if self._rows is not None:
            row = self._rows.get(sq[1])
            if row is not None:
                row.discard(sq[0])

    def _build_rows(self) -> dict[int, set[int]]:
        rows: dict[int, set[int]] = {}
        for x, y in self._squares:
            row = rows.get(y)
            if row is None:
                rows[y] = {x}
            else:
                row.add(x)
        self._rows = rows
        return rows

    def row(self, y: int) -> frozenset[int]:
        """Deleted x-coordinates on row y."""
        rows = self._rows if self._rows is not None else self._build_rows()
        row = rows.get(y)
        return frozenset(row) if row else frozenset()

    def copy(self) -> "DeletedBoard":
        clone = DeletedBoard.__new__(DeletedBoard)
        clone._squares = set(self._squares)
        clone._rows = (
            None
            if self._rows is None
            else {y: set(xs) for y, xs in self._rows.items()}
        )
        return clone

    def __contains__(self, sq: Square) -> bool:
        return sq in self._squares

    def __len__(self) -> int:
        return len(self._squares)

    def __iter__(self) -> Iterator[Square]:
        return iter(self._squares)

    def sorted_squares(self) -> list[Square]:
        return sorted(self._squares, key=square_key)

    # Engine hot loops index this set directly to skip method-call overhead.
    @property
    def raw(self) -> set[Square]:
        return self._squares


def legal_angel_moves(variant: AngelVariant, frm: Square, deleted) -> set[Square]:
    """Squares the Angel may move to: variant offsets minus deleted squares.

    ``deleted`` is anything supporting ``in`` over squares (a DeletedBoard,
    set, or frozenset).
    """
    if isinstance(deleted, DeletedBoard):
        deleted = deleted.raw
    x, y = frm
    return {
        sq
        for dx, dy in variant.offsets
        if (sq := (x + dx, y + dy)) not in deleted
    }


def has_legal_move(offsets: tuple[Square, ...], frm: Square, deleted_raw: set) -> bool:
    """Existence-only version of legal_angel_moves for hot paths."""
    x, y = frm
    for dx, dy in offsets:
        if (x + dx, y + dy) not in deleted_raw:
            return True
    return False
