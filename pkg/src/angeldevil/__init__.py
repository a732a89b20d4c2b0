"""Simulator and verification lab for the delayed-information Angel vs Devil game."""

from .board import (
    AngelVariant,
    DeletedBoard,
    Square,
    legal_angel_moves,
)
from .game import (
    DevilView,
    DuplicateDeletion,
    GameConfig,
    GameState,
    GameStatus,
    IllegalMove,
    WrongPhase,
    apply_angel_move,
    apply_devil_delete,
    devil_view,
    initial_state,
    run_game,
)
from .trace import Trace, parse_trace, replay_trace, serialize_trace
from .devil_strategies import (
    BigSigmaDevil,
    SigmaDevil,
    SigmaHatDevil,
    corner_squares,
    light_side,
    min_n_for_sneak,
    parse_devil,
    region_of,
    sigma_next,
)
from .adversaries import (
    AllCaptured,
    Escape,
    Inconclusive,
    bounded_check_side_to_side,
    exhaustive_check_upward,
    parse_angel,
)
from .verification import (
    MonitorReport,
    attach_monitors,
    check_center_tracking,
    check_even_block,
    check_hidden_bound,
    check_sealed_interval,
)

__version__ = "0.1.0"
