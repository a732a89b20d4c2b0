"""Replayable game traces and their JSON-lines wire format.

One event per line, field order fixed for golden-file stability:

    {"t":"config","variant":"upward","s":0,"start":[0,0],"horizon":7,"preset_deleted":[]}
    {"t":"angel","i":1,"to":[0,1]}
    {"t":"devil","r":1,"del":[0,5]}
    {"t":"outcome","result":"devil_won","round":5}

An optional trailing ``{"t":"monitors",...}`` line carries a monitor report.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import NamedTuple, Optional, Union

from .board import AngelVariant, Square, square_key
from .game import (
    GameConfig,
    GameState,
    GameStatus,
    apply_angel_move,
    apply_devil_delete,
    initial_state,
)


class AngelMove(NamedTuple):
    index: int
    to: Square


class DevilDelete(NamedTuple):
    round: int
    square: Square


Event = Union[AngelMove, DevilDelete]


class ReplayMismatch(Exception):
    pass


@dataclass
class Trace:
    config: GameConfig
    events: list[Event]
    status: GameStatus
    final_round: Optional[int]
    final_state: Optional[GameState] = None
    monitor_report: Optional[object] = field(default=None)

    @property
    def devil_rounds(self) -> int:
        return sum(1 for e in self.events if isinstance(e, DevilDelete))


def _config_line(config: GameConfig) -> str:
    preset = [list(sq) for sq in sorted(config.preset_deleted, key=square_key)]
    obj = {
        "t": "config",
        "variant": config.variant.value,
        "s": config.sneak,
        "start": list(config.start),
        "horizon": config.horizon,
        "preset_deleted": preset,
    }
    return json.dumps(obj, separators=(",", ":"))


def serialize_trace(trace: Trace) -> str:
    lines = [_config_line(trace.config)]
    for ev in trace.events:
        if isinstance(ev, AngelMove):
            lines.append('{"t":"angel","i":%d,"to":[%d,%d]}' % (ev.index, ev.to[0], ev.to[1]))
        else:
            lines.append('{"t":"devil","r":%d,"del":[%d,%d]}' % (ev.round, ev.square[0], ev.square[1]))
    outcome = {"t": "outcome", "result": trace.status.value, "round": trace.final_round}
    lines.append(json.dumps(outcome, separators=(",", ":")))
    if trace.monitor_report is not None:
        lines.append(json.dumps({"t": "monitors", **trace.monitor_report.to_json()}, separators=(",", ":")))
    return "\n".join(lines) + "\n"


def parse_trace(text: str) -> Trace:
    config = None
    events: list[Event] = []
    status = None
    final_round = None
    for lineno, line in enumerate(text.splitlines(), start=1):
        line = line.strip()
        if not line:
            continue
        obj = json.loads(line)
        tag = obj.get("t")
        if tag == "config":
            config = GameConfig(
                variant=AngelVariant(obj["variant"]),
                sneak=obj["s"],
                preset_deleted=frozenset(tuple(sq) for sq in obj["preset_deleted"]),
                start=tuple(obj["start"]),
                horizon=obj["horizon"],
            )
        elif tag == "angel":
            events.append(AngelMove(obj["i"], tuple(obj["to"])))
        elif tag == "devil":
            events.append(DevilDelete(obj["r"], tuple(obj["del"])))
        elif tag == "outcome":
            status = GameStatus(obj["result"])
            final_round = obj["round"]
        elif tag == "monitors":
            pass  # reports are advisory output, not replay input
        else:
            raise ValueError(f"line {lineno}: unknown event tag {tag!r}")
    if config is None or status is None:
        raise ValueError("trace missing config or outcome line")
    return Trace(config=config, events=events, status=status, final_round=final_round)


def replay_trace(trace: Trace) -> GameState:
    """Drive the events through the engine and check the recorded outcome."""
    state = initial_state(trace.config)
    for ev in trace.events:
        if isinstance(ev, AngelMove):
            if state.moves_made + 1 != ev.index:
                raise ReplayMismatch(f"angel move index {ev.index} out of sequence")
            apply_angel_move(state, ev.to)
        else:
            if state.devil_rounds + 1 != ev.round:
                raise ReplayMismatch(f"devil round {ev.round} out of sequence")
            apply_devil_delete(state, ev.square)
    if state.status is not trace.status or state.final_round != trace.final_round:
        raise ReplayMismatch(
            f"replayed outcome {state.status.value}/{state.final_round} "
            f"!= recorded {trace.status.value}/{trace.final_round}"
        )
    return state
