"""Command-line front end: simulate, verify, corners, render, serve."""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from .adversaries import parse_angel
from .board import AngelVariant
from .devil_strategies import (
    BigSigmaDevil,
    SigmaDevil,
    SigmaHatDevil,
    StrategyError,
    big_sigma_horizon,
    min_n_for_sneak,
    parse_devil,
    sigma_hat_horizon,
    wall_squares,
    corner_squares,
)
from .game import GameConfig, GameError, GameStatus, run_game
from .render import render_trace
from .trace import parse_trace, serialize_trace

VARIANTS = {
    "unrestricted": AngelVariant.UNRESTRICTED,
    "upward": AngelVariant.UPWARD_ONLY,
    "side_to_side": AngelVariant.SIDE_TO_SIDE,
}


def _warn(msg: str) -> None:
    print(f"warning: {msg}", file=sys.stderr)


def _certification_warnings(variant: AngelVariant, sneak: int, devil) -> None:
    needed = min_n_for_sneak(sneak)
    if isinstance(devil, SigmaDevil):
        if variant is not AngelVariant.UPWARD_ONLY:
            _warn("the row strategy is only certified against the upward-only angel; exploring anyway")
        elif devil.n < needed:
            _warn(f"n={devil.n} is below the certified size {needed} for s={sneak}")
    elif isinstance(devil, SigmaHatDevil):
        if variant is not AngelVariant.SIDE_TO_SIDE:
            _warn("the wall-assisted strategy expects the side-to-side angel; exploring anyway")
        elif devil.n < needed:
            _warn(f"n={devil.n} is below the certified size {needed} for s={sneak}")
    elif isinstance(devil, BigSigmaDevil):
        if variant is not AngelVariant.UNRESTRICTED:
            _warn("the full trap targets the unrestricted angel; exploring anyway")
        elif devil.n < needed:
            _warn(f"n={devil.n} is below the certified size {needed} for s={sneak}")


def cmd_simulate(args) -> int:
    variant = VARIANTS[args.variant]
    try:
        devil = parse_devil(args.devil, sneak=args.s)
        angel = parse_angel(args.angel)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    _certification_warnings(variant, args.s, devil)
    preset = frozenset()
    if isinstance(devil, SigmaHatDevil):
        preset = wall_squares(devil.n, devil.m)
        default_horizon = sigma_hat_horizon(devil.n, devil.m)
    elif isinstance(devil, BigSigmaDevil):
        default_horizon = big_sigma_horizon(devil.n)
    else:
        default_horizon = args.s + devil.n + 2 if variant is AngelVariant.UPWARD_ONLY else 1000
    horizon = args.horizon if args.horizon is not None else default_horizon
    config = GameConfig(variant=variant, sneak=args.s, preset_deleted=preset, horizon=horizon)
    try:
        trace = run_game(config, angel, devil)
    except (GameError, StrategyError) as exc:
        rnd = getattr(exc, "round_index", getattr(exc, "move_index", "?"))
        print(f"error at round {rnd}: {exc}", file=sys.stderr)
        return 1
    text = serialize_trace(trace)
    if args.out == "-":
        sys.stdout.write(text)
    else:
        Path(args.out).write_text(text)
    if trace.status is GameStatus.DEVIL_WON:
        print(f"devil won: angel trapped after {trace.final_round} devil rounds")
    else:
        print(f"angel survived the horizon of {trace.final_round} devil rounds")
    if args.out != "-":
        print(f"trace written to {args.out}")
    return 0


def cmd_verify(args) -> int:
    from . import suites

    sneak = args.s
    if args.suite == "lemmas":
        result = suites.suite_lemmas()
    elif args.suite == "exhaustive-upward":
        n = args.n if args.n is not None else min_n_for_sneak(sneak)
        result = suites.suite_exhaustive_upward(n, sneak)
    elif args.suite == "sigma-hat-bounded":
        n = args.n if args.n is not None else min_n_for_sneak(sneak)
        m = args.m if args.m is not None else 9 * n
        result = suites.suite_sigma_hat_bounded(n, m, sneak, node_budget=args.budget)
    elif args.suite == "big-sigma-random":
        n = args.n if args.n is not None else min_n_for_sneak(sneak)
        result = suites.suite_big_sigma_random(
            n, sneak, games=args.games, seed=args.seed, processes=args.processes
        )
    else:  # pragma: no cover - argparse restricts choices
        return 2
    marker = "PASS" if result.passed else "FAIL"
    print(f"{marker} {result.name}: {result.summary}")
    for line in result.details:
        print(f"  {line}")
    return 0 if result.passed else 1


def cmd_corners(args) -> int:
    squares = corner_squares(args.n)
    print(f"{len(squares)} corner-wall squares for n={args.n} (8n+4)")
    for sq in squares:
        print(f"{sq[0]},{sq[1]}")
    return 0


def cmd_render(args) -> int:
    text = Path(args.trace).read_text()
    trace = parse_trace(text)
    viewport = None
    if args.viewport:
        parts = [int(v) for v in args.viewport.split(",")]
        if len(parts) != 4:
            print("error: --viewport needs x0,y0,x1,y1", file=sys.stderr)
            return 2
        viewport = tuple(parts)
    rounds = trace.devil_rounds
    at = args.at if args.at is not None else rounds
    try:
        print(render_trace(trace, at, viewport))
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    return 0


def cmd_serve(args) -> int:
    from .server import PlayServer

    ui_dir = args.ui_dir
    if ui_dir is None:
        bundled = Path(__file__).resolve().parent.parent.parent / "frontend" / "dist"
        if bundled.is_dir():
            ui_dir = str(bundled)
    server = PlayServer(host=args.host, port=args.port, ui_dir=ui_dir)
    where = f"http://{args.host}:{server.port}/"
    # flush so wrappers waiting on the banner see it even through a pipe
    print(f"play service listening on {where}" + (" (ui enabled)" if ui_dir else ""), flush=True)
    try:
        server.serve_forever()
    except KeyboardInterrupt:
        print("bye")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="angeldevil",
        description="Simulate and verify the delayed-information Angel vs Devil game.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    sim = sub.add_parser("simulate", help="run one game and write its trace")
    sim.add_argument("--variant", choices=sorted(VARIANTS), default="unrestricted")
    sim.add_argument("--s", type=int, default=0, help="sneak parameter (devil's information lag)")
    sim.add_argument("--devil", required=True, help="sigma:n=8 | sigma_hat:n=8,m=72 | big_sigma:n=8")
    sim.add_argument("--angel", required=True, help="script:U,U | random:seed=42 | greedy | zigzag:period=4 | wallhug")
    sim.add_argument("--horizon", type=int, default=None, help="devil rounds before declaring survival")
    sim.add_argument("--out", default="trace.jsonl", help="trace output path, '-' for stdout")
    sim.set_defaults(func=cmd_simulate)

    ver = sub.add_parser("verify", help="run a verification suite; exit 0 iff it passes")
    ver.add_argument("suite", choices=["lemmas", "exhaustive-upward", "sigma-hat-bounded", "big-sigma-random"])
    ver.add_argument("--n", type=int, default=None)
    ver.add_argument("--s", type=int, default=0)
    ver.add_argument("--m", type=int, default=None)
    ver.add_argument("--games", type=int, default=100)
    ver.add_argument("--seed", type=int, default=0)
    ver.add_argument("--budget", type=int, default=1_000_000, help="node budget for bounded search")
    ver.add_argument("--processes", type=int, default=None)
    ver.set_defaults(func=cmd_verify)

    cor = sub.add_parser("corners", help="list the 8n+4 corner-wall squares")
    cor.add_argument("--n", type=int, required=True)
    cor.set_defaults(func=cmd_corners)

    ren = sub.add_parser("render", help="draw a trace as an ASCII board")
    ren.add_argument("trace", help="path to a JSON-lines trace file")
    ren.add_argument("--at", type=int, default=None, help="devil round to show (default: final)")
    ren.add_argument("--viewport", default=None, help="x0,y0,x1,y1")
    ren.set_defaults(func=cmd_render)

    srv = sub.add_parser("serve", help="run the local play service")
    srv.add_argument("--host", default="127.0.0.1")
    srv.add_argument("--port", type=int, default=8642)
    srv.add_argument("--ui-dir", default=None, help="directory of built web UI files to serve")
    srv.set_defaults(func=cmd_serve)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
