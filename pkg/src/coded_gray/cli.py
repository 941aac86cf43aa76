"""Command-line harness.

Parameters come from built-in defaults, then an optional ``key=value``
config file (``--config``), then command-line flags, later sources winning.
"""

from __future__ import annotations

import argparse
import csv
import sys
from contextlib import nullcontext
from dataclasses import dataclass, fields, replace
from pathlib import Path
from typing import Sequence, TextIO

import numpy as np

from . import bits
from .baselines import SCHEMES, make_scheme
from .channel import BscChannel, keyed_rng
from .scheme import RobustGrayScheme
from .sim import DEFAULT_T_GRID, rate_report, tail_sweep
from .tape import build_tape, query


@dataclass(frozen=True)
class RunConfig:
    kB: int = 2
    nB: int = 4
    s: int = 2
    inner_seed: int = 0
    p: float = 0.05
    channel_seed: int = 0
    scheme: str = "coded-gray"
    trials: int = 1000
    t_grid: tuple[int, ...] = DEFAULT_T_GRID
    output: str = "-"
    workers: int = 1

    def make_scheme(self) -> RobustGrayScheme:
        return make_scheme(self.scheme, self.kB, self.nB, self.s, self.inner_seed)

    def channel(self) -> BscChannel:
        return BscChannel(self.p, self.channel_seed)


_TYPES = {f.name: f.type for f in fields(RunConfig)}


def _coerce(key: str, raw: str):
    kind = _TYPES[key]
    if kind == "int":
        return int(raw, 0)
    if kind == "float":
        return float(raw)
    if key == "t_grid":
        return tuple(int(t) for t in raw.replace(";", ",").split(",") if t.strip())
    return raw.strip()


def parse_config(text: str) -> dict:
    """Flat ``key=value`` lines; ``#`` starts a comment."""
    out = {}
    for lineno, line in enumerate(text.splitlines(), 1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        key, sep, value = line.partition("=")
        key = key.strip()
        if not sep or key not in _TYPES:
            raise ValueError(f"config line {lineno}: cannot parse {line!r}")
        out[key] = _coerce(key, value.strip())
    return out


def load_config(args: argparse.Namespace) -> RunConfig:
    cfg = RunConfig()
    if args.config:
        cfg = replace(cfg, **parse_config(Path(args.config).read_text()))
    overrides = {k: getattr(args, k) for k in _TYPES if getattr(args, k, None) is not None}
    if isinstance(overrides.get("t_grid"), str):
        overrides["t_grid"] = _coerce("t_grid", overrides["t_grid"])
    return replace(cfg, **overrides)


def _open_out(path: str):
    return nullcontext(sys.stdout) if path == "-" else open(path, "w", newline="")


def cmd_encode(cfg: RunConfig, x: int, out_file: str | None) -> str:
    sc = cfg.make_scheme()
    word = sc.encode(x)
    if out_file:
        bits.write_word_file(out_file, word)
    return f"scheme={sc.name} N={sc.N} m={sc.m} M={sc.M}\nword={bits.to_hex(word)}"


def cmd_decode(cfg: RunConfig, word: np.ndarray) -> int:
    return cfg.make_scheme().decode(word)


def cmd_tail_sweep(cfg: RunConfig, out: TextIO) -> None:
    sc = cfg.make_scheme()
    rows = tail_sweep(sc, cfg.channel(), cfg.trials, cfg.t_grid, cfg.workers)
    w = csv.writer(out, lineterminator="\n")
    w.writerow(["t", "survival", "ci_low", "ci_high", "trials", "p", "scheme"])
    for r in rows:
        w.writerow([r.t, f"{r.survival:.6g}", f"{r.ci_low:.6g}", f"{r.ci_high:.6g}", r.trials, cfg.p, sc.name])


def cmd_rate_report(cfg: RunConfig, out: TextIO) -> None:
    w = csv.writer(out, lineterminator="\n")
    w.writerow(["scheme", "N", "m", "rate", "capacity", "gap"])
    for r in rate_report(cfg.kB, cfg.nB, cfg.s, cfg.p, cfg.inner_seed):
        w.writerow([r.scheme, r.N, r.m, f"{r.rate:.6f}", f"{r.capacity:.6f}", f"{r.gap:.6f}"])


def read_entries(path: str) -> dict[str, int]:
    entries = {}
    for line in Path(path).read_text().splitlines():
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.replace(",", " ").split()
        if len(parts) != 2:
            raise ValueError(f"expected 'index value', got {line!r}")
        entries[parts[0]] = int(parts[1])
    return entries


def cmd_tape_demo(
    cfg: RunConfig,
    out: TextIO,
    entries: dict | None = None,
    n_random: int = 8,
    T: int | None = None,
    tape_seed: int = 0,
    randomize_agreeing: bool = False,
) -> None:
    sc = cfg.make_scheme()
    if entries is None:
        rng = keyed_rng(tape_seed, 0, stream=2)
        entries = {f"f{i}": 1 + int(rng.integers(sc.m)) for i in range(n_random)}
    tape = build_tape(entries, sc, T, tape_seed, randomize_agreeing=randomize_agreeing)
    w = csv.writer(out, lineterminator="\n")
    w.writerow(["index", "value", "decoded", "error", "T", "N"])
    for index, value in entries.items():
        got = query(tape, index)
        w.writerow([index, value, got, abs(got - value), tape.T, sc.N])


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", help="key=value config file")
    common.add_argument("--kB", type=int)
    common.add_argument("--nB", type=int)
    common.add_argument("--s", type=int)
    common.add_argument("--inner-seed", dest="inner_seed", type=int)
    common.add_argument("--p", type=float)
    common.add_argument("--channel-seed", dest="channel_seed", type=int)
    common.add_argument("--scheme", choices=SCHEMES)
    common.add_argument("--trials", type=int)
    common.add_argument("--t-grid", dest="t_grid", help="comma-separated thresholds")
    common.add_argument("--output", "-o", help="CSV path, '-' for stdout")
    common.add_argument("--workers", type=int)

    parser = argparse.ArgumentParser(prog="coded-gray", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    enc = sub.add_parser("encode", parents=[common], help="encode one integer")
    enc.add_argument("x", type=int)
    enc.add_argument("--word-file", help="also write the word in binary word-file format")

    dec = sub.add_parser("decode", parents=[common], help="decode one word")
    src = dec.add_mutually_exclusive_group(required=True)
    src.add_argument("--hex", help="packed word as hex (length taken from the scheme)")
    src.add_argument("--word-file", help="binary word file")

    sub.add_parser("tail-sweep", parents=[common], help="Monte-Carlo survival of |x_hat - x|")
    sub.add_parser("rate-report", parents=[common], help="word length, code size and rate per scheme")

    tape = sub.add_parser("tape-demo", parents=[common], help="scatter counters on a tape and query them")
    tape.add_argument("--entries", help="two-column file: index value")
    tape.add_argument("--random-entries", type=int, default=8)
    tape.add_argument("--tape-length", type=int)
    tape.add_argument("--tape-seed", type=int, default=0)
    tape.add_argument("--randomize-agreeing", action="store_true")
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        cfg = load_config(args)
        if args.command == "encode":
            sc = cfg.make_scheme()
            if not 1 <= args.x <= sc.m:
                parser.error(f"x={args.x} outside [1, {sc.m}]")
            print(cmd_encode(cfg, args.x, args.word_file))
        elif args.command == "decode":
            if args.word_file:
                word = bits.read_word_file(args.word_file)
            else:
                word = bits.from_hex(args.hex, cfg.make_scheme().N)
            print(cmd_decode(cfg, word))
        elif args.command == "tail-sweep":
            with _open_out(cfg.output) as out:
                cmd_tail_sweep(cfg, out)
        elif args.command == "rate-report":
            with _open_out(cfg.output) as out:
                cmd_rate_report(cfg, out)
        elif args.command == "tape-demo":
            entries = read_entries(args.entries) if args.entries else None
            with _open_out(cfg.output) as out:
                cmd_tape_demo(
                    cfg, out, entries, args.random_entries, args.tape_length,
                    args.tape_seed, args.randomize_agreeing,
                )
    except (ValueError, OSError) as exc:
        print(f"coded-gray: error: {exc}", file=sys.stderr)
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
