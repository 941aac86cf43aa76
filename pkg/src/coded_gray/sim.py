"""Monte-Carlo tail sweeps and rate reports."""

from __future__ import annotations

from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from typing import Sequence

import numpy as np
from scipy.stats import binomtest

from .baselines import SCHEMES, make_scheme
from .channel import SAMPLE_STREAM, BscChannel, capacity, keyed_rng
from .scheme import RobustGrayScheme

DEFAULT_T_GRID = (0, 1, 2, 4, 8, 16, 32, 64, 128, 256, 512, 1024)


@dataclass(frozen=True)
class TailRow:
    t: int
    survival: float
    ci_low: float
    ci_high: float
    exceed: int
    trials: int


def trial_error(scheme: RobustGrayScheme, channel: BscChannel, i: int) -> int:
    """|decode(BSC(encode(x))) - x| for trial i, with x and the noise keyed by i."""
    x = 1 + int(keyed_rng(channel.seed, i, SAMPLE_STREAM).integers(scheme.m))
    received = channel.transmit(scheme.encode(x), i)
    return abs(scheme.decode(received) - x)


def _errors_chunk(args) -> np.ndarray:
    scheme, channel, lo, hi = args
    return np.array([trial_error(scheme, channel, i) for i in range(lo, hi)], dtype=np.int64)


def run_trials(
    scheme: RobustGrayScheme, channel: BscChannel, trials: int, workers: int = 1
) -> np.ndarray:
    if trials < 1:
        raise ValueError("trials must be >= 1")
    if workers <= 1:
        return _errors_chunk((scheme, channel, 0, trials))
    bounds = np.linspace(0, trials, 4 * workers + 1, dtype=int)
    jobs = [(scheme, channel, int(a), int(b)) for a, b in zip(bounds[:-1], bounds[1:])]
    with ProcessPoolExecutor(workers) as pool:
        return np.concatenate(list(pool.map(_errors_chunk, jobs)))


def survival(errors: np.ndarray, t_grid: Sequence[int]) -> list[TailRow]:
    """Empirical Pr{error > t} with Wilson 95% intervals."""
    n = len(errors)
    rows = []
    for t in t_grid:
        exceed = int(np.count_nonzero(errors > t))
        ci = binomtest(exceed, n).proportion_ci(confidence_level=0.95, method="wilson")
        rows.append(TailRow(int(t), exceed / n, float(ci.low), float(ci.high), exceed, n))
    return rows


def tail_sweep(
    scheme: RobustGrayScheme,
    channel: BscChannel,
    trials: int,
    t_grid: Sequence[int] = DEFAULT_T_GRID,
    workers: int = 1,
) -> list[TailRow]:
    return survival(run_trials(scheme, channel, trials, workers), t_grid)


@dataclass(frozen=True)
class RateRow:
    scheme: str
    N: int
    m: int
    rate: float
    capacity: float

    @property
    def gap(self) -> float:
        return self.capacity - self.rate


def rate_below(a: RateRow, b: RateRow) -> bool:
    """Exact test of log2(a.m)/a.N < log2(b.m)/b.N, via a.m**b.N < b.m**a.N."""
    return a.m ** b.N < b.m ** a.N


def rate_report(
    kB: int, nB: int, s: int, p: float, seed: int = 0, schemes: Sequence[str] = SCHEMES
) -> list[RateRow]:
    cap = capacity(p)
    rows = []
    for name in schemes:
        sc = make_scheme(name, kB, nB, s, seed)
        rows.append(RateRow(name, sc.N, sc.m, sc.rate, cap))
    return rows
