"""Group-level statistics of simulated sessions and treatment comparisons.

Following the laboratory analysis, every group is one independent
observation: per-period measures are averaged over a window of periods
within the group before any test is run.
"""

from __future__ import annotations

import math
from dataclasses import asdict, dataclass
from typing import Sequence

import numpy as np

from .equilibrium import classify_network, equilibrium_effort
from .exceptions import NoLinks
from .game import GameParams
from .sim import PeriodRecord, SimHistory
from .stats import TestResult, mann_whitney_u, wilcoxon_signed_rank

CLASS_LABELS = ("Empty", "Star", "Complete", "CorePeriphery", "Other")
METRICS = ("effort", "equilibrium_effort", "payoff", "adjusted_payoff", "links", "avg_degree",
           "min_degree", "max_degree", "reciprocation")


def window_records(records: Sequence[PeriodRecord], window) -> list[PeriodRecord]:
    """Records inside ``window``: ``"all"``, ``"last10"``/``"lastK"`` or an int K (last K)."""
    rounds = len(records)
    if isinstance(window, str):
        w = window.strip().lower()
        if w == "all":
            k = rounds
        elif w.startswith("last") and w[4:].isdigit():
            k = int(w[4:])
        else:
            raise ValueError(f"unknown window {window!r}")
    else:
        k = int(window)
    if not 1 <= k <= rounds:
        raise ValueError(f"window of {k} periods outside [1, {rounds}]")
    return list(records[rounds - k:])


def network_stats(records: Sequence[PeriodRecord], window) -> dict[str, float]:
    """Window means of link count and average, minimum and maximum degree."""
    recs = window_records(records, window)
    deg = np.array([r.network.sum(axis=1) for r in recs], dtype=float)
    return {
        "links": float(np.mean(deg.sum(axis=1) / 2)),
        "avg_degree": float(np.mean(deg.mean(axis=1))),
        "max_degree": float(np.mean(deg.max(axis=1))),
        "min_degree": float(np.mean(deg.min(axis=1))),
    }


def equilibrium_frequency(records: Sequence[PeriodRecord], window) -> dict[str, float]:
    recs = window_records(records, window)
    counts = dict.fromkeys(CLASS_LABELS, 0)
    for r in recs:
        counts[classify_network(r.network).label] += 1
    return {k: v / len(recs) for k, v in counts.items()}


def reciprocated_fraction(records: Sequence[PeriodRecord], window) -> float:
    """Share of realized links initiated by both endpoints, pooled over the window."""
    recs = window_records(records, window)
    both = sum(int((r.intentions & r.intentions.T).sum()) // 2 for r in recs)
    links = sum(int(r.network.sum()) // 2 for r in recs)
    if links == 0:
        raise NoLinks("no realized links in window")
    return both / links


class _EquilibriumCache:
    def __init__(self, params: GameParams):
        self.params = params
        self._memo: dict[bytes, np.ndarray] = {}

    def __call__(self, network: np.ndarray) -> np.ndarray:
        key = np.packbits(network).tobytes()
        if key not in self._memo:
            self._memo[key] = equilibrium_effort(network, self.params)
        return self._memo[key]


@dataclass(frozen=True)
class GroupSummary:
    replication: int
    group: int
    window: str
    links: float
    avg_degree: float
    min_degree: float
    max_degree: float
    effort: float
    equilibrium_effort: float
    payoff: float
    adjusted_payoff: float
    freq_empty: float
    freq_star: float
    freq_complete: float
    freq_core_periphery: float
    freq_other: float
    reciprocation: float  # nan when the window has no links

    def to_dict(self) -> dict:
        return asdict(self)


def summarize_group(records: Sequence[PeriodRecord], window, params: GameParams,
                    replication: int = 0, group: int = 0, cache=None) -> GroupSummary:
    recs = window_records(records, window)
    cache = cache or _EquilibriumCache(params)
    net = network_stats(records, window)
    freq = equilibrium_frequency(records, window)
    try:
        recip = reciprocated_fraction(records, window)
    except NoLinks:
        recip = math.nan
    return GroupSummary(
        replication=replication, group=group, window=str(window),
        effort=float(np.mean([r.efforts.mean() for r in recs])),
        equilibrium_effort=float(np.mean([cache(r.network).mean() for r in recs])),
        payoff=float(np.mean([r.outcome.payoff.mean() for r in recs])),
        adjusted_payoff=float(np.mean([r.outcome.adjusted_payoff.mean() for r in recs])),
        freq_empty=freq["Empty"], freq_star=freq["Star"], freq_complete=freq["Complete"],
        freq_core_periphery=freq["CorePeriphery"], freq_other=freq["Other"],
        reciprocation=recip, **net,
    )


def summarize(history: SimHistory, window) -> list[GroupSummary]:
    cache = _EquilibriumCache(history.config.game)
    return [summarize_group(g, window, history.config.game, history.replication, i, cache)
            for i, g in enumerate(history.groups)]


def group_observations(batch: Sequence[SimHistory], metric: str, window) -> np.ndarray:
    """One window-averaged value per group across every history in ``batch``."""
    if metric not in METRICS:
        raise ValueError(f"unknown metric {metric!r}; choose from {METRICS}")
    if not batch:
        raise ValueError("empty batch")
    vals = [getattr(s, metric) for h in batch for s in summarize(h, window)]
    arr = np.array(vals, dtype=float)
    return arr[~np.isnan(arr)]


@dataclass(frozen=True)
class Comparison:
    metric: str
    window: str
    test: TestResult
    direction: int  # sign of mean(a) - mean(b)
    mean_a: float
    mean_b: float
    n_a: int
    n_b: int

    def to_dict(self) -> dict:
        d = asdict(self)
        d.update(d.pop("test"))
        return d


def compare_samples(a, b, metric: str = "", window="") -> Comparison:
    a = np.asarray(a, dtype=float)
    b = np.asarray(b, dtype=float)
    res = mann_whitney_u(a, b)
    diff = float(a.mean() - b.mean())
    return Comparison(metric, str(window), res, int(np.sign(diff)), float(a.mean()),
                      float(b.mean()), a.size, b.size)


def compare_treatments(batch_a: Sequence[SimHistory], batch_b: Sequence[SimHistory],
                       metric: str, window="last10") -> Comparison:
    return compare_samples(group_observations(batch_a, metric, window),
                           group_observations(batch_b, metric, window), metric, window)


def effort_vs_equilibrium(batch: Sequence[SimHistory], window="last10") -> Comparison:
    """Observed group effort against Nash effort on the networks actually formed."""
    return compare_samples(group_observations(batch, "effort", window),
                           group_observations(batch, "equilibrium_effort", window),
                           "effort_vs_equilibrium", window)


def payoff_vs_benchmark(batch: Sequence[SimHistory], benchmark: float, window="last10") -> TestResult:
    """One-sample signed-rank test of group mean payoffs against ``benchmark``."""
    return wilcoxon_signed_rank(group_observations(batch, "payoff", window), benchmark)


def rank_effort_response(history: SimHistory) -> dict[str, float]:
    """Mean effort change t-1 -> t split by the rank the agent saw at t-1.

    Groups: ``top2`` (ranks 1-2), ``middle`` and ``bottom2`` (the two lowest).
    """
    n = history.config.game.n_players
    basis = history.config.ranking_basis
    buckets: dict[str, list[float]] = {"top2": [], "middle": [], "bottom2": []}
    for records in history.groups:
        for prev, cur in zip(records, records[1:]):
            ranks = prev.visible_ranks(basis)
            change = cur.efforts - prev.efforts
            for i in range(n):
                key = "top2" if ranks[i] <= 2 else "bottom2" if ranks[i] > n - 2 else "middle"
                buckets[key].append(float(change[i]))
    return {k: float(np.mean(v)) if v else math.nan for k, v in buckets.items()}
