"""Nonparametric rank tests with exact small-sample p-values.

Exact distributions are computed by counting subsets (rank-sum) or sign
assignments (signed-rank) of the observed midranks.  Midranks are doubled so
that every rank sum is an integer and tail comparisons are exact, ties
included.
"""

from __future__ import annotations

import math
from collections import Counter
from dataclasses import asdict, dataclass

import numpy as np
from scipy.stats import norm, rankdata

EXACT_MAX_N = 12


@dataclass(frozen=True)
class TestResult:
    statistic: float
    z: float
    p_value: float
    method: str  # "exact" or "normal-approx"

    __test__ = False  # not a pytest class

    def to_dict(self) -> dict:
        return asdict(self)


def _as_sample(x, name: str) -> np.ndarray:
    arr = np.asarray(x, dtype=float).ravel()
    if arr.size == 0:
        raise ValueError(f"sample {name} is empty")
    if not np.all(np.isfinite(arr)):
        raise ValueError(f"sample {name} contains non-finite values")
    return arr


def _two_sided_normal(z: float) -> float:
    return float(min(1.0, 2 * norm.sf(abs(z))))


def _continuity_z(deviation: float, sd: float) -> float:
    if sd <= 0:
        return 0.0
    return math.copysign(max(abs(deviation) - 0.5, 0.0), deviation) / sd


def _subset_sum_counts(weights: list[int], k: int) -> list[Counter]:
    """counts[j][s] = number of j-element subsets of ``weights`` summing to s (j <= k)."""
    counts = [Counter() for _ in range(k + 1)]
    counts[0][0] = 1
    for w in weights:
        for j in range(min(k, len(weights)), 0, -1):
            prev = counts[j - 1]
            if not prev:
                continue
            cur = counts[j]
            for s, c in prev.items():
                cur[s + w] += c
    return counts


def mann_whitney_u(a, b, exact: bool | None = None) -> TestResult:
    """Two-sided Mann-Whitney rank-sum test; ``statistic`` is U for sample ``a``.

    ``z`` is positive when ``a`` tends to be larger than ``b``.  The exact
    permutation p-value is used when the pooled size is at most 12 (or when
    ``exact`` forces it), otherwise the tie- and continuity-corrected normal
    approximation.
    """
    a = _as_sample(a, "a")
    b = _as_sample(b, "b")
    na, nb = a.size, b.size
    n = na + nb
    ranks = rankdata(np.concatenate([a, b]))
    u_a = float(ranks[:na].sum() - na * (na + 1) / 2)
    mean = na * nb / 2
    _, ties = np.unique(ranks, return_counts=True)
    tie_term = float(np.sum(ties**3 - ties)) / (n * (n - 1)) if n > 1 else 0.0
    var = na * nb / 12 * ((n + 1) - tie_term)
    z = _continuity_z(u_a - mean, math.sqrt(max(var, 0.0)))
    if exact is None:
        exact = n <= EXACT_MAX_N
    if not exact:
        p = 1.0 if var <= 0 else _two_sided_normal(z)
        return TestResult(u_a, z, p, "normal-approx")

    doubled = [int(round(2 * r)) for r in ranks]
    obs = abs(sum(doubled[:na]) - na * (n + 1))
    dist = _subset_sum_counts(doubled, na)[na]
    total = sum(dist.values())
    hits = sum(c for s, c in dist.items() if abs(s - na * (n + 1)) >= obs)
    return TestResult(u_a, z, min(1.0, hits / total), "exact")


def wilcoxon_signed_rank(sample, mu0: float = 0.0, exact: bool | None = None) -> TestResult:
    """One-sample two-sided Wilcoxon signed-rank test of location ``mu0``.

    Observations equal to ``mu0`` are dropped; ``statistic`` is the sum of
    ranks of the positive differences.
    """
    d = _as_sample(sample, "sample") - mu0
    d = d[d != 0]
    if d.size == 0:
        raise ValueError("every observation equals mu0; signed-rank test undefined")
    n = d.size
    ranks = rankdata(np.abs(d))
    w_plus = float(ranks[d > 0].sum())
    mean = float(ranks.sum()) / 2
    sd = math.sqrt(float(np.sum(ranks**2)) / 4)
    z = _continuity_z(w_plus - mean, sd)
    if exact is None:
        exact = n <= EXACT_MAX_N
    if not exact:
        return TestResult(w_plus, z, _two_sided_normal(z), "normal-approx")

    doubled = [int(round(2 * r)) for r in ranks]
    total_d = sum(doubled)
    obs = abs(2 * int(round(2 * w_plus)) - total_d)
    dist = Counter({0: 1})
    for w in doubled:
        nxt = Counter()
        for s, c in dist.items():
            nxt[s] += c
            nxt[s + w] += c
        dist = nxt
    hits = sum(c for s, c in dist.items() if abs(2 * s - total_d) >= obs)
    return TestResult(w_plus, z, min(1.0, hits / 2**n), "exact")
