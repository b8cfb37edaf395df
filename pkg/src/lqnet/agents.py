"""Behavioral decision rules for simulated players.

Linking follows a link-level logit whose coefficients are the log odds ratios
estimated per treatment in the laboratory data.  Effort partially adjusts
toward the myopic best response, with a downward step for players ranked in
the bottom two when ranking feedback is shown.
"""

from __future__ import annotations

import math
from dataclasses import asdict, dataclass, fields
from typing import NamedTuple

import numpy as np
from scipy.special import expit

from .game import GameParams


@dataclass(frozen=True)
class LinkLogitCoeffs:
    """Log-odds coefficients of the link initiation logit."""

    intercept: float
    inertia: float
    received: float
    inertia_x_received: float
    own_effort: float
    opp_effort: float
    period: float

    def __post_init__(self) -> None:
        for f in fields(self):
            v = getattr(self, f.name)
            # -inf intercept is allowed: it encodes "never initiate"
            if math.isnan(v) or (math.isinf(v) and not (f.name == "intercept" and v < 0)):
                raise ValueError(f"coefficient {f.name} must be finite, got {v}")

    @classmethod
    def from_odds_ratios(cls, **odds: float) -> "LinkLogitCoeffs":
        return cls(**{k: math.log(v) if v > 0 else -math.inf for k, v in odds.items()})

    def odds_ratios(self) -> dict[str, float]:
        return {k: math.exp(v) for k, v in asdict(self).items()}


# Odds ratios from the random-effects link logit, one column per treatment.
LINK_ODDS_RATIOS: dict[str, dict[str, float]] = {
    "baseline": dict(intercept=0.103, inertia=3.256, received=0.440, inertia_x_received=1.483,
                     own_effort=0.949, opp_effort=1.507, period=1.001),
    "link_benefit": dict(intercept=0.159, inertia=1.940, received=0.913, inertia_x_received=1.361,
                         own_effort=0.929, opp_effort=1.466, period=0.995),
    "ranking": dict(intercept=0.314, inertia=2.233, received=0.591, inertia_x_received=1.456,
                    own_effort=0.967, opp_effort=1.359, period=0.989),
    "interaction": dict(intercept=0.359, inertia=1.847, received=0.840, inertia_x_received=1.785,
                        own_effort=1.036, opp_effort=1.216, period=0.997),
}

LINK_PRESETS: dict[str, LinkLogitCoeffs] = {
    name: LinkLogitCoeffs.from_odds_ratios(**odds) for name, odds in LINK_ODDS_RATIOS.items()
}


@dataclass(frozen=True)
class EffortRuleParams:
    adjust_rate: float = 0.25
    noise_sd: float = 0.5
    rank_effort_drop: float = 0.3
    rank_link_logit_drop: float = 0.25
    initial_effort_low: float = 3.0
    initial_effort_high: float = 8.0
    initial_link_prob: float = 0.5

    def __post_init__(self) -> None:
        if not 0 <= self.adjust_rate <= 1:
            raise ValueError("adjust_rate must lie in [0, 1]")
        if self.noise_sd < 0:
            raise ValueError("noise_sd must be non-negative")
        if self.rank_effort_drop < 0 or self.rank_link_logit_drop < 0:
            raise ValueError("rank responses must be non-negative")
        if not 0 <= self.initial_link_prob <= 1:
            raise ValueError("initial_link_prob must lie in [0, 1]")
        if not 0 <= self.initial_effort_low <= self.initial_effort_high:
            raise ValueError("need 0 <= initial_effort_low <= initial_effort_high")

    def check_bounds(self, params: GameParams) -> None:
        if self.initial_effort_high > params.effort_max:
            raise ValueError("initial effort support exceeds effort_max")


@dataclass(frozen=True)
class TreatmentSpec:
    link_benefit_on: bool = False
    ranking_feedback_on: bool = False

    @property
    def name(self) -> str:
        return {(False, False): "baseline", (True, False): "link_benefit",
                (False, True): "ranking", (True, True): "interaction"}[
            (self.link_benefit_on, self.ranking_feedback_on)]

    @property
    def is_interaction(self) -> bool:
        return self.link_benefit_on and self.ranking_feedback_on

    @classmethod
    def from_name(cls, name: str) -> "TreatmentSpec":
        key = name.strip().lower().replace("-", "_").replace(" ", "_")
        table = {"baseline": (False, False), "link_benefit": (True, False),
                 "linkbenefit": (True, False), "ranking": (False, True),
                 "interaction": (True, True)}
        if key not in table:
            raise ValueError(f"unknown treatment {name!r}")
        return cls(*table[key])


TREATMENTS = {name: TreatmentSpec.from_name(name)
              for name in ("baseline", "link_benefit", "ranking", "interaction")}


class LinkFeatures(NamedTuple):
    initiated_prev: np.ndarray | float
    received_prev: np.ndarray | float
    own_effort_prev: np.ndarray | float
    opp_effort_prev: np.ndarray | float
    period: np.ndarray | float


def link_logit(features: LinkFeatures, coeffs: LinkLogitCoeffs):
    i = np.asarray(features.initiated_prev, dtype=float)
    r = np.asarray(features.received_prev, dtype=float)
    return (coeffs.intercept
            + coeffs.inertia * i
            + coeffs.received * r
            + coeffs.inertia_x_received * i * r
            + coeffs.own_effort * np.asarray(features.own_effort_prev, dtype=float)
            + coeffs.opp_effort * np.asarray(features.opp_effort_prev, dtype=float)
            + coeffs.period * np.asarray(features.period, dtype=float))


def link_choice_prob(features: LinkFeatures, coeffs: LinkLogitCoeffs):
    """Probability of initiating a link, vectorized over opponents."""
    return expit(link_logit(features, coeffs))


def in_bottom_two(rank, n_players: int) -> bool:
    return rank > n_players - 2


def decide_links(agent: int, prev, period: int, treatment: TreatmentSpec, params: GameParams,
                 rule: EffortRuleParams, coeffs: LinkLogitCoeffs, rng: np.random.Generator,
                 rank: int | None = None) -> np.ndarray:
    """Intention row of ``agent`` for ``period``.

    ``prev`` is the previous period record (``None`` in period 1).  ``rank``
    is the rank the agent sees; it defaults to the previous per-period rank and
    only matters in the Interaction treatment.
    """
    n = params.n_players
    u = rng.random(n)  # fixed draw count keeps the stream layout stable
    row = np.zeros(n, dtype=bool)
    others = np.arange(n) != agent
    if period <= 1:
        row[others] = u[others] < rule.initial_link_prob
        return row
    if prev is None:
        raise ValueError("periods after the first need the previous record")
    feats = LinkFeatures(
        initiated_prev=prev.intentions[agent],
        received_prev=prev.intentions[:, agent],
        own_effort_prev=prev.efforts[agent],
        opp_effort_prev=prev.efforts,
        period=period,
    )
    z = link_logit(feats, coeffs)
    if treatment.is_interaction:
        if rank is None:
            rank = int(prev.outcome.ranks[agent])
        if in_bottom_two(rank, n):
            z = z - rule.rank_link_logit_drop
    p = expit(z)
    row[others] = u[others] < p[others]
    return row


def decide_effort(agent: int, prev, period: int, treatment: TreatmentSpec, params: GameParams,
                  rule: EffortRuleParams, rng: np.random.Generator, rank: int | None = None) -> float:
    """Effort of ``agent`` for ``period``: partial adjustment toward the best response."""
    if period <= 1:
        return float(rng.uniform(rule.initial_effort_low, rule.initial_effort_high))
    if prev is None:
        raise ValueError("periods after the first need the previous record")
    noise = rng.standard_normal() * rule.noise_sd
    x_prev = float(prev.efforts[agent])
    s = float(prev.network[agent].astype(float) @ prev.efforts)
    br = min(max((params.alpha + params.comp * s) / (2 * params.beta), 0.0), params.effort_max)
    target = (1 - rule.adjust_rate) * x_prev + rule.adjust_rate * br
    if treatment.ranking_feedback_on:
        if rank is None:
            rank = int(prev.outcome.ranks[agent])
        if in_bottom_two(rank, params.n_players):
            target -= rule.rank_effort_drop
    return float(min(max(target + noise, 0.0), params.effort_max))
