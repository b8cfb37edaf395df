"""Seeded round loop: fixed groups playing repeated rounds of the stage game."""

from __future__ import annotations

import logging
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from .agents import (LINK_PRESETS, EffortRuleParams, LinkLogitCoeffs, TreatmentSpec,
                     decide_effort, decide_links)
from .exceptions import ConfigError
from .game import GameParams, RoundOutcome, payoffs, rank_players, realize_network
from .rng import GroupStreams

logger = logging.getLogger(__name__)

LINK_BENEFIT_POINTS = 6.0
RANKING_BASES = ("period", "cumulative")


@dataclass(frozen=True)
class SimConfig:
    game: GameParams = field(default_factory=GameParams)
    treatment: TreatmentSpec = field(default_factory=TreatmentSpec)
    behavior: EffortRuleParams = field(default_factory=EffortRuleParams)
    link_coeffs: LinkLogitCoeffs | None = None  # None: preset of the treatment
    rounds: int = 40
    groups: int = 10
    master_seed: int = 0
    ranking_basis: str = "period"

    def __post_init__(self) -> None:
        if self.rounds < 1:
            raise ConfigError("rounds must be >= 1")
        if self.groups < 1:
            raise ConfigError("groups must be >= 1")
        if not -(2**63) <= int(self.master_seed) < 2**63:
            raise ConfigError("master_seed must fit in a signed 64-bit integer")
        if self.ranking_basis not in RANKING_BASES:
            raise ConfigError(f"ranking_basis must be one of {RANKING_BASES}")
        if self.treatment.link_benefit_on != (self.game.link_benefit > 0):
            raise ConfigError(
                f"link_benefit={self.game.link_benefit} inconsistent with treatment "
                f"{self.treatment.name!r}")
        try:
            self.behavior.check_bounds(self.game)
        except ValueError as exc:
            raise ConfigError(str(exc)) from None

    @classmethod
    def for_treatment(cls, name: str, **kwargs) -> "SimConfig":
        treatment = TreatmentSpec.from_name(name)
        game = kwargs.pop("game", None) or GameParams(
            link_benefit=LINK_BENEFIT_POINTS if treatment.link_benefit_on else 0.0)
        return cls(game=game, treatment=treatment, **kwargs)

    @property
    def coeffs(self) -> LinkLogitCoeffs:
        return self.link_coeffs or LINK_PRESETS[self.treatment.name]


@dataclass(frozen=True)
class PeriodRecord:
    period: int
    intentions: np.ndarray
    network: np.ndarray
    efforts: np.ndarray
    outcome: RoundOutcome
    cumulative_payoff: np.ndarray

    def visible_ranks(self, basis: str) -> np.ndarray:
        if basis == "cumulative":
            return rank_players(self.cumulative_payoff)
        return self.outcome.ranks


@dataclass
class SimHistory:
    config: SimConfig
    replication: int
    groups: list[list[PeriodRecord]]

    def __len__(self) -> int:
        return sum(len(g) for g in self.groups)


def run_round(prev: PeriodRecord | None, period: int, config: SimConfig, streams: GroupStreams,
              agent_order: Sequence[int] | None = None,
              ranks: Sequence[int] | None = None) -> PeriodRecord:
    """Play one period: all decisions read only the previous period's state.

    ``ranks`` overrides the ranks agents see (used to check that ranks are
    ignored outside the ranking treatments).
    """
    if not 1 <= period <= config.rounds:
        raise ValueError(f"period {period} outside [1, {config.rounds}]")
    if period > 1 and prev is None:
        raise ValueError("periods after the first need the previous record")
    params = config.game
    n = params.n_players
    order = range(n) if agent_order is None else agent_order
    if sorted(order) != list(range(n)):
        raise ValueError("agent_order must be a permutation of the players")
    if ranks is None and prev is not None:
        ranks = prev.visible_ranks(config.ranking_basis)
    coeffs = config.coeffs

    intentions = np.zeros((n, n), dtype=bool)
    efforts = np.zeros(n)
    for i in order:
        rank = None if ranks is None else int(ranks[i])
        intentions[i] = decide_links(i, prev, period, config.treatment, params, config.behavior,
                                     coeffs, streams.generator(period, i, "links"), rank)
        efforts[i] = decide_effort(i, prev, period, config.treatment, params, config.behavior,
                                   streams.generator(period, i, "effort"), rank)
    intentions.flags.writeable = False
    efforts.flags.writeable = False
    network = realize_network(intentions)
    network.flags.writeable = False
    outcome = payoffs(efforts, intentions, params)
    cumulative = outcome.payoff if prev is None else prev.cumulative_payoff + outcome.payoff
    return PeriodRecord(period, intentions, network, efforts, outcome, cumulative)


def run_group(config: SimConfig, replication: int, group: int) -> list[PeriodRecord]:
    streams = GroupStreams(config.master_seed, replication, group)
    records: list[PeriodRecord] = []
    prev = None
    for t in range(1, config.rounds + 1):
        prev = run_round(prev, t, config, streams)
        records.append(prev)
    return records


def _run_group_args(args) -> list[PeriodRecord]:
    return run_group(*args)


def run_session(config: SimConfig, replication: int = 0, workers: int | None = None) -> SimHistory:
    """Run every group of one session; group g uses substream (seed, rep, g)."""
    jobs = [(config, replication, g) for g in range(config.groups)]
    if workers and workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            groups = list(pool.map(_run_group_args, jobs))
    else:
        groups = [run_group(*job) for job in jobs]
    return SimHistory(config, replication, groups)


def _run_session_args(args) -> SimHistory:
    return run_session(*args)


def run_batch(config: SimConfig, replications: int, workers: int | None = None) -> list[SimHistory]:
    """Independent replications, returned in replication order."""
    if replications < 1:
        raise ValueError("replications must be >= 1")
    jobs = [(config, r) for r in range(replications)]
    if workers and workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            return list(pool.map(_run_session_args, jobs, chunksize=max(1, replications // (4 * workers))))
    return [run_session(*job) for job in jobs]
