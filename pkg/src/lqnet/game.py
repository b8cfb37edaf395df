"""Stage game: parameters, network realization and linear-quadratic payoffs.

A round is described by a directed intention matrix ``intentions[i, j]``
(player ``i`` initiates a link to ``j``) and an effort vector.  A link exists
whenever at least one endpoint initiates it; only initiators pay for it.
"""

from __future__ import annotations

from dataclasses import dataclass, replace
from typing import NamedTuple

import numpy as np

from .exceptions import DimensionError


@dataclass(frozen=True)
class GameParams:
    """Payoff coefficients of the stage game.

    ``beta`` multiplies the squared effort.  The default of 2 is the value
    under which the benchmark efforts and payoffs (2.5, 4.17, 12.5, 26.92, ...)
    come out right; :meth:`literal_cost` builds the variant with ``4 x_i^2``
    as written in the printed payoff function.
    """

    n_players: int = 5
    alpha: float = 10.0
    beta: float = 2.0
    comp: float = 0.4
    link_cost: float = 3.9
    link_benefit: float = 0.0
    effort_max: float = 20.0

    def __post_init__(self) -> None:
        if int(self.n_players) != self.n_players or self.n_players < 2:
            raise ValueError(f"n_players must be an integer >= 2, got {self.n_players}")
        if not self.alpha > 0:
            raise ValueError("alpha must be positive")
        if not self.beta > 0:
            raise ValueError("beta must be positive")
        if self.comp < 0:
            raise ValueError("comp must be non-negative")
        if self.link_cost < 0:
            raise ValueError("link_cost must be non-negative")
        if self.link_benefit < 0:
            raise ValueError("link_benefit must be non-negative")
        if not self.effort_max > 0:
            raise ValueError("effort_max must be positive")

    @classmethod
    def link_benefit_treatment(cls, **kwargs) -> "GameParams":
        kwargs.setdefault("link_benefit", 6.0)
        return cls(**kwargs)

    @classmethod
    def literal_cost(cls, **kwargs) -> "GameParams":
        kwargs.setdefault("beta", 4.0)
        return cls(**kwargs)

    def with_(self, **changes) -> "GameParams":
        return replace(self, **changes)


class PlayerPayoff(NamedTuple):
    total: float
    effort_benefit: float
    effort_cost: float
    link_cost_paid: float
    link_benefit_received: float


@dataclass(frozen=True)
class RoundOutcome:
    """Per-player payoffs of one round, their breakdown and payoff ranks."""

    payoff: np.ndarray
    effort_benefit: np.ndarray
    effort_cost: np.ndarray
    link_cost_paid: np.ndarray
    link_benefit_received: np.ndarray
    ranks: np.ndarray

    @property
    def adjusted_payoff(self) -> np.ndarray:
        """Payoff net of the transfers received for incoming links."""
        return self.payoff - self.link_benefit_received

    def player(self, i: int) -> PlayerPayoff:
        return PlayerPayoff(
            float(self.payoff[i]),
            float(self.effort_benefit[i]),
            float(self.effort_cost[i]),
            float(self.link_cost_paid[i]),
            float(self.link_benefit_received[i]),
        )


def as_intentions(intentions, n_players: int | None = None) -> np.ndarray:
    g = np.asarray(intentions, dtype=bool)
    if g.ndim != 2 or g.shape[0] != g.shape[1]:
        raise DimensionError(f"intentions must be a square matrix, got shape {g.shape}")
    if n_players is not None and g.shape[0] != n_players:
        raise DimensionError(f"intentions are {g.shape[0]}x{g.shape[0]}, expected {n_players} players")
    if g.diagonal().any():
        raise ValueError("self-links are not allowed (diagonal must be false)")
    return g


def as_network(network, n_players: int | None = None) -> np.ndarray:
    g = as_intentions(network, n_players)
    if not np.array_equal(g, g.T):
        raise ValueError("network adjacency must be symmetric")
    return g


def as_efforts(efforts, params: GameParams) -> np.ndarray:
    x = np.asarray(efforts, dtype=float)
    if x.shape != (params.n_players,):
        raise DimensionError(f"expected {params.n_players} efforts, got shape {x.shape}")
    if np.any(x < 0) or np.any(x > params.effort_max) or not np.all(np.isfinite(x)):
        raise ValueError(f"efforts must lie in [0, {params.effort_max}]")
    return x


def realize_network(intentions) -> np.ndarray:
    """Undirected network formed by one-sided link initiation."""
    g = as_intentions(intentions)
    return g | g.T


def rank_players(payoffs) -> np.ndarray:
    """Competition ranking, 1 = highest payoff; ties share the best rank.

    >>> rank_players([10, 10, 5, 5, 1]).tolist()
    [1, 1, 3, 3, 5]
    """
    p = np.asarray(payoffs, dtype=float)
    if not np.all(np.isfinite(p)):
        raise ValueError("payoffs must be finite")
    return 1 + (p[None, :] > p[:, None]).sum(axis=1)


def payoffs(efforts, intentions, params: GameParams) -> RoundOutcome:
    """Evaluate every player's payoff for one round."""
    x = as_efforts(efforts, params)
    g = as_intentions(intentions, params.n_players)
    adj = g | g.T
    neighbour_sum = adj.astype(float) @ x
    effort_benefit = params.alpha * x + params.comp * x * neighbour_sum
    effort_cost = params.beta * x**2
    link_cost_paid = params.link_cost * g.sum(axis=1)
    link_benefit_received = params.link_benefit * g.sum(axis=0)
    total = effort_benefit - effort_cost - link_cost_paid + link_benefit_received
    return RoundOutcome(
        payoff=total,
        effort_benefit=effort_benefit,
        effort_cost=effort_cost,
        link_cost_paid=link_cost_paid.astype(float),
        link_benefit_received=link_benefit_received.astype(float),
        ranks=rank_players(total),
    )


def payoff(player: int, efforts, intentions, params: GameParams) -> PlayerPayoff:
    """Payoff and breakdown of a single player."""
    if not 0 <= player < params.n_players:
        raise DimensionError(f"player index {player} out of range")
    return payoffs(efforts, intentions, params).player(player)


def link_gain(x_i: float, x_j: float, initiator: bool, params: GameParams) -> float:
    """Change in i's payoff from adding the link i-j with efforts held fixed."""
    return params.comp * x_i * x_j - (params.link_cost if initiator else 0.0)
