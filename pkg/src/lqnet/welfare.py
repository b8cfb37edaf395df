"""Efficient (total-payoff maximizing) efforts and networks."""

from __future__ import annotations

import logging
from dataclasses import dataclass

import numpy as np

from .equilibrium import MAX_ENUMERATION_PLAYERS, solve_lq_system, spectral_radius
from .exceptions import ConcavityViolated, EnumerationGuard
from .game import GameParams, as_efforts, as_network, payoffs
from .graphs import edges_of, isomorphism_classes

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class WelfareResult:
    network: np.ndarray
    efforts: np.ndarray
    intentions: np.ndarray
    per_player_payoffs: np.ndarray
    total_welfare: float
    transfers: float = 0.0

    @property
    def gross_welfare(self) -> float:
        """Total including experimenter-paid transfers for incoming links."""
        return self.total_welfare + self.transfers


def efficient_effort(network, params: GameParams) -> np.ndarray:
    """Efforts maximizing the group's total payoff on a fixed network.

    Each link's interaction term enters the total from both endpoints, so the
    first-order condition is (2*beta*I - 2*comp*G) x = alpha*1.
    """
    adj = as_network(network, params.n_players)
    lam = spectral_radius(adj)
    if params.beta <= params.comp * lam:
        raise ConcavityViolated(f"beta={params.beta} <= comp*lambda_max={params.comp * lam:.6g}")
    return solve_lq_system(adj, params, 2 * params.comp)


def default_initiation(network) -> np.ndarray:
    """Reporting convention assigning one initiator to every link.

    The lower-degree endpoint initiates (periphery links to the center of a
    star).  Between equal-degree endpoints, i initiates to j when j follows i
    within half a turn of the circular order, which gives every player two
    initiations in the complete 5-node network.
    """
    adj = as_network(network)
    n = adj.shape[0]
    deg = adj.sum(axis=1)
    g = np.zeros_like(adj)
    for i, j in edges_of(adj):
        if deg[i] != deg[j]:
            src, dst = (i, j) if deg[i] < deg[j] else (j, i)
        else:
            src, dst = (i, j) if (j - i) % n <= n // 2 else (j, i)
        g[src, dst] = True
    return g


def total_welfare(network, efforts, params: GameParams) -> float:
    """Sum of payoffs, each link charged once, transfers excluded."""
    adj = as_network(network, params.n_players)
    x = np.asarray(efforts, dtype=float)
    s = adj.astype(float) @ x
    n_links = int(adj.sum()) // 2
    return float(np.sum(params.alpha * x - params.beta * x**2 + params.comp * x * s)
                 - params.link_cost * n_links)


def numerical_gradient(network, efforts, params: GameParams, step: float = 1e-5) -> np.ndarray:
    """Central-difference gradient of :func:`total_welfare` in the efforts."""
    x = np.asarray(efforts, dtype=float)
    grad = np.empty_like(x)
    for i in range(x.size):
        up, down = x.copy(), x.copy()
        up[i] += step
        down[i] -= step
        grad[i] = (total_welfare(network, up, params) - total_welfare(network, down, params)) / (2 * step)
    return grad


def welfare(network, efforts, params: GameParams, intentions=None) -> WelfareResult:
    """Total welfare of an allocation plus per-player payoffs.

    Per-player payoffs need an initiator for every link; ``intentions``
    supplies one, otherwise :func:`default_initiation` is used.  Only the
    split across players depends on that choice.
    """
    adj = as_network(network, params.n_players)
    x = as_efforts(efforts, params)
    g = default_initiation(adj) if intentions is None else np.asarray(intentions, dtype=bool)
    if not np.array_equal(g | g.T, adj):
        raise ValueError("intentions do not realize the given network")
    if (g & g.T).any():
        raise ValueError("welfare accounting expects a single initiator per link")
    out = payoffs(x, g, params)
    own = out.payoff - out.link_benefit_received
    return WelfareResult(adj, x, g, own, float(own.sum()), float(out.link_benefit_received.sum()))


def optimize_welfare(params: GameParams) -> WelfareResult:
    """Exhaustive search for the welfare-maximizing network and efforts.

    Ties go to fewer links, then to the smaller canonical code.
    """
    n = params.n_players
    if n > MAX_ENUMERATION_PLAYERS:
        raise EnumerationGuard(f"exhaustive search limited to n <= {MAX_ENUMERATION_PLAYERS}")
    best = None
    best_key = None
    for code, adj in isomorphism_classes(n).items():
        try:
            x = efficient_effort(adj, params)
        except ConcavityViolated:
            logger.warning("skipping network %d: welfare not concave", code)
            continue
        w = total_welfare(adj, x, params)
        key = (-w, int(adj.sum()) // 2, code)
        if best_key is None or key < best_key:
            best_key, best = key, (adj, x)
    if best is None:
        raise ConcavityViolated("no network satisfies the concavity condition")
    adj, x = best
    return welfare(adj, x, params)
