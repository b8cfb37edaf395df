"""Nash equilibria of the network formation game.

Efforts on a fixed network solve the linear system (2*beta*I - comp*G) x = alpha*1,
i.e. they are proportional to Katz-Bonacich centrality.  The full game adds
one-sided linking; equilibria of small groups are found by exhaustive search.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from functools import lru_cache
from typing import NamedTuple

import numpy as np

from .exceptions import EnumerationGuard, NonConvergence, SpectralConditionViolated
from .game import GameParams, as_efforts, as_intentions, as_network, payoffs
from .graphs import all_networks, canonical_code, one_initiator_profiles

logger = logging.getLogger(__name__)

MAX_ENUMERATION_PLAYERS = 6
CERTIFY_EPSILON = 1e-9
FIXED_POINT_TOL = 1e-10
FIXED_POINT_MAX_ITER = 100_000


@dataclass(frozen=True, order=True)
class NetworkClass:
    label: str
    core_size: int | None = None

    def __str__(self) -> str:
        if self.label == "CorePeriphery":
            return f"CorePeriphery({self.core_size})"
        return self.label


EMPTY = NetworkClass("Empty")
STAR = NetworkClass("Star")
COMPLETE = NetworkClass("Complete")
OTHER = NetworkClass("Other")
_CLASS_ORDER = {"Empty": 0, "Star": 1, "Complete": 2, "CorePeriphery": 3, "Other": 4}


def classify_network(network) -> NetworkClass:
    """Label a network as Empty, Star, Complete, CorePeriphery(k) or Other.

    A core node is adjacent to everyone, so the only candidate core is the set
    of nodes with full degree; the partition holds iff every remaining node
    has degree equal to the core size (it then touches the core only).
    """
    adj = as_network(network)
    n = adj.shape[0]
    deg = adj.sum(axis=1)
    n_edges = int(deg.sum()) // 2
    if n_edges == 0:
        return EMPTY
    if n_edges == n * (n - 1) // 2:
        return COMPLETE
    core = deg == n - 1
    k = int(core.sum())
    if k == 0 or not np.all(deg[~core] == k):
        return OTHER
    if k == 1:
        return STAR
    return NetworkClass("CorePeriphery", k)


def best_response_effort(player: int, network, efforts, params: GameParams) -> float:
    adj = as_network(network, params.n_players)
    x = np.asarray(efforts, dtype=float)
    s = float(adj[player].astype(float) @ x)
    return float(np.clip((params.alpha + params.comp * s) / (2 * params.beta), 0.0, params.effort_max))


def best_response_profile(network, efforts, params: GameParams) -> np.ndarray:
    """Simultaneous best responses of all players to ``efforts``."""
    adj = np.asarray(network, dtype=float)
    s = adj @ np.asarray(efforts, dtype=float)
    return np.clip((params.alpha + params.comp * s) / (2 * params.beta), 0.0, params.effort_max)


def spectral_radius(network) -> float:
    adj = np.asarray(network, dtype=float)
    if not adj.any():
        return 0.0
    return float(np.linalg.eigvalsh(adj)[-1])


def solve_lq_system(network, params: GameParams, weight: float,
                    tol: float = FIXED_POINT_TOL, max_iter: int = FIXED_POINT_MAX_ITER) -> np.ndarray:
    """Solve (2*beta*I - weight*G) x = alpha*1 on the box [0, effort_max]^n.

    The unconstrained solution is used when it is feasible.  Otherwise the
    box-constrained problem is solved by projected Gauss-Seidel sweeps, each
    coordinate set to clip((alpha + weight * sum_nbrs x) / (2*beta)).
    """
    adj = np.asarray(network, dtype=float)
    n = adj.shape[0]
    m = 2 * params.beta * np.eye(n) - weight * adj
    x = np.linalg.solve(m, np.full(n, params.alpha))
    if np.all(x >= 0) and np.all(x <= params.effort_max):
        return x
    x = np.clip(x, 0.0, params.effort_max)
    for _ in range(max_iter):
        delta = 0.0
        for i in range(n):
            new = min(max((params.alpha + weight * adj[i] @ x) / (2 * params.beta), 0.0), params.effort_max)
            delta = max(delta, abs(new - x[i]))
            x[i] = new
        if delta < tol:
            return x
    raise NonConvergence(f"bounded effort iteration did not converge in {max_iter} sweeps")


def equilibrium_effort(network, params: GameParams) -> np.ndarray:
    """Nash equilibrium efforts on a fixed network."""
    adj = as_network(network, params.n_players)
    lam = spectral_radius(adj)
    if 2 * params.beta <= params.comp * lam:
        raise SpectralConditionViolated(
            f"2*beta={2 * params.beta} <= comp*lambda_max={params.comp * lam:.6g}")
    return solve_lq_system(adj, params, params.comp)


class NashCheck(NamedTuple):
    is_equilibrium: bool
    max_deviation_gain: float


@lru_cache(maxsize=None)
def _candidate_rows(n: int) -> np.ndarray:
    """rows[i, r] is the r-th possible intention row of player i (self excluded)."""
    m = n - 1
    bits = ((np.arange(1 << m)[:, None] >> np.arange(m)) & 1).astype(bool)
    rows = np.zeros((n, 1 << m, n), dtype=bool)
    for i in range(n):
        others = [j for j in range(n) if j != i]
        rows[i][:, others] = bits
    rows.flags.writeable = False
    return rows


def deviation_gains(intentions, efforts, params: GameParams) -> np.ndarray:
    """Best payoff improvement available to each player by a unilateral deviation.

    A deviation picks any own intention row and the best own effort against
    the resulting network; all other players' choices stay fixed.
    """
    g = as_intentions(intentions, params.n_players)
    x = as_efforts(efforts, params)
    current = payoffs(x, g, params)
    rows = _candidate_rows(params.n_players)
    received = g.T  # received[i, k]: k initiates to i
    nbrs = rows | received[:, None, :]
    s = nbrs.astype(float) @ x
    br = np.clip((params.alpha + params.comp * s) / (2 * params.beta), 0.0, params.effort_max)
    dev = (params.alpha * br - params.beta * br**2 + params.comp * br * s
           - params.link_cost * rows.sum(axis=2)
           + current.link_benefit_received[:, None])
    return dev.max(axis=1) - current.payoff


def is_nash(intentions, efforts, params: GameParams, epsilon: float = CERTIFY_EPSILON) -> NashCheck:
    if epsilon < 0:
        raise ValueError("epsilon must be non-negative")
    gain = float(deviation_gains(intentions, efforts, params).max())
    return NashCheck(gain <= epsilon, gain)


@dataclass(frozen=True)
class EquilibriumCertificate:
    intentions: np.ndarray
    efforts: np.ndarray
    network_class: NetworkClass
    max_deviation_gain: float
    canonical: int = 0
    n_labelled: int = 1  # labelled profiles in this isomorphism class

    @property
    def initiators(self) -> list[int]:
        return self.intentions.sum(axis=1).tolist()


def enumerate_equilibria(params: GameParams, epsilon: float = CERTIFY_EPSILON) -> list[EquilibriumCertificate]:
    """All pure Nash equilibria with one initiator per link, up to isomorphism.

    Profiles where both endpoints initiate a link are skipped: dropping one of
    the two initiations saves ``link_cost`` without changing the network.
    """
    n = params.n_players
    if n > MAX_ENUMERATION_PLAYERS:
        raise EnumerationGuard(f"exhaustive enumeration limited to n <= {MAX_ENUMERATION_PLAYERS}")
    found: dict[int, EquilibriumCertificate] = {}
    counts: dict[int, int] = {}
    skipped = 0
    for adj in all_networks(n):
        try:
            x = equilibrium_effort(adj, params)
        except SpectralConditionViolated:
            skipped += 1
            continue
        cls = None
        for g in one_initiator_profiles(adj):
            ok, gain = is_nash(g, x, params, epsilon)
            if not ok:
                continue
            code = canonical_code(g)
            counts[code] = counts.get(code, 0) + 1
            if code not in found:
                cls = cls or classify_network(adj)
                found[code] = EquilibriumCertificate(g, x, cls, gain, code)
    if skipped:
        logger.warning("skipped %d networks violating the spectral condition", skipped)
    certs = [
        EquilibriumCertificate(c.intentions, c.efforts, c.network_class, c.max_deviation_gain,
                               code, counts[code])
        for code, c in found.items()
    ]
    certs.sort(key=lambda c: (_CLASS_ORDER[c.network_class.label], c.network_class.core_size or 0,
                              c.canonical))
    return certs
