"""Linear-quadratic network formation game with social-status treatments.

Exact equilibrium and efficiency benchmarks for small groups, plus a seeded
agent-based simulator of repeated play and the group-level statistics used to
compare treatments.
"""

from .agents import (LINK_PRESETS, TREATMENTS, EffortRuleParams, LinkFeatures, LinkLogitCoeffs,
                     TreatmentSpec, decide_effort, decide_links, link_choice_prob)
from .equilibrium import (EquilibriumCertificate, NetworkClass, best_response_effort,
                          classify_network, enumerate_equilibria, equilibrium_effort, is_nash)
from .game import (GameParams, RoundOutcome, link_gain, payoff, payoffs, rank_players,
                   realize_network)
from .graphs import complete_network, empty_network, parse_network, path_network, star_network
from .sim import PeriodRecord, SimConfig, SimHistory, run_batch, run_round, run_session
from .stats import TestResult, mann_whitney_u, wilcoxon_signed_rank
from .welfare import WelfareResult, default_initiation, efficient_effort, optimize_welfare, welfare

__version__ = "0.1.0"

__all__ = [
    "EffortRuleParams", "EquilibriumCertificate", "GameParams", "LINK_PRESETS", "LinkFeatures",
    "LinkLogitCoeffs", "NetworkClass", "PeriodRecord", "RoundOutcome", "SimConfig", "SimHistory",
    "TREATMENTS", "TestResult", "TreatmentSpec", "WelfareResult", "best_response_effort",
    "classify_network", "complete_network", "decide_effort", "default_initiation", "empty_network",
    "parse_network", "path_network", "star_network", "decide_links", "efficient_effort", "enumerate_equilibria",
    "equilibrium_effort", "is_nash", "link_choice_prob", "link_gain", "mann_whitney_u",
    "optimize_welfare", "payoff", "payoffs", "rank_players", "realize_network", "run_batch",
    "run_round", "run_session", "welfare", "wilcoxon_signed_rank",
]
