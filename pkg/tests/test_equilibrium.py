import itertools

import numpy as np
import pytest
from conftest import random_intentions, random_network
from oracles import damped_best_response
from scipy.optimize import minimize_scalar

from lqnet.equilibrium import (EMPTY, NetworkClass, best_response_effort, classify_network,
                               deviation_gains, enumerate_equilibria, equilibrium_effort, is_nash)
from lqnet.exceptions import EnumerationGuard, SpectralConditionViolated
from lqnet.game import GameParams, payoffs
from lqnet.graphs import (all_networks, complete_network, empty_network, network_from_edges,
                          path_network, star_network)


def damped_iteration(adj, p):
    x = damped_best_response(adj.tolist(), p.alpha, p.beta, p.comp, p.effort_max)
    return np.array(x)


def brute_force_gain(g, x, p):
    """Oracle: loop over every own row, maximize own effort numerically."""
    n = p.n_players
    base = payoffs(x, g, p).payoff
    best = -np.inf
    for i in range(n):
        others = [j for j in range(n) if j != i]
        for row in itertools.product((0, 1), repeat=n - 1):
            h = g.copy()
            h[i, :] = False
            h[i, others] = row

            def neg(e, h=h, i=i):
                y = x.copy()
                y[i] = e
                return -payoffs(y, h, p).payoff[i]

            res = minimize_scalar(neg, bounds=(0, p.effort_max), method="bounded",
                                  options={"xatol": 1e-10})
            best = max(best, -res.fun - base[i])
    return best


def regular_graph(n, d):
    if d == 0:
        return empty_network(n)
    if d == n - 1:
        return complete_network(n)
    # circulant graph: connect to the d//2 nearest on each side (+ antipode if d odd, n even)
    edges = {(i, (i + k) % n) for i in range(n) for k in range(1, d // 2 + 1)}
    if d % 2:
        edges |= {(i, (i + n // 2) % n) for i in range(n // 2)}
    return network_from_edges(n, edges)


class TestBestResponse:
    def test_isolated(self, params):
        assert best_response_effort(0, empty_network(5), np.zeros(5), params) == 2.5

    def test_star_center(self, params):
        x = np.array([0, 2.8646, 2.8646, 2.8646, 2.8646])
        assert best_response_effort(0, star_network(5), x, params) == pytest.approx(3.6458, abs=1e-4)

    def test_upper_clamp(self, params):
        x = np.array([0, 20, 20, 20, 20.0])
        x[1:] = 20
        p = GameParams(effort_max=20)
        adj = star_network(5)
        # neighbour sum 80 -> (10 + 32) / 4 = 10.5, still interior; push it with comp
        assert best_response_effort(0, adj, x, p.with_(comp=1.0)) == 20


class TestEquilibriumEffort:
    def test_empty(self, params):
        np.testing.assert_allclose(equilibrium_effort(empty_network(5), params), 2.5)

    def test_complete(self, params):
        x = equilibrium_effort(complete_network(5), params)
        np.testing.assert_allclose(x, 25 / 6, rtol=1e-14)
        assert np.all(np.abs(x - 4.17) <= 0.005)

    def test_star(self, params):
        x = equilibrium_effort(star_network(5), params)
        assert x[0] == pytest.approx(175 / 48, abs=1e-12)
        np.testing.assert_allclose(x[1:], 275 / 96, atol=1e-12)
        assert abs(x[0] - 3.65) <= 0.005 and abs(x[1] - 2.86) <= 0.005

    def test_path_matches_oracle(self, params):
        adj = path_network(5)
        np.testing.assert_allclose(equilibrium_effort(adj, params), damped_iteration(adj, params), atol=1e-6)

    def test_all_networks_fixed_point(self, params):
        for adj in all_networks(5):
            x = equilibrium_effort(adj, params)
            br = np.array([best_response_effort(i, adj, x, params) for i in range(5)])
            np.testing.assert_allclose(br, x, atol=1e-9)

    @pytest.mark.parametrize("n, d", [(5, 0), (6, 1), (5, 2), (6, 3), (5, 4)])
    def test_regular_closed_form(self, params, n, d):
        p = params.with_(n_players=n)
        adj = regular_graph(n, d)
        assert set(adj.sum(axis=1)) == {d}
        np.testing.assert_allclose(equilibrium_effort(adj, p), p.alpha / (2 * p.beta - p.comp * d),
                                   rtol=1e-14)

    def test_monotone_in_edges(self, params):
        rng = np.random.default_rng(3)
        for _ in range(200):
            adj = random_network(rng)
            missing = [(i, j) for i in range(5) for j in range(i + 1, 5) if not adj[i, j]]
            if not missing:
                continue
            i, j = missing[rng.integers(len(missing))]
            bigger = adj.copy()
            bigger[i, j] = bigger[j, i] = True
            assert np.all(equilibrium_effort(bigger, params) >= equilibrium_effort(adj, params) - 1e-12)

    def test_spectral_condition(self, params):
        with pytest.raises(SpectralConditionViolated):
            equilibrium_effort(complete_network(5), params.with_(comp=1.0))

    def test_bounded_fallback(self, params):
        p = params.with_(effort_max=3.0)
        x = equilibrium_effort(complete_network(5), p)
        np.testing.assert_allclose(x, 3.0)
        p = params.with_(effort_max=3.0, comp=0.6)
        adj = star_network(5)
        x = equilibrium_effort(adj, p)
        np.testing.assert_allclose(x, damped_iteration(adj, p), atol=1e-8)
        assert x.max() <= 3.0


class TestIsNash:
    def test_complete_equilibrium(self, params):
        g = np.zeros((5, 5), bool)
        for i in range(5):
            g[i, (i + 1) % 5] = g[i, (i + 2) % 5] = True
        ok, gain = is_nash(g, np.full(5, 25 / 6), params)
        assert ok and gain <= 1e-9

    def test_complete_efficient_is_not(self, params):
        g = np.triu(np.ones((5, 5), bool), 1)
        ok, gain = is_nash(g, np.full(5, 12.5), params)
        assert not ok
        # best response to 4 * 12.5 is 7.5: 112.5 against 62.5
        assert gain == pytest.approx(50.0, abs=1e-9)

    def test_empty_equilibrium(self, params):
        ok, gain = is_nash(np.zeros((5, 5), bool), np.full(5, 2.5), params)
        assert ok and gain <= 1e-9
        # one-link deviation with re-optimized effort 2.75
        x = 2.75
        assert 10 * x - 2 * x**2 + 0.4 * x * 2.5 - 3.9 == pytest.approx(11.225)

    def test_matches_brute_force(self, params):
        rng = np.random.default_rng(5)
        p = GameParams.link_benefit_treatment()
        for _ in range(15):
            g = random_intentions(rng)
            x = rng.uniform(0, 8, 5)
            assert deviation_gains(g, x, p).max() == pytest.approx(brute_force_gain(g, x, p), abs=1e-6)

    def test_negative_epsilon(self, params):
        with pytest.raises(ValueError):
            is_nash(np.zeros((5, 5), bool), np.full(5, 2.5), params, epsilon=-1)


class TestClassify:
    def test_labels(self):
        assert classify_network(complete_network(5)).label == "Complete"
        assert classify_network(star_network(5, center=3)).label == "Star"
        assert classify_network(empty_network(5)) == EMPTY
        assert classify_network(path_network(5)).label == "Other"

    def test_core_periphery(self):
        # core {0, 1}: both adjacent to everyone, periphery only to the core
        adj = network_from_edges(5, [(0, 1)] + [(c, j) for c in (0, 1) for j in (2, 3, 4)])
        assert classify_network(adj) == NetworkClass("CorePeriphery", 2)
        assert str(classify_network(adj)) == "CorePeriphery(2)"
        adj[2, 3] = adj[3, 2] = True
        assert classify_network(adj).label == "Other"

    def test_counts_over_all_networks(self):
        labels = [str(classify_network(a)) for a in all_networks(5)]
        assert labels.count("Empty") == 1
        assert labels.count("Complete") == 1
        assert labels.count("Star") == 5
        assert labels.count("CorePeriphery(2)") == 10
        assert labels.count("CorePeriphery(3)") == 10


@pytest.fixture(scope="module")
def certs():
    return enumerate_equilibria(GameParams())


class TestEnumerate:
    def test_classes(self, certs):
        assert {c.network_class.label for c in certs} == {"Empty", "Star", "Complete"}

    def test_certificates_pass(self, certs):
        p = GameParams()
        for c in certs:
            ok, gain = is_nash(c.intentions, c.efforts, p, 1e-9)
            assert ok and gain == c.max_deviation_gain

    def test_complete_any_orientation(self, certs):
        # every one of the 2**10 orientations of the complete network certifies
        assert sum(c.n_labelled for c in certs if c.network_class.label == "Complete") == 1024

    def test_star_initiation_patterns(self, certs):
        stars = [c for c in certs if c.network_class.label == "Star"]
        center_inits = sorted(int(c.intentions[np.argmax(c.intentions.sum(0) + c.intentions.sum(1))].sum())
                              for c in stars)
        # periphery-initiated stars certify, and so do stars where the center
        # initiates exactly one of its links
        assert center_inits == [0, 1]
        assert sum(c.n_labelled for c in stars) == 5 + 20

    def test_no_interaction_only_empty(self):
        certs = enumerate_equilibria(GameParams(n_players=4, comp=0.0))
        assert [c.network_class.label for c in certs] == ["Empty"]

    def test_guard(self):
        with pytest.raises(EnumerationGuard):
            enumerate_equilibria(GameParams(n_players=7))
