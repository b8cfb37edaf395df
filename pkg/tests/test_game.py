from fractions import Fraction as F

import numpy as np
import pytest
from conftest import game_instances, random_intentions
from hypothesis import given, settings
from hypothesis import strategies as st

from lqnet.exceptions import DimensionError
from lqnet.game import GameParams, link_gain, payoff, payoffs, rank_players, realize_network
from lqnet.graphs import complete_network


def intentions_from(n, pairs):
    g = np.zeros((n, n), dtype=bool)
    for i, j in pairs:
        g[i, j] = True
    return g


# exact interior star equilibrium: center 175/48, periphery 275/96
X_CENTER = F(175, 48)
X_PERIPH = F(275, 96)


class TestRealizeNetwork:
    def test_empty(self):
        assert not realize_network(np.zeros((5, 5), dtype=bool)).any()

    def test_single_initiation(self):
        net = realize_network(intentions_from(5, [(1, 2)]))
        assert net[1, 2] and net[2, 1]
        assert net.sum() == 2

    def test_double_initiation_is_one_edge(self):
        net = realize_network(intentions_from(5, [(1, 2), (2, 1)]))
        assert net.sum() == 2

    def test_rejects_self_links(self):
        g = np.eye(3, dtype=bool)
        with pytest.raises(ValueError):
            realize_network(g)

    @given(st.lists(st.booleans(), min_size=25, max_size=25))
    def test_transpose_invariant(self, bits):
        g = np.array(bits).reshape(5, 5)
        np.fill_diagonal(g, False)
        np.testing.assert_array_equal(realize_network(g), realize_network(g.T))


class TestPayoff:
    def test_isolated_player(self, params):
        x = np.array([2.5, 0, 0, 0, 0])
        assert payoff(0, x, np.zeros((5, 5), bool), params).total == pytest.approx(12.5, abs=1e-12)

    def test_complete_network_equilibrium(self, params):
        x = np.full(5, 25 / 6)
        g = intentions_from(5, [(i, (i + k) % 5) for i in range(5) for k in (1, 2)])
        out = payoffs(x, g, params)
        assert np.allclose(out.payoff, 26.92, atol=0.01)
        # exact value 1250/36 - 7.8
        assert out.payoff[0] == pytest.approx(float(F(1250, 36) - F(39, 5)), abs=1e-12)

    def test_zero_everything(self, params):
        out = payoffs(np.zeros(5), np.zeros((5, 5), bool), params)
        assert np.all(out.payoff == 0)

    def test_star_center_with_link_benefit(self, lb_params):
        xs = np.array([float(X_CENTER)] + [float(X_PERIPH)] * 4)
        g = intentions_from(5, [(j, 0) for j in range(1, 5)])
        got = payoff(0, xs, g, lb_params)
        exact = 10 * X_CENTER - 2 * X_CENTER**2 + F(2, 5) * X_CENTER * 4 * X_PERIPH + 6 * 4
        assert got.total == pytest.approx(float(exact), abs=1e-12)
        assert got.total == pytest.approx(50.58, abs=0.01)
        assert got.link_benefit_received == 24
        assert got.link_cost_paid == 0

    def test_dimension_mismatch(self, params):
        with pytest.raises(DimensionError):
            payoffs(np.zeros(4), np.zeros((5, 5), bool), params)
        with pytest.raises(DimensionError):
            payoffs(np.zeros(5), np.zeros((4, 4), bool), params)
        with pytest.raises(DimensionError):
            payoff(7, np.zeros(5), np.zeros((5, 5), bool), params)

    def test_effort_bounds(self, params):
        with pytest.raises(ValueError):
            payoffs(np.full(5, 21.0), np.zeros((5, 5), bool), params)

    @settings(max_examples=200)
    @given(game_instances())
    def test_breakdown_additivity(self, inst):
        efforts, g = inst
        p = GameParams.link_benefit_treatment()
        out = payoffs(efforts, g, p)
        recombined = out.effort_benefit - out.effort_cost - out.link_cost_paid + out.link_benefit_received
        np.testing.assert_allclose(recombined, out.payoff, rtol=1e-12, atol=1e-12)

    @settings(max_examples=100)
    @given(game_instances(), st.permutations(range(5)))
    def test_relabeling_symmetry(self, inst, perm):
        efforts, g = inst
        p = GameParams.link_benefit_treatment()
        perm = np.array(perm)
        base = payoffs(efforts, g, p).payoff
        permuted = payoffs(efforts[perm], g[np.ix_(perm, perm)], p).payoff
        np.testing.assert_allclose(permuted, base[perm], rtol=1e-12, atol=1e-9)


class TestLinkGain:
    def test_mutual_effort_five(self, params):
        assert link_gain(5, 5, True, params) == pytest.approx(6.1)
        # same number as the payoff difference from adding the link
        x = np.array([5.0, 5.0, 0, 0, 0])
        with_link = payoff(0, x, intentions_from(5, [(0, 1)]), params).total
        without = payoff(0, x, np.zeros((5, 5), bool), params).total
        assert with_link - without == pytest.approx(6.1, abs=1e-12)

    def test_zero_own_effort(self, params):
        assert link_gain(0, 7.3, True, params) == pytest.approx(-3.9)

    def test_threshold(self, params):
        assert link_gain(3.9, 2.5, True, params) == pytest.approx(0, abs=1e-14)
        assert link_gain(3.9, 2.5, False, params) == pytest.approx(3.9)

    def test_toggle_consistency(self, params):
        rng = np.random.default_rng(11)
        p = GameParams.link_benefit_treatment()
        for _ in range(300):
            x = rng.uniform(0, 20, 5)
            g = random_intentions(rng)
            i, j = rng.choice(5, 2, replace=False)
            on, off = g.copy(), g.copy()
            on[i, j], off[i, j] = True, False
            diff = payoff(i, x, on, p).total - payoff(i, x, off, p).total
            if off[j, i]:
                # edge exists anyway; only the initiation cost changes
                assert diff == pytest.approx(-p.link_cost, abs=1e-10)
            else:
                assert diff == pytest.approx(link_gain(x[i], x[j], True, p), abs=1e-10)


class TestRankPlayers:
    @pytest.mark.parametrize("pay, ranks", [
        ([30, 20, 10, 5, 1], [1, 2, 3, 4, 5]),
        ([10, 10, 5, 5, 1], [1, 1, 3, 3, 5]),
        ([7, 7, 7, 7, 7], [1, 1, 1, 1, 1]),
        ([1, 5, 3, 5, 2], [5, 1, 3, 1, 4]),
    ])
    def test_competition_ranking(self, pay, ranks):
        assert rank_players(pay).tolist() == ranks

    def test_rejects_nan(self):
        with pytest.raises(ValueError):
            rank_players([1.0, float("nan")])

    @given(st.lists(st.integers(-5, 5), min_size=2, max_size=8))
    def test_order_independent(self, pay):
        pay = np.array(pay, dtype=float)
        perm = np.random.default_rng(len(pay)).permutation(len(pay))
        assert rank_players(pay[perm]).tolist() == rank_players(pay)[perm].tolist()


class TestGameParams:
    def test_defaults(self):
        p = GameParams()
        assert (p.n_players, p.alpha, p.beta, p.comp, p.link_cost, p.link_benefit, p.effort_max) == \
            (5, 10, 2, 0.4, 3.9, 0, 20)

    def test_literal_cost_switch(self):
        assert GameParams.literal_cost().beta == 4

    @pytest.mark.parametrize("kw", [dict(n_players=1), dict(alpha=0), dict(beta=0), dict(comp=-0.1),
                                    dict(link_cost=-1), dict(link_benefit=-1), dict(effort_max=0)])
    def test_invariants(self, kw):
        with pytest.raises(ValueError):
            GameParams(**kw)

    def test_complete_network_helper(self):
        assert complete_network(5).sum() == 20
