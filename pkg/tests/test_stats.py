import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from oracles import mann_whitney_oracle, wilcoxon_oracle

from lqnet.stats import mann_whitney_u, wilcoxon_signed_rank

small_ints = st.lists(st.integers(-4, 4), min_size=1, max_size=5)


class TestMannWhitney:
    def test_separated(self):
        res = mann_whitney_u([1, 2, 3], [4, 5, 6])
        assert res.statistic == 0 and res.p_value == pytest.approx(0.1) and res.method == "exact"
        assert res.z < 0

    def test_identical(self):
        assert mann_whitney_u([2, 2, 2], [2, 2]).p_value == 1.0

    def test_interleaved(self):
        assert mann_whitney_u([1, 3], [2, 4]).statistic == 1

    @settings(max_examples=150, deadline=None)
    @given(small_ints, small_ints)
    def test_matches_permutation_oracle(self, a, b):
        u, p = mann_whitney_oracle(a, b)
        res = mann_whitney_u(a, b)
        assert res.statistic == float(u)
        assert res.p_value == pytest.approx(p, abs=1e-12)

    @given(small_ints, small_ints)
    def test_u_complement(self, a, b):
        assert mann_whitney_u(a, b).statistic + mann_whitney_u(b, a).statistic == len(a) * len(b)

    def test_symmetric_p(self):
        rng = np.random.default_rng(1)
        for _ in range(50):
            a, b = rng.integers(0, 6, 5), rng.integers(0, 6, 6)
            assert mann_whitney_u(a, b).p_value == pytest.approx(mann_whitney_u(b, a).p_value)

    def test_normal_close_to_exact_6_vs_6(self):
        rng = np.random.default_rng(12)
        for _ in range(40):
            a, b = rng.normal(size=6), rng.normal(0.7, 1, size=6)
            ex = mann_whitney_u(a, b, exact=True).p_value
            ap = mann_whitney_u(a, b, exact=False).p_value
            assert abs(ex - ap) <= 0.05

    def test_large_uses_normal(self):
        res = mann_whitney_u(np.arange(10), np.arange(5, 15))
        assert res.method == "normal-approx" and 0 < res.p_value < 1

    def test_rejects_bad_input(self):
        with pytest.raises(ValueError):
            mann_whitney_u([], [1])
        with pytest.raises(ValueError):
            mann_whitney_u([np.nan], [1])


class TestWilcoxon:
    def test_all_positive(self):
        res = wilcoxon_signed_rank([1, 2, 3, 4, 5])
        assert res.statistic == 15 and res.p_value == pytest.approx(0.0625)

    def test_single(self):
        assert wilcoxon_signed_rank([3.0]).p_value == 1.0

    def test_mu0_shift(self):
        assert wilcoxon_signed_rank([6, 7, 8], mu0=5).statistic == 6

    def test_all_zero(self):
        with pytest.raises(ValueError):
            wilcoxon_signed_rank([2, 2], mu0=2)

    @settings(max_examples=150, deadline=None)
    @given(st.lists(st.integers(-4, 4), min_size=1, max_size=10).filter(lambda v: any(v)))
    def test_matches_sign_flip_oracle(self, d):
        w, p = wilcoxon_oracle(d)
        res = wilcoxon_signed_rank(d)
        assert res.statistic == float(w)
        assert res.p_value == pytest.approx(p, abs=1e-12)

    def test_sign_symmetry(self):
        rng = np.random.default_rng(3)
        for _ in range(30):
            d = rng.normal(size=8)
            assert wilcoxon_signed_rank(d).p_value == pytest.approx(wilcoxon_signed_rank(-d).p_value)
