"""Tests for the FR, expurgated, FA and secrecy exponents"""

import math

import numpy as np
import pytest
from numpy.testing import assert_allclose

import config
from src.decoders import map_limit, matched_metric, min_entropy
from src.exponents import (
    ExpurgationAnalyzer,
    ExponentResult,
    LambdaSurface,
    alpha,
    check_convergence,
    fa_exponent_gallager,
    fa_exponent_types,
    fr_expurgated_exponent,
    fr_expurgated_one,
    fr_expurgated_rho,
    fr_expurgated_rho_sweep,
    fr_map_exponent,
    fr_objective,
    fr_random_exponent,
    fr_random_exponent_given_type,
    gallager_source_function,
    gamma,
    grid_minimize,
    inner_fr_exponent,
    lambda_pairwise,
    secrecy_exponent,
    typical_leakage_bound,
)
from src.exponents.expurgated import _alpha_grid
from src.measures import CondPmf, JointPmf, Pmf, SimplexProductGrid, cond_entropy, dsbs, entropy
from src.measures.information import entropy_array, kl_array

from .conftest import DSBS_COND_ENTROPY


def random_pmf(rng, size):
    return Pmf(rng.dirichlet(np.ones(size)))


def random_channel(rng, rows, cols):
    return CondPmf(rng.dirichlet(np.ones(cols), size=rows))


def joint_entropy_of(probs):
    return float(entropy_array(np.ravel(probs)))


class TestGridSearch:
    """Grid-plus-refine minimisation"""

    def test_empty_feasible_set(self):
        found = grid_minimize(lambda pts: np.full(len(pts), np.inf), SimplexProductGrid(1, 3), 10)
        assert found.value == np.inf and found.point is None

    def test_refinement_finds_an_off_grid_minimum(self):
        target = np.array([0.123, 0.877])
        found = grid_minimize(lambda pts: np.abs(pts[:, 0, 0] - target[0]), SimplexProductGrid(1, 2), 10)
        assert found.refined
        assert found.value < 0.01

    def test_summary_lists_argmin_entries(self):
        result = ExponentResult(0.5, {'q_x': np.array([0.25, 0.75]), 's': 0.5})
        assert result.summary() == 'q_x=[0.25 0.75]; s=0.5'

    def test_convergence_flag(self):
        result = check_convergence(fa_exponent_types, Pmf.uniform(2), 0.3, 0.2, resolution=30)
        assert result.converged is True


class TestInnerExponent:
    """E(R_w, Q_X0Y)"""

    def test_anchor_is_optimal_for_min_entropy(self):
        value = inner_fr_exponent(0.6, dsbs(0.1), min_entropy(2.0), resolution=20)
        assert value == pytest.approx(0.6 - DSBS_COND_ENTROPY, abs=1e-12)

    def test_vanishes_below_the_conditional_entropy(self):
        assert inner_fr_exponent(0.2, dsbs(0.1), matched_metric(dsbs(0.1)), resolution=20) == 0.0

    def test_never_exceeds_the_anchor_value(self):
        q = dsbs(0.2)
        value = inner_fr_exponent(0.6, q, matched_metric(dsbs(0.1)), resolution=20)
        anchor = 0.6 - (-0.2 * math.log(0.2) - 0.8 * math.log(0.8))
        assert 0.0 <= value <= anchor + 1e-12


class TestRandomCodingExponent:
    """E_r(R_w) for the matched, min-entropy and MAP decoders"""

    def test_zero_below_the_conditional_entropy(self):
        p = dsbs(0.1)
        assert fr_random_exponent(p, 0.1, matched_metric(p), resolution=20).value == 0.0

    def test_positive_above_the_conditional_entropy(self):
        p = dsbs(0.1)
        result = fr_random_exponent(p, 0.6, matched_metric(p), resolution=20)
        assert result.value > 0.0
        assert result.kind == 'fr_random'
        assert set(result.argmin) == {'q_x0y', 'q_x_given_y'}

    def test_argmin_reproduces_the_value(self):
        p = dsbs(0.1)
        m = matched_metric(p)
        result = fr_random_exponent(p, 0.5, m, resolution=20)
        again = fr_objective(p, 0.5, m, result.argmin['q_x0y'], result.argmin['q_x_given_y'])
        assert again == pytest.approx(result.value, abs=1e-9)

    def test_non_decreasing_in_rate(self):
        p = dsbs(0.1)
        m = matched_metric(p)
        values = [fr_random_exponent(p, r, m, resolution=16).value for r in (0.35, 0.45, 0.55, 0.65)]
        assert all(b >= a - 1e-3 for a, b in zip(values, values[1:]))

    def test_map_limit_kind(self):
        result = fr_map_exponent(dsbs(0.1), 0.2, resolution=12)
        assert result.kind == 'fr_map'
        assert result.value == 0.0

    def test_per_type_exponent_zero_at_low_rate(self):
        result = fr_random_exponent_given_type(Pmf.uniform(2), CondPmf.bsc(0.1), 0.1, min_entropy(1.0),
                                               resolution=20)
        assert result.value == 0.0
        assert result.kind == 'fr_random_given_type'

    @pytest.mark.slow
    def test_threshold_at_the_conditional_entropy(self):
        p = dsbs(0.1)
        m = matched_metric(p)
        for r_w in (0.1, 0.2, 0.3):
            assert fr_random_exponent(p, r_w, m, resolution=60).value == 0.0
        for r_w in (0.45, 0.6):
            assert fr_random_exponent(p, r_w, m, resolution=60).value > 0.01

    @pytest.mark.slow
    def test_min_entropy_and_map_agree(self):
        """For beta >= 1 the min-entropy exponents and the MAP exponent coincide"""
        p = dsbs(0.1)
        for r_w in np.linspace(0.35, 0.65, 5):
            values = [fr_random_exponent(p, r_w, min_entropy(b), resolution=60).value
                      for b in (1.0, 2.0, 4.0)]
            values.append(fr_map_exponent(p, r_w, resolution=60).value)
            assert max(values) - min(values) < 2e-3


class TestAlphaGamma:
    """alpha(R_w, Q_Y) and gamma(Q_XY)"""

    def test_closed_forms(self):
        q_y = Pmf.uniform(2)
        assert alpha(0.3, q_y, min_entropy(2.0), x_size=2) == pytest.approx(-0.6)
        assert alpha(0.3, q_y, min_entropy(0.5), x_size=2) == pytest.approx(0.5 * math.log(2) - 0.3)
        assert alpha(0.3, q_y, map_limit(min_entropy(1.0)), x_size=2) == pytest.approx(-0.3)
        assert alpha(0.7, q_y, min_entropy(2.0), x_size=2) == -np.inf

    def test_grid_matches_closed_form_below_unit_beta(self):
        value = _alpha_grid(0.3, np.array([0.4, 0.6]), min_entropy(0.5), 2, 20)
        assert value == pytest.approx(0.5 * math.log(2) - 0.3, abs=1e-9)

    def test_channel_metric_needs_no_alphabet_hint(self):
        p = dsbs(0.1)
        value = alpha(0.3, Pmf.uniform(2), matched_metric(p), resolution=20)
        assert np.isfinite(value)

    def test_gamma_dominates_the_metric(self):
        p = dsbs(0.1)
        m = matched_metric(p)
        assert gamma(p, 0.3, m, resolution=20) >= float(m.evaluate(p.probs))

    def test_gamma_min_entropy_closed_form_matches_grid(self, rng):
        for _ in range(20):
            q = JointPmf(rng.dirichlet(np.ones(4)).reshape(2, 2))
            beta = float(rng.uniform(1.0, 3.0))
            r_w = float(rng.uniform(0.1, 0.6))
            metric = min_entropy(beta)
            h = cond_entropy(q)
            closed = -beta * min(h, r_w)
            assert gamma(q, r_w, metric, resolution=20) == pytest.approx(closed, abs=1e-9)
            alpha_grid = _alpha_grid(r_w, q.y_marginal().probs, metric, 2, 40)
            generic = max(float(metric.evaluate(q.probs)), alpha_grid)
            assert generic == pytest.approx(closed, abs=3e-2)
            assert generic <= closed + 1e-9


class TestExpurgatedExponent:
    """E_ex, Lambda and the rho family"""

    def test_infinite_above_the_alphabet_entropy(self):
        result = fr_expurgated_exponent(Pmf.uniform(2), CondPmf.bsc(0.1), 1.1 * math.log(2), min_entropy(1.0))
        assert result.value == np.inf

    def test_result_records_the_chosen_beta(self):
        result = fr_expurgated_exponent(Pmf.uniform(2), CondPmf.bsc(0.1), 0.5, min_entropy(1.0),
                                        resolution=8, lambda_resolution=6)
        assert result.kind == 'fr_expurgated'
        assert result.value >= 0.0
        assert 'beta' in result.argmin

    def test_lambda_is_non_negative_on_the_diagonal(self):
        q_xx = JointPmf(np.diag([0.5, 0.5]))
        assert lambda_pairwise(q_xx, CondPmf.bsc(0.1), min_entropy(1.0), 0.4, resolution=8) >= -1e-12

    def test_lambda_min_entropy_decomposition(self, rng):
        """gamma - a + D splits into entropies, I(X';Y|X) and D(Q_{Y|X} || P_{Y|X} | Q_X)"""
        for _ in range(10):
            channel = random_channel(rng, 2, 2)
            beta = float(rng.uniform(1.0, 3.0))
            r_w = float(rng.uniform(0.1, 0.6))
            q_xx = rng.dirichlet(np.ones(4)).reshape(2, 2)
            surface = LambdaSurface(channel, min_entropy(beta), r_w, resolution=6)
            value, cond = surface.evaluate(q_xx, refine=True)
            joint = q_xx[:, :, None] * cond
            q_xy, q_x2y, q_x = joint.sum(axis=1), joint.sum(axis=0), q_xx.sum(axis=1)
            q_y = q_xy.sum(axis=0)
            h_x_given_y = joint_entropy_of(q_xy) - joint_entropy_of(q_y)
            h_x2_given_y = joint_entropy_of(q_x2y) - joint_entropy_of(q_y)
            i_x2_y_given_x = (joint_entropy_of(q_xx) + joint_entropy_of(q_xy)
                              - joint_entropy_of(joint) - joint_entropy_of(q_x))
            divergence = float(kl_array(q_xy, q_x[:, None] * channel.probs, axis=(0, 1)))
            expected = beta * (h_x2_given_y - min(h_x_given_y, r_w)) + i_x2_y_given_x + divergence
            assert value == pytest.approx(expected, abs=1e-9)
            assert lambda_pairwise(JointPmf(q_xx), channel, min_entropy(beta), r_w, resolution=6) == \
                pytest.approx(value, abs=1e-9)

    def test_lambda_on_a_noiseless_channel(self):
        """With Y = X only the identity channel has finite divergence, leaving beta H(X'|X)"""
        q_xx = np.array([[0.3, 0.2], [0.1, 0.4]])
        h_x2_given_x = joint_entropy_of(q_xx) - joint_entropy_of(q_xx.sum(axis=1))
        for beta in (1.0, 2.5):
            value = lambda_pairwise(JointPmf(q_xx), CondPmf(np.eye(2)), min_entropy(beta), 0.3, resolution=6)
            assert value == pytest.approx(beta * h_x2_given_x, abs=1e-10)

    def test_rho_family_stays_below_and_approaches_the_exponent(self):
        q_x, channel, metric = Pmf.uniform(2), CondPmf.bsc(0.1), min_entropy(1.0)
        kwargs = dict(resolution=8, lambda_resolution=6)
        analyzer = ExpurgationAnalyzer(q_x, channel, 0.4, metric, **kwargs)
        constrained = max(analyzer.constrained()[0], 0.0)
        values = [analyzer.rho_value(rho) for rho in config.RHO_GRID]
        assert max(values) <= constrained + 1e-9
        assert constrained - values[-1] <= constrained - values[0] + 1e-12
        assert values[-1] == pytest.approx(constrained, abs=1e-2)
        sweep = fr_expurgated_rho_sweep(q_x, channel, 0.4, metric, **kwargs)
        best = fr_expurgated_exponent(q_x, channel, 0.4, metric, **kwargs)
        assert max(v for _, v in sweep) <= best.value + 1e-9

    def test_rho_one_matches_the_unconstrained_form(self, rng):
        for _ in range(25):
            q_x = random_pmf(rng, 2)
            channel = random_channel(rng, 2, 2)
            r_w = float(rng.uniform(0.05, 0.6))
            metric = min_entropy(float(rng.uniform(0.5, 3.0)))
            analyzer = ExpurgationAnalyzer(q_x, channel, r_w, metric, resolution=8, lambda_resolution=6)
            assert abs(analyzer.rho_value(1.0) - analyzer.one_value()) <= 1e-9

    def test_public_rho_functions_agree(self):
        args = (Pmf(np.array([0.4, 0.6])), CondPmf.bsc(0.15), 0.3, min_entropy(1.0))
        kwargs = dict(resolution=8, lambda_resolution=6)
        one = fr_expurgated_one(*args, **kwargs)
        assert fr_expurgated_rho(*args, 1.0, **kwargs) == pytest.approx(one, abs=1e-9)

    def test_rho_family_is_non_decreasing(self):
        sweep = fr_expurgated_rho_sweep(Pmf.uniform(2), CondPmf.bsc(0.1), 0.4, min_entropy(1.0),
                                        resolution=8, lambda_resolution=6)
        values = [v for _, v in sweep]
        assert [r for r, _ in sweep] == [1.0, 2.0, 4.0, 8.0, 16.0, 64.0]
        assert all(b >= a for a, b in zip(values, values[1:]))

    def test_rho_below_one_is_rejected(self):
        analyzer = ExpurgationAnalyzer(Pmf.uniform(2), CondPmf.bsc(0.1), 0.3, min_entropy(1.0),
                                       resolution=6, lambda_resolution=4)
        with pytest.raises(ValueError):
            analyzer.rho_value(0.5)

    @pytest.mark.slow
    def test_expurgation_never_hurts(self):
        """E_ex over the beta family is at least the per-type random-coding exponent"""
        q_x, channel, metric = Pmf.uniform(2), CondPmf.bsc(0.1), min_entropy(1.0)
        for r_w in np.linspace(0.1, 0.65, 6):
            expurgated = fr_expurgated_exponent(q_x, channel, r_w, metric, resolution=12, lambda_resolution=8)
            random_coding = fr_random_exponent_given_type(q_x, channel, r_w, metric, resolution=40)
            assert expurgated.value >= random_coding.value - 1e-2


class TestFalseAccept:
    """Method-of-types and Gallager forms of the FA exponent"""

    def test_uniform_source_closed_form(self):
        for r_w, r_s in ((0.2, 0.2), (0.5, 0.3), (0.1, 0.6)):
            value = fa_exponent_types(Pmf.uniform(2), r_w, r_s, resolution=40).value
            assert value == pytest.approx(min(r_s, math.log(2) - r_w), abs=1e-9)

    def test_vanishes_above_the_source_entropy(self):
        p = Pmf(np.array([0.8, 0.2]))
        r_w = entropy(p) + 0.05
        assert fa_exponent_types(p, r_w, 0.3, resolution=40).value == 0.0
        assert fa_exponent_gallager(p, r_w, 0.3).value <= 1e-12

    def test_source_function_limits(self):
        p = Pmf(np.array([0.5, 0.3, 0.2]))
        values = gallager_source_function(p, [0.0, 1.0])
        assert_allclose(values, [-math.log(0.5), 0.0], atol=1e-12)
        rho = np.array([0.25, 0.5, 0.75])
        assert_allclose(gallager_source_function(Pmf.uniform(4), rho), (1 - rho) * math.log(4))

    def test_forms_agree_on_random_instances(self, rng):
        for _ in range(20):
            p = random_pmf(rng, int(rng.integers(2, 4)))
            r_w = float(rng.uniform(0.0, 1.2))
            r_s = float(rng.uniform(0.0, 1.0))
            types = fa_exponent_types(p, r_w, r_s).value
            gallager = fa_exponent_gallager(p, r_w, r_s).value
            assert abs(types - gallager) < 1e-2
            assert types <= r_s + 1e-12

    def test_argmin_fields(self):
        assert set(fa_exponent_gallager(Pmf.uniform(2), 0.2, 0.2).argmin) == {'s', 'rho'}
        assert set(fa_exponent_types(Pmf.uniform(2), 0.2, 0.2, resolution=10).argmin) == {'q_x'}

    def test_monotone_in_the_rates(self):
        p = Pmf(np.array([0.6, 0.3, 0.1]))
        rates = np.linspace(0.0, 1.2, 9)
        for forms, tolerance in ((fa_exponent_gallager, 1e-12), (fa_exponent_types, 1e-3)):
            over_r_w = [forms(p, r_w, 0.3).value for r_w in rates]
            over_r_s = [forms(p, 0.4, r_s).value for r_s in rates]
            assert all(b <= a + tolerance for a, b in zip(over_r_w, over_r_w[1:]))
            assert all(b >= a - tolerance for a, b in zip(over_r_s, over_r_s[1:]))


class TestSecrecy:
    """E_sec(r) and the typical-code leakage bound"""

    def test_uniform_source(self):
        value = secrecy_exponent(Pmf.uniform(2), 0.4).value
        assert value >= math.log(2) - 0.4 - 1e-9
        assert value == pytest.approx(0.2931, abs=5e-3)

    def test_zero_when_the_rate_covers_the_entropy(self):
        p = Pmf(np.array([0.7, 0.3]))
        assert secrecy_exponent(p, entropy(p) + 0.01, resolution=20).value == 0.0

    def test_zero_rate_picks_the_likeliest_point_mass(self):
        p = Pmf(np.array([0.7, 0.3]))
        assert secrecy_exponent(p, 0.0, resolution=20).value == pytest.approx(-math.log(0.7))

    def test_negative_rate(self):
        with pytest.raises(ValueError):
            secrecy_exponent(Pmf.uniform(2), -0.1)

    def test_leakage_bound(self):
        assert typical_leakage_bound(Pmf.uniform(2), 6, 0.0, 0.0) == pytest.approx(0.0, abs=1e-12)
        small = typical_leakage_bound(Pmf.uniform(2), 8, 0.1, 0.1)
        large = typical_leakage_bound(Pmf.uniform(2), 8, 0.5, 0.5)
        assert 0.0 <= small <= large

    def test_non_increasing_in_rate(self):
        p = Pmf(np.array([0.6, 0.3, 0.1]))
        values = [secrecy_exponent(p, r, resolution=30).value for r in np.linspace(0.0, entropy(p), 8)]
        assert all(b <= a + 1e-3 for a, b in zip(values, values[1:]))
        assert values[-1] == pytest.approx(0.0, abs=1e-3)

    def test_grid_converges(self):
        assert check_convergence(secrecy_exponent, Pmf(np.array([0.7, 0.3])), 0.3, resolution=30).converged


@pytest.mark.slow
class TestGridConvergence:
    """Doubling the grid resolution leaves the exponents in place"""

    def test_false_reject(self):
        p = dsbs(0.1)
        m = matched_metric(p)
        for r_w in (0.45, 0.6):
            coarse = fr_random_exponent(p, r_w, m, resolution=30).value
            fine = fr_random_exponent(p, r_w, m, resolution=60).value
            assert abs(coarse - fine) < 1e-2

    def test_secrecy(self):
        p = Pmf(np.array([0.6, 0.3, 0.1]))
        for r in (0.2, 0.5, 0.8):
            assert check_convergence(secrecy_exponent, p, r, resolution=40).converged
