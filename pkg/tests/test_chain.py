from types import SimpleNamespace

import numpy as np
import pytest
from hypothesis import given, strategies as st

import isofamily as iso
from isofamily.grid import sample

# admissible deformation parameters, kept away from the deleted interval's
# edges so residual-based assertions stay meaningful
admissible_lambda = st.one_of(
    st.floats(0.05, 10.0, allow_nan=False),
    st.floats(-10.0, -1.05, allow_nan=False),
)


def mode_norm(v):
    return iso.total_integral(v.with_values(v.values ** 2))


class TestOneParamMode:
    def test_value_at_origin(self, ho):
        v = iso.one_param_mode(ho, 0.2)
        oracle = np.sqrt(0.24) * np.pi ** -0.25 / 0.7
        assert v(0.0) == pytest.approx(oracle, abs=2e-6)

    def test_large_lambda_recovers_ground_state(self, ho):
        v = iso.one_param_mode(ho, 1e8)
        assert np.max(np.abs(v.values - ho.ground_state.values)) < 1e-6

    def test_negative_branch(self, ho):
        v = iso.one_param_mode(ho, -1.5)
        assert np.all(np.isfinite(v.values))
        assert np.all(v.values[1:-1] < 0.0)
        assert mode_norm(v) == pytest.approx(1.0, abs=1e-12)

    @pytest.mark.parametrize("lam", [-0.5, 0.0, -1.0, -0.999, -1e-9])
    def test_forbidden_parameters(self, ho, lam):
        with pytest.raises(iso.ParameterError, match="deleted interval"):
            iso.one_param_mode(ho, lam)

    def test_unnormalized_variant(self, ho):
        raw = iso.one_param_mode(ho, 0.2, normalized=False)
        assert mode_norm(raw) == pytest.approx(1.0 / 0.24, rel=1e-4)
        renormed = iso.normalize(raw)
        np.testing.assert_allclose(
            renormed.values, iso.one_param_mode(ho, 0.2).values, atol=1e-13
        )

    def test_denominator_guard(self):
        # unnormalized duck-typed problem drives the running integral past
        # -lambda, which the step must refuse
        grid = iso.make_grid(0.0, 1.0, 101)
        fake = SimpleNamespace(
            grid=grid, ground_state=sample(grid, lambda x: np.full_like(x, 2.0))
        )
        with pytest.raises(ValueError, match="vanishes"):
            iso.one_param_mode(fake, -2.0)


class TestOneParamPotential:
    def test_large_lambda_is_base(self, ho):
        V = iso.one_param_potential(ho, 1e8)
        assert np.max(np.abs(V.values - ho.potential.values)) < 1e-6

    def test_log_and_expanded_routes_agree(self, ho):
        a = iso.one_param_potential(ho, 0.2, form="expanded")
        b = iso.one_param_potential(ho, 0.2, form="log")
        assert np.max(np.abs(a.values - b.values)[5:-5]) < 1e-4

    def test_unknown_form(self, ho):
        with pytest.raises(ValueError, match="unknown form"):
            iso.one_param_potential(ho, 0.2, form="spectral")


class TestIterateMode:
    def test_first_step_matches_one_param(self, ho):
        stepped = iso.iterate_mode(ho.ground_state, 0.7)
        direct = iso.one_param_mode(ho, 0.7)
        np.testing.assert_allclose(stepped.values, direct.values, atol=1e-14)

    def test_large_lambda_is_identity(self, ho):
        v1 = iso.one_param_mode(ho, 0.3)
        v2 = iso.iterate_mode(v1, 1e8)
        assert np.max(np.abs(v2.values - v1.values)) < 1e-6

    def test_rejects_unnormalized_input(self, ho):
        doubled = ho.ground_state.with_values(2.0 * ho.ground_state.values)
        with pytest.raises(ValueError, match="unnormalized input"):
            iso.iterate_mode(doubled, 0.5)

    def test_rejects_forbidden_parameter(self, ho):
        with pytest.raises(iso.ParameterError):
            iso.iterate_mode(ho.ground_state, -0.25)

    def test_agrees_with_chain_route(self, ho):
        # stateless trapezoid step vs the integral-identity chain: O(h^2)
        v1 = iso.one_param_mode(ho, 0.4)
        stepped = iso.iterate_mode(v1, 0.9)
        chained = iso.chain_modes(ho, (0.4, 0.9)).modes[-1]
        assert np.max(np.abs(stepped.values - chained.values)) < 5e-5


class TestChainModes:
    def test_depth_one(self, ho):
        result = iso.chain_modes(ho, (0.2,))
        assert len(result.modes) == 1
        np.testing.assert_allclose(
            result.modes[0].values, iso.one_param_mode(ho, 0.2).values, atol=1e-15
        )

    def test_repeated_parameter_closed_form(self, ho):
        result = iso.chain_modes(ho, (0.2, 0.2))
        delta_f = result.integrals[0].values
        expected = 0.24 * ho.ground_state.values / (0.04 + 1.4 * delta_f)
        expected /= np.sqrt(
            iso.total_integral(ho.ground_state.with_values(expected ** 2))
        )
        np.testing.assert_allclose(result.modes[-1].values, expected, atol=1e-12)

    def test_matches_closed_mode(self, ho):
        result = iso.chain_modes(ho, (0.1, 0.2))
        closed = iso.closed_mode(ho, (0.1, 0.2))
        assert np.max(np.abs(result.modes[-1].values - closed.values)) < 1e-12

    def test_permutation_invariance(self, ho):
        a = iso.chain_modes(ho, (0.1, 0.2)).modes[-1]
        b = iso.chain_modes(ho, (0.2, 0.1)).modes[-1]
        assert np.max(np.abs(a.values - b.values)) < 1e-8

    def test_invalid_parameter_reports_position(self, ho):
        with pytest.raises(iso.ParameterError, match="index 1"):
            iso.chain_modes(ho, (0.2, -0.5))

    def test_half_line_restriction(self):
        with pytest.raises(iso.ParameterError, match="positive"):
            iso.ParamChain((0.2, -1.5), half_line=True)

    @given(lambdas=st.lists(admissible_lambda, min_size=1, max_size=4))
    def test_every_depth_normalized(self, ho, lambdas):
        result = iso.chain_modes(ho, lambdas)
        for mode in result.modes:
            assert abs(mode_norm(mode) - 1.0) < 1e-6

    @given(lambdas=st.lists(admissible_lambda, min_size=1, max_size=3))
    def test_zero_mode_at_every_depth(self, ho, lambdas):
        result = iso.chain_modes(ho, lambdas)
        for mode, potential in zip(result.modes, result.potentials):
            assert iso.zero_mode_residual(potential, mode, ho.kinetic_scale) < 1e-3

    def test_limit_consistency_any_position(self, ho):
        reference = iso.chain_modes(ho, (0.1, 0.2))
        for lams in [(0.1, 0.2, 1e8), (0.1, 1e8, 0.2), (1e8, 0.1, 0.2)]:
            final = iso.chain_modes(ho, lams).modes[-1]
            assert np.max(np.abs(final.values - reference.modes[-1].values)) < 1e-6


class TestChainPotential:
    def test_depth_one_is_log_route(self, ho):
        a = iso.chain_potential(ho, (0.3,))
        b = iso.one_param_potential(ho, 0.3, form="log")
        np.testing.assert_allclose(a.values, b.values, atol=1e-13)

    def test_large_lambda_tail_drops_out(self, ho):
        a = iso.chain_potential(ho, (0.3, 1e8))
        b = iso.one_param_potential(ho, 0.3, form="log")
        assert np.max(np.abs(a.values - b.values)) < 1e-6

    def test_matches_closed_potential(self, ho):
        a = iso.chain_potential(ho, (0.1, 0.2))
        b = iso.closed_potential(ho, (0.1, 0.2))
        assert np.max(np.abs(a.values - b.values)[5:-5]) < 2e-4

    def test_permutation_invariance(self, ho):
        a = iso.chain_potential(ho, (0.1, 0.2))
        b = iso.chain_potential(ho, (0.2, 0.1))
        assert np.max(np.abs(a.values - b.values)) < 1e-4

    def test_limit_consistency(self, ho):
        a = iso.chain_potential(ho, (0.1, 0.2, 1e8))
        b = iso.chain_potential(ho, (0.1, 0.2))
        assert np.max(np.abs(a.values - b.values)) < 1e-6


class TestRiccati:
    def test_value_at_origin(self, ho):
        y1 = iso.riccati_general_solution(ho, 0.2)
        assert y1(0.0) == pytest.approx(np.pi ** -0.5 / 0.7, abs=1e-9)

    def test_large_lambda_recovers_superpotential(self, ho):
        y1 = iso.riccati_general_solution(ho, 1e8)
        y0 = iso.superpotential(ho)
        assert np.max(np.abs(y1.values - y0.values)[y0.mask]) < 1e-6

    def test_very_large_lambda_stable(self, ho):
        y1 = iso.riccati_general_solution(ho, 1e15)
        y0 = iso.superpotential(ho)
        assert np.max(np.abs(y1.values - y0.values)[y0.mask]) < 1e-9

    @pytest.mark.parametrize("lam", [0.2, 5.0, -1.5])
    def test_log_derivative_of_mode(self, ho, lam):
        v = iso.one_param_mode(ho, lam)
        y1 = iso.riccati_general_solution(ho, lam)
        mask = (np.abs(v.values) > 1e-8) & y1.mask
        log_mode = np.log(np.abs(np.where(mask, v.values, 1.0)))
        lhs = -iso.derivative(v.with_values(log_mode)).values
        inner = mask.copy()
        inner[1:] &= mask[:-1]
        inner[:-1] &= mask[1:]
        assert np.max(np.abs(lhs - y1.values)[inner]) < 1e-4


class TestPartnerPotential:
    def test_oscillator_partner(self, ho):
        V1 = iso.partner_potential(ho)
        inside = np.abs(ho.grid.x) <= 5.0
        assert np.all(V1.mask[inside])
        expected = 0.5 * ho.grid.x ** 2 + 0.5
        assert np.max(np.abs(V1.values - expected)[inside]) < 1e-4

    def test_well_partner_is_free(self, well):
        V1 = iso.partner_potential(well)
        assert np.max(np.abs(V1.values[V1.mask] - 1.0)) < 1e-4

    def test_lambda_independence(self, ho):
        mask = ho.ground_state.values > 1e-6
        mask[:2] = mask[-2:] = False
        partners = []
        for lam in (0.2, 5.0):
            y1 = iso.riccati_general_solution(ho, lam)
            dy1 = iso.derivative(y1).values
            partners.append(ho.kinetic_scale * (y1.values ** 2 + dy1))
        assert np.max(np.abs(partners[0] - partners[1])[mask]) < 1e-3
