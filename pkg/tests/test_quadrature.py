import math

import numpy as np
import pytest
from hypothesis import given, strategies as st

from _frozen import REFERENCE
from bellhv.errors import ParameterError, QuadratureConvergenceError
from bellhv.quadrature import (
    DEFAULT_QUADRATURE,
    QuadratureRule,
    QuadratureSpec,
    integrate,
)
from bellhv.transmission import REFERENCE_PARAMS, StretchedExponentialModel

GAUSS = QuadratureSpec(rule=QuadratureRule.GAUSS_LEGENDRE, panels=64)


class TestSpecValidation:
    def test_defaults(self):
        assert DEFAULT_QUADRATURE.panels == 4096
        assert DEFAULT_QUADRATURE.refine_until == 1e-9
        assert DEFAULT_QUADRATURE.max_refinements == 8

    def test_rejects_odd_simpson_panels(self):
        with pytest.raises(ParameterError):
            QuadratureSpec(panels=7)

    def test_gauss_allows_odd_node_counts(self):
        QuadratureSpec(rule=QuadratureRule.GAUSS_LEGENDRE, panels=7)

    def test_rejects_bad_fields(self):
        with pytest.raises(ParameterError):
            QuadratureSpec(panels=1)
        with pytest.raises(ParameterError):
            QuadratureSpec(refine_until=0.0)
        with pytest.raises(ParameterError):
            QuadratureSpec(refine_until=float("nan"))
        with pytest.raises(ParameterError):
            QuadratureSpec(max_refinements=-1)
        with pytest.raises(ParameterError):
            QuadratureSpec(rule="simpson")


class TestIntegrate:
    @pytest.mark.parametrize("spec", [None, GAUSS], ids=["simpson", "gauss"])
    def test_constant_over_half_turn(self, spec):
        value, estimate = integrate(lambda x: np.ones_like(x), 0.0, math.pi, spec)
        assert value == pytest.approx(math.pi, abs=1e-12)
        assert estimate <= 1e-9

    @pytest.mark.parametrize("spec", [None, GAUSS], ids=["simpson", "gauss"])
    def test_cosine_squared(self, spec):
        value, _ = integrate(lambda x: np.cos(x) ** 2, -math.pi / 2, math.pi / 2, spec)
        assert value == pytest.approx(math.pi / 2, abs=1e-10)

    def test_transmission_profile_integral(self):
        model = StretchedExponentialModel(REFERENCE_PARAMS)
        value, _ = integrate(model.probabilities, -math.pi / 2, math.pi / 2, None)
        assert value == pytest.approx(math.pi * REFERENCE["intensity_ratio"], abs=1e-9)
        assert math.pi * 0.44 < value < math.pi * 0.46

    def test_empty_interval(self):
        assert integrate(lambda x: x, 2.0, 2.0, None) == (0.0, 0.0)

    def test_reversed_interval_rejected(self):
        with pytest.raises(ParameterError):
            integrate(lambda x: x, 1.0, 0.0, None)

    def test_non_finite_limits_rejected(self):
        with pytest.raises(ParameterError):
            integrate(lambda x: x, 0.0, float("inf"), None)

    def test_non_finite_integrand_rejected(self):
        with np.errstate(divide="ignore"), pytest.raises(ParameterError):
            integrate(lambda x: 1.0 / x, 0.0, 1.0, None)

    def test_scalar_only_integrand_supported(self):
        value, _ = integrate(lambda x: float(x) ** 2, 0.0, 1.0, None)
        assert value == pytest.approx(1.0 / 3.0, abs=1e-10)

    def test_non_convergence_carries_best_value(self):
        # panels=2 with a single doubling leaves only the coarse 4-panel
        # value; it is carried on the error rather than discarded
        spec = QuadratureSpec(panels=2, refine_until=1e-30, max_refinements=1)
        with pytest.raises(QuadratureConvergenceError) as excinfo:
            integrate(lambda x: np.exp(np.sin(3 * x)), 0.0, 2.0, spec)
        err = excinfo.value
        truth = integrate(lambda x: np.exp(np.sin(3 * x)), 0.0, 2.0, None)[0]
        assert err.value == pytest.approx(truth, rel=0.1)
        assert err.error_estimate > 1e-30
        assert np.isfinite(err.value) and np.isfinite(err.error_estimate)


@given(
    a=st.floats(min_value=-3.0, max_value=3.0),
    b=st.floats(min_value=-3.0, max_value=3.0),
    omega=st.floats(min_value=0.5, max_value=4.0),
)
def test_linearity_within_twice_summed_estimates(a, b, omega):
    f = lambda x: np.sin(omega * x)
    g = lambda x: x**2
    lo, hi = -1.0, 2.0
    vf, ef = integrate(f, lo, hi, None)
    vg, eg = integrate(g, lo, hi, None)
    vsum, esum = integrate(lambda x: a * f(x) + b * g(x), lo, hi, None)
    budget = 2.0 * (abs(a) * ef + abs(b) * eg + esum) + 1e-12
    assert abs(vsum - (a * vf + b * vg)) <= budget


@given(omega=st.floats(min_value=0.25, max_value=6.0))
def test_simpson_and_gauss_agree(omega):
    f = lambda x: np.cos(omega * x) * np.exp(-0.25 * x**2)
    vs, _ = integrate(f, -2.0, 2.0, None)
    vg, _ = integrate(f, -2.0, 2.0, GAUSS)
    assert vs == pytest.approx(vg, abs=5e-9)
