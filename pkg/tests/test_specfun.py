import math

import mpmath as mp
import numpy as np
import pytest
from hypothesis import given, strategies as st

from besselsum import specfun
from besselsum.errors import DivergentAtZero, DomainError
from besselsum.specfun import (
    Order,
    OrderKind,
    bessel_i,
    bessel_i_scaled,
    bessel_j,
    classify_order,
    small_argument_coeff,
    spherical_j,
)

mp.mp.dps = 30


class TestOrderClassification:
    @pytest.mark.parametrize(
        "value,kind",
        [
            (0.0, OrderKind.NONNEGATIVE_INTEGER),
            (3.0, OrderKind.NONNEGATIVE_INTEGER),
            (-2.0, OrderKind.NEGATIVE_INTEGER),
            (0.5, OrderKind.HALF_INTEGER),
            (-1.5, OrderKind.HALF_INTEGER),
            (0.3, OrderKind.GENERIC),
            (-0.77, OrderKind.GENERIC),
            (2.0 + 5e-13, OrderKind.NONNEGATIVE_INTEGER),  # inside 1e-12 tolerance
            (2.0 + 1e-9, OrderKind.GENERIC),
        ],
    )
    def test_kinds(self, value, kind):
        assert Order(value).kind is kind

    def test_rejects_nonfinite(self):
        with pytest.raises(DomainError):
            Order(float("nan"))
        with pytest.raises(DomainError):
            classify_order(float("inf"))

    @given(st.integers(min_value=-50, max_value=50))
    def test_integers_classified_exactly(self, n):
        kind = classify_order(float(n))
        if n < 0:
            assert kind is OrderKind.NEGATIVE_INTEGER
        else:
            assert kind is OrderKind.NONNEGATIVE_INTEGER


class TestBesselJ:
    def test_at_zero(self):
        assert bessel_j(0.0, 0.0) == 1.0
        assert bessel_j(2.0, 0.0) == 0.0
        assert bessel_j(0.5, 0.0) == 0.0
        assert bessel_j(-3.0, 0.0) == 0.0  # via reflection

    def test_zero_divergent_for_negative_noninteger(self):
        with pytest.raises(DivergentAtZero):
            bessel_j(-0.5, 0.0)

    def test_negative_x_rejected(self):
        with pytest.raises(DomainError):
            bessel_j(1.0, -0.1)

    def test_half_integer_closed_form(self):
        # J_{1/2}(x) = sqrt(2/(pi x)) sin x; at x = pi/2 this is 2/pi
        got = bessel_j(0.5, math.pi / 2)
        assert got == pytest.approx(2.0 / math.pi, rel=1e-14)

    def test_accepts_order_instances(self):
        assert bessel_j(Order(0.5), 2.0) == bessel_j(0.5, 2.0)
        assert bessel_i(Order(-1.0), 2.5) == bessel_i(1.0, 2.5)

    def test_reflection_even_order(self):
        assert bessel_j(-2.0, 1.7) == bessel_j(2.0, 1.7)

    def test_reflection_exact(self):
        # J_{-n} = (-1)^n J_n, exactly as computed
        for n in range(1, 21):
            for x in (0.3, 1.7, 9.2, 50.1):
                sign = -1.0 if n % 2 else 1.0
                assert bessel_j(-float(n), x) == sign * bessel_j(float(n), x)

    def test_against_arbitrary_precision(self):
        # independent high-precision series evaluation as the oracle
        cases = [(3.0, 10.0), (0.0, 1.0), (1.5, 7.3), (-2.5, 4.4), (12.0, 30.0)]
        for nu, x in cases:
            ref = float(mp.besselj(mp.mpf(nu), mp.mpf(x)))
            assert bessel_j(nu, x) == pytest.approx(ref, rel=1e-12, abs=1e-14)

    def test_accuracy_contract_grid(self):
        # rel <= 1e-12 away from zeros, abs <= 1.5e-14 near them, on a
        # deterministic grid covering |nu| <= 50, x <= 1e4
        nus = [-50.0, -12.5, -3.0, -0.5, 0.0, 0.5, 2.0, 7.5, 25.0, 50.0]
        xs = [1e-4, 0.1, 1.0, 10.0, 100.0, 1000.0, 10000.0]
        for nu in nus:
            for x in xs:
                if nu < 0 and classify_order(nu) is not OrderKind.NEGATIVE_INTEGER and x < 1e-2:
                    continue  # divergent region, values overflow-scale
                got = bessel_j(nu, x)
                ref = float(mp.besselj(mp.mpf(repr(nu)), mp.mpf(repr(x))))
                err = abs(got - ref)
                ok = (ref != 0 and err / abs(ref) <= 1e-12) or err <= 1.5e-14
                assert ok, f"nu={nu} x={x}: got {got!r} ref {ref!r}"

    def test_recurrence_grid(self):
        # J_{nu-1} + J_{nu+1} = (2 nu / x) J_nu
        for nu in np.arange(-10.0, 10.5, 0.5):
            for x in np.geomspace(0.1, 100.0, 25):
                jm = bessel_j(nu - 1.0, x)
                jp = bessel_j(nu + 1.0, x)
                j0 = bessel_j(nu, x)
                resid = abs(jm + jp - (2.0 * nu / x) * j0)
                assert resid <= 1e-10 * max(1.0, abs(j0))

    def test_small_argument_law(self):
        for nu in (0.5, 1.0, 1.5, 2.0):
            for x in np.geomspace(1e-6, 9e-4, 12):
                lead = (x / 2.0) ** nu / math.gamma(nu + 1.0)
                ratio = bessel_j(nu, x) / lead
                assert 1.0 - 1e-5 <= ratio <= 1.0 + 1e-5

    def test_large_argument_law(self):
        # first Hankel correction is envelope*(4 nu^2 - 1)/(8 x); the 2/x
        # budget covers orders up to 2
        for nu in (0.0, 0.5, 1.0, 1.5, 2.0):
            for x in np.linspace(50.0, 1000.0, 39):
                envelope = math.sqrt(2.0 / (math.pi * x))
                asym = envelope * math.cos(x - nu * math.pi / 2.0 - math.pi / 4.0)
                assert abs(bessel_j(nu, x) - asym) <= 2.0 * envelope / x


class TestBesselI:
    def test_at_zero(self):
        assert bessel_i(0.0, 0.0) == 1.0
        assert bessel_i(2.0, 0.0) == 0.0

    def test_half_integer_closed_form(self):
        # I_{1/2}(x) = sqrt(2/(pi x)) sinh x
        expect = math.sqrt(2.0 / math.pi) * math.sinh(1.0)
        assert bessel_i(0.5, 1.0) == pytest.approx(expect, rel=1e-14)
        assert expect == pytest.approx(0.937674888, abs=1e-9)

    def test_negative_integer_symmetry(self):
        assert bessel_i(-1.0, 2.5) == bessel_i(1.0, 2.5)

    def test_overflow_raises(self):
        with pytest.raises(OverflowError):
            bessel_i(0.0, 1000.0)

    def test_scaled_variant_stays_finite(self):
        got = bessel_i_scaled(0.0, 1000.0)
        # e^{-x} I_0(x) ~ 1/sqrt(2 pi x)
        assert got == pytest.approx(1.0 / math.sqrt(2.0 * math.pi * 1000.0), rel=1e-2)

    def test_against_arbitrary_precision(self):
        for nu, x in [(0.0, 3.0), (1.5, 0.4), (-1.5, 6.0), (4.0, 12.0)]:
            ref = float(mp.besseli(mp.mpf(nu), mp.mpf(x)))
            assert bessel_i(nu, x) == pytest.approx(ref, rel=1e-12)

    def test_negative_x_rejected(self):
        with pytest.raises(DomainError):
            bessel_i(0.0, -1.0)


class TestSphericalJ:
    def test_limits(self):
        assert spherical_j(0, 0.0) == 1.0
        assert spherical_j(1, 0.0) == 0.0
        assert abs(spherical_j(0, math.pi)) < 1e-15  # sin(pi)/pi

    def test_ell_one_closed_form(self):
        expect = math.sin(2.0) / 4.0 - math.cos(2.0) / 2.0
        assert spherical_j(1, 2.0) == pytest.approx(expect, rel=1e-13)
        assert expect == pytest.approx(0.435397774, abs=1e-9)

    def test_consistency_with_half_integer_j(self):
        for ell in range(6):
            for x in np.geomspace(0.01, 100.0, 30):
                via_j = math.sqrt(math.pi / (2.0 * x)) * bessel_j(ell + 0.5, x)
                assert spherical_j(ell, x) == pytest.approx(via_j, rel=1e-13)

    def test_bad_inputs(self):
        with pytest.raises(DomainError):
            spherical_j(-1, 1.0)
        with pytest.raises(DomainError):
            spherical_j(0, -1.0)


def test_small_argument_coeff_negative_integer():
    # (-1)^n (a/2)^n / n! for negative integer order
    assert small_argument_coeff(-2.0, 1.0) == pytest.approx(0.125, rel=1e-15)
    assert small_argument_coeff(-1.0, 0.5) == pytest.approx(-0.25, rel=1e-15)


def test_small_argument_coeff_generic():
    assert small_argument_coeff(0.5, 2.0) == pytest.approx(
        1.0 / math.gamma(1.5), rel=1e-14
    )
