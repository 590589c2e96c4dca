import math

import numpy as np
import pytest
from hypothesis import given, strategies as st
from scipy.integrate import quad

from hermite_lane_emden.basis import SQRT_PI, gauss_rule, hermite_function
from hermite_lane_emden.mapping import (DomainMap, forward, forward_derivatives, induced_weight,
                                        inverse, transform_nodes)

ASINH_ONE = math.log(1 + math.sqrt(2))
ks = st.sampled_from([1 / 3, 2 / 3, 1.0, 2.0, 6.0])


def test_forward_at_unit_sinh():
    assert forward(DomainMap(1.0), ASINH_ONE) == pytest.approx(0.0, abs=1e-15)
    assert math.sinh(ASINH_ONE) == pytest.approx(1.0, rel=1e-15)


def test_forward_near_origin_is_finite():
    val = forward(DomainMap(1.0), 1e-9)
    assert np.isfinite(val) and val <= -20


def test_forward_large_argument_does_not_overflow():
    assert forward(DomainMap(1.0), 1000.0) == pytest.approx(1000.0 - math.log(2), rel=1e-15)


def test_inverse_values():
    assert inverse(DomainMap(1.0), 0.0) == pytest.approx(0.8813735870, abs=1e-10)
    assert math.sinh(inverse(DomainMap(1.0), 0.0)) == pytest.approx(1.0, rel=1e-15)
    assert inverse(DomainMap(2.0), 0.0) == pytest.approx(0.4406867935, abs=1e-10)
    small = inverse(DomainMap(1.0), -30.0)
    assert 0 < small and small == pytest.approx(math.exp(-30), rel=1e-12)


def test_inverse_handles_huge_omega():
    z = inverse(DomainMap(1.0), np.array([354.0, 700.0, 1e4]))
    assert np.all(np.isfinite(z))
    np.testing.assert_allclose(z, np.array([354.0, 700.0, 1e4]) + math.log(2), rtol=1e-15)


@given(omega=st.floats(-30, 30), k=ks)
def test_forward_inverse_round_trip(omega, k):
    dmap = DomainMap(k)
    assert forward(dmap, inverse(dmap, omega)) == pytest.approx(omega, abs=1e-12, rel=1e-11)


@given(omega=st.floats(30, 700), k=ks)
def test_round_trip_far_right(omega, k):
    dmap = DomainMap(k)
    assert forward(dmap, inverse(dmap, omega)) == pytest.approx(omega, rel=1e-11)


@given(z=st.floats(1e-6, 200), k=ks)
def test_inverse_forward_round_trip(z, k):
    dmap = DomainMap(k)
    assert inverse(dmap, forward(dmap, z)) == pytest.approx(z, rel=1e-11)


def test_derivatives_at_unit_sinh():
    d1, _ = forward_derivatives(DomainMap(1.0), ASINH_ONE)
    assert d1 == pytest.approx(math.sqrt(2), rel=1e-14)


def test_derivatives_at_infinity():
    d1, d2 = forward_derivatives(DomainMap(1.0), 50.0)
    assert abs(d1 - 1.0) <= 1e-12 and abs(d2) <= 1e-12


@pytest.mark.parametrize("k", [1 / 3, 1.0, 2.0])
def test_derivatives_match_central_differences(k):
    dmap = DomainMap(k)
    z = np.linspace(0.05, 20, 200)
    h = 1e-5 * np.maximum(1.0, z)
    d1, d2 = forward_derivatives(dmap, z)
    fd1 = (forward(dmap, z + h) - forward(dmap, z - h)) / (2 * h)
    fd2 = (forward(dmap, z + h) - 2 * forward(dmap, z) + forward(dmap, z - h)) / h**2
    np.testing.assert_allclose(d1, fd1, rtol=1e-7)
    # second differences lose digits; compare on the scale of d1
    np.testing.assert_allclose(d2, fd2, rtol=1e-4, atol=1e-5 * np.abs(d1).max())


def test_derivatives_closed_form():
    z = np.array([0.01, 0.3, 2.0, 9.0])
    d1, d2 = forward_derivatives(DomainMap(2.0), z)
    np.testing.assert_allclose(d1, 2 / np.tanh(2 * z), rtol=1e-14)
    np.testing.assert_allclose(d2, -4 / np.sinh(2 * z) ** 2, rtol=1e-13)
    np.testing.assert_array_equal(induced_weight(DomainMap(2.0), z), d1)


def test_single_node_image():
    np.testing.assert_allclose(transform_nodes(DomainMap(1.0), gauss_rule(0)), [ASINH_ONE], rtol=1e-15)


@given(N=st.integers(0, 200), k=ks)
def test_node_images_positive_and_ordered(N, k):
    z = transform_nodes(DomainMap(k), gauss_rule(N))
    assert z.shape == (N + 1,)
    assert np.all(np.isfinite(z)) and np.all(z > 0)
    assert np.all(np.diff(z) > 0)


def test_rejects_non_positive_abscissae():
    with pytest.raises(ValueError):
        forward(DomainMap(), np.array([1.0, 0.0]))
    with pytest.raises(ValueError):
        forward_derivatives(DomainMap(), -1.0)


@pytest.mark.parametrize("k,l", [(0.0, 1.0), (1.0, -2.0), (math.inf, 1.0), (math.nan, 1.0)])
def test_map_parameters_validated(k, l):
    with pytest.raises(ValueError):
        DomainMap(k, l)


@pytest.mark.parametrize("k", [1.0, 2.0])
def test_mapped_basis_orthogonal_under_induced_weight(k):
    """Direct integration on the half line, independent of the change of variables."""
    dmap = DomainMap(k)

    def inner(n, m):
        def integrand(x):
            w = forward(dmap, x)
            return hermite_function(n, w) * hermite_function(m, w) * induced_weight(dmap, x)
        # the mapped functions live on a log scale near the origin
        parts = [(1e-12, 1e-6), (1e-6, 1e-3), (1e-3, 0.1), (0.1, 2.0), (2.0, 60.0)]
        return sum(quad(integrand, a, b, limit=400, epsabs=1e-13, epsrel=1e-12)[0] for a, b in parts)

    for n in range(7):
        for m in range(n + 1):
            want = SQRT_PI if n == m else 0.0
            assert inner(n, m) == pytest.approx(want, abs=1e-6), (n, m)
