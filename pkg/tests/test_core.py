import cmath
import math

import numpy as np
import pytest
from hypothesis import given

from conftest import admissible_coefficients, complexes, loxodromic_maps
from loxostab.core import (
    INF,
    MapClass,
    MoebiusMap,
    apply,
    as_point,
    classify,
    compose,
    derivative,
    dilation,
    fixed_points,
    from_fixed_points,
    identity,
    inverse,
    iterate,
    multiplier,
    normalize,
)
from loxostab.errors import DegenerateMap, LinearMap, NotLoxodromic, PoleDerivative
from loxostab.oracles import finite_difference
from loxostab.reference import EXAMPLE_COEFFICIENTS

GOLD = (1 + math.sqrt(5)) / 2


def close(z, w, tol=1e-12):
    return abs(z - w) <= tol * max(1.0, abs(w))


# ---------------------------------------------------------------- normalize


def test_example_map_already_normalized(g):
    assert g.det == 1
    assert (g.a, g.b, g.c, g.d) == EXAMPLE_COEFFICIENTS
    assert g.scale == 1


def test_scalar_identity_normalizes():
    m = normalize(2, 0, 0, 2)
    assert (m.a, m.b, m.c, m.d) == (1, 0, 0, 1)


def test_unit_det_unchanged():
    m = normalize(2, 1, 1, 1)
    assert (m.a, m.b, m.c, m.d) == (2, 1, 1, 1)


@pytest.mark.parametrize("coeffs", [(1, 2, 2, 4), (0, 0, 0, 0), (1e-8, 0, 0, 1e-8)])
def test_degenerate(coeffs):
    with pytest.raises(DegenerateMap):
        normalize(*coeffs)


def test_non_finite_coefficient():
    with pytest.raises(DegenerateMap):
        normalize(float("nan"), 0, 0, 1)


@given(admissible_coefficients())
def test_normalized_det_is_one(coeffs):
    assert abs(normalize(*coeffs).det - 1) <= 1e-12


@given(admissible_coefficients(), complexes)
def test_normalization_preserves_action(coeffs, z):
    a, b, c, d = coeffs
    m = normalize(*coeffs)
    den = c * z + d
    if abs(den) > 1e-3:
        assert close(apply(m, z), (a * z + b) / den, 1e-9)


# ---------------------------------------------------------------- apply


def test_apply_at_infinity(g):
    assert close(apply(g, INF), 41)
    assert apply(dilation(4), INF) is INF


def test_apply_at_pole(g):
    assert apply(g, -0.27j / 0.04) is INF


def test_identity_fixes_everything():
    e = identity()
    for z in (0j, 3 - 2j, INF):
        assert apply(e, z) == z


def test_as_point_rejects_nan():
    with pytest.raises(ValueError):
        as_point(complex(float("nan"), 0))
    assert as_point(INF) is INF


def test_infinity_equality():
    assert INF == INF
    assert INF != 0
    assert INF != complex("inf")


# ---------------------------------------------------------------- compose / inverse


def test_inverse_adjugate():
    m = inverse(normalize(2, 1, 1, 1))
    assert (m.a, m.b, m.c, m.d) == (1, -1, -1, 2)


def test_compose_with_inverse(g):
    e = compose(g, inverse(g))
    assert max(abs(e.b), abs(e.c), abs(e.a - e.d)) <= 1e-12
    assert classify(e) is MapClass.IDENTITY


def test_inverse_pointwise(rng):
    m = normalize(2, 1, 1, 1)
    mi = inverse(m)
    for z in rng.normal(size=(100, 2)) @ np.array([1, 1j]):
        assert close(apply(mi, apply(m, z)), z, 1e-12)


def test_dilations_compose():
    m = compose(dilation(2 + 1j), dilation(3 - 1j))
    assert close(m.a / m.d, (2 + 1j) * (3 - 1j))


@given(loxodromic_maps(), loxodromic_maps(), complexes)
def test_compose_is_composition(g1, g2, z):
    inner = apply(g2, z)
    if inner is INF or abs(g1.c * inner + g1.d) < 1e-3 or abs(g2.c * z + g2.d) < 1e-3:
        return
    assert close(apply(compose(g1, g2), z), apply(g1, inner), 1e-8)


# ---------------------------------------------------------------- classify


@pytest.mark.parametrize("coeffs, kind", [
    (EXAMPLE_COEFFICIENTS, MapClass.PURELY_LOXODROMIC),
    ((2, 1, 1, 1), MapClass.HYPERBOLIC_LOXODROMIC),
    ((1, 0, 0, 1), MapClass.IDENTITY),
    ((1, 1, 0, 1), MapClass.PARABOLIC),
    ((-1, 1, 0, -1), MapClass.PARABOLIC),
    ((0, -1, 1, 0), MapClass.ELLIPTIC),
    ((-3, 1, -1, 0), MapClass.HYPERBOLIC_LOXODROMIC),
])
def test_classify(coeffs, kind):
    assert classify(normalize(*coeffs)) is kind


def test_rotation_is_elliptic():
    assert classify(dilation(cmath.exp(0.7j))) is MapClass.ELLIPTIC


# ---------------------------------------------------------------- fixed points


def test_example_fixed_points(data):
    assert abs(data.alpha - (25 + 12j)) <= 1e-9
    assert abs(data.beta - (16 - 18.75j)) <= 1e-9
    assert close(data.c_alpha_d, 1 + 0.75j)
    assert close(data.k, 0.4375 + 1.5j)
    assert abs(data.kmod - 1.5625) <= 1e-10


def test_golden_ratio_map():
    d = fixed_points(normalize(2, 1, 1, 1))
    assert close(d.alpha, GOLD) and close(d.beta, 1 - GOLD)
    assert close(d.k, (7 + 3 * math.sqrt(5)) / 2)
    assert d.kind is MapClass.HYPERBOLIC_LOXODROMIC


def test_real_coefficients_give_real_fixed_points():
    # real loxodromic coefficients force a real trace beyond 2, hence real roots
    d = fixed_points(normalize(1, 2, 1, 5))
    assert d.alpha.imag == 0 and d.beta.imag == 0


def test_linear_map_rejected():
    with pytest.raises(LinearMap):
        fixed_points(dilation(4))


@pytest.mark.parametrize("coeffs", [(1.5, 0.25, -1, 0.5), (0, -1, 1, 0), (1, 0, 0, 1)])
def test_not_loxodromic(coeffs):
    m = normalize(*coeffs)
    with pytest.raises((NotLoxodromic, LinearMap)):
        fixed_points(m)


@given(loxodromic_maps())
def test_fixed_point_invariants(m):
    d = fixed_points(m)
    for p in (d.alpha, d.beta):
        assert abs(apply(m, p) - p) <= 1e-9 * (1 + abs(p)) * max(1, 1 / abs(m.c))
    assert abs(d.c_alpha_d) >= 1 >= abs(d.c_beta_d)
    assert abs(derivative(m, d.alpha)) < 1 < abs(derivative(m, d.beta))
    assert abs(d.c_alpha_d * d.c_beta_d - 1) <= 1e-10
    assert abs(d.k * d.c_beta_d**2 - 1) <= 1e-10
    s = d.c_alpha_d
    assert abs(s + 1 / s - m.trace) <= 1e-10
    assert abs(d.alpha + d.beta - (m.a - m.d) / m.c) <= 1e-9 * max(1, abs(d.alpha) + abs(d.beta))
    assert abs(d.alpha * d.beta + m.b / m.c) <= 1e-9 * max(1, abs(d.alpha * d.beta))


@given(complexes, complexes, complexes)
def test_from_fixed_points_round_trip(alpha, beta, k):
    if abs(alpha - beta) < 0.1 or not 1.1 < abs(k) < 20:
        return
    m = from_fixed_points(alpha, beta, k)
    d = fixed_points(m)
    assert abs(d.alpha - alpha) <= 1e-8 * max(1, abs(alpha))
    assert abs(d.beta - beta) <= 1e-8 * max(1, abs(beta))
    assert abs(d.k - k) <= 1e-8 * abs(k)


# ---------------------------------------------------------------- multiplier / derivative


def test_multiplier(data):
    k = multiplier(data)
    assert k.imag > 0 and abs(k) > 1


def test_multiplier_of_dilation():
    m = compose(normalize(1, 0, 1, 1), compose(dilation(3 + 1j), inverse(normalize(1, 0, 1, 1))))
    assert close(multiplier(fixed_points(m)), 3 + 1j, 1e-10)


def test_derivative_values(g, data):
    assert close(abs(derivative(g, data.alpha)), 0.64, 1e-12)
    assert close(abs(derivative(g, data.beta)), 1.5625, 1e-12)
    assert derivative(identity(), 3 + 4j) == 1


def test_derivative_matches_finite_difference(g, data):
    fd = finite_difference(g, data.alpha)
    assert abs(fd - derivative(g, data.alpha)) <= 1e-6 * abs(fd)


def test_pole_derivative(g):
    with pytest.raises(PoleDerivative):
        derivative(g, g.pole)


@given(loxodromic_maps(), complexes)
def test_finite_difference_property(m, z):
    if abs(m.c * z + m.d) < 0.2:
        return
    fd = finite_difference(m, z)
    assert abs(fd - derivative(m, z)) <= 1e-5 * abs(fd)


# ---------------------------------------------------------------- iteration


def test_convergence_to_alpha_and_beta(g, data, rng):
    z = rng.uniform(-60, 60, size=(100, 2)) @ np.array([1, 1j])
    sep = abs(data.alpha - data.beta)
    for p in z[np.abs(z - data.beta) > 0.1 * sep]:
        assert abs(iterate(g, p, 200) - data.alpha) <= 1e-6 * (1 + abs(data.alpha))
    for p in z[np.abs(z - data.alpha) > 0.1 * sep]:
        assert abs(iterate(g, p, -200) - data.beta) <= 1e-6 * (1 + abs(data.beta))


def test_map_is_frozen(g):
    with pytest.raises(AttributeError):
        g.a = 2
    assert isinstance(g, MoebiusMap)
