import math

import numpy as np
import pytest

from jordan_wh.algebra import (
    AlgebraDescriptor,
    Element,
    identity,
    jordan_product,
    quad,
    sym_from_matrix,
    zero,
)
from jordan_wh.codec import parse_descriptor
from jordan_wh.cone import (
    ConeClass,
    condition_number,
    cone_classify,
    hua_residual,
    in_cone,
    inverse,
    leq,
    less,
    mutation_inverse,
    mutation_unit_defect,
    spectral_radius,
    unit_shift,
)
from jordan_wh.errors import Singular
from jordan_wh.sampling import sample_cone, sample_element, sample_interior

RN2 = AlgebraDescriptor.componentwise(2)


@pytest.mark.parametrize(
    "coords, expected",
    [
        ([1.0, 1.0], ConeClass.INTERIOR),
        ([0.0, 0.0], ConeClass.BOUNDARY),
        ([1.0, 0.0], ConeClass.BOUNDARY),
        ([1.0, -1.0], ConeClass.OUTSIDE),
    ],
)
def test_cone_classify_componentwise(coords, expected):
    assert cone_classify(Element(RN2, coords)) is expected


def test_squares_are_in_the_cone(alg, rng):
    for _ in range(20):
        assert in_cone(sample_cone(alg, rng))


def test_order_relations():
    x = Element(RN2, [1.0, 2.0])
    y = Element(RN2, [2.0, 2.0])
    assert leq(x, y)
    assert not less(x, y)
    assert less(x, unit_shift(y, 1.0))
    assert not leq(y, x)


def test_inverse_componentwise():
    np.testing.assert_allclose(inverse(Element(RN2, [2.0, -4.0])).coords, [0.5, -0.25])


def test_inverse_of_zero_is_singular(alg):
    with pytest.raises(Singular):
        inverse(zero(alg))


def test_quad_inverse_law(alg, rng):
    x = sample_interior(alg, rng)
    np.testing.assert_allclose(quad(x).apply(inverse(x)).coords, x.coords, atol=1e-8 * max(1.0, x.norm()))


def test_condition_number_and_radius():
    x = Element(RN2, [2.0, -8.0])
    assert condition_number(x) == 4.0
    assert spectral_radius(x) == 8.0
    assert condition_number(Element(RN2, [0.0, 1.0])) == math.inf


def test_mutation_unit_and_inverse(alg, rng):
    u = sample_cone(alg, rng) + identity(alg)
    a = sample_element(alg, rng)
    assert mutation_unit_defect(a, u) <= 1e-8 * max(1.0, a.norm())
    x = sample_cone(alg, rng) + identity(alg)
    w = mutation_inverse(x, u)
    # P_u(x) w = x characterizes the mutation inverse
    np.testing.assert_allclose((quad(x) @ quad(u)).apply(w).coords, x.coords, atol=1e-8 * max(1.0, x.norm()))


def test_mutation_inverse_at_unit_is_inverse(alg, rng):
    x = sample_cone(alg, rng) + identity(alg)
    np.testing.assert_allclose(mutation_inverse(x, identity(alg)).coords, inverse(x).coords, atol=1e-12)


def test_hua_scalar():
    alg = AlgebraDescriptor.componentwise(1)
    a, b = Element(alg, [2.0]), Element(alg, [3.0])
    # 1/5 + 1/(2 + 4/3) = 1/2
    assert hua_residual(a, b) <= 1e-15


def test_hua_random(alg, rng):
    a, b = sample_cone(alg, rng) + identity(alg), sample_cone(alg, rng) + identity(alg)
    assert hua_residual(a, b) <= 1e-8


def test_hua_with_wide_spread_on_a_direct_sum():
    alg = parse_descriptor("sum(sym:2,spin:3)")
    a = Element(alg, np.concatenate((sym_from_matrix(2, np.diag([1e6, 0.5])), [0.4, 0.1, 0.0])))
    b = Element(alg, np.concatenate((sym_from_matrix(2, np.diag([2.0, 3.0])), [1.5, 0.0, 0.5])))
    assert hua_residual(a, b) <= 1e-8


def test_inverse_with_wide_spread(rng):
    x = Element(AlgebraDescriptor.componentwise(3), [1e8, 0.5, 0.3])
    np.testing.assert_allclose(jordan_product(x, inverse(x)).coords, [1.0, 1.0, 1.0], rtol=1e-15)
    sym3 = AlgebraDescriptor.real_symmetric(3)
    q, _ = np.linalg.qr(rng.standard_normal((3, 3)))
    y = Element(sym3, sym_from_matrix(3, q @ np.diag([1e8, 0.5, 0.3]) @ q.T))
    np.testing.assert_allclose(jordan_product(y, inverse(y)).coords, identity(sym3).coords, atol=1e-6)


@pytest.mark.parametrize(
    "coords, expected",
    [
        ([1e8, 0.5, 0.3], ConeClass.INTERIOR),
        ([1e8, 0.5, -0.5], ConeClass.OUTSIDE),
    ],
)
def test_cone_classify_with_wide_spread(coords, expected):
    assert cone_classify(Element(AlgebraDescriptor.componentwise(3), coords)) is expected
