import math

import numpy as np
import pytest
from hypothesis import given, seed, settings
from hypothesis import strategies as st

from jordan_wh.algebra import (
    AlgebraDescriptor,
    Element,
    identity,
    jordan_product,
    l_operator,
    mutation_l_operator,
    mutation_product,
    mutation_quad,
    quad,
    quad_bilinear,
    square,
    sym_from_matrix,
    sym_to_matrix,
    zero,
)
from jordan_wh.errors import AlgebraMismatch
from jordan_wh.sampling import sample_element, sample_interior


@pytest.mark.parametrize(
    "descriptor, dim, rank",
    [
        (AlgebraDescriptor.componentwise(3), 3, 3),
        (AlgebraDescriptor.real_symmetric(3), 6, 3),
        (AlgebraDescriptor.spin_factor(4), 4, 2),
        (AlgebraDescriptor.direct_sum(AlgebraDescriptor.real_symmetric(2), AlgebraDescriptor.spin_factor(3)), 6, 4),
    ],
)
def test_descriptor_dim_and_rank(descriptor, dim, rank):
    assert descriptor.dim == dim
    assert descriptor.rank == rank


@pytest.mark.parametrize(
    "build",
    [
        lambda: AlgebraDescriptor.real_symmetric(0),
        lambda: AlgebraDescriptor.spin_factor(1),
        lambda: AlgebraDescriptor.direct_sum(AlgebraDescriptor.componentwise(2)),
    ],
)
def test_descriptor_rejects_bad_sizes(build):
    with pytest.raises(ValueError):
        build()


def test_descriptor_str_matches_grammar():
    alg = AlgebraDescriptor.direct_sum(AlgebraDescriptor.real_symmetric(2), AlgebraDescriptor.spin_factor(3))
    assert str(alg) == "sum(sym:2,spin:3)"


def test_element_rejects_wrong_shape_and_nan():
    alg = AlgebraDescriptor.componentwise(2)
    with pytest.raises(ValueError):
        Element(alg, [1.0, 2.0, 3.0])
    with pytest.raises(ValueError):
        Element(alg, [1.0, math.nan])


def test_mixing_algebras_raises():
    x = identity(AlgebraDescriptor.componentwise(2))
    y = identity(AlgebraDescriptor.spin_factor(2))
    with pytest.raises(AlgebraMismatch):
        jordan_product(x, y)
    with pytest.raises(AlgebraMismatch):
        x + y


def test_sym_coordinates_are_orthonormal():
    m = np.array([[1.0, 2.0], [2.0, 3.0]])
    coords = sym_from_matrix(2, m)
    np.testing.assert_allclose(coords, [1.0, 2.0 * math.sqrt(2.0), 3.0])
    np.testing.assert_allclose(sym_to_matrix(2, coords), m)
    # trace form equals the dot product
    assert math.isclose(float(coords @ coords), float(np.trace(m @ m)))


def test_identity_is_the_unit(alg, rng):
    x = sample_element(alg, rng)
    np.testing.assert_allclose(jordan_product(identity(alg), x).coords, x.coords, atol=1e-14)


def test_sym_identity_is_identity_matrix():
    np.testing.assert_allclose(sym_to_matrix(3, identity(AlgebraDescriptor.real_symmetric(3)).coords), np.eye(3))


def test_componentwise_product():
    alg = AlgebraDescriptor.componentwise(2)
    product = jordan_product(Element(alg, [1.0, 2.0]), Element(alg, [3.0, 4.0]))
    np.testing.assert_allclose(product.coords, [3.0, 8.0])


def test_spin_product():
    alg = AlgebraDescriptor.spin_factor(3)
    product = jordan_product(Element(alg, [1.0, 2.0, 0.0]), Element(alg, [3.0, 0.0, 1.0]))
    np.testing.assert_allclose(product.coords, [3.0, 6.0, 1.0])


def test_sym_product_is_symmetrized_matrix_product():
    x_m = np.array([[1.0, 2.0], [2.0, -1.0]])
    y_m = np.array([[0.5, 0.0], [0.0, 3.0]])
    alg = AlgebraDescriptor.real_symmetric(2)
    product = jordan_product(Element(alg, sym_from_matrix(2, x_m)), Element(alg, sym_from_matrix(2, y_m)))
    np.testing.assert_allclose(sym_to_matrix(2, product.coords), (x_m @ y_m + y_m @ x_m) / 2.0, atol=1e-14)


def test_l_operator_matches_product_and_is_symmetric(alg, rng):
    x, y = sample_element(alg, rng), sample_element(alg, rng)
    lx = l_operator(x)
    np.testing.assert_allclose(lx.apply(y).coords, jordan_product(x, y).coords, atol=1e-12)
    assert lx.asymmetry() <= 1e-12


def test_quad_of_unit_is_square(alg, rng):
    x = sample_element(alg, rng)
    np.testing.assert_allclose(quad(x).apply(identity(alg)).coords, square(x).coords, atol=1e-12)


def test_quad_matches_bilinear_form(alg, rng):
    x = sample_element(alg, rng)
    np.testing.assert_allclose(quad(x).matrix, quad_bilinear(x, x).matrix, atol=1e-12)


def test_quad_of_zero_and_unit(alg):
    assert quad(zero(alg)).norm() == 0.0
    np.testing.assert_allclose(quad(identity(alg)).matrix, np.eye(alg.dim), atol=1e-14)


def test_mutation_at_unit_is_jordan_product(alg, rng):
    a, b = sample_element(alg, rng), sample_element(alg, rng)
    np.testing.assert_allclose(
        mutation_product(a, b, identity(alg)).coords, jordan_product(a, b).coords, atol=1e-12
    )


def test_mutation_quad_factorizes(alg, rng):
    x, u = sample_element(alg, rng), sample_interior(alg, rng)
    np.testing.assert_allclose(mutation_quad(x, u).matrix, (quad(x) @ quad(u)).matrix, atol=1e-9)


def test_mutation_l_operator_columns(alg, rng):
    x, u, a = sample_element(alg, rng), sample_element(alg, rng), sample_element(alg, rng)
    np.testing.assert_allclose(
        mutation_l_operator(x, u).apply(a).coords, mutation_product(x, a, u).coords, atol=1e-12
    )


@seed(7)
@settings(max_examples=50, deadline=None)
@given(st.integers(min_value=0, max_value=2**32 - 1))
def test_jordan_identity_holds(draw_seed):
    alg = AlgebraDescriptor.real_symmetric(3)
    rng = np.random.default_rng(draw_seed)
    x, y = sample_element(alg, rng), sample_element(alg, rng)
    x2 = square(x)
    lhs = jordan_product(x, jordan_product(x2, y))
    rhs = jordan_product(x2, jordan_product(x, y))
    assert lhs.distance(rhs) <= 1e-10 * max(1.0, x.norm() ** 2 * y.norm())
