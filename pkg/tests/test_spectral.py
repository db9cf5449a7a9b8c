import math
from fractions import Fraction

import numpy as np
import pytest

from jordan_wh.algebra import (
    AlgebraDescriptor,
    Element,
    identity,
    jordan_product,
    l_operator,
    quad,
    square,
    sym_from_matrix,
    zero,
)
from jordan_wh.errors import (
    ConvergenceFailure,
    DomainError,
    NotIdempotent,
    NotInSubalgebra,
    RetryExhausted,
    SingularInSubalgebra,
)
from jordan_wh.codec import parse_descriptor
from jordan_wh.sampling import sample_cone, sample_element
from jordan_wh.spectral import (
    apply_scalar,
    idempotent_defect,
    jacobi_eigh,
    orthogonality_defect,
    peirce,
    random_idempotent,
    range_basis,
    spectral_decompose,
    spectrum_contains,
    subalgebra_inverse,
    subalgebra_quad,
)

RN2 = AlgebraDescriptor.componentwise(2)
SPIN3 = AlgebraDescriptor.spin_factor(3)


@pytest.mark.parametrize("n", [2, 5, 6])
def test_jacobi_matches_numpy(n, rng):
    a = rng.standard_normal((n, n))
    a = a + a.T
    eigenvalues, vectors = jacobi_eigh(a)
    np.testing.assert_allclose(np.sort(eigenvalues), np.linalg.eigvalsh(a), atol=1e-12)
    np.testing.assert_allclose(vectors.T @ vectors, np.eye(n), atol=1e-12)
    np.testing.assert_allclose(vectors @ np.diag(eigenvalues) @ vectors.T, a, atol=1e-12)


def test_jacobi_reports_non_convergence(rng):
    a = rng.standard_normal((5, 5))
    with pytest.raises(ConvergenceFailure):
        jacobi_eigh(a + a.T, max_sweeps=0)


def test_componentwise_spectrum():
    d = spectral_decompose(Element(RN2, [3.0, -1.0]))
    assert d.eigenvalues == (-1.0, 3.0)
    np.testing.assert_allclose(d.idempotents[0].coords, [0.0, 1.0])


def test_spin_spectrum_closed_form():
    d = spectral_decompose(Element(SPIN3, [1.0, 3.0, 4.0]))
    np.testing.assert_allclose(d.eigenvalues, [-4.0, 6.0])
    np.testing.assert_allclose(d.idempotents[1].coords, [0.5, 0.3, 0.4])


def test_spin_degenerate_vector_part():
    d = spectral_decompose(Element(SPIN3, [2.0, 0.0, 0.0]))
    assert d.eigenvalues == (2.0,)
    np.testing.assert_allclose(d.idempotents[0].coords, identity(SPIN3).coords)


def test_sym_repeated_eigenvalues_are_grouped():
    alg = AlgebraDescriptor.real_symmetric(3)
    x = Element(alg, sym_from_matrix(3, np.diag([2.0, 2.0, -1.0])))
    d = spectral_decompose(x)
    np.testing.assert_allclose(d.eigenvalues, [-1.0, 2.0], atol=1e-12)
    assert len(d.idempotents) == 2


def test_wide_spread_eigenvalues_stay_distinct():
    x = Element(AlgebraDescriptor.componentwise(3), [1e8, 0.5, 0.3])
    d = spectral_decompose(x)
    assert d.eigenvalues == (0.3, 0.5, 1e8)
    np.testing.assert_array_equal(d.reconstruct().coords, x.coords)


def test_wide_spread_sum_algebra_groups_only_equal_eigenvalues():
    alg = parse_descriptor("sum(sym:2,spin:3)")
    coords = np.concatenate((sym_from_matrix(2, np.diag([1e8, 0.5])), [0.4, 0.1, 0.0]))
    x = Element(alg, coords)
    d = spectral_decompose(x)
    np.testing.assert_allclose(d.eigenvalues, [0.3, 0.5, 1e8], rtol=1e-12)
    middle = np.concatenate((sym_from_matrix(2, np.diag([0.0, 1.0])), [0.5, 0.5, 0.0]))
    np.testing.assert_allclose(d.idempotents[1].coords, middle, atol=1e-12)
    np.testing.assert_allclose(d.reconstruct().coords, x.coords, rtol=1e-12, atol=1e-7)


@pytest.mark.parametrize("sign", [1.0, -1.0])
def test_spin_small_eigenvalue_is_accurate(sign):
    s, u = 1e8 + 0.001, (1e8, 1.0)
    det = Fraction(s) ** 2 - Fraction(u[0]) ** 2 - Fraction(u[1]) ** 2
    small = float(det / (Fraction(s) + Fraction(math.hypot(*u))))
    d = spectral_decompose(Element(SPIN3, [sign * s, sign * u[0], sign * u[1]]))
    nearest_zero = min(d.eigenvalues, key=abs)
    assert nearest_zero == pytest.approx(sign * small, rel=1e-12)


def test_decompositions_are_shared_between_equal_elements(alg, rng):
    x = sample_element(alg, rng)
    assert spectral_decompose(Element(alg, x.coords.copy())) is spectral_decompose(x)
    assert spectral_decompose(x + identity(alg)) is not spectral_decompose(x)


def test_decomposition_laws(alg, rng):
    x = sample_element(alg, rng)
    d = spectral_decompose(x)
    assert list(d.eigenvalues) == sorted(d.eigenvalues)
    np.testing.assert_allclose(d.reconstruct().coords, x.coords, atol=1e-10)
    assert orthogonality_defect(d) <= 1e-10
    total = np.sum([c.coords for c in d.idempotents], axis=0)
    np.testing.assert_allclose(total, identity(alg).coords, atol=1e-10)
    assert max(idempotent_defect(c) for c in d.idempotents) <= 1e-10


def test_apply_scalar_domain_error():
    with pytest.raises(DomainError):
        apply_scalar(Element(RN2, [0.0, 1.0]), lambda lam: 1.0 / lam)
    with pytest.raises(DomainError):
        apply_scalar(Element(RN2, [-1.0, 1.0]), np.sqrt)


def test_apply_scalar_square_root(alg, rng):
    x = sample_cone(alg, rng)
    root = apply_scalar(x, lambda lam: np.sqrt(max(lam, 0.0)))
    np.testing.assert_allclose(square(root).coords, x.coords, atol=1e-9)


@pytest.mark.parametrize(
    "coords, lam0, expected",
    [
        ([1.0, 1.0], 1.0, True),
        ([1.0, 1.0], -1.0, False),
        ([-1.0, 0.3], -1.0, True),
    ],
)
def test_spectrum_contains(coords, lam0, expected):
    assert spectrum_contains(Element(RN2, coords), lam0) is expected


def test_peirce_projections(alg, rng):
    e = random_idempotent(alg, rng)
    split = peirce(e)
    np.testing.assert_allclose(split.p1.matrix, quad(e).matrix, atol=1e-9)
    total = split.p0 + split.p_half + split.p1
    np.testing.assert_allclose(total.matrix, np.eye(alg.dim), atol=1e-10)
    eigenvalues, _ = jacobi_eigh(l_operator(e).matrix)
    assert np.all(np.min(np.abs(eigenvalues[:, None] - np.array([0.0, 0.5, 1.0])), axis=1) <= 1e-9)


def test_peirce_rejects_non_idempotent():
    with pytest.raises(NotIdempotent):
        peirce(Element(RN2, [0.5, 1.0]))


def test_range_basis_is_orthonormal(rng):
    cols = rng.standard_normal((5, 2))
    matrix = cols @ rng.standard_normal((2, 4))
    basis = range_basis(matrix)
    assert basis.shape == (5, 2)
    np.testing.assert_allclose(basis.T @ basis, np.eye(2), atol=1e-12)
    np.testing.assert_allclose(basis @ basis.T @ matrix, matrix, atol=1e-10)
    assert range_basis(np.zeros((3, 3))).shape == (3, 0)


def test_subalgebra_inverse_componentwise():
    e = Element(RN2, [1.0, 0.0])
    w = subalgebra_inverse(Element(RN2, [4.0, 0.0]), e)
    np.testing.assert_allclose(w.coords, [0.25, 0.0])


def test_subalgebra_inverse_methods_agree(alg, rng):
    e = random_idempotent(alg, rng)
    x = quad(e).apply(sample_cone(alg, rng) + identity(alg))
    spectral = subalgebra_inverse(x, e)
    restricted = subalgebra_inverse(x, e, method="restricted")
    np.testing.assert_allclose(spectral.coords, restricted.coords, atol=1e-8)
    # x w = e inside V_1(e)
    np.testing.assert_allclose(jordan_product(x, spectral).coords, e.coords, atol=1e-8)


def test_subalgebra_inverse_errors():
    e = Element(RN2, [1.0, 0.0])
    with pytest.raises(NotInSubalgebra):
        subalgebra_inverse(Element(RN2, [1.0, 1.0]), e)
    with pytest.raises(SingularInSubalgebra):
        subalgebra_inverse(zero(RN2), identity(RN2))


def test_subalgebra_inverse_with_wide_spread():
    rn3 = AlgebraDescriptor.componentwise(3)
    e = Element(rn3, [1.0, 1.0, 0.0])
    for method in ("spectral", "restricted"):
        w = subalgebra_inverse(Element(rn3, [1e8, 0.5, 0.0]), e, method=method)
        np.testing.assert_allclose(w.coords, [1e-8, 2.0, 0.0], rtol=1e-12)


@pytest.mark.parametrize("coords", [[1e-12, 0.0], [0.0, 0.0]])
def test_subalgebra_inverse_detects_zero_eigenvalue_inside(coords):
    e = Element(RN2, [1.0, 0.0])
    with pytest.raises(SingularInSubalgebra):
        subalgebra_inverse(Element(RN2, coords), e)


def test_subalgebra_inverse_rejects_eigenvalue_shared_with_complement():
    rn3 = AlgebraDescriptor.componentwise(3)
    with pytest.raises(SingularInSubalgebra):
        subalgebra_inverse(Element(rn3, [2.0, 1e-9, 0.0]), Element(rn3, [1.0, 1.0, 0.0]))


def test_subalgebra_quad_is_compressed_quad(alg, rng):
    e = random_idempotent(alg, rng)
    x = sample_element(alg, rng)
    pe = quad(e)
    np.testing.assert_allclose(subalgebra_quad(x, e).matrix, (pe @ quad(x) @ pe).matrix)


def test_random_idempotent_nontrivial_needs_rank_two(rng):
    with pytest.raises(RetryExhausted):
        random_idempotent(AlgebraDescriptor.componentwise(1), rng, allow_trivial=False)
    e = random_idempotent(AlgebraDescriptor.componentwise(4), rng, allow_trivial=False)
    assert 0.0 < e.norm() < 2.0


def test_peirce_projector_lookup():
    split = peirce(Element(RN2, [1.0, 0.0]))
    assert split.projector(0.5) is split.p_half
    np.testing.assert_allclose(split.projector(1.0).apply(Element(RN2, [3.0, 4.0])).coords, [3.0, 0.0])
    with pytest.raises(ValueError):
        split.projector(0.25)
