import numpy as np

from jordan_wh.algebra import identity, quad
from jordan_wh.axb import in_X, in_semigroup
from jordan_wh.cone import ConeClass, cone_classify, min_eigenvalue
from jordan_wh.sampling import (
    sample_boundary,
    sample_cone,
    sample_cone_boundary,
    sample_interior,
    sample_outside,
    sample_plane_X,
    sample_semigroup,
    sample_X,
)
from jordan_wh.spectral import idempotent_defect
from jordan_wh.wiener_hopf import interval_violation


def test_samplers_are_reproducible(alg):
    first = sample_X(alg, np.random.default_rng(3))
    second = sample_X(alg, np.random.default_rng(3))
    assert np.array_equal(first.u.coords, second.u.coords)


def test_cone_samplers_land_in_their_class(alg, rng):
    for _ in range(10):
        assert cone_classify(sample_interior(alg, rng)) is ConeClass.INTERIOR
        assert cone_classify(sample_outside(alg, rng)) is ConeClass.OUTSIDE
        assert cone_classify(sample_cone(alg, rng)) is not ConeClass.OUTSIDE
        assert abs(min_eigenvalue(sample_cone_boundary(alg, rng))) <= 1e-9 * max(1.0, alg.dim)


def test_boundary_samples_are_valid(alg, rng):
    for _ in range(10):
        p = sample_boundary(alg, rng)
        assert idempotent_defect(p.e) <= 1e-9
        complement = identity(alg) - p.e
        assert quad(complement).apply(p.x).distance(p.x) <= 1e-8 * max(1.0, p.x.norm())
        assert min_eigenvalue(p.x) >= -1e-9 * max(1.0, p.x.norm())


def test_X_samples_lie_in_the_interval(alg, rng):
    for _ in range(20):
        assert interval_violation(sample_X(alg, rng).u) <= 1e-9


def test_axb_samplers(rng):
    for _ in range(100):
        assert in_X(sample_plane_X(rng))
        assert in_semigroup(sample_semigroup(rng))
        assert in_semigroup(sample_semigroup(rng, interior=True), interior=True)
