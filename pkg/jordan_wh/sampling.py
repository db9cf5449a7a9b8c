"""Seeded samplers for algebra elements, points of X and the ax+b plane."""
from __future__ import annotations

import numpy as np

from jordan_wh.algebra import AlgebraDescriptor, Element, identity, quad, square, zero
from jordan_wh.axb import AffineElement, PlanePoint, from_chart
from jordan_wh.cone import ConeClass, cone_classify
from jordan_wh.errors import RetryExhausted
from jordan_wh.spectral import EPS_GROUP, apply_scalar, random_idempotent, spectral_decompose
from jordan_wh.wiener_hopf import BoundaryPoint, CompactifiedPoint, cayley, embed

RETRIES = 100
INTERIOR_SHIFT = 1e-3
CORNER_RATE = 0.1


def sample_element(alg: AlgebraDescriptor, rng: np.random.Generator) -> Element:
    return Element(alg, rng.standard_normal(alg.dim))


def sample_cone(alg: AlgebraDescriptor, rng: np.random.Generator) -> Element:
    return square(sample_element(alg, rng))


def sample_interior(alg: AlgebraDescriptor, rng: np.random.Generator) -> Element:
    one = identity(alg)
    for _ in range(RETRIES):
        x = sample_cone(alg, rng) + INTERIOR_SHIFT * one
        if cone_classify(x) is ConeClass.INTERIOR:
            return x
    raise RetryExhausted(f"no interior cone point drawn in {alg}")


def sample_cone_boundary(alg: AlgebraDescriptor, rng: np.random.Generator) -> Element:
    """A square with its smallest spectral weight removed, so 0 is an eigenvalue."""
    decomposition = spectral_decompose(sample_cone(alg, rng))
    coords = np.zeros(alg.dim)
    for lam, c in zip(decomposition.eigenvalues[1:], decomposition.idempotents[1:]):
        coords += lam * c.coords
    return Element(alg, coords)


def sample_outside(alg: AlgebraDescriptor, rng: np.random.Generator) -> Element:
    """A square whose smallest eigenvalue is pushed below zero."""
    decomposition = spectral_decompose(sample_cone(alg, rng))
    coords = np.zeros(alg.dim)
    for k, (lam, c) in enumerate(zip(decomposition.eigenvalues, decomposition.idempotents)):
        weight = -(0.1 + abs(rng.standard_normal())) if k == 0 else lam
        coords += weight * c.coords
    return Element(alg, coords)


def sample_boundary(alg: AlgebraDescriptor, rng: np.random.Generator) -> BoundaryPoint:
    """(e, x) with e a random idempotent and x a square computed inside V_0(e)."""
    e = random_idempotent(alg, rng)
    complement = identity(alg) - e
    z = quad(complement).apply(sample_element(alg, rng))
    x = square(z)
    if rng.random() < 1.0 / 3.0:
        # lower the stratum: one positive eigenvalue of x becomes zero
        tol = EPS_GROUP * max(1.0, x.norm())
        positive = [lam for lam in spectral_decompose(x).eigenvalues if lam > tol]
        if positive:
            cut = positive[0]
            x = apply_scalar(x, lambda lam: max(lam - cut, 0.0))
    return BoundaryPoint(e, x)


def sample_X(alg: AlgebraDescriptor, rng: np.random.Generator) -> CompactifiedPoint:
    """Mix of Cayley images, embedded boundary points and the corners -1, 0, 1."""
    branch = rng.random()
    if branch < 0.4:
        return cayley(sample_cone(alg, rng))
    if branch < 0.85:
        return embed(sample_boundary(alg, rng))
    corner = int(rng.integers(0, 3))
    if corner == 0:
        return CompactifiedPoint.minus_one(alg)
    if corner == 1:
        return CompactifiedPoint(zero(alg))
    return CompactifiedPoint.plus_one(alg)


# ax+b plane, sampled uniformly in the chart (e^x, y/(1+y))

_XI_MAX = 4.0


def _snap(rng: np.random.Generator, value: float, corners: tuple[float, ...]) -> float:
    if rng.random() < CORNER_RATE:
        return corners[int(rng.integers(0, len(corners)))]
    return value


def sample_plane(rng: np.random.Generator) -> PlanePoint:
    xi = _snap(rng, rng.uniform(0.0, _XI_MAX), (0.0,))
    eta = _snap(rng, rng.uniform(0.0, 1.0), (0.0, 1.0))
    return from_chart(xi, eta)


def sample_plane_X(rng: np.random.Generator) -> PlanePoint:
    """A point of X = [-inf, 0] x [0, 1], corners and edges included."""
    xi = _snap(rng, rng.uniform(0.0, 1.0), (0.0, 1.0))
    eta = _snap(rng, rng.uniform(0.0, 0.5), (0.0, 0.5))
    return from_chart(xi, eta)


def sample_affine(rng: np.random.Generator) -> AffineElement:
    return AffineElement(float(np.exp(rng.standard_normal())), float(rng.standard_normal()))


def sample_semigroup(rng: np.random.Generator, interior: bool = False) -> AffineElement:
    a = 1.0 + float(rng.exponential())
    b = float(rng.exponential())
    if not interior:
        a = _snap(rng, a, (1.0,))
        b = _snap(rng, b, (0.0,))
    elif a == 1.0 or b == 0.0:
        a, b = 2.0, 1.0
    return AffineElement(a, b)
