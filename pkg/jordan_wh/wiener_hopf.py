"""The compactification X = [-1, 1] of the cone of squares."""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from jordan_wh.algebra import AlgebraDescriptor, Element, identity, jordan_product, quad, zero
from jordan_wh.cone import ConeClass, cone_classify, in_cone, inverse, spectral_radius
from jordan_wh.errors import (
    GuaranteeViolated,
    InvalidBoundaryPoint,
    NotIdempotent,
    NotInCone,
    NotInteriorCone,
    NotMember,
    OutOfInterval,
    ParameterOutOfRange,
)
from jordan_wh.spectral import (
    EPS_GROUP,
    apply_scalar,
    require_idempotent,
    spectral_decompose,
    spectrum_contains,
    subalgebra_inverse,
)

EPS_ACTION = 1e-7
EPS_ROUNDTRIP = 1e-7
EPS_SUBSPACE = 1e-8


@dataclass(frozen=True)
class CompactifiedPoint:
    u: Element

    @property
    def algebra(self) -> AlgebraDescriptor:
        return self.u.algebra

    def validate(self) -> CompactifiedPoint:
        violation = interval_violation(self.u)
        if violation > EPS_ACTION * max(1.0, self.u.norm()):
            raise OutOfInterval(f"spectrum leaves [-1, 1] by {violation:.3e}")
        return self

    @staticmethod
    def minus_one(alg: AlgebraDescriptor) -> CompactifiedPoint:
        return CompactifiedPoint(-identity(alg))

    @staticmethod
    def plus_one(alg: AlgebraDescriptor) -> CompactifiedPoint:
        return CompactifiedPoint(identity(alg))


@dataclass(frozen=True)
class BoundaryPoint:
    e: Element
    x: Element

    @property
    def algebra(self) -> AlgebraDescriptor:
        return self.e.algebra

    @property
    def complement(self) -> Element:
        return identity(self.algebra) - self.e

    def validate(self) -> BoundaryPoint:
        try:
            require_idempotent(self.e)
        except NotIdempotent as exc:
            raise InvalidBoundaryPoint(str(exc)) from exc
        gap = quad(self.complement).apply(self.x).distance(self.x)
        if gap > EPS_SUBSPACE * max(1.0, self.x.norm()):
            raise InvalidBoundaryPoint(f"x is not in V_0(e): |P(1-e)x - x| = {gap:.3e}")
        if not in_cone(self.x):
            raise InvalidBoundaryPoint("x is not in the cone of squares")
        return self

    def translate(self, a: Element) -> BoundaryPoint:
        """(e, x + P(1-e)a), the action on the parameter side."""
        return BoundaryPoint(self.e, self.x + quad(self.complement).apply(a))


def interval_violation(u: Element) -> float:
    eigenvalues = spectral_decompose(u).eigenvalues
    return max(0.0, eigenvalues[-1] - 1.0, -1.0 - eigenvalues[0])


def _to_interval(lam: float) -> float:
    lam = max(lam, 0.0)
    return (lam - 1.0) / (lam + 1.0)


def _from_interval(mu: float) -> float:
    mu = max(mu, -1.0)
    return (1.0 + mu) / (1.0 - mu)


def cayley(x: Element) -> CompactifiedPoint:
    if not in_cone(x):
        raise NotInCone(f"{x!r} is outside the cone of squares")
    return CompactifiedPoint(apply_scalar(x, _to_interval))


def embed(p: BoundaryPoint) -> CompactifiedPoint:
    """i(e, x) = e + (x + e')^-1 (x - e'), the inverse taken in V_1(e') with e' = 1 - e."""
    p.validate()
    complement = p.complement
    w = subalgebra_inverse(p.x + complement, complement)
    return CompactifiedPoint(p.e + jordan_product(w, p.x - complement))


def embed_spectral(p: BoundaryPoint) -> CompactifiedPoint:
    """e + sum (lambda_i - 1)/(lambda_i + 1) f_i, written as cayley(x) + 2e."""
    return CompactifiedPoint(cayley(p.x).u + 2.0 * p.e)


def represent(u: CompactifiedPoint) -> BoundaryPoint:
    point = u.u
    decomposition = spectral_decompose(point)
    violation = max(0.0, decomposition.eigenvalues[-1] - 1.0, -1.0 - decomposition.eigenvalues[0])
    if violation > EPS_ACTION * max(1.0, point.norm()):
        raise OutOfInterval(f"spectrum leaves [-1, 1] by {violation:.3e}")

    top = 1.0 - EPS_GROUP * max(1.0, point.norm())
    e = np.zeros(point.algebra.dim)
    x = np.zeros(point.algebra.dim)
    for mu, c in zip(decomposition.eigenvalues, decomposition.idempotents):
        if mu >= top:
            e += c.coords
        else:
            x += _from_interval(mu) * c.coords
    return BoundaryPoint(Element(point.algebra, e), Element(point.algebra, x))


def act_direct(u: CompactifiedPoint, a: Element) -> CompactifiedPoint:
    """1 - 2v + 2P(v)(v + a^-1)^-1 with v = (1 - u)/2, independent of represent."""
    if cone_classify(a) is not ConeClass.INTERIOR:
        raise NotInteriorCone(f"{a!r} is not in the interior of the cone")
    one = identity(a.algebra)
    tilde = (one - u.u) * 0.5
    correction = quad(tilde).apply(inverse(tilde + inverse(a)))
    return CompactifiedPoint(one - 2.0 * tilde + 2.0 * correction)


def act(u: CompactifiedPoint, a: Element) -> CompactifiedPoint:
    if not in_cone(a):
        raise NotInCone(f"{a!r} is outside the cone of squares")
    return embed(represent(u).translate(a))


def preimage(u: CompactifiedPoint, a: Element) -> CompactifiedPoint | None:
    if not in_cone(a):
        raise NotInCone(f"{a!r} is outside the cone of squares")
    p = represent(u)
    y = p.x - quad(p.complement).apply(a)
    if not in_cone(y):
        return None
    return embed(BoundaryPoint(p.e, y))


def a_set_member(u: CompactifiedPoint, a: Element) -> bool:
    return in_cone(represent(u).translate(a).x)


def a_set_witness(u: CompactifiedPoint, a: Element) -> tuple[Element, Element, CompactifiedPoint]:
    """(a1, a2, v) with a = a1 - a2, a1, a2 interior, and u + a1 = v + a2."""
    p = represent(u)
    moved = p.translate(a)
    if not in_cone(moved.x):
        raise NotMember(f"{a!r} is not in A_u")
    a2 = (1.0 + spectral_radius(a)) * identity(a.algebra)
    a1 = a + a2
    if cone_classify(a1) is not ConeClass.INTERIOR:
        raise GuaranteeViolated("a + (1 + rho(a)) 1 must be interior")
    return a1, a2, embed(moved)


def interior_membership(u: CompactifiedPoint) -> bool:
    return not spectrum_contains(u.u, -1.0)


def dominates(u: CompactifiedPoint, a: Element) -> bool:
    """u > i(a)."""
    return cone_classify(u.u - cayley(a).u) is ConeClass.INTERIOR


def homotopy_point(t: float, u: CompactifiedPoint) -> CompactifiedPoint:
    """t u + t - 1: the identity at t = 1, constant -1 at t = 0."""
    if not 0.0 <= t <= 1.0:
        raise ParameterOutOfRange(f"t must lie in [0, 1], got {t!r}")
    one = identity(u.algebra)
    return CompactifiedPoint(Element(u.algebra, t * u.u.coords + (t - 1.0) * one.coords))


def origin(alg: AlgebraDescriptor) -> BoundaryPoint:
    """(0, 0), the parameter of -1."""
    return BoundaryPoint(zero(alg), zero(alg))
