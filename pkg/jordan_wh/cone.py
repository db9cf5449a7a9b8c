from __future__ import annotations

import math
from enum import Enum

from jordan_wh.algebra import Element, identity, mutation_product, quad
from jordan_wh.errors import GuaranteeViolated, Singular
from jordan_wh.spectral import EPS_INV, spectral_decompose

EPS_CONE = 1e-9


class ConeClass(str, Enum):
    INTERIOR = "interior"
    BOUNDARY = "boundary"
    OUTSIDE = "outside"


def min_eigenvalue(x: Element) -> float:
    return spectral_decompose(x).eigenvalues[0]


def spectral_radius(x: Element) -> float:
    eigenvalues = spectral_decompose(x).eigenvalues
    return max(abs(eigenvalues[0]), abs(eigenvalues[-1]))


def condition_number(x: Element) -> float:
    magnitudes = [abs(lam) for lam in spectral_decompose(x).eigenvalues]
    smallest = min(magnitudes)
    if smallest == 0.0:
        return math.inf
    return max(magnitudes) / smallest


def cone_classify(x: Element) -> ConeClass:
    lowest = min_eigenvalue(x)
    tol = EPS_CONE * max(1.0, x.norm())
    if lowest > tol:
        return ConeClass.INTERIOR
    if abs(lowest) <= tol:
        return ConeClass.BOUNDARY
    return ConeClass.OUTSIDE


def in_cone(x: Element) -> bool:
    return cone_classify(x) is not ConeClass.OUTSIDE


def leq(x: Element, y: Element) -> bool:
    """x <= y in the cone order, i.e. y - x in Q."""
    return in_cone(y - x)


def less(x: Element, y: Element) -> bool:
    """x < y, i.e. y - x in the interior of Q."""
    return cone_classify(y - x) is ConeClass.INTERIOR


def inverse(x: Element) -> Element:
    decomposition = spectral_decompose(x)
    threshold = EPS_INV * x.norm()
    for lam in decomposition.eigenvalues:
        if abs(lam) <= threshold:
            raise Singular(f"eigenvalue {lam!r} of {x!r} is zero within tolerance")
    return decomposition.apply(lambda lam: 1.0 / lam)


def mutation_inverse(x: Element, u: Element) -> Element:
    """Inverse of x in the mutation V_u: P(u^-1) x^-1."""
    return quad(inverse(u)).apply(inverse(x))


def mutation_unit_defect(a: Element, u: Element) -> float:
    """|a *_u u^-1 - a|, zero because u^-1 is the unit of V_u."""
    return mutation_product(a, inverse(u), u).distance(a)


def hua_residual(a: Element, b: Element) -> float:
    """Relative residual of (a+b)^-1 + (a + P(a)b^-1)^-1 = a^-1."""
    inv_a = inverse(a)
    inv_ab = inverse(a + b)
    shifted = a + quad(a).apply(inverse(b))
    try:
        inv_shifted = inverse(shifted)
    except Singular as exc:
        raise GuaranteeViolated(f"a + P(a)b^-1 must be invertible: {exc}") from exc
    return (inv_ab + inv_shifted).distance(inv_a) / inv_a.norm()


def unit_shift(x: Element, amount: float) -> Element:
    return x + amount * identity(x.algebra)
