"""The ax+b group, its semigroup P = {a >= 1, b >= 0} and the compactification of P."""
from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from functools import total_ordering

import numpy as np

from jordan_wh.errors import ParameterOutOfRange


class ExtKind(str, Enum):
    NEG_INF = "-inf"
    FINITE = "finite"
    POS_INF = "+inf"


_ORDER = {ExtKind.NEG_INF: -1, ExtKind.FINITE: 0, ExtKind.POS_INF: 1}


@total_ordering
@dataclass(frozen=True, eq=False)
class ExtendedReal:
    value: float = 0.0
    kind: ExtKind = ExtKind.FINITE

    def __post_init__(self) -> None:
        if self.kind is ExtKind.FINITE:
            if not math.isfinite(self.value):
                raise ValueError("finite extended reals need a finite value; use the tags")
            object.__setattr__(self, "value", float(self.value))
        else:
            object.__setattr__(self, "value", 0.0)

    @staticmethod
    def finite(value: float) -> ExtendedReal:
        return ExtendedReal(float(value))

    @staticmethod
    def neg_inf() -> ExtendedReal:
        return ExtendedReal(0.0, ExtKind.NEG_INF)

    @staticmethod
    def pos_inf() -> ExtendedReal:
        return ExtendedReal(0.0, ExtKind.POS_INF)

    @property
    def is_finite(self) -> bool:
        return self.kind is ExtKind.FINITE

    def _key(self) -> tuple[int, float]:
        return _ORDER[self.kind], self.value

    def __lt__(self, other: object) -> bool:
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self._key() < other._key()

    def __eq__(self, other: object) -> bool:
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self._key() == other._key()

    def __hash__(self) -> int:
        # equal to the hash of the matching float
        if self.is_finite:
            return hash(self.value)
        return hash(math.inf if self.kind is ExtKind.POS_INF else -math.inf)

    def affine(self, a: float, b: float) -> ExtendedReal:
        """(self - b) / a for a > 0."""
        if not self.is_finite:
            return self
        return ExtendedReal.finite((self.value - b) / a)

    def exp(self) -> float:
        if self.kind is ExtKind.NEG_INF:
            return 0.0
        if self.kind is ExtKind.POS_INF:
            raise ValueError("exp(+inf) is not representable")
        return math.exp(self.value)

    def __str__(self) -> str:
        return self.kind.value if not self.is_finite else repr(self.value)


def _coerce(value: object) -> ExtendedReal:
    if isinstance(value, ExtendedReal):
        return value
    if isinstance(value, bool) or not isinstance(value, (int, float)) or math.isnan(value):
        return NotImplemented
    if value == math.inf:
        return ExtendedReal.pos_inf()
    if value == -math.inf:
        return ExtendedReal.neg_inf()
    return ExtendedReal.finite(value)


ZERO = ExtendedReal.finite(0.0)
ONE = ExtendedReal.finite(1.0)


@dataclass(frozen=True)
class AffineElement:
    a: float
    b: float

    def __post_init__(self) -> None:
        if not (math.isfinite(self.a) and math.isfinite(self.b)) or self.a <= 0.0:
            raise ValueError(f"ax+b elements need a > 0 and finite b, got ({self.a}, {self.b})")


@dataclass(frozen=True)
class PlanePoint:
    x: ExtendedReal
    y: ExtendedReal

    def __post_init__(self) -> None:
        if self.x.kind is ExtKind.POS_INF:
            raise ValueError("x = +inf is not a point of Y")
        if self.y < ZERO:
            raise ValueError("y must be >= 0")

    @staticmethod
    def of(x: float, y: float) -> PlanePoint:
        return PlanePoint(_coerce(x), _coerce(y))


def identity_element() -> AffineElement:
    return AffineElement(1.0, 0.0)


def inverse_element(g: AffineElement) -> AffineElement:
    return AffineElement(1.0 / g.a, -g.b / g.a)


def compose(g: AffineElement, h: AffineElement) -> AffineElement:
    """The matrix product gh; acting by gh is acting by g and then by h."""
    return AffineElement(g.a * h.a, g.a * h.b + g.b)


def act_plane(p: PlanePoint, g: AffineElement) -> PlanePoint:
    if p.y.is_finite:
        y = ExtendedReal.finite(p.y.value / g.a)
    else:
        y = p.y
    return PlanePoint(p.x.affine(g.a, g.b), y)


def in_semigroup(g: AffineElement, interior: bool = False) -> bool:
    if interior:
        return g.a > 1.0 and g.b > 0.0
    return g.a >= 1.0 and g.b >= 0.0


def in_X(p: PlanePoint, interior_orbit: bool = False) -> bool:
    if interior_orbit:
        return p.x < ZERO and p.y < ONE
    return p.x <= ZERO and p.y <= ONE


def _check_parameter(s: float, upper_open: bool) -> None:
    ok = 0.0 <= s < 1.0 if upper_open else 0.0 <= s <= 1.0
    if not ok:
        raise ParameterOutOfRange(f"parameter out of range: {s!r}")


def escape_homotopy(s: float, p: PlanePoint) -> PlanePoint:
    """(log(e^x + s/(1-s)), y); the identity at s = 0."""
    _check_parameter(s, upper_open=True)
    if s == 0.0:
        return p
    return escape_homotopy_logit(math.log(s) - math.log1p(-s), p)


def escape_homotopy_logit(theta: float, p: PlanePoint) -> PlanePoint:
    """The escape path at log-odds theta = log(s/(1-s))."""
    if theta == -math.inf:
        return p
    if not math.isfinite(theta):
        raise ParameterOutOfRange("theta must be finite or -inf")
    if p.x.is_finite:
        x = ExtendedReal.finite(float(np.logaddexp(p.x.value, theta)))
    else:
        x = ExtendedReal.finite(theta)
    return PlanePoint(x, p.y)


def escape_threshold(m: float) -> tuple[float, float]:
    """(theta*, 1 - s*) beyond which every escaped first coordinate exceeds m."""
    return m, float(np.exp(-np.logaddexp(0.0, m)))


def to_chart(p: PlanePoint) -> tuple[float, float]:
    """(e^x, y/(1+y)) in [0, inf) x [0, 1]."""
    xi = p.x.exp()
    eta = 1.0 if not p.y.is_finite else p.y.value / (1.0 + p.y.value)
    return xi, eta


def from_chart(xi: float, eta: float) -> PlanePoint:
    if xi < 0.0 or not 0.0 <= eta <= 1.0:
        raise ValueError(f"chart coordinates out of range: ({xi}, {eta})")
    x = ExtendedReal.neg_inf() if xi == 0.0 else ExtendedReal.finite(math.log(xi))
    y = ExtendedReal.pos_inf() if eta == 1.0 else ExtendedReal.finite(eta / (1.0 - eta))
    return PlanePoint(x, y)


def orbit_preimage(q: PlanePoint) -> tuple[PlanePoint, AffineElement] | None:
    """(p, g) with p in X, g in Int(P) and p.g = q; None when q is not in X_0."""
    if not in_X(q, interior_orbit=True):
        return None
    y = q.y.value
    a = min(2.0, 0.5 * (1.0 + 1.0 / y)) if y > 0.0 else 2.0
    if q.x.is_finite:
        b = -a * q.x.value / 2.0
        x = ExtendedReal.finite(a * q.x.value / 2.0)
    else:
        b = 1.0
        x = q.x
    return PlanePoint(x, ExtendedReal.finite(a * y)), AffineElement(a, b)


def orbit_contraction(t: float, p: PlanePoint) -> PlanePoint:
    """Chart-affine contraction of X onto the corner (0, 1), which lies outside X_0."""
    _check_parameter(t, upper_open=False)
    if not in_X(p):
        raise ValueError("orbit_contraction is defined on X")
    if t == 1.0:
        return p
    xi, eta = to_chart(p)
    # 1 - t(1 - xi) keeps the edges xi = 1 and eta = 1/2 fixed in floating point
    return from_chart(1.0 - t * (1.0 - xi), 0.5 - t * (0.5 - eta))
