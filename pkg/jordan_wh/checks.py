from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

import numpy as np

from jordan_wh import axb
from jordan_wh.algebra import (
    AlgebraDescriptor,
    Element,
    LinearOperator,
    identity,
    jordan_product,
    l_operator,
    mutation_product,
    mutation_quad,
    quad,
    quad_bilinear,
    square,
    zero,
)
from jordan_wh.cone import (
    ConeClass,
    condition_number,
    cone_classify,
    hua_residual,
    in_cone,
    inverse,
    less,
    min_eigenvalue,
    mutation_inverse,
    mutation_unit_defect,
)
from jordan_wh.errors import GuaranteeViolated, Rejected, SingularInSubalgebra
from jordan_wh.sampling import (
    sample_affine,
    sample_boundary,
    sample_cone,
    sample_cone_boundary,
    sample_element,
    sample_interior,
    sample_outside,
    sample_plane,
    sample_plane_X,
    sample_semigroup,
    sample_X,
)
from jordan_wh.spectral import (
    idempotent_defect,
    jacobi_eigh,
    orthogonality_defect,
    peirce,
    random_idempotent,
    range_basis,
    spectral_decompose,
    spectrum_contains,
    subalgebra_inverse,
)
from jordan_wh.wiener_hopf import (
    EPS_ACTION,
    EPS_ROUNDTRIP,
    BoundaryPoint,
    CompactifiedPoint,
    a_set_member,
    act,
    act_direct,
    cayley,
    dominates,
    embed,
    embed_spectral,
    homotopy_point,
    interior_membership,
    interval_violation,
    preimage,
    represent,
)

COND_MAX = 1e8
EPS_SPEC = 1e-9
EPS_LAW = 1e-10

SampleFn = Callable[[AlgebraDescriptor, np.random.Generator], float]


@dataclass(frozen=True)
class Check:
    check_id: str
    tolerance: float
    sample: SampleFn
    # ax+b checks do not depend on the configured algebra
    algebra_free: bool = False

    @property
    def suite(self) -> str:
        return self.check_id.split(".", 1)[0]


CHECKS: dict[str, Check] = {}


def check(check_id: str, tolerance: float, algebra_free: bool = False) -> Callable[[SampleFn], SampleFn]:
    def register(fn: SampleFn) -> SampleFn:
        if check_id in CHECKS:
            raise ValueError(f"duplicate check id {check_id}")
        CHECKS[check_id] = Check(check_id, tolerance, fn, algebra_free)
        return fn

    return register


def suites() -> list[str]:
    return sorted({c.suite for c in CHECKS.values()})


def checks_for(suite_ids: list[str]) -> list[Check]:
    return [c for c in CHECKS.values() if c.suite in suite_ids]


def _relative(diff: float, scale: float) -> float:
    return diff / max(1.0, scale)


def _flag(ok: bool) -> float:
    return 0.0 if ok else 1.0


def guard(*elements: Element, limit: float = COND_MAX) -> None:
    for x in elements:
        if condition_number(x) > limit:
            raise Rejected(f"condition number of {x!r} exceeds {limit:.0e}")


def _guard_action(u: CompactifiedPoint, a: Element) -> None:
    one = identity(a.algebra)
    guard(a, represent(u).x + one, (one - u.u) * 0.5 + inverse(a))


def _ambiguous(value: float, low: float, high: float) -> None:
    if low < value < high:
        raise Rejected(f"{value:.3e} lies in the ambiguity band ({low:.0e}, {high:.0e})")


# algebra


@check("algebra.jordan-identity", EPS_LAW)
def _jordan_identity(alg: AlgebraDescriptor, rng: np.random.Generator) -> float:
    x, y = sample_element(alg, rng), sample_element(alg, rng)
    x2 = square(x)
    diff = jordan_product(x, jordan_product(x2, y)).distance(jordan_product(x2, jordan_product(x, y)))
    return _relative(diff, x.norm() ** 2 * y.norm())


@check("algebra.euclidean-symmetry", EPS_LAW)
def _euclidean_symmetry(alg: AlgebraDescriptor, rng: np.random.Generator) -> float:
    x, y, z = (sample_element(alg, rng) for _ in range(3))
    lx = l_operator(x)
    diff = abs(lx.apply(y).inner(z) - y.inner(lx.apply(z)))
    return _relative(diff, x.norm() * y.norm() * z.norm())


@check("algebra.quad-unit", EPS_LAW)
def _quad_unit(alg: AlgebraDescriptor, rng: np.random.Generator) -> float:
    x = sample_element(alg, rng)
    return _relative(quad(x).apply(identity(alg)).distance(square(x)), x.norm() ** 2)


@check("algebra.quad-inverse", 1e-8)
def _quad_inverse(alg: AlgebraDescriptor, rng: np.random.Generator) -> float:
    x = sample_element(alg, rng)
    guard(x, limit=1e6)
    return _relative(quad(x).apply(inverse(x)).distance(x), x.norm())


@check("algebra.quad-consistency", EPS_LAW)
def _quad_consistency(alg: AlgebraDescriptor, rng: np.random.Generator) -> float:
    x = sample_element(alg, rng)
    return _relative((quad(x) - quad_bilinear(x, x)).norm(), x.norm() ** 2)


def _sample_unit_shifted(alg: AlgebraDescriptor, rng: np.random.Generator) -> Element:
    # spectrum >= 1
    return sample_cone(alg, rng) + identity(alg)


@check("algebra.mutation-unit", 1e-8)
def _mutation_unit(alg: AlgebraDescriptor, rng: np.random.Generator) -> float:
    u, a = _sample_unit_shifted(alg, rng), sample_element(alg, rng)
    return _relative(mutation_unit_defect(a, u), a.norm())


@check("algebra.mutation-inverse", 1e-7)
def _mutation_inverse(alg: AlgebraDescriptor, rng: np.random.Generator) -> float:
    u, x = _sample_unit_shifted(alg, rng), _sample_unit_shifted(alg, rng)
    expected = mutation_inverse(x, u)
    solved = np.linalg.solve(mutation_quad(x, u).matrix, x.coords)
    return _relative(float(np.linalg.norm(solved - expected.coords)), expected.norm())


@check("algebra.mutation-jordan", 1e-9)
def _mutation_jordan(alg: AlgebraDescriptor, rng: np.random.Generator) -> float:
    u = _sample_unit_shifted(alg, rng)
    x, y = sample_element(alg, rng), sample_element(alg, rng)
    x2 = mutation_product(x, x, u)
    lhs = mutation_product(x, mutation_product(x2, y, u), u)
    rhs = mutation_product(x2, mutation_product(x, y, u), u)
    return _relative(lhs.distance(rhs), (x.norm() * u.norm()) ** 3 * y.norm())


@check("algebra.cone-squares", 0.0)
def _cone_squares(alg: AlgebraDescriptor, rng: np.random.Generator) -> float:
    return _flag(cone_classify(sample_cone(alg, rng)) is not ConeClass.OUTSIDE)


# hua


@check("hua.residual", 1e-8)
def _hua(alg: AlgebraDescriptor, rng: np.random.Generator) -> float:
    a, b = sample_interior(alg, rng), sample_interior(alg, rng)
    guard(a, b, a + b)
    return hua_residual(a, b)


# spectral


@check("spectral.reconstruction", EPS_SPEC)
def _reconstruction(alg: AlgebraDescriptor, rng: np.random.Generator) -> float:
    x = sample_element(alg, rng)
    return _relative(spectral_decompose(x).reconstruct().distance(x), x.norm())


@check("spectral.orthogonality", EPS_SPEC)
def _orthogonality(alg: AlgebraDescriptor, rng: np.random.Generator) -> float:
    return orthogonality_defect(spectral_decompose(sample_element(alg, rng)))


@check("spectral.completeness", EPS_SPEC)
def _completeness(alg: AlgebraDescriptor, rng: np.random.Generator) -> float:
    decomposition = spectral_decompose(sample_element(alg, rng))
    total = np.sum([c.coords for c in decomposition.idempotents], axis=0)
    return float(np.linalg.norm(total - identity(alg).coords))


@check("spectral.idempotency", EPS_SPEC)
def _idempotency(alg: AlgebraDescriptor, rng: np.random.Generator) -> float:
    decomposition = spectral_decompose(sample_element(alg, rng))
    return max(idempotent_defect(c) for c in decomposition.idempotents)


@check("spectral.peirce-quad", EPS_SPEC)
def _peirce_quad(alg: AlgebraDescriptor, rng: np.random.Generator) -> float:
    e = random_idempotent(alg, rng)
    return (peirce(e).p1 - quad(e)).norm()


@check("spectral.peirce-projections", EPS_SPEC)
def _peirce_projections(alg: AlgebraDescriptor, rng: np.random.Generator) -> float:
    split = peirce(random_idempotent(alg, rng))
    projectors = (split.p0, split.p_half, split.p1)
    total = split.p0 + split.p_half + split.p1
    worst = (total - LinearOperator.identity(alg)).norm()
    for p in projectors:
        worst = max(worst, p.asymmetry(), (p @ p - p).norm())
    return worst


@check("spectral.l-idempotent-spectrum", EPS_SPEC)
def _l_idempotent_spectrum(alg: AlgebraDescriptor, rng: np.random.Generator) -> float:
    eigenvalues, _ = jacobi_eigh(l_operator(random_idempotent(alg, rng)).matrix)
    targets = np.array([0.0, 0.5, 1.0])
    return float(np.max(np.min(np.abs(eigenvalues[:, None] - targets[None, :]), axis=1)))


def _sample_idempotent_with_corners(alg: AlgebraDescriptor, rng: np.random.Generator) -> Element:
    branch = rng.random()
    if branch < 0.1:
        return zero(alg)
    if branch < 0.2:
        return identity(alg)
    return random_idempotent(alg, rng)


@check("spectral.crucial-lemma", 1e-7)
def _crucial_lemma(alg: AlgebraDescriptor, rng: np.random.Generator) -> float:
    e = _sample_idempotent_with_corners(alg, rng)
    pe = quad(e)
    a = sample_interior(alg, rng)
    u = square(pe.apply(sample_element(alg, rng)))
    guard(a)
    inv_a = inverse(a)
    guard(u + inv_a)
    try:
        inv_a0 = subalgebra_inverse(pe.apply(a), e)
    except SingularInSubalgebra as exc:
        raise GuaranteeViolated(f"P(e)a must be invertible in V_1(e): {exc}") from exc
    lhs = pe.apply(inverse(u + inv_a))
    rhs = subalgebra_inverse(u + inv_a0, e)
    return _relative(lhs.distance(rhs), lhs.norm())


@check("spectral.subalgebra-inverse-agreement", 1e-8)
def _subalgebra_inverse_agreement(alg: AlgebraDescriptor, rng: np.random.Generator) -> float:
    e = random_idempotent(alg, rng)
    a = sample_cone(alg, rng) + identity(alg)
    x = quad(e).apply(a)
    spectral = subalgebra_inverse(x, e)
    restricted = subalgebra_inverse(x, e, method="restricted")
    return _relative(spectral.distance(restricted), spectral.norm())


# wiener-hopf


@check("wh.crucial.invertibility", 1e-7)
def _crucial_invertibility(alg: AlgebraDescriptor, rng: np.random.Generator) -> float:
    e = _sample_idempotent_with_corners(alg, rng)
    a = sample_interior(alg, rng)
    guard(a)
    a0 = quad(e).apply(a)
    try:
        w = subalgebra_inverse(a0, e)
    except SingularInSubalgebra:
        return math.inf
    return _relative(jordan_product(a0, w).distance(e), e.norm())


@check("wh.act.interval-closure", EPS_ACTION)
def _interval_closure(alg: AlgebraDescriptor, rng: np.random.Generator) -> float:
    u, a = sample_X(alg, rng), sample_interior(alg, rng)
    _guard_action(u, a)
    return interval_violation(act_direct(u, a).u)


@check("wh.act.oracle-agreement", EPS_ACTION)
def _oracle_agreement(alg: AlgebraDescriptor, rng: np.random.Generator) -> float:
    u, a = sample_X(alg, rng), sample_interior(alg, rng)
    _guard_action(u, a)
    return act(u, a).u.distance(act_direct(u, a).u)


def _sample_q(alg: AlgebraDescriptor, rng: np.random.Generator) -> Element:
    if rng.random() < 0.2:
        return sample_cone_boundary(alg, rng)
    return sample_cone(alg, rng)


@check("wh.act.semigroup", EPS_ACTION)
def _semigroup(alg: AlgebraDescriptor, rng: np.random.Generator) -> float:
    u = sample_X(alg, rng)
    a, b = _sample_q(alg, rng), _sample_q(alg, rng)
    guard(represent(u).x + identity(alg))
    return act(act(u, a), b).u.distance(act(u, a + b).u)


@check("wh.act.zero", EPS_ACTION)
def _act_zero(alg: AlgebraDescriptor, rng: np.random.Generator) -> float:
    u = sample_X(alg, rng)
    guard(represent(u).x + identity(alg))
    return act(u, zero(alg)).u.distance(u.u)


@check("wh.act.injectivity", 0.0)
def _injectivity(alg: AlgebraDescriptor, rng: np.random.Generator) -> float:
    p, q = sample_boundary(alg, rng), sample_boundary(alg, rng)
    if p.e.distance(q.e) <= 1e-6 and p.x.distance(q.x) <= 1e-6:
        raise Rejected("boundary points coincide")
    a = sample_interior(alg, rng)
    moved_p, moved_q = p.translate(a), q.translate(a)
    distinct = moved_p.e.distance(moved_q.e) > 1e-6 or moved_p.x.distance(moved_q.x) > 1e-6 * max(
        1.0, moved_p.x.norm()
    )
    return _flag(distinct)


@check("wh.cayley.equivariance", EPS_ACTION)
def _cayley_equivariance(alg: AlgebraDescriptor, rng: np.random.Generator) -> float:
    x, a = sample_cone(alg, rng), sample_interior(alg, rng)
    guard(a, x + identity(alg))
    return act(cayley(x), a).u.distance(cayley(x + a).u)


@check("wh.cayley.order", 0.0)
def _cayley_order(alg: AlgebraDescriptor, rng: np.random.Generator) -> float:
    x = sample_cone(alg, rng)
    y = x + sample_interior(alg, rng) if rng.random() < 0.5 else sample_cone(alg, rng)
    gap = y - x
    _ambiguous(abs(min_eigenvalue(gap)), -1.0, 1e-4 * max(1.0, gap.norm()))
    return _flag(less(cayley(x).u, cayley(y).u) == less(x, y))


@check("wh.roundtrip.x", EPS_ROUNDTRIP)
def _roundtrip_x(alg: AlgebraDescriptor, rng: np.random.Generator) -> float:
    u = sample_X(alg, rng)
    p = represent(u)
    guard(p.x + identity(alg))
    return embed(p).u.distance(u.u)


@check("wh.roundtrip.y", EPS_ROUNDTRIP)
def _roundtrip_y(alg: AlgebraDescriptor, rng: np.random.Generator) -> float:
    p = sample_boundary(alg, rng)
    guard(p.x + identity(alg))
    q = represent(embed(p))
    return max(q.e.distance(p.e), _relative(q.x.distance(p.x), p.x.norm()))


@check("wh.embed.spectral-form", EPS_ROUNDTRIP)
def _embed_spectral_form(alg: AlgebraDescriptor, rng: np.random.Generator) -> float:
    p = sample_boundary(alg, rng)
    return embed(p).u.distance(embed_spectral(p).u)


@check("wh.axiom.c1.forward", 0.0)
def _c1_forward(alg: AlgebraDescriptor, rng: np.random.Generator) -> float:
    u = sample_X(alg, rng)
    a, b = _sample_q(alg, rng), sample_interior(alg, rng)
    guard(b, represent(u).x + identity(alg))
    return _flag(dominates(act(u, b + a), a))


@check("wh.axiom.c1.converse", 0.0)
def _c1_converse(alg: AlgebraDescriptor, rng: np.random.Generator) -> float:
    one = identity(alg)
    u = sample_X(alg, rng)
    if rng.random() < 0.3:
        # pull u towards +1; its +1 eigenspace stays put
        u = CompactifiedPoint(one - 10.0 ** rng.uniform(-3.0, 0.0) * (one - u.u))
    a = 10.0 ** rng.uniform(-3.0, 0.0) * _sample_q(alg, rng)
    _ambiguous(min_eigenvalue(u.u - cayley(a).u), -1e-6, 1e-6)
    if not dominates(u, a):
        raise Rejected("u does not dominate i(a)")
    guard(represent(u).x + one)
    scale = max(1.0, a.norm())
    for k in range(1, 9):
        shifted = a + (10.0**-k * scale) * one
        back = preimage(u, shifted)
        if back is not None and act(back, shifted).u.distance(u.u) <= EPS_ACTION:
            return 0.0
    return 1.0


@check("wh.axiom.c2.membership", 0.0)
def _c2_membership(alg: AlgebraDescriptor, rng: np.random.Generator) -> float:
    branch = rng.random()
    if branch < 0.1:
        a = sample_cone_boundary(alg, rng)
    elif branch < 0.55:
        a = sample_interior(alg, rng)
    else:
        a = sample_outside(alg, rng)
    return _flag(a_set_member(CompactifiedPoint.minus_one(alg), a) == in_cone(a))


DENSITY_WEIGHT = 1e7


@check("wh.axiom.c2.density", 1e-5)
def _c2_density(alg: AlgebraDescriptor, rng: np.random.Generator) -> float:
    u = sample_X(alg, rng)
    p = represent(u)
    return cayley(p.x + DENSITY_WEIGHT * p.e).u.distance(u.u)


PROBE_SCALES = (1.0, 10.0, 100.0)


def _separating_probes(p: BoundaryPoint, q: BoundaryPoint) -> tuple[list[Element], float]:
    """Probes -x, -y and +-t w for w spanning V_1 + V_1/2 of either idempotent, with the
    largest |P(1-e)w| seen."""
    alg = p.algebra
    probes = [-p.x, -q.x]
    largest = 0.0
    reach = 10.0 * (1.0 + p.x.norm() + q.x.norm()) * math.sqrt(alg.rank)
    for side in (p, q):
        split = peirce(side.e)
        basis = range_basis((split.p1 + split.p_half).matrix)
        for column in basis.T:
            w = Element(alg, column)
            moved = max(quad(p.complement).apply(w).norm(), quad(q.complement).apply(w).norm())
            largest = max(largest, moved)
            scales = list(PROBE_SCALES)
            if moved > 1e-3:
                scales.append(reach / moved)
            for t in scales:
                probes.extend((t * w, -t * w))
    return probes, largest


@check("wh.axiom.c3.separation", 0.0)
def _c3_separation(alg: AlgebraDescriptor, rng: np.random.Generator) -> float:
    p = sample_boundary(alg, rng)
    if rng.random() < 1.0 / 3.0:
        z = quad(p.complement).apply(sample_element(alg, rng))
        q = BoundaryPoint(p.e, square(z))
    else:
        q = sample_boundary(alg, rng)
    gap_e = p.e.distance(q.e)
    _ambiguous(gap_e, 1e-9, 1e-3)
    if gap_e <= 1e-9 and p.x.distance(q.x) <= 1e-6:
        raise Rejected("boundary points coincide")
    probes, largest = _separating_probes(p, q)
    if gap_e > 1e-9 and largest <= 1e-3:
        raise Rejected("idempotents too close to separate by finite probes")
    u, v = embed(p), embed(q)
    separated = any(a_set_member(u, a) != a_set_member(v, a) for a in probes)
    return _flag(separated)


@check("wh.x0.characterization", 0.0)
def _x0_characterization(alg: AlgebraDescriptor, rng: np.random.Generator) -> float:
    u = sample_X(alg, rng)
    minus_one = -identity(alg)
    _ambiguous(min_eigenvalue(u.u - minus_one), 1e-10, 1e-6)
    return _flag(interior_membership(u) == less(minus_one, u.u))


HOMOTOPY_TIMES = tuple(k / 10.0 for k in range(11))


@check("wh.homotopy.endpoints", 0.0)
def _homotopy_endpoints(alg: AlgebraDescriptor, rng: np.random.Generator) -> float:
    u = sample_X(alg, rng)
    start = np.array_equal(homotopy_point(1.0, u).u.coords, u.u.coords)
    end = np.array_equal(homotopy_point(0.0, u).u.coords, -identity(alg).coords)
    return _flag(start and end)


@check("wh.homotopy.closure", EPS_SPEC)
def _homotopy_closure(alg: AlgebraDescriptor, rng: np.random.Generator) -> float:
    u = sample_X(alg, rng)
    return max(interval_violation(homotopy_point(t, u).u) for t in HOMOTOPY_TIMES)


@check("wh.homotopy.spectrum", 0.0)
def _homotopy_spectrum(alg: AlgebraDescriptor, rng: np.random.Generator) -> float:
    u = sample_X(alg, rng)
    _ambiguous(spectral_decompose(u.u).eigenvalues[0] + 1.0, 1e-12, 1e-6)
    touches = spectrum_contains(u.u, -1.0)
    ok = spectrum_contains(homotopy_point(0.0, u).u, -1.0)
    for t in HOMOTOPY_TIMES[1:]:
        ok = ok and spectrum_contains(homotopy_point(t, u).u, -1.0) == touches
    return _flag(ok)


# ax+b


def _extended_gap(p: axb.PlanePoint, q: axb.PlanePoint) -> float:
    worst = 0.0
    for left, right in ((p.x, q.x), (p.y, q.y)):
        if left.kind is not right.kind:
            return math.inf
        if left.is_finite:
            worst = max(worst, _relative(abs(left.value - right.value), abs(right.value)))
    return worst


@check("axb.action.law", 1e-12, algebra_free=True)
def _action_law(alg: AlgebraDescriptor, rng: np.random.Generator) -> float:
    p = sample_plane(rng)
    g, h = sample_affine(rng), sample_affine(rng)
    return _extended_gap(axb.act_plane(p, axb.compose(g, h)), axb.act_plane(axb.act_plane(p, g), h))


@check("axb.x.invariance", 0.0, algebra_free=True)
def _x_invariance(alg: AlgebraDescriptor, rng: np.random.Generator) -> float:
    p, g = sample_plane_X(rng), sample_semigroup(rng)
    return _flag(axb.in_X(axb.act_plane(p, g)))


@check("axb.x0.orbit", 0.0, algebra_free=True)
def _x0_orbit(alg: AlgebraDescriptor, rng: np.random.Generator) -> float:
    p, g = sample_plane_X(rng), sample_semigroup(rng, interior=True)
    return _flag(axb.in_X(axb.act_plane(p, g), interior_orbit=True))


@check("axb.x0.preimage", 1e-12, algebra_free=True)
def _x0_preimage(alg: AlgebraDescriptor, rng: np.random.Generator) -> float:
    q = sample_plane_X(rng)
    found = axb.orbit_preimage(q)
    if found is None:
        return 0.0 if not axb.in_X(q, interior_orbit=True) else math.inf
    p, g = found
    if not (axb.in_X(p) and axb.in_semigroup(g, interior=True)):
        return math.inf
    return _extended_gap(axb.act_plane(p, g), q)


ESCAPE_LEVELS = (10.0, 100.0)


@check("axb.escape", 0.0, algebra_free=True)
def _escape(alg: AlgebraDescriptor, rng: np.random.Generator) -> float:
    p = sample_plane(rng)
    ok = True
    for m in ESCAPE_LEVELS:
        theta, _ = axb.escape_threshold(m)
        for step in (1e-6, 1.0, 10.0):
            ok = ok and axb.escape_homotopy_logit(theta + step, p).x > axb.ExtendedReal.finite(m)
    s1, s2 = sorted(rng.uniform(0.0, 1.0, size=2))
    ok = ok and axb.escape_homotopy(s1, p).x <= axb.escape_homotopy(s2, p).x
    ok = ok and axb.escape_homotopy(0.99, p).x.value >= math.log(99.0) - 1e-12
    return _flag(ok)


@check("axb.contraction.boundary-law", 0.0, algebra_free=True)
def _contraction_boundary_law(alg: AlgebraDescriptor, rng: np.random.Generator) -> float:
    p = sample_plane_X(rng)
    xi, eta = axb.to_chart(p)
    _ambiguous(1.0 - xi, 0.0, 1e-9)
    _ambiguous(0.5 - eta, 0.0, 1e-9)
    t = float(rng.uniform(0.05, 1.0))
    inside = axb.in_X(p, interior_orbit=True)
    ok = axb.in_X(axb.orbit_contraction(t, p), interior_orbit=True) == inside
    collapsed = axb.orbit_contraction(0.0, p)
    ok = ok and collapsed == axb.PlanePoint.of(0.0, 1.0) and not axb.in_X(collapsed, interior_orbit=True)
    return _flag(ok)
