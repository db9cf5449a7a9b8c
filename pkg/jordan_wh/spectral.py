"""Spectral theorem, functional calculus and Peirce decomposition."""
from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Callable

import numpy as np

from jordan_wh.algebra import (
    AlgebraDescriptor,
    AlgebraKind,
    Element,
    LinearOperator,
    jordan_product,
    l_operator,
    quad,
    square,
    sym_from_matrix,
    sym_to_matrix,
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

EPS_GROUP = 1e-8
EPS_IDEMPOTENT = 1e-8
EPS_INV = 1e-10
MAX_SWEEPS = 64
DROP_TOL = 1e-10
_JACOBI_TOL = 1e-14
_IDEMPOTENT_RETRIES = 100


@dataclass(frozen=True)
class SpectralDecomposition:
    eigenvalues: tuple[float, ...]
    idempotents: tuple[Element, ...]

    @property
    def algebra(self) -> AlgebraDescriptor:
        return self.idempotents[0].algebra

    def apply(self, f: Callable[[float], float]) -> Element:
        coords = np.zeros(self.algebra.dim)
        for lam, c in zip(self.eigenvalues, self.idempotents):
            try:
                value = float(f(lam))
            except (ZeroDivisionError, ValueError, OverflowError) as exc:
                raise DomainError(f"function undefined at eigenvalue {lam!r}: {exc}") from exc
            if not math.isfinite(value):
                raise DomainError(f"function not finite at eigenvalue {lam!r}")
            coords += value * c.coords
        return Element(self.algebra, coords)

    def reconstruct(self) -> Element:
        return self.apply(lambda lam: lam)


@dataclass(frozen=True)
class PeirceDecomposition:
    e: Element
    p0: LinearOperator
    p_half: LinearOperator
    p1: LinearOperator

    def projector(self, eigenvalue: float) -> LinearOperator:
        if eigenvalue == 0.0:
            return self.p0
        if eigenvalue == 0.5:
            return self.p_half
        if eigenvalue == 1.0:
            return self.p1
        raise ValueError(f"no Peirce space for eigenvalue {eigenvalue}")


@lru_cache(maxsize=None)
def _round_robin(n: int) -> tuple[tuple[np.ndarray, np.ndarray], ...]:
    """Disjoint (p, q) pairings per round; one full cycle covers every pair once."""
    players = list(range(n)) + ([-1] if n % 2 else [])
    m = len(players)
    rounds = []
    for _ in range(m - 1):
        pairs = sorted(
            (min(p, q), max(p, q))
            for p, q in ((players[i], players[m - 1 - i]) for i in range(m // 2))
            if p >= 0 and q >= 0
        )
        rounds.append((np.array([p for p, _ in pairs]), np.array([q for _, q in pairs])))
        players = [players[0], players[-1], *players[1:-1]]
    return tuple(rounds)


def _rotate_round(
    a: np.ndarray, v: np.ndarray, p: np.ndarray, q: np.ndarray
) -> tuple[np.ndarray, np.ndarray]:
    apq = a[p, q]
    active = apq != 0.0
    if not active.any():
        return a, v
    theta = (a[q, q] - a[p, p]) / (2.0 * np.where(active, apq, 1.0))
    sign = np.where(theta >= 0.0, 1.0, -1.0)
    t = np.where(active, sign / (np.abs(theta) + np.hypot(theta, 1.0)), 0.0)
    c = 1.0 / np.sqrt(t * t + 1.0)
    s = t * c
    j = np.eye(a.shape[0])
    j[p, p] = c
    j[q, q] = c
    j[p, q] = s
    j[q, p] = -s
    a = j.T @ a @ j
    a[p, q] = 0.0
    a[q, p] = 0.0
    return a, v @ j


def _off_diagonal(a: np.ndarray) -> float:
    return float(np.sqrt(np.sum(np.triu(a, 1) ** 2)))


def jacobi_eigh(matrix: np.ndarray, max_sweeps: int = MAX_SWEEPS) -> tuple[np.ndarray, np.ndarray]:
    """Cyclic Jacobi eigensolver for a symmetric matrix, in round-robin order.

    Each sweep visits every off-diagonal pair once; the disjoint rotations of a
    round are applied together. Returns (eigenvalues, vectors) with vectors as
    columns, unsorted.
    """
    a = np.array(matrix, dtype=np.float64)
    n = a.shape[0]
    v = np.eye(n)
    scale = float(np.linalg.norm(a))
    if n < 2 or scale == 0.0:
        return np.diag(a).copy(), v

    for _ in range(max_sweeps):
        if _off_diagonal(a) <= _JACOBI_TOL * scale:
            return np.diag(a).copy(), v
        for p, q in _round_robin(n):
            a, v = _rotate_round(a, v, p, q)

    if _off_diagonal(a) <= _JACOBI_TOL * scale:
        return np.diag(a).copy(), v
    raise ConvergenceFailure(f"Jacobi did not converge in {max_sweeps} sweeps")


_SPLITTER = 134217729.0  # 2**27 + 1


def _two_product(a: float, b: float) -> tuple[float, float]:
    """a * b as an unevaluated sum hi + lo, exact barring overflow."""
    hi = a * b
    c = _SPLITTER * a
    a_hi = c - (c - a)
    a_lo = a - a_hi
    c = _SPLITTER * b
    b_hi = c - (c - b)
    b_lo = b - b_hi
    lo = ((a_hi * b_hi - hi) + a_hi * b_lo + a_lo * b_hi) + a_lo * b_lo
    return hi, lo


def _spin_determinant(s: float, u: np.ndarray) -> float:
    """s^2 - |u|^2, correctly rounded from exact partial products."""
    terms = list(_two_product(s, s))
    for ui in u:
        hi, lo = _two_product(float(ui), float(ui))
        terms.extend((-hi, -lo))
    return math.fsum(terms)


def _block_pieces(block: AlgebraDescriptor, a: np.ndarray) -> list[tuple[float, np.ndarray]]:
    if block.kind is AlgebraKind.COMPONENTWISE:
        pieces = []
        for i, lam in enumerate(a):
            c = np.zeros(block.dim)
            c[i] = 1.0
            pieces.append((float(lam), c))
        return pieces
    if block.kind is AlgebraKind.SPIN_FACTOR:
        s, u = float(a[0]), a[1:]
        r = float(np.linalg.norm(u))
        if r == 0.0:
            unit = np.zeros(block.dim)
            unit[0] = 1.0
            return [(s, unit)]
        plus = np.concatenate(([0.5], u / (2.0 * r)))
        minus = np.concatenate(([0.5], -u / (2.0 * r)))
        # the smaller-magnitude root comes from det = (s - r)(s + r)
        det = _spin_determinant(s, u)
        if s >= 0.0:
            big = s + r
            small = det / big
        else:
            small = s - r
            big = det / small
        return [(small, minus), (big, plus)]
    eigenvalues, vectors = jacobi_eigh(sym_to_matrix(block.n, a))
    return [
        (float(lam), sym_from_matrix(block.n, np.outer(vectors[:, k], vectors[:, k])))
        for k, lam in enumerate(eigenvalues)
    ]


def _same_eigenvalue(lam: float, mu: float) -> bool:
    return abs(lam - mu) <= EPS_GROUP * max(1.0, abs(lam), abs(mu))


def spectral_decompose(x: Element) -> SpectralDecomposition:
    return _decompose(x.algebra, x.coords.tobytes())


@lru_cache(maxsize=4096)
def _decompose(alg: AlgebraDescriptor, raw: bytes) -> SpectralDecomposition:
    coords = np.frombuffer(raw, dtype=np.float64)
    pieces: list[tuple[float, np.ndarray]] = []
    for offset, block in alg.blocks():
        sl = slice(offset, offset + block.dim)
        for lam, local in _block_pieces(block, coords[sl]):
            full = np.zeros(alg.dim)
            full[sl] = local
            pieces.append((lam, full))
    pieces.sort(key=lambda piece: piece[0])

    # each group is anchored at its smallest member
    groups: list[list[tuple[float, np.ndarray]]] = []
    for piece in pieces:
        if groups and _same_eigenvalue(piece[0], groups[-1][0][0]):
            groups[-1].append(piece)
        else:
            groups.append([piece])

    eigenvalues = tuple(float(np.mean([lam for lam, _ in g])) for g in groups)
    idempotents = tuple(Element(alg, np.sum([c for _, c in g], axis=0)) for g in groups)
    return SpectralDecomposition(eigenvalues, idempotents)


def spectrum(x: Element) -> tuple[float, ...]:
    return spectral_decompose(x).eigenvalues


def apply_scalar(x: Element, f: Callable[[float], float]) -> Element:
    return spectral_decompose(x).apply(f)


def spectrum_contains(x: Element, lam0: float) -> bool:
    tol = EPS_GROUP * max(1.0, x.norm())
    return any(abs(lam - lam0) <= tol for lam in spectrum(x))


def idempotent_defect(e: Element) -> float:
    return square(e).distance(e)


def require_idempotent(e: Element) -> None:
    defect = idempotent_defect(e)
    if defect > EPS_IDEMPOTENT * max(1.0, e.norm()):
        raise NotIdempotent(f"|e^2 - e| = {defect:.3e}")


def peirce(e: Element) -> PeirceDecomposition:
    require_idempotent(e)
    alg = e.algebra
    eigenvalues, vectors = jacobi_eigh(l_operator(e).matrix)
    targets = np.array([0.0, 0.5, 1.0])
    nearest = np.argmin(np.abs(eigenvalues[:, None] - targets[None, :]), axis=1)
    projectors = []
    for k in range(3):
        cols = vectors[:, nearest == k]
        projectors.append(LinearOperator(alg, cols @ cols.T))
    return PeirceDecomposition(e, projectors[0], projectors[1], projectors[2])


def range_basis(matrix: np.ndarray, drop_tol: float = DROP_TOL) -> np.ndarray:
    """Orthonormal basis of the column space, by column-pivoted Gram-Schmidt."""
    cols = np.array(matrix, dtype=np.float64)
    n = cols.shape[0]
    reference = max(1.0, float(np.max(np.linalg.norm(cols, axis=0), initial=0.0)))
    basis: list[np.ndarray] = []
    while len(basis) < n:
        norms = np.linalg.norm(cols, axis=0)
        k = int(np.argmax(norms))
        if norms[k] <= drop_tol * reference:
            break
        q = cols[:, k] / norms[k]
        # second pass keeps q orthogonal to earlier vectors
        for b in basis:
            q = q - (b @ q) * b
        q = q / np.linalg.norm(q)
        basis.append(q)
        cols = cols - np.outer(q, q @ cols)
    if not basis:
        return np.zeros((n, 0))
    return np.column_stack(basis)


def _require_in_subalgebra(x: Element, e: Element) -> LinearOperator:
    require_idempotent(e)
    pe = quad(e)
    gap = pe.apply(x).distance(x)
    if gap > EPS_IDEMPOTENT * max(1.0, x.norm()):
        raise NotInSubalgebra(f"|P(e)x - x| = {gap:.3e}")
    return pe


def subalgebra_quad(x: Element, e: Element) -> LinearOperator:
    """Quadratic representation of V_1(e): P_e(x) = P(e)P(x)P(e)."""
    pe = quad(e)
    return pe @ quad(x) @ pe


def subalgebra_inverse(x: Element, e: Element, method: str = "spectral") -> Element:
    """Inverse of x inside the subalgebra V_1(e), whose unit is e.

    method="spectral" inverts the spectral frame of x lying in V_1(e);
    method="restricted" solves P_e(x) w = x on an orthonormal basis of V_1(e).
    """
    pe = _require_in_subalgebra(x, e)
    if method not in ("spectral", "restricted"):
        raise ValueError(f"unknown method {method!r}")
    alg = x.algebra
    decomposition = spectral_decompose(x)
    tol = EPS_INV * max(1.0, x.norm())
    coords = np.zeros(alg.dim)
    for lam, c in zip(decomposition.eigenvalues, decomposition.idempotents):
        # <c, e> is the primitive mass of c inside V_1(e); frame pieces of 1 - e have none
        mass = c.inner(e)
        if mass < 0.25:
            continue
        if abs(lam) <= tol or c.inner(c) - mass > 0.25:
            raise SingularInSubalgebra(f"eigenvalue {lam!r} inside V_1(e)")
        coords += c.coords / lam

    if method == "spectral":
        return Element(alg, coords)
    basis = range_basis(pe.matrix)
    if basis.shape[1] == 0:
        return zero(alg)
    restricted = basis.T @ quad(x).matrix @ basis
    if np.linalg.cond(restricted) > 1.0 / EPS_INV**2:
        raise SingularInSubalgebra("restricted quadratic map is singular")
    return Element(alg, basis @ np.linalg.solve(restricted, basis.T @ x.coords))


def random_idempotent(
    alg: AlgebraDescriptor,
    rng: np.random.Generator,
    allow_trivial: bool = True,
) -> Element:
    """Sum of a uniformly chosen subset of the spectral frame of a random element."""
    for _ in range(_IDEMPOTENT_RETRIES):
        decomposition = spectral_decompose(Element(alg, rng.standard_normal(alg.dim)))
        chosen = rng.integers(0, 2, size=len(decomposition.idempotents)).astype(bool)
        if not allow_trivial and (chosen.all() or not chosen.any()):
            continue
        coords = np.zeros(alg.dim)
        for keep, c in zip(chosen, decomposition.idempotents):
            if keep:
                coords += c.coords
        return Element(alg, coords)
    raise RetryExhausted(f"no nontrivial idempotent found in {alg} after {_IDEMPOTENT_RETRIES} draws")


def orthogonality_defect(decomposition: SpectralDecomposition) -> float:
    worst = 0.0
    cs = decomposition.idempotents
    for i in range(len(cs)):
        for j in range(i + 1, len(cs)):
            worst = max(worst, jordan_product(cs[i], cs[j]).norm())
    return worst
