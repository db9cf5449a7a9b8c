"""Euclidean Jordan algebras in orthonormal coordinates and their fundamental operators."""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from enum import Enum
from functools import lru_cache

import numpy as np

from jordan_wh.errors import AlgebraMismatch

SQRT2 = math.sqrt(2.0)


class AlgebraKind(str, Enum):
    COMPONENTWISE = "rn"
    REAL_SYMMETRIC = "sym"
    SPIN_FACTOR = "spin"
    DIRECT_SUM = "sum"


@dataclass(frozen=True)
class AlgebraDescriptor:
    kind: AlgebraKind
    n: int = 0
    summands: tuple[AlgebraDescriptor, ...] = field(default=())

    def __post_init__(self) -> None:
        if self.kind is AlgebraKind.DIRECT_SUM:
            if len(self.summands) < 2:
                raise ValueError("a direct sum needs at least two summands")
        elif self.n < 1:
            raise ValueError(f"{self.kind.value} needs n >= 1, got {self.n}")
        elif self.kind is AlgebraKind.SPIN_FACTOR and self.n < 2:
            raise ValueError("a spin factor needs n >= 2")

    @staticmethod
    def componentwise(n: int) -> AlgebraDescriptor:
        return AlgebraDescriptor(AlgebraKind.COMPONENTWISE, n)

    @staticmethod
    def real_symmetric(n: int) -> AlgebraDescriptor:
        return AlgebraDescriptor(AlgebraKind.REAL_SYMMETRIC, n)

    @staticmethod
    def spin_factor(n: int) -> AlgebraDescriptor:
        return AlgebraDescriptor(AlgebraKind.SPIN_FACTOR, n)

    @staticmethod
    def direct_sum(*summands: AlgebraDescriptor) -> AlgebraDescriptor:
        return AlgebraDescriptor(AlgebraKind.DIRECT_SUM, 0, tuple(summands))

    @property
    def dim(self) -> int:
        if self.kind is AlgebraKind.REAL_SYMMETRIC:
            return self.n * (self.n + 1) // 2
        if self.kind is AlgebraKind.DIRECT_SUM:
            return sum(s.dim for s in self.summands)
        return self.n

    @property
    def rank(self) -> int:
        if self.kind is AlgebraKind.SPIN_FACTOR:
            return 2
        if self.kind is AlgebraKind.DIRECT_SUM:
            return sum(s.rank for s in self.summands)
        return self.n

    def blocks(self) -> list[tuple[int, AlgebraDescriptor]]:
        """Simple summands with their coordinate offsets, nested sums flattened."""
        if self.kind is not AlgebraKind.DIRECT_SUM:
            return [(0, self)]
        out: list[tuple[int, AlgebraDescriptor]] = []
        offset = 0
        for summand in self.summands:
            for inner_offset, block in summand.blocks():
                out.append((offset + inner_offset, block))
            offset += summand.dim
        return out

    def __str__(self) -> str:
        if self.kind is AlgebraKind.DIRECT_SUM:
            return "sum(" + ",".join(str(s) for s in self.summands) + ")"
        return f"{self.kind.value}:{self.n}"


@dataclass(frozen=True, eq=False)
class Element:
    algebra: AlgebraDescriptor
    coords: np.ndarray

    # numpy scalars on the left defer to __rmul__
    __array_ufunc__ = None

    def __post_init__(self) -> None:
        coords = np.array(self.coords, dtype=np.float64)
        if coords.shape != (self.algebra.dim,):
            raise ValueError(
                f"{self.algebra} expects {self.algebra.dim} coordinates, got shape {coords.shape}"
            )
        if not np.all(np.isfinite(coords)):
            raise ValueError("element coordinates must be finite")
        coords.setflags(write=False)
        object.__setattr__(self, "coords", coords)

    def _coerce(self, other: Element) -> np.ndarray:
        if other.algebra != self.algebra:
            raise AlgebraMismatch(f"{self.algebra} vs {other.algebra}")
        return other.coords

    def __add__(self, other: Element) -> Element:
        return Element(self.algebra, self.coords + self._coerce(other))

    def __sub__(self, other: Element) -> Element:
        return Element(self.algebra, self.coords - self._coerce(other))

    def __neg__(self) -> Element:
        return Element(self.algebra, -self.coords)

    def __mul__(self, scalar: float) -> Element:
        return Element(self.algebra, float(scalar) * self.coords)

    __rmul__ = __mul__

    def __truediv__(self, scalar: float) -> Element:
        return Element(self.algebra, self.coords / float(scalar))

    def norm(self) -> float:
        return float(np.linalg.norm(self.coords))

    def inner(self, other: Element) -> float:
        return float(self.coords @ self._coerce(other))

    def distance(self, other: Element) -> float:
        return float(np.linalg.norm(self.coords - self._coerce(other)))

    def __repr__(self) -> str:
        return f"Element({self.algebra}, {np.array2string(self.coords, precision=6)})"


@dataclass(frozen=True, eq=False)
class LinearOperator:
    algebra: AlgebraDescriptor
    matrix: np.ndarray

    def __post_init__(self) -> None:
        matrix = np.array(self.matrix, dtype=np.float64)
        dim = self.algebra.dim
        if matrix.shape != (dim, dim):
            raise ValueError(f"{self.algebra} expects a {dim}x{dim} matrix, got {matrix.shape}")
        matrix.setflags(write=False)
        object.__setattr__(self, "matrix", matrix)

    __array_ufunc__ = None

    def apply(self, x: Element) -> Element:
        if x.algebra != self.algebra:
            raise AlgebraMismatch(f"{self.algebra} vs {x.algebra}")
        return Element(self.algebra, self.matrix @ x.coords)

    def __call__(self, x: Element) -> Element:
        return self.apply(x)

    def __matmul__(self, other: LinearOperator) -> LinearOperator:
        return LinearOperator(self.algebra, self.matrix @ other.matrix)

    def __add__(self, other: LinearOperator) -> LinearOperator:
        return LinearOperator(self.algebra, self.matrix + other.matrix)

    def __sub__(self, other: LinearOperator) -> LinearOperator:
        return LinearOperator(self.algebra, self.matrix - other.matrix)

    def __mul__(self, scalar: float) -> LinearOperator:
        return LinearOperator(self.algebra, float(scalar) * self.matrix)

    __rmul__ = __mul__

    def norm(self) -> float:
        """Operator (spectral) norm."""
        if self.matrix.size == 0:
            return 0.0
        return float(np.linalg.norm(self.matrix, ord=2))

    def asymmetry(self) -> float:
        return float(np.max(np.abs(self.matrix - self.matrix.T), initial=0.0))

    @staticmethod
    def identity(algebra: AlgebraDescriptor) -> LinearOperator:
        return LinearOperator(algebra, np.eye(algebra.dim))


# RealSymmetric coordinate <-> matrix plumbing


@lru_cache(maxsize=None)
def _sym_layout(n: int) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    # E_ii and (E_ij + E_ji) / sqrt(2) for i < j, row-major upper triangle
    rows, cols = np.triu_indices(n)
    scale = np.where(rows == cols, 1.0, 1.0 / SQRT2)
    return rows, cols, scale


@lru_cache(maxsize=None)
def _sym_basis(n: int) -> np.ndarray:
    """Stack of the orthonormal basis matrices, shape (dim, n, n)."""
    rows, cols, scale = _sym_layout(n)
    basis = np.zeros((rows.size, n, n))
    for k, (i, j, s) in enumerate(zip(rows, cols, scale)):
        basis[k, i, j] = s
        basis[k, j, i] = s
    basis.setflags(write=False)
    return basis


def sym_to_matrix(n: int, coords: np.ndarray) -> np.ndarray:
    rows, cols, scale = _sym_layout(n)
    upper = np.zeros((n, n))
    upper[rows, cols] = coords * scale
    return upper + upper.T - np.diag(np.diag(upper))


def sym_from_matrix(n: int, matrix: np.ndarray) -> np.ndarray:
    rows, cols, scale = _sym_layout(n)
    sym = (matrix + matrix.T) / 2.0
    return sym[rows, cols] / scale


def _block_product(block: AlgebraDescriptor, a: np.ndarray, b: np.ndarray) -> np.ndarray:
    if block.kind is AlgebraKind.COMPONENTWISE:
        return a * b
    if block.kind is AlgebraKind.SPIN_FACTOR:
        head = a[0] * b[0] + a[1:] @ b[1:]
        return np.concatenate(([head], a[0] * b[1:] + b[0] * a[1:]))
    x = sym_to_matrix(block.n, a)
    y = sym_to_matrix(block.n, b)
    return sym_from_matrix(block.n, (x @ y + y @ x) / 2.0)


def _block_l_matrix(block: AlgebraDescriptor, a: np.ndarray) -> np.ndarray:
    if block.kind is AlgebraKind.COMPONENTWISE:
        return np.diag(a)
    if block.kind is AlgebraKind.SPIN_FACTOR:
        m = a[0] * np.eye(block.n)
        m[0, 1:] = a[1:]
        m[1:, 0] = a[1:]
        return m
    flat = _sym_basis(block.n).reshape(block.dim, -1)
    x = sym_to_matrix(block.n, a)
    eye = np.eye(block.n)
    # row-major vec(XB + BX) = (X (x) I + I (x) X) vec(B)
    return flat @ ((np.kron(x, eye) + np.kron(eye, x)) / 2.0) @ flat.T


def _check_same(*elements: Element) -> AlgebraDescriptor:
    algebra = elements[0].algebra
    for other in elements[1:]:
        if other.algebra != algebra:
            raise AlgebraMismatch(f"{algebra} vs {other.algebra}")
    return algebra


def identity(alg: AlgebraDescriptor) -> Element:
    coords = np.zeros(alg.dim)
    for offset, block in alg.blocks():
        if block.kind is AlgebraKind.COMPONENTWISE:
            coords[offset : offset + block.n] = 1.0
        elif block.kind is AlgebraKind.SPIN_FACTOR:
            coords[offset] = 1.0
        else:
            coords[offset : offset + block.dim] = sym_from_matrix(block.n, np.eye(block.n))
    return Element(alg, coords)


def zero(alg: AlgebraDescriptor) -> Element:
    return Element(alg, np.zeros(alg.dim))


def basis_element(alg: AlgebraDescriptor, k: int) -> Element:
    coords = np.zeros(alg.dim)
    coords[k] = 1.0
    return Element(alg, coords)


def jordan_product(x: Element, y: Element) -> Element:
    alg = _check_same(x, y)
    out = np.empty(alg.dim)
    for offset, block in alg.blocks():
        sl = slice(offset, offset + block.dim)
        out[sl] = _block_product(block, x.coords[sl], y.coords[sl])
    return Element(alg, out)


def square(x: Element) -> Element:
    return jordan_product(x, x)


def l_operator(x: Element) -> LinearOperator:
    alg = x.algebra
    matrix = np.zeros((alg.dim, alg.dim))
    for offset, block in alg.blocks():
        sl = slice(offset, offset + block.dim)
        matrix[sl, sl] = _block_l_matrix(block, x.coords[sl])
    return LinearOperator(alg, matrix)


def quad_bilinear(x: Element, y: Element) -> LinearOperator:
    """P(x, y) = L(x)L(y) + L(y)L(x) - L(xy)."""
    _check_same(x, y)
    lx = l_operator(x).matrix
    ly = l_operator(y).matrix
    lxy = l_operator(jordan_product(x, y)).matrix
    return LinearOperator(x.algebra, lx @ ly + ly @ lx - lxy)


def quad(x: Element) -> LinearOperator:
    """P(x) = 2L(x)^2 - L(x^2)."""
    lx = l_operator(x).matrix
    return LinearOperator(x.algebra, 2.0 * lx @ lx - l_operator(square(x)).matrix)


def mutation_product(a: Element, b: Element, u: Element) -> Element:
    """a *_u b = P(a, b)u, the product of the mutation V_u."""
    _check_same(a, b, u)
    return quad_bilinear(a, b).apply(u)


def mutation_l_operator(x: Element, u: Element) -> LinearOperator:
    alg = _check_same(x, u)
    columns = [mutation_product(x, basis_element(alg, k), u).coords for k in range(alg.dim)]
    return LinearOperator(alg, np.column_stack(columns))


def mutation_quad(x: Element, u: Element) -> LinearOperator:
    """Quadratic representation of V_u; equals P(x)P(u)."""
    lx = mutation_l_operator(x, u).matrix
    lxx = mutation_l_operator(mutation_product(x, x, u), u).matrix
    return LinearOperator(x.algebra, 2.0 * lx @ lx - lxx)
