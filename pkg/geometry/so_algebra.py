"""
Skew-symmetric endomorphisms of an orthonormal frame and the so(n) basis
used for the fibers of the Atiyah bundle.
"""

from dataclasses import dataclass
from typing import List, Tuple

import numpy as np

from ..core.errors import InvalidParameterError

SKEW_TOLERANCE = 1e-12


@dataclass(frozen=True, eq=False)
class SkewEndomorphism:
    """
    A skew-symmetric n x n matrix, expressed in an orthonormal frame.

    The matrix is antisymmetrised on construction, so antisymmetry is exact;
    inputs that are not skew up to rounding are rejected.
    """

    matrix: np.ndarray

    def __post_init__(self):
        m = np.asarray(self.matrix, dtype=float)
        if m.ndim != 2 or m.shape[0] != m.shape[1]:
            raise InvalidParameterError(f"expected a square matrix, got shape {m.shape}")
        scale = max(1.0, float(np.max(np.abs(m)))) if m.size else 1.0
        if np.max(np.abs(m + m.T), initial=0.0) > SKEW_TOLERANCE * scale:
            raise InvalidParameterError("matrix is not skew-symmetric")
        object.__setattr__(self, "matrix", 0.5 * (m - m.T))

    @classmethod
    def zero(cls, n: int) -> "SkewEndomorphism":
        return cls(np.zeros((n, n)))

    @property
    def n(self) -> int:
        return self.matrix.shape[0]

    def apply(self, w) -> np.ndarray:
        return self.matrix @ np.asarray(w, dtype=float)

    def norm_squared(self, k: float) -> float:
        """|F|^2 = -k tr(F^2), the Atiyah fiber norm with parameter k."""
        return float(-k * np.trace(self.matrix @ self.matrix))

    def commutator(self, other: "SkewEndomorphism") -> "SkewEndomorphism":
        a, b = self.matrix, other.matrix
        return SkewEndomorphism(a @ b - b @ a)

    def __add__(self, other: "SkewEndomorphism") -> "SkewEndomorphism":
        return SkewEndomorphism(self.matrix + other.matrix)

    def __sub__(self, other: "SkewEndomorphism") -> "SkewEndomorphism":
        return SkewEndomorphism(self.matrix - other.matrix)

    def __mul__(self, scalar: float) -> "SkewEndomorphism":
        return SkewEndomorphism(float(scalar) * self.matrix)

    __rmul__ = __mul__

    def __neg__(self) -> "SkewEndomorphism":
        return SkewEndomorphism(-self.matrix)


def wedge(u, v) -> SkewEndomorphism:
    """(u ^ v)(w) = <v, w> u - <u, w> v, i.e. the matrix u v^T - v u^T."""
    u = np.asarray(u, dtype=float)
    v = np.asarray(v, dtype=float)
    if u.shape != v.shape or u.ndim != 1:
        raise InvalidParameterError(f"wedge needs two vectors of equal length, got {u.shape} and {v.shape}")
    return SkewEndomorphism(np.outer(u, v) - np.outer(v, u))


def so_pairs(n: int) -> List[Tuple[int, int]]:
    """Index pairs (a, b), a < b, in lexicographic order."""
    return [(a, b) for a in range(n) for b in range(a + 1, n)]


def so_coordinates(F: SkewEndomorphism, k: float) -> np.ndarray:
    """
    Coordinates of F in the basis (2k)^{-1/2} e_a ^ e_b, a < b.

    The basis is orthonormal for -k tr(F G), so the squared coordinate norm
    equals F.norm_squared(k).
    """
    scale = np.sqrt(2.0 * k)
    return np.array([scale * F.matrix[a, b] for a, b in so_pairs(F.n)])


def so_matrix(coords, n: int, k: float) -> SkewEndomorphism:
    """Inverse of so_coordinates."""
    coords = np.asarray(coords, dtype=float)
    pairs = so_pairs(n)
    if coords.shape != (len(pairs),):
        raise InvalidParameterError(f"expected {len(pairs)} so({n}) coordinates, got shape {coords.shape}")
    m = np.zeros((n, n))
    scale = 1.0 / np.sqrt(2.0 * k)
    for value, (a, b) in zip(coords, pairs):
        m[a, b] = scale * value
        m[b, a] = -scale * value
    return SkewEndomorphism(m)


def so_basis(n: int, k: float) -> List[SkewEndomorphism]:
    """The frame (2k)^{-1/2} e_a ^ e_b in lexicographic order."""
    eye = np.eye(n)
    scale = 1.0 / np.sqrt(2.0 * k)
    return [wedge(eye[a], eye[b]) * scale for a, b in so_pairs(n)]
