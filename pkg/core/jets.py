"""
Truncated second-order jets for forward-mode differentiation.

A Jet carries the value of an array-valued function together with its
gradient and Hessian with respect to a fixed set of coordinates. Derivative
axes are always trailing: for a value of shape S the gradient has shape
S + (dim,) and the Hessian S + (dim, dim).

Code that builds metric components is written once against the operators
below and runs unchanged on plain numpy arrays (numeric evaluation) and on
Jets (exact first and second derivatives).
"""

from dataclasses import dataclass
from typing import Sequence, Union

import numpy as np


ArrayLike = Union["Jet", np.ndarray, float]


@dataclass(frozen=True, eq=False)
class Jet:
    """Value, gradient and Hessian of an array-valued function at one point."""

    val: np.ndarray
    d1: np.ndarray
    d2: np.ndarray

    # Let numpy hand binary operators back to Jet instead of broadcasting
    # over an object array.
    __array_ufunc__ = None

    def __post_init__(self):
        object.__setattr__(self, "val", np.asarray(self.val, dtype=float))
        object.__setattr__(self, "d1", np.asarray(self.d1, dtype=float))
        object.__setattr__(self, "d2", np.asarray(self.d2, dtype=float))

    @classmethod
    def variables(cls, x) -> "Jet":
        """Seed the coordinate functions x_1..x_dim at the point x."""
        x = np.asarray(x, dtype=float)
        if x.ndim != 1:
            raise ValueError(f"coordinates must be a vector, got shape {x.shape}")
        dim = x.shape[0]
        return cls(x.copy(), np.eye(dim), np.zeros((dim, dim, dim)))

    @classmethod
    def constant(cls, value, dim: int) -> "Jet":
        value = np.asarray(value, dtype=float)
        return cls(value, np.zeros(value.shape + (dim,)), np.zeros(value.shape + (dim, dim)))

    @property
    def dim(self) -> int:
        return self.d1.shape[-1]

    @property
    def shape(self):
        return self.val.shape

    @property
    def ndim(self) -> int:
        return self.val.ndim

    def _lift(self, other) -> "Jet":
        if isinstance(other, Jet):
            if other.dim != self.dim:
                raise ValueError(f"jet dimensions differ: {self.dim} vs {other.dim}")
            return other
        return Jet.constant(other, self.dim)

    # -- arithmetic -------------------------------------------------------

    def __add__(self, other) -> "Jet":
        o = self._lift(other)
        val = self.val + o.val
        return Jet(val, self.d1 + o.d1, self.d2 + o.d2)

    __radd__ = __add__

    def __neg__(self) -> "Jet":
        return Jet(-self.val, -self.d1, -self.d2)

    def __sub__(self, other) -> "Jet":
        return self + (-self._lift(other))

    def __rsub__(self, other) -> "Jet":
        return self._lift(other) + (-self)

    def __mul__(self, other) -> "Jet":
        if not isinstance(other, Jet):
            other = np.asarray(other, dtype=float)
            return Jet(
                self.val * other,
                self.d1 * other[..., None],
                self.d2 * other[..., None, None],
            )
        o = self._lift(other)
        a = self.val[..., None]
        b = o.val[..., None]
        d1 = self.d1 * b + a * o.d1
        cross = self.d1[..., :, None] * o.d1[..., None, :]
        d2 = (
            self.d2 * b[..., None]
            + a[..., None] * o.d2
            + cross
            + np.swapaxes(cross, -1, -2)
        )
        return Jet(self.val * o.val, d1, d2)

    __rmul__ = __mul__

    def _compose(self, f0, f1, f2) -> "Jet":
        """Apply a scalar function elementwise given its value and first two derivatives."""
        f0, f1, f2 = np.asarray(f0), np.asarray(f1), np.asarray(f2)
        d1 = f1[..., None] * self.d1
        d2 = (
            f1[..., None, None] * self.d2
            + f2[..., None, None] * self.d1[..., :, None] * self.d1[..., None, :]
        )
        return Jet(f0, d1, d2)

    def reciprocal(self) -> "Jet":
        v = self.val
        if np.any(v == 0.0):
            raise ZeroDivisionError("jet division by a zero value")
        return self._compose(1.0 / v, -1.0 / v**2, 2.0 / v**3)

    def __truediv__(self, other) -> "Jet":
        if isinstance(other, Jet):
            return self * other.reciprocal()
        return self * (1.0 / np.asarray(other, dtype=float))

    def __rtruediv__(self, other) -> "Jet":
        return self.reciprocal() * other

    def __pow__(self, exponent) -> "Jet":
        if isinstance(exponent, Jet):
            raise TypeError("jet exponents are not supported")
        p = float(exponent)
        if p == 0.0:
            return Jet.constant(np.ones_like(self.val), self.dim)
        v = self.val
        return self._compose(v**p, p * v ** (p - 1.0), p * (p - 1.0) * v ** (p - 2.0))

    def sqrt(self) -> "Jet":
        return self**0.5

    # -- shape manipulation -----------------------------------------------

    def __getitem__(self, idx) -> "Jet":
        # Only basic indexing over value axes; Ellipsis/None would shift the
        # trailing derivative axes.
        return Jet(self.val[idx], self.d1[idx], self.d2[idx])

    @property
    def T(self) -> "Jet":
        if self.ndim != 2:
            raise ValueError("transpose is defined for matrix-valued jets")
        return Jet(self.val.T, self.d1.transpose(1, 0, 2), self.d2.transpose(1, 0, 2, 3))

    def sum(self, axis=None) -> "Jet":
        if axis is None:
            axis = tuple(range(self.ndim))
        elif isinstance(axis, int):
            axis = (axis % self.ndim,)
        else:
            axis = tuple(a % self.ndim for a in axis)
        return Jet(self.val.sum(axis=axis), self.d1.sum(axis=axis), self.d2.sum(axis=axis))

    @staticmethod
    def concatenate(parts: Sequence["Jet"], axis: int = 0) -> "Jet":
        jets = [p for p in parts if isinstance(p, Jet)]
        if not jets:
            raise ValueError("concatenate needs at least one jet")
        dim = jets[0].dim
        lifted = [p if isinstance(p, Jet) else Jet.constant(p, dim) for p in parts]
        ax = axis % lifted[0].ndim
        return Jet(
            np.concatenate([p.val for p in lifted], axis=ax),
            np.concatenate([p.d1 for p in lifted], axis=ax),
            np.concatenate([p.d2 for p in lifted], axis=ax),
        )

    @staticmethod
    def block(rows: Sequence[Sequence["Jet"]]) -> "Jet":
        """Assemble a matrix-valued jet from a 2-D grid of matrix-valued blocks."""
        dim = next(p.dim for row in rows for p in row if isinstance(p, Jet))
        lifted = [[p if isinstance(p, Jet) else Jet.constant(p, dim) for p in row] for row in rows]
        return Jet.concatenate([Jet.concatenate(row, axis=1) for row in lifted], axis=0)


def primal(a: ArrayLike) -> np.ndarray:
    """Value part of a jet, or the array itself."""
    if isinstance(a, Jet):
        return a.val
    return np.asarray(a, dtype=float)


def contract(subscripts: str, a: ArrayLike, b: ArrayLike) -> ArrayLike:
    """
    Bilinear einsum over jets and plain arrays.

    Args:
        subscripts: explicit einsum string with two operands, lowercase
                    labels only (e.g. "ij,jk->ik")
        a, b: jets or arrays

    Returns:
        A Jet when either operand is a Jet, otherwise an ndarray.
    """
    if not isinstance(a, Jet) and not isinstance(b, Jet):
        return np.einsum(subscripts, a, b)
    if "->" not in subscripts:
        raise ValueError("contract needs an explicit output ('->')")
    inputs, out = subscripts.split("->")
    sa, sb = inputs.split(",")

    if not isinstance(b, Jet):
        b = np.asarray(b, dtype=float)
        return Jet(
            np.einsum(subscripts, a.val, b),
            np.einsum(f"{sa}Y,{sb}->{out}Y", a.d1, b),
            np.einsum(f"{sa}YZ,{sb}->{out}YZ", a.d2, b),
        )
    if not isinstance(a, Jet):
        a = np.asarray(a, dtype=float)
        return Jet(
            np.einsum(subscripts, a, b.val),
            np.einsum(f"{sa},{sb}Y->{out}Y", a, b.d1),
            np.einsum(f"{sa},{sb}YZ->{out}YZ", a, b.d2),
        )
    if a.dim != b.dim:
        raise ValueError(f"jet dimensions differ: {a.dim} vs {b.dim}")
    val = np.einsum(subscripts, a.val, b.val)
    d1 = np.einsum(f"{sa}Y,{sb}->{out}Y", a.d1, b.val) + np.einsum(
        f"{sa},{sb}Y->{out}Y", a.val, b.d1
    )
    cross = np.einsum(f"{sa}Y,{sb}Z->{out}YZ", a.d1, b.d1)
    d2 = (
        np.einsum(f"{sa}YZ,{sb}->{out}YZ", a.d2, b.val)
        + np.einsum(f"{sa},{sb}YZ->{out}YZ", a.val, b.d2)
        + cross
        + np.swapaxes(cross, -1, -2)
    )
    return Jet(val, d1, d2)


def concatenate(parts: Sequence[ArrayLike], axis: int = 0) -> ArrayLike:
    """Concatenate jets or arrays along a value axis."""
    if any(isinstance(p, Jet) for p in parts):
        return Jet.concatenate(parts, axis=axis)
    return np.concatenate([np.asarray(p, dtype=float) for p in parts], axis=axis)


def block(rows: Sequence[Sequence[ArrayLike]]) -> ArrayLike:
    """np.block for 2-D grids of jets or arrays."""
    if any(isinstance(p, Jet) for row in rows for p in row):
        return Jet.block(rows)
    return np.block([[np.asarray(p, dtype=float) for p in row] for row in rows])


def transpose(a: ArrayLike) -> ArrayLike:
    if isinstance(a, Jet):
        return a.T
    return np.asarray(a).T
