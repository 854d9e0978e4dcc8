"""Vectorised forward-mode jets (dual numbers of first and second order).

A :class:`Jet` carries an array of values together with their gradient with
respect to ``n`` seeded variables and, at second order, their Hessian. The
derivative axes always trail the value axes: ``grad.shape == val.shape + (n,)``
and ``hess.shape == val.shape + (n, n)``. All operations broadcast over the
value axes exactly like numpy does.

The module-level helpers (:func:`sin`, :func:`stack`, :func:`matvec`, ...)
accept plain arrays as well, so kinematic code written against them runs
unchanged with or without derivatives.
"""

from typing import Iterable, Optional, Sequence, Union

import numpy as np

ArrayLike = Union[np.ndarray, float]


class Jet:
    """Value, gradient and optional Hessian of an array-valued expression."""

    __slots__ = ("val", "grad", "hess")
    # Make numpy hand binary operators back to Jet (ndarray * Jet -> Jet.__rmul__).
    __array_ufunc__ = None

    def __init__(self, val, grad, hess=None):
        self.val = np.asarray(val, dtype=float)
        self.grad = np.asarray(grad, dtype=float)
        self.hess = None if hess is None else np.asarray(hess, dtype=float)

    # -- construction -----------------------------------------------------

    @classmethod
    def variables(cls, x, order: int = 1) -> "Jet":
        """Seed every entry of the vector ``x`` as an independent variable."""
        if order not in (1, 2):
            raise ValueError(f"Unsupported jet order: {order}")
        x = np.asarray(x, dtype=float).reshape(-1)
        n = x.size
        hess = np.zeros((n, n, n)) if order == 2 else None
        return cls(x.copy(), np.eye(n), hess)

    # -- properties -------------------------------------------------------

    @property
    def n(self) -> int:
        return self.grad.shape[-1]

    @property
    def order(self) -> int:
        return 1 if self.hess is None else 2

    @property
    def shape(self):
        return self.val.shape

    @property
    def ndim(self) -> int:
        return self.val.ndim

    def __repr__(self) -> str:
        return f"Jet(shape={self.shape}, n={self.n}, order={self.order})"

    def __getitem__(self, idx) -> "Jet":
        key = idx if isinstance(idx, tuple) else (idx,)
        if any(k is Ellipsis for k in key):
            raise IndexError("Jet indexing does not support Ellipsis")
        hess = None if self.hess is None else self.hess[idx]
        return Jet(self.val[idx], self.grad[idx], hess)

    # -- arithmetic -------------------------------------------------------

    def __neg__(self) -> "Jet":
        hess = None if self.hess is None else -self.hess
        return Jet(-self.val, -self.grad, hess)

    def __add__(self, other) -> "Jet":
        if isinstance(other, Jet):
            return Jet(self.val + other.val, self.grad + other.grad, _add_hess(self.hess, other.hess))
        val = self.val + np.asarray(other, dtype=float)
        return Jet(val, _broadcast(self.grad, val.shape, 1), _broadcast(self.hess, val.shape, 2))

    __radd__ = __add__

    def __sub__(self, other) -> "Jet":
        return self + (-other)

    def __rsub__(self, other) -> "Jet":
        return (-self) + other

    def __mul__(self, other) -> "Jet":
        if isinstance(other, Jet):
            av = self.val[..., None]
            bv = other.val[..., None]
            grad = self.grad * bv + av * other.grad
            hess = None
            if self.hess is not None and other.hess is not None:
                hess = (
                    self.hess * bv[..., None]
                    + av[..., None] * other.hess
                    + self.grad[..., :, None] * other.grad[..., None, :]
                    + other.grad[..., :, None] * self.grad[..., None, :]
                )
            return Jet(self.val * other.val, grad, hess)
        c = np.asarray(other, dtype=float)
        hess = None if self.hess is None else self.hess * c[..., None, None]
        return Jet(self.val * c, self.grad * c[..., None], hess)

    __rmul__ = __mul__

    def __truediv__(self, other) -> "Jet":
        if isinstance(other, Jet):
            return self * other.reciprocal()
        return self * (1.0 / np.asarray(other, dtype=float))

    def __rtruediv__(self, other) -> "Jet":
        return self.reciprocal() * other

    def __pow__(self, power: int) -> "Jet":
        if power == 2:
            return self * self
        p = float(power)
        v = self.val
        return self.chain(v ** p, p * v ** (p - 1), p * (p - 1) * v ** (p - 2))

    # -- elementary functions --------------------------------------------

    def chain(self, f0, f1, f2=None) -> "Jet":
        """Compose with a scalar function given its value and two derivatives."""
        f1 = np.asarray(f1, dtype=float)
        grad = f1[..., None] * self.grad
        hess = None
        if self.hess is not None:
            if f2 is None:
                raise ValueError("second derivative required for a second-order jet")
            f2 = np.asarray(f2, dtype=float)
            hess = (
                f1[..., None, None] * self.hess
                + f2[..., None, None] * self.grad[..., :, None] * self.grad[..., None, :]
            )
        return Jet(f0, grad, hess)

    def sin(self) -> "Jet":
        s, c = np.sin(self.val), np.cos(self.val)
        return self.chain(s, c, -s)

    def cos(self) -> "Jet":
        s, c = np.sin(self.val), np.cos(self.val)
        return self.chain(c, -s, -c)

    def sqrt(self) -> "Jet":
        r = np.sqrt(self.val)
        return self.chain(r, 0.5 / r, -0.25 / r ** 3)

    def reciprocal(self) -> "Jet":
        r = 1.0 / self.val
        return self.chain(r, -r * r, 2.0 * r ** 3)


# -- helpers ---------------------------------------------------------------


def _add_hess(a: Optional[np.ndarray], b: Optional[np.ndarray]) -> Optional[np.ndarray]:
    if a is None or b is None:
        return None
    return a + b


def _broadcast(arr: Optional[np.ndarray], shape, k: int) -> Optional[np.ndarray]:
    if arr is None:
        return None
    tail = arr.shape[arr.ndim - k:]
    return np.broadcast_to(arr, tuple(shape) + tail)


def _lift(item, shape, n: int, order: int) -> Jet:
    if isinstance(item, Jet):
        hess = _broadcast(item.hess, shape, 2) if order == 2 else None
        return Jet(np.broadcast_to(item.val, shape), _broadcast(item.grad, shape, 1), hess)
    val = np.broadcast_to(np.asarray(item, dtype=float), shape)
    hess = np.zeros(tuple(shape) + (n, n)) if order == 2 else None
    return Jet(val, np.zeros(tuple(shape) + (n,)), hess)


def value(x) -> np.ndarray:
    """Plain value of a jet or array."""
    return x.val if isinstance(x, Jet) else np.asarray(x, dtype=float)


def sin(x):
    return x.sin() if isinstance(x, Jet) else np.sin(x)


def cos(x):
    return x.cos() if isinstance(x, Jet) else np.cos(x)


def sqrt(x):
    return x.sqrt() if isinstance(x, Jet) else np.sqrt(x)


def chain(x, f0, f1, f2=None):
    """Apply a scalar function known through (f, f', f'') evaluated at value(x)."""
    return x.chain(f0, f1, f2) if isinstance(x, Jet) else np.asarray(f0, dtype=float)


def stack(items: Sequence, axis: int = 0):
    """np.stack over jets and constants; ``axis`` counts value axes from the left."""
    jets = [it for it in items if isinstance(it, Jet)]
    if not jets:
        arrays = np.broadcast_arrays(*[np.asarray(it, dtype=float) for it in items])
        return np.stack(arrays, axis=axis)
    n, order = jets[0].n, min(j.order for j in jets)
    shape = np.broadcast_shapes(*[np.shape(value(it)) for it in items])
    if not 0 <= axis <= len(shape):
        raise ValueError("stack axis must be a non-negative value axis")
    lifted = [_lift(it, shape, n, order) for it in items]
    hess = np.stack([j.hess for j in lifted], axis=axis) if order == 2 else None
    return Jet(
        np.stack([j.val for j in lifted], axis=axis),
        np.stack([j.grad for j in lifted], axis=axis),
        hess,
    )


def concatenate(items: Iterable):
    """Concatenate along the leading value axis."""
    items = list(items)
    jets = [it for it in items if isinstance(it, Jet)]
    if not jets:
        return np.concatenate([np.asarray(it, dtype=float) for it in items], axis=0)
    n, order = jets[0].n, min(j.order for j in jets)
    lifted = [_lift(it, np.shape(value(it)), n, order) for it in items]
    hess = np.concatenate([j.hess for j in lifted], axis=0) if order == 2 else None
    return Jet(
        np.concatenate([j.val for j in lifted], axis=0),
        np.concatenate([j.grad for j in lifted], axis=0),
        hess,
    )


def _contract(a, b, vspec: str):
    """Bilinear contraction of jets/arrays following the value einsum ``vspec``."""
    lhs, out = vspec.split("->")
    sa, sb = lhs.split(",")
    a_jet, b_jet = isinstance(a, Jet), isinstance(b, Jet)
    av, bv = value(a), value(b)
    val = np.einsum(vspec, av, bv)
    if not (a_jet or b_jet):
        return val

    grad = 0.0
    if a_jet:
        grad = grad + np.einsum(f"{sa}n,{sb}->{out}n", a.grad, bv)
    if b_jet:
        grad = grad + np.einsum(f"{sa},{sb}n->{out}n", av, b.grad)

    order = min(j.order for j in (a, b) if isinstance(j, Jet))
    hess = None
    if order == 2:
        hess = 0.0
        if a_jet:
            hess = hess + np.einsum(f"{sa}nm,{sb}->{out}nm", a.hess, bv)
        if b_jet:
            hess = hess + np.einsum(f"{sa},{sb}nm->{out}nm", av, b.hess)
        if a_jet and b_jet:
            hess = hess + np.einsum(f"{sa}n,{sb}m->{out}nm", a.grad, b.grad)
            hess = hess + np.einsum(f"{sa}m,{sb}n->{out}nm", a.grad, b.grad)
    return Jet(val, grad, hess)


def matmul(a, b):
    """Batched matrix product over the two trailing value axes."""
    return _contract(a, b, "...ij,...jk->...ik")


def matvec(a, x):
    """Batched matrix-vector product over the trailing value axes."""
    return _contract(a, x, "...ij,...j->...i")
