"""Truncated complex power series.

A :class:`TaylorSeries` holds the coefficients ``c_0 .. c_N`` of a polynomial
section of an analytic function.  Every binary operation requires both
operands to share the truncation order; nothing is padded implicitly.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable

import numpy as np

DEFAULT_ORDER = 16


class OrderMismatchError(ValueError):
    pass


@dataclass(frozen=True, eq=False)
class TaylorSeries:
    coeffs: np.ndarray

    def __post_init__(self):
        c = np.array(self.coeffs, dtype=complex).ravel()
        if c.size < 2:
            raise ValueError("a series needs truncation order >= 1")
        if not np.all(np.isfinite(c)):
            raise ValueError("series coefficients must be finite")
        c.setflags(write=False)
        object.__setattr__(self, "coeffs", c)

    @property
    def order(self) -> int:
        return self.coeffs.size - 1

    def __getitem__(self, n):
        return self.coeffs[n]

    def __len__(self):
        return self.coeffs.size

    def __repr__(self):
        return f"{type(self).__name__}({self.coeffs.tolist()!r})"

    @classmethod
    def from_coeffs(cls, coeffs: Iterable[complex], order: int | None = None):
        """Build a series from leading coefficients, zero-padding up to `order`."""
        c = list(coeffs)
        if order is None:
            order = len(c) - 1
        if len(c) > order + 1:
            raise ValueError(f"{len(c)} coefficients do not fit order {order}")
        return cls(np.concatenate([np.asarray(c, dtype=complex),
                                   np.zeros(order + 1 - len(c), dtype=complex)]))

    @classmethod
    def zero(cls, order: int = DEFAULT_ORDER):
        return cls(np.zeros(order + 1, dtype=complex))

    @classmethod
    def one(cls, order: int = DEFAULT_ORDER):
        return cls.from_coeffs([1], order)

    def allclose(self, other: TaylorSeries, atol: float = 1e-12) -> bool:
        _check_orders(self, other)
        return bool(np.max(np.abs(self.coeffs - other.coeffs)) <= atol)


class NormalizedSeries(TaylorSeries):
    """Series with ``c_0 = 0`` and ``c_1 = 1``."""

    def __post_init__(self):
        super().__post_init__()
        if self.coeffs[0] != 0 or self.coeffs[1] != 1:
            raise ValueError("normalized series need c0 = 0 and c1 = 1")

    @classmethod
    def identity(cls, order: int = DEFAULT_ORDER):
        return cls.from_coeffs([0, 1], order)

    @classmethod
    def from_tail(cls, tail: Iterable[complex], order: int | None = None):
        """Build ``z + a_2 z^2 + ...`` from the coefficients ``a_2, a_3, ...``."""
        return cls.from_coeffs([0, 1, *tail], order)


def _check_orders(s: TaylorSeries, t: TaylorSeries) -> None:
    if s.order != t.order:
        raise OrderMismatchError(f"order mismatch: {s.order} != {t.order}")


def linear_combine(s: TaylorSeries, t: TaylorSeries,
                   ls: complex = 1, lt: complex = 1) -> TaylorSeries:
    _check_orders(s, t)
    return TaylorSeries(ls * s.coeffs + lt * t.coeffs)


def _mul(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    return np.convolve(a, b)[: a.size]


def multiply(s: TaylorSeries, t: TaylorSeries) -> TaylorSeries:
    """Cauchy product truncated at the common order."""
    _check_orders(s, t)
    return TaylorSeries(_mul(s.coeffs, t.coeffs))


def compose(outer: TaylorSeries, inner: TaylorSeries) -> TaylorSeries:
    """Coefficients of ``outer(inner(z))`` up to the common order.

    Horner's scheme over series; requires ``inner(0) = 0`` so that every
    truncated coefficient is exact.
    """
    _check_orders(outer, inner)
    if inner.coeffs[0] != 0:
        raise ValueError("inner series must vanish at 0 for composition")
    acc = np.zeros(outer.coeffs.size, dtype=complex)
    for c in outer.coeffs[::-1]:
        acc = _mul(acc, inner.coeffs)
        acc[0] += c
    return TaylorSeries(acc)


def derive(s: TaylorSeries) -> TaylorSeries:
    """Termwise derivative, padded back to the original order with a zero."""
    n = np.arange(1, s.coeffs.size)
    return TaylorSeries(np.append(n * s.coeffs[1:], 0))


def invert(f: NormalizedSeries) -> NormalizedSeries:
    """Compositional inverse ``g`` with ``f(g(w)) = w`` up to the order of `f`.

    Solved order by order: coefficient ``n`` of ``f(g)`` is ``g_n`` plus terms
    in ``g_2 .. g_{n-1}`` only, so each new coefficient is fixed by forcing that
    coefficient of the composition to vanish.
    """
    N = f.order
    g = np.zeros(N + 1, dtype=complex)
    g[1] = 1
    for n in range(2, N + 1):
        acc = np.zeros(N + 1, dtype=complex)
        power = g.copy()
        for j in range(1, n + 1):
            acc += f.coeffs[j] * power
            power = _mul(power, g)
        g[n] = -acc[n]
    return NormalizedSeries(g)


def reciprocal(s: TaylorSeries) -> TaylorSeries:
    """Multiplicative inverse of a series with nonzero constant term."""
    c = s.coeffs
    if c[0] == 0:
        raise ZeroDivisionError("series with zero constant term has no reciprocal")
    r = np.zeros_like(c)
    r[0] = 1 / c[0]
    for n in range(1, c.size):
        r[n] = -np.dot(c[1 : n + 1], r[n - 1 :: -1][:n]) / c[0]
    return TaylorSeries(r)


def evaluate(s: TaylorSeries, z):
    """Horner evaluation of the truncated polynomial at `z` (scalar or array)."""
    z = np.asarray(z, dtype=complex)
    if np.any(np.abs(z) > 1 + 1e-12):
        raise ValueError("evaluation points must lie in the closed unit disk")
    out = np.zeros_like(z)
    for c in s.coeffs[::-1]:
        out = out * z + c
    return out[()] if out.ndim == 0 else out
