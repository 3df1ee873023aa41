"""Cesàro mean weights for normalized series.

The mean of index ``k`` and order ``alpha`` multiplies the coefficient of
``z**n`` by a weight ``A_n`` for ``1 <= n <= k`` and drops everything above
``k``.  Three weightings are available:

``binomial``
    ``A_n = C(k+alpha-n, k-n) / C(k+alpha-1, k-n)``.  This is the weighting
    the coefficient bounds are written against.
``classical``
    The classical order-``alpha`` mean of ``f(z)/z`` with index ``k-1``:
    ``A_n = C(k-n+alpha, k-n) / C(k-1+alpha, k-1)``.  For ``alpha = 0`` this is
    the plain partial sum.
``unit``
    Every weight is 1 and nothing is truncated, i.e. the operator is dropped.
    ``k`` is still carried because one of the bounds uses it explicitly.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .series import NormalizedSeries, TaylorSeries

MODES = ("binomial", "classical", "unit")


class CesaroDomainError(ValueError):
    pass


def generalized_binomial(x: float, m: int) -> float:
    """``x (x-1) ... (x-m+1) / m!`` for real `x` and integer ``m >= 0``."""
    if m < 0:
        raise ValueError("lower index must be non-negative")
    out = 1.0
    for j in range(m):
        out *= (x - j) / (j + 1)
    return out


@dataclass(frozen=True)
class CesaroParams:
    k: int
    alpha: float
    mode: str = "binomial"

    def __post_init__(self):
        if self.mode not in MODES:
            raise ValueError(f"unknown Cesàro mode {self.mode!r}")
        if int(self.k) != self.k or self.k < 1:
            raise CesaroDomainError(f"mean index k must be an integer >= 1, got {self.k}")
        if not (math.isfinite(self.alpha) and self.alpha >= 0):
            raise CesaroDomainError(f"mean order alpha must be >= 0, got {self.alpha}")
        object.__setattr__(self, "k", int(self.k))
        object.__setattr__(self, "alpha", float(self.alpha))
        for n in range(2, self.k + 1):
            if _denominator(self, n) == 0:
                raise CesaroDomainError(
                    f"zero weight denominator at k={self.k}, alpha={self.alpha}, n={n}")

    @classmethod
    def unit(cls, k: int = 2) -> "CesaroParams":
        return cls(k, 0.0, "unit")

    def as_dict(self) -> dict:
        return {"k": self.k, "alpha": self.alpha, "mode": self.mode}


def _denominator(p: CesaroParams, n: int) -> float:
    if p.mode == "binomial":
        return generalized_binomial(p.k + p.alpha - 1, p.k - n)
    if p.mode == "classical":
        return generalized_binomial(p.k - 1 + p.alpha, p.k - 1)
    return 1.0


def cesaro_factor(params: CesaroParams, n: int) -> float:
    """Weight ``A_n`` applied to the coefficient of ``z**n``."""
    if params.mode == "unit":
        if n < 1:
            raise CesaroDomainError(f"coefficient index must be >= 1, got {n}")
        return 1.0
    if not 1 <= n <= params.k:
        raise CesaroDomainError(
            f"weight A_{n} undefined for k={params.k}, alpha={params.alpha} (need 1 <= n <= k)")
    den = _denominator(params, n)
    if den == 0:
        raise CesaroDomainError(
            f"zero weight denominator at k={params.k}, alpha={params.alpha}, n={n}")
    if params.mode == "binomial":
        num = generalized_binomial(params.k + params.alpha - n, params.k - n)
    else:
        num = generalized_binomial(params.k - n + params.alpha, params.k - n)
    return num / den


def apply_cesaro(f: NormalizedSeries, params: CesaroParams) -> TaylorSeries:
    if params.mode == "unit":
        return TaylorSeries(f.coeffs)
    if f.order < params.k:
        raise CesaroDomainError(
            f"series of order {f.order} is too short for a mean of index {params.k}")
    out = np.zeros_like(f.coeffs)
    out[1] = 1
    for n in range(2, params.k + 1):
        out[n] = cesaro_factor(params, n) * f.coeffs[n]
    return TaylorSeries(out)
