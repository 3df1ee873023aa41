"""Closed-form |a_2| and |a_3| bounds for the three bi-univalent classes.

Each bound is ``prefactor * core``: the prefactor is a ratio of generalized
binomials carrying all of the dependence on the Cesàro parameters, the core
is the class-specific expression.  The a_2 bounds of the subordination and
strongly-starlike classes take the absolute value of the prefactor; the
others use it as is.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field

from .cesaro import CesaroDomainError, CesaroParams, cesaro_factor, generalized_binomial

FORMULA_IDS = (
    "a2_psi", "a3_psi",
    "a2_strong", "a3_strong",
    "a2_realpart", "a3_realpart",
)


class FormulaUndefinedError(ValueError):
    """A bound has no real value at the requested parameters."""


@dataclass(frozen=True)
class PsiCoefficients:
    """Taylor data ``psi(z) = 1 + B1 z + B2 z^2 + ...`` of the majorant."""

    B1: float
    B2: float
    higher: tuple[float, ...] = field(default=())

    def __post_init__(self):
        if not self.B1 > 0:
            raise ValueError(f"B1 must be positive, got {self.B1}")
        object.__setattr__(self, "higher", tuple(float(b) for b in self.higher))

    def coefficients(self) -> list[float]:
        return [1.0, float(self.B1), float(self.B2), *self.higher]

    def as_dict(self) -> dict:
        d = {"B1": self.B1, "B2": self.B2}
        if self.higher:
            d["higher"] = list(self.higher)
        return d


@dataclass(frozen=True)
class QParams:
    alpha: float
    lam: float

    def __post_init__(self):
        if not 0 < self.alpha <= 1:
            raise ValueError(f"class alpha must lie in (0, 1], got {self.alpha}")
        if not self.lam >= 1:
            raise ValueError(f"lambda must be >= 1, got {self.lam}")

    def as_dict(self) -> dict:
        return {"alpha": self.alpha, "lambda": self.lam}


@dataclass(frozen=True)
class HBetaParams:
    beta: float
    lam: float

    def __post_init__(self):
        if not 0 <= self.beta < 1:
            raise ValueError(f"beta must lie in [0, 1), got {self.beta}")
        if not self.lam >= 1:
            raise ValueError(f"lambda must be >= 1, got {self.lam}")

    def as_dict(self) -> dict:
        return {"beta": self.beta, "lambda": self.lam}


@dataclass(frozen=True)
class BoundResult:
    value: float
    prefactor: float
    core: float
    formula_id: str


def ratio_a2(cp: CesaroParams) -> float:
    """``C(k+alpha-1, k-2) / C(k+alpha-2, k-2)``, the reciprocal of ``A_2``."""
    if cp.mode == "unit":
        return 1.0
    if cp.k < 2:
        raise CesaroDomainError(f"a2 prefactor needs k >= 2, got k={cp.k}")
    if cp.mode == "classical":
        return 1.0 / cesaro_factor(cp, 2)
    den = generalized_binomial(cp.k + cp.alpha - 2, cp.k - 2)
    if den == 0:
        raise CesaroDomainError(f"zero a2 prefactor denominator at k={cp.k}, alpha={cp.alpha}")
    return generalized_binomial(cp.k + cp.alpha - 1, cp.k - 2) / den


def ratio_a3(cp: CesaroParams) -> float:
    """``C(k+alpha-1, k-3) / C(k+alpha-3, k-3)``, the reciprocal of ``A_3``."""
    if cp.mode == "unit":
        return 1.0
    if cp.k < 3:
        raise CesaroDomainError(f"a3 prefactor needs k >= 3, got k={cp.k}")
    if cp.mode == "classical":
        return 1.0 / cesaro_factor(cp, 3)
    den = generalized_binomial(cp.k + cp.alpha - 3, cp.k - 3)
    if den == 0:
        raise CesaroDomainError(f"zero a3 prefactor denominator at k={cp.k}, alpha={cp.alpha}")
    return generalized_binomial(cp.k + cp.alpha - 1, cp.k - 3) / den


def _psi_denominator(psi: PsiCoefficients, b2_weight: float = 4.0) -> float:
    return abs(3 * psi.B1 ** 2 - b2_weight * psi.B2) + 4 * psi.B1


def bound_a2_psi(cp: CesaroParams, psi: PsiCoefficients) -> BoundResult:
    pre = ratio_a2(cp)
    core = psi.B1 * math.sqrt(psi.B1) / math.sqrt(_psi_denominator(psi))
    return BoundResult(abs(pre) * core, pre, core, "a2_psi")


def bound_a3_psi(cp: CesaroParams, psi: PsiCoefficients) -> BoundResult:
    pre = ratio_a3(cp)
    B1 = psi.B1
    core = (1 - 4 / (3 * B1)) * B1 ** 3 / _psi_denominator(psi) + B1 / 3
    return BoundResult(pre * core, pre, core, "a3_psi")


def psi_variant_values(cp: CesaroParams, psi: PsiCoefficients) -> dict[str, float]:
    """The two psi-class bounds with ``8 B2`` in place of ``4 B2`` in the modulus.

    The proof chain writes the a2 identity with ``3 B1^2 - 8 B2``; these values
    are reported next to the stated ones so oracle findings can be read
    against either constant.
    """
    den = _psi_denominator(psi, 8.0)
    B1 = psi.B1
    out = {}
    try:
        out["a2_psi"] = abs(ratio_a2(cp)) * B1 * math.sqrt(B1) / math.sqrt(den)
    except CesaroDomainError:
        pass
    try:
        out["a3_psi"] = ratio_a3(cp) * ((1 - 4 / (3 * B1)) * B1 ** 3 / den + B1 / 3)
    except CesaroDomainError:
        pass
    return out


def strong_radicand(k: int, q: QParams) -> float:
    """``4^k (1+l)^2 + alpha [2 * 3^k (1+l) - 4^k (1+l)^2]``."""
    s = 1 + q.lam
    return 4.0 ** k * s ** 2 + q.alpha * (2 * 3.0 ** k * s - 4.0 ** k * s ** 2)


def bound_a2_strong(cp: CesaroParams, q: QParams) -> BoundResult:
    pre = ratio_a2(cp)
    rad = strong_radicand(cp.k, q)
    if not rad > 0:
        raise FormulaUndefinedError(f"non-positive radicand {rad!r} at k={cp.k}, {q}")
    core = 2 * q.alpha / math.sqrt(rad)
    return BoundResult(abs(pre) * core, pre, core, "a2_strong")


def bound_a3_strong(cp: CesaroParams, q: QParams) -> BoundResult:
    pre = ratio_a3(cp)
    core = 2 * q.alpha / (1 + 2 * q.lam) + 4 * q.alpha ** 2 / (1 + q.lam) ** 2
    return BoundResult(pre * core, pre, core, "a3_strong")


def bound_a2_realpart(cp: CesaroParams, h: HBetaParams) -> BoundResult:
    pre = ratio_a2(cp)
    core = math.sqrt(2 * (1 - h.beta) / (1 + 2 * h.lam))
    return BoundResult(pre * core, pre, core, "a2_realpart")


def bound_a3_realpart(cp: CesaroParams, h: HBetaParams) -> BoundResult:
    pre = ratio_a3(cp)
    c = 1 - h.beta
    core = 4 * c ** 2 / (1 + h.lam) ** 2 + 2 * c / (1 + 2 * h.lam)
    return BoundResult(pre * core, pre, core, "a3_realpart")
