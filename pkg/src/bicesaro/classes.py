"""Class selections: which bi-univalent family, its parameters, and the mean."""
from __future__ import annotations

from dataclasses import dataclass
from typing import ClassVar, Union

from . import bounds
from .bounds import BoundResult, HBetaParams, PsiCoefficients, QParams
from .cesaro import CesaroParams


@dataclass(frozen=True)
class PsiClass:
    """``[mean f]'`` and ``[mean g]'`` both subordinate to ``psi``."""

    psi: PsiCoefficients
    cesaro: CesaroParams
    kind: ClassVar[str] = "psi"

    def params(self) -> dict:
        return self.psi.as_dict()


@dataclass(frozen=True)
class StrongClass:
    """``|arg E(z)| < pi*alpha/2`` for the lambda-blend ``E`` of the mean and its derivative."""

    q: QParams
    cesaro: CesaroParams
    kind: ClassVar[str] = "strong"

    def params(self) -> dict:
        return self.q.as_dict()


@dataclass(frozen=True)
class RealPartClass:
    """``Re E(z) > beta`` for the same lambda-blend."""

    h: HBetaParams
    cesaro: CesaroParams
    kind: ClassVar[str] = "realpart"

    def params(self) -> dict:
        return self.h.as_dict()


ClassSpec = Union[PsiClass, StrongClass, RealPartClass]
KINDS = ("psi", "strong", "realpart")


def describe(spec: ClassSpec) -> dict:
    return {"class": spec.kind, "params": spec.params(), "cesaro": spec.cesaro.as_dict()}


def bound_for(spec: ClassSpec, which: str) -> BoundResult:
    """Evaluate the closed-form bound on ``|a_2|`` (``which="a2"``) or ``|a_3|``."""
    if which not in ("a2", "a3"):
        raise ValueError(f"which must be 'a2' or 'a3', got {which!r}")
    if isinstance(spec, PsiClass):
        fn = bounds.bound_a2_psi if which == "a2" else bounds.bound_a3_psi
        return fn(spec.cesaro, spec.psi)
    if isinstance(spec, StrongClass):
        fn = bounds.bound_a2_strong if which == "a2" else bounds.bound_a3_strong
        return fn(spec.cesaro, spec.q)
    fn = bounds.bound_a2_realpart if which == "a2" else bounds.bound_a3_realpart
    return fn(spec.cesaro, spec.h)
