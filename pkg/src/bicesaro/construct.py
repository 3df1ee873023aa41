"""Class members built from two-coefficient Carathéodory or Schwarz seeds.

Only the seed on the ``f`` side is free.  The ``g = f^{-1}`` side prefix is
solved from the coefficient system and then checked for admissibility, so a
member flagged feasible has admissible data on both sides.

The ``solve_*`` functions are plain arithmetic and work unchanged on Python
scalars and numpy arrays; the extremal search evaluates them on whole grids.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .cesaro import CesaroDomainError, CesaroParams, apply_cesaro, cesaro_factor
from .classes import ClassSpec, PsiClass, RealPartClass, StrongClass, describe
from .series import (
    DEFAULT_ORDER,
    NormalizedSeries,
    TaylorSeries,
    compose,
    derive,
    evaluate,
    invert,
    linear_combine,
    multiply,
    reciprocal,
)

FEASIBILITY_TOL = 1e-12


class ConstructionError(ValueError):
    pass


def caratheodory_margin(p1, p2):
    """Slack in ``|p2 - p1^2/2| <= 2 - |p1|^2/2``; negative means inadmissible.

    The disk condition already forces ``|p1| <= 2``.
    """
    return 2 - abs(p1) ** 2 / 2 - abs(p2 - p1 * p1 / 2)


def schwarz_margin(b1, b2):
    """Slack in ``|b2| <= 1 - |b1|^2``."""
    return 1 - abs(b1) ** 2 - abs(b2)


def caratheodory_valid(p1, p2, tol: float = FEASIBILITY_TOL):
    return caratheodory_margin(p1, p2) >= -tol


def schwarz_valid(b1, b2, tol: float = FEASIBILITY_TOL):
    return schwarz_margin(b1, b2) >= -tol


@dataclass(frozen=True)
class CaratheodoryPrefix:
    p1: complex
    p2: complex

    def __post_init__(self):
        object.__setattr__(self, "p1", complex(self.p1))
        object.__setattr__(self, "p2", complex(self.p2))

    @property
    def valid(self) -> bool:
        return bool(caratheodory_valid(self.p1, self.p2))


@dataclass(frozen=True)
class SchwarzPrefix:
    b1: complex
    b2: complex

    def __post_init__(self):
        object.__setattr__(self, "b1", complex(self.b1))
        object.__setattr__(self, "b2", complex(self.b2))

    @property
    def valid(self) -> bool:
        return bool(schwarz_valid(self.b1, self.b2))


def solve_realpart(p1, p2, A2, A3, beta, lam):
    """``(a2, a3, q1, q2)`` for the real-part class."""
    c = 1 - beta
    a2 = c * p1 / ((1 + lam) * A2)
    a3 = c * p2 / ((1 + 2 * lam) * A3)
    q1 = -p1
    q2 = (1 + 2 * lam) * (2 * A2 * A2 * a2 * a2 - A3 * a3) / c
    return a2, a3, q1, q2


def solve_strong(p1, p2, A2, A3, alpha, lam):
    """``(a2, a3, q1, q2)`` for the strongly-starlike-type class."""
    a2 = alpha * p1 / ((1 + lam) * A2)
    a3 = (2 * alpha * p2 + alpha * (alpha - 1) * p1 * p1) / (2 * (1 + 2 * lam) * A3)
    q1 = -p1
    lhs = 2 * (1 + 2 * lam) * (2 * A2 * A2 * a2 * a2 - A3 * a3)
    q2 = (lhs - alpha * (alpha - 1) * q1 * q1) / (2 * alpha)
    return a2, a3, q1, q2


def solve_psi(b1, b2, A2, A3, B1, B2):
    """``(a2, a3, c1, c2)`` for the subordination class."""
    a2 = B1 * b1 / (2 * A2)
    a3 = (B1 * b2 + B2 * b1 * b1) / (3 * A3)
    c1 = -b1
    c2 = (3 * (2 * A2 * A2 * a2 * a2 - A3 * a3) - B2 * c1 * c1) / B1
    return a2, a3, c1, c2


def weights(cp: CesaroParams) -> tuple[float, float]:
    """``(A_2, A_3)``; raises when the mean does not reach ``z**3``."""
    try:
        A2, A3 = cesaro_factor(cp, 2), cesaro_factor(cp, 3)
    except CesaroDomainError as exc:
        raise ConstructionError(f"coefficient system undefined: {exc}") from None
    if A2 == 0 or A3 == 0:
        raise ConstructionError(f"zero weight A2={A2}, A3={A3}")
    return A2, A3


def solve(spec: ClassSpec, s1, s2):
    """Dispatch to the matching solver.

    Returns ``(a2, a3, dual1, dual2, margin)`` where `margin` is the smaller
    admissibility slack of the two sides; the member is feasible when
    ``margin >= -FEASIBILITY_TOL``.
    """
    A2, A3 = weights(spec.cesaro)
    if isinstance(spec, RealPartClass):
        a2, a3, d1, d2 = solve_realpart(s1, s2, A2, A3, spec.h.beta, spec.h.lam)
        slack = caratheodory_margin
    elif isinstance(spec, StrongClass):
        a2, a3, d1, d2 = solve_strong(s1, s2, A2, A3, spec.q.alpha, spec.q.lam)
        slack = caratheodory_margin
    else:
        a2, a3, d1, d2 = solve_psi(s1, s2, A2, A3, spec.psi.B1, spec.psi.B2)
        slack = schwarz_margin
    return a2, a3, d1, d2, np.minimum(slack(s1, s2), slack(d1, d2))


@dataclass(frozen=True)
class ClassMember:
    f: NormalizedSeries
    a2: complex
    a3: complex
    class_spec: ClassSpec
    seed: tuple[complex, complex]
    dual: tuple[complex, complex]
    feasible: bool

    def seed_dict(self) -> dict:
        names = ("b1", "b2") if isinstance(self.class_spec, PsiClass) else ("p1", "p2")
        return dict(zip(names, self.seed))

    def dual_dict(self) -> dict:
        names = ("c1", "c2") if isinstance(self.class_spec, PsiClass) else ("q1", "q2")
        return dict(zip(names, self.dual))


def make_member(spec: ClassSpec, s1: complex, s2: complex,
                order: int | None = None) -> ClassMember:
    s1, s2 = complex(s1), complex(s2)
    seed_ok = (schwarz_valid if isinstance(spec, PsiClass) else caratheodory_valid)(s1, s2)
    if not seed_ok:
        raise ConstructionError(f"seed prefix ({s1}, {s2}) is not admissible")
    a2, a3, d1, d2, margin = solve(spec, s1, s2)
    ok = margin >= -FEASIBILITY_TOL
    if order is None:
        order = max(DEFAULT_ORDER, spec.cesaro.k)
    f = NormalizedSeries.from_tail([a2, a3], order)
    return ClassMember(f, complex(a2), complex(a3), spec, (s1, s2),
                       (complex(d1), complex(d2)), bool(ok))


def make_Q_member(p: CaratheodoryPrefix, cp: CesaroParams, q, order=None) -> ClassMember:
    return make_member(StrongClass(q, cp), p.p1, p.p2, order)


def make_Hbeta_member(p: CaratheodoryPrefix, cp: CesaroParams, h, order=None) -> ClassMember:
    return make_member(RealPartClass(h, cp), p.p1, p.p2, order)


def make_psi_member(b: SchwarzPrefix, cp: CesaroParams, psi, order=None) -> ClassMember:
    return make_member(PsiClass(psi, cp), b.b1, b.b2, order)


def seed_from_coefficients(spec: ClassSpec, a2: complex, a3: complex) -> tuple[complex, complex]:
    """Invert the linear seed-to-coefficient relations of the ``f`` side."""
    A2, A3 = weights(spec.cesaro)
    if isinstance(spec, RealPartClass):
        c, lam = 1 - spec.h.beta, spec.h.lam
        return (1 + lam) * A2 * a2 / c, (1 + 2 * lam) * A3 * a3 / c
    if isinstance(spec, StrongClass):
        al, lam = spec.q.alpha, spec.q.lam
        p1 = (1 + lam) * A2 * a2 / al
        p2 = (2 * (1 + 2 * lam) * A3 * a3 - al * (al - 1) * p1 * p1) / (2 * al)
        return p1, p2
    B1, B2 = spec.psi.B1, spec.psi.B2
    b1 = 2 * A2 * a2 / B1
    return b1, (3 * A3 * a3 - B2 * b1 * b1) / B1


def caratheodory_from_schwarz(u: TaylorSeries, radius: float = 0.999,
                              samples: int = 1024) -> TaylorSeries:
    """Series of ``(1 + u) / (1 - u)`` for a Schwarz-type series `u`."""
    if u.coeffs[0] != 0:
        raise ValueError("u must vanish at the origin")
    z = radius * np.exp(2j * np.pi * np.arange(samples) / samples)
    sup = float(np.max(np.abs(evaluate(u, z))))
    if not sup < 1:
        raise ValueError(f"not a Schwarz function numerically (sup |u| = {sup:.6g})")
    one = TaylorSeries.one(u.order)
    return multiply(linear_combine(one, u), reciprocal(linear_combine(one, u, 1, -1)))


@dataclass
class VerificationReport:
    class_: str
    params: dict
    radius: float
    samples: int
    extremal_value: float
    threshold: float
    passed: bool
    flags: list[str] = field(default_factory=list)

    def to_dict(self) -> dict:
        return {
            "class": self.class_,
            "params": self.params,
            "radius": self.radius,
            "samples": self.samples,
            "extremal_value": self.extremal_value,
            "threshold": self.threshold,
            "pass": self.passed,
            "flags": list(self.flags),
        }


def blend_series(mean: TaylorSeries, lam: float) -> TaylorSeries:
    """Series of ``((1 - lam) F(z) + lam z F'(z)) / z`` for ``F(0) = 0``."""
    n = np.arange(mean.coeffs.size)
    w = (1 + (n - 1) * lam) * mean.coeffs
    return TaylorSeries(np.append(w[1:], 0))


def _psi_schwarz_part(h: TaylorSeries, spec: PsiClass) -> TaylorSeries:
    """``u = psi^{-1} o h`` as a series; ``h`` is subordinate iff ``u`` is Schwarz."""
    N = h.order
    B1 = spec.psi.B1
    shape = list(spec.psi.coefficients())[: N + 1]
    s = np.zeros(N + 1, dtype=complex)
    s[: len(shape)] = shape
    s[0] = 0
    s /= B1
    s[1] = 1
    shifted = h.coeffs.copy()
    shifted[0] -= 1
    inner = TaylorSeries(shifted / B1)
    return compose(invert(NormalizedSeries(s)), inner)


def verify_membership(m: ClassMember, radius: float = 0.999, samples: int = 4096,
                      tol: float = 1e-9) -> VerificationReport:
    """Sample the class condition on ``|z| = radius`` for ``f`` and its truncated inverse.

    Truncated series can break strict inequalities near the circle, so the
    outcome is advisory and flagged as such.
    """
    if not 0 < radius < 1:
        raise ValueError("radius must lie in (0, 1)")
    if samples < 16:
        raise ValueError("need at least 16 samples")
    spec = m.class_spec
    z = radius * np.exp(2j * np.pi * np.arange(samples) / samples)
    flags = ["advisory: truncated series"]
    if not m.feasible:
        flags.append("infeasible seed: inverse-side prefix not admissible")

    sides = {"f": m.f, "g": invert(m.f)}
    per_side = {}
    for name, series in sides.items():
        mean = apply_cesaro(series, spec.cesaro)
        if isinstance(spec, PsiClass):
            u = _psi_schwarz_part(derive(mean), spec)
            per_side[name] = float(np.max(np.abs(evaluate(u, z))))
        else:
            lam = spec.q.lam if isinstance(spec, StrongClass) else spec.h.lam
            vals = evaluate(blend_series(mean, lam), z)
            if isinstance(spec, StrongClass):
                per_side[name] = float(np.max(np.abs(np.angle(vals))))
            else:
                per_side[name] = float(np.min(vals.real))

    if isinstance(spec, RealPartClass):
        threshold = spec.h.beta
        extremal = min(per_side.values())
        side_ok = {k: v > threshold - tol for k, v in per_side.items()}
    else:
        threshold = math.pi * spec.q.alpha / 2 if isinstance(spec, StrongClass) else 1.0
        extremal = max(per_side.values())
        side_ok = {k: v < threshold + tol for k, v in per_side.items()}
    for k, ok in side_ok.items():
        if not ok:
            flags.append(f"{k}-side condition fails")
    info = describe(spec)
    params = {**info["params"], "cesaro": info["cesaro"],
              **{k: [v.real, v.imag] for k, v in m.seed_dict().items()}}
    return VerificationReport(spec.kind, params, radius, samples, extremal,
                              threshold, all(side_ok.values()), flags)
