"""Brute-force extremal search for |a_2| and |a_3| over admissible seeds.

The free seed is parameterized by four reals ``(r, theta, rho, phi)``:

* Carathéodory seeds: ``p1 = r e^{i theta}`` with ``0 <= r <= 2`` and
  ``p2 = p1^2/2 + rho (2 - r^2/2) e^{i phi}``;
* Schwarz seeds: ``b1 = r e^{i theta}`` with ``0 <= r <= 1`` and
  ``b2 = rho (1 - r^2) e^{i phi}``;

with ``0 <= rho <= 1``.  This covers exactly the admissible ``f``-side
prefixes.  The inverse-side prefix is solved by :mod:`bicesaro.construct`
and seeds whose inverse side is inadmissible score ``-inf``.

The search is a dense grid, then uniform random restarts, then
coordinate-wise golden-section refinement from the best grid point and the
best restart.  Nothing here reads the closed-form bounds except the final
comparison.
"""
from __future__ import annotations

import math
from dataclasses import asdict, dataclass, field

import numpy as np

from .bounds import FormulaUndefinedError, psi_variant_values
from .cesaro import CesaroDomainError
from .classes import ClassSpec, PsiClass, bound_for, describe
from .construct import FEASIBILITY_TOL, ConstructionError, make_member, solve, weights

VERDICTS = ("consistent", "oracle_exceeds", "formula_undefined")
TWO_PI = 2 * math.pi
GOLDEN = (math.sqrt(5) - 1) / 2
GOLDEN_ITERS = 40
INITIAL_BRACKET = 16


@dataclass(frozen=True)
class SearchConfig:
    grid_density: int = 32
    random_restarts: int = 256
    refine_steps: int = 20
    seed: int = 0
    tolerance: float = 1e-9

    def __post_init__(self):
        if self.grid_density < 8:
            raise ValueError("grid_density must be >= 8")
        if self.random_restarts < 0 or self.refine_steps < 0:
            raise ValueError("random_restarts and refine_steps must be >= 0")
        if not self.tolerance > 0:
            raise ValueError("tolerance must be positive")
        if not 0 <= self.seed < 2 ** 64:
            raise ValueError("seed must be an unsigned 64-bit integer")

    def as_dict(self) -> dict:
        return asdict(self)


@dataclass
class ConsistencyReport:
    spec: dict
    formula_id: str
    formula_value: float | None
    oracle_max: float
    argmax_seed: dict[str, complex]
    exceedance: float
    verdict: str
    tolerance: float
    alternatives: dict[str, float] = field(default_factory=dict)
    reason: str | None = None

    def to_dict(self) -> dict:
        return {
            "class": self.spec["class"],
            "params": self.spec["params"],
            "cesaro": self.spec["cesaro"],
            "formula_id": self.formula_id,
            "formula_value": self.formula_value,
            "oracle_max": self.oracle_max,
            "argmax_seed": {k: [v.real, v.imag] for k, v in self.argmax_seed.items()},
            "exceedance": self.exceedance,
            "verdict": self.verdict,
            "tolerance": self.tolerance,
            "alternatives": dict(self.alternatives),
            "reason": self.reason,
        }


def _radius_max(spec: ClassSpec) -> float:
    return 1.0 if isinstance(spec, PsiClass) else 2.0


def _phasor(angle):
    return np.exp(1j * angle)


def seed_from_coords(spec: ClassSpec, r, theta, rho, phi):
    return _seed(spec, r, _phasor(theta), rho, _phasor(phi))


def _seed(spec, r, e_theta, rho, e_phi):
    s1 = r * e_theta
    if isinstance(spec, PsiClass):
        s2 = rho * (1 - r * r) * e_phi
    else:
        s2 = s1 * s1 / 2 + rho * (2 - r * r / 2) * e_phi
    return s1, s2


# stricter than the member check so every witness rebuilds as feasible
SEARCH_MARGIN = -FEASIBILITY_TOL / 2


def _scores(spec: ClassSpec, s1, s2):
    """Objective arrays (``-inf`` where inadmissible) and the admissibility slack."""
    a2, a3, _, _, margin = solve(spec, s1, s2)
    ok = margin >= SEARCH_MARGIN
    return {"a2": np.where(ok, np.abs(a2), -np.inf),
            "a3": np.where(ok, np.abs(a3), -np.inf)}, margin


class _Best:
    """Running maximum; only a strictly larger value replaces the incumbent."""

    def __init__(self):
        self.value = -math.inf
        self.x = None

    def offer(self, value: float, x) -> None:
        if value > self.value:
            self.value, self.x = value, np.array(x, dtype=float)


def _levels(n: int, floor: int) -> list[int]:
    """``n, n/2, n/4, ...`` while the halving stays even and at least `floor`."""
    out = [n]
    while out[-1] % 2 == 0 and out[-1] // 2 >= floor:
        out.append(out[-1] // 2)
    return out


def _grid(spec: ClassSpec, n: int, targets):
    """Best point of the density-`n` grid and of each nested coarser grid.

    The coarse grids are strided views of the fine one, so each level's
    winner is exactly what a standalone run at that density would find.
    """
    rmax = _radius_max(spec)
    radii = rmax * np.arange(n + 1) / n
    angles = TWO_PI * np.arange(n) / n
    rhos = np.arange(n + 1) / n
    th, rh, ph = np.meshgrid(angles, rhos, angles, indexing="ij")
    e_th, e_ph = _phasor(th), _phasor(ph)
    strides = [n // m for m in _levels(n, 8)]
    best = {t: [_Best() for _ in strides] for t in targets}
    # lexicographic order (r, theta, rho, phi); argmax returns the first hit
    for i_r, r in enumerate(radii):
        scores, _ = _scores(spec, *_seed(spec, r, e_th, rh, e_ph))
        for level, s in enumerate(strides):
            if i_r % s:
                continue
            for t in targets:
                view = scores[t][::s, ::s, ::s]
                idx = int(np.argmax(view))
                i, j, m = (s * v for v in np.unravel_index(idx, view.shape))
                best[t][level].offer(float(view.flat[idx]), (r, angles[i], rhos[j], angles[m]))
    return best


def _restarts(spec: ClassSpec, cfg: SearchConfig, targets):
    """Best uniform restart among the first ``R, R/2, R/4, ...`` draws."""
    if cfg.random_restarts == 0:
        return {t: [] for t in targets}
    rng = np.random.default_rng(cfg.seed)
    u = rng.random((cfg.random_restarts, 4))
    x = u * np.array([_radius_max(spec), TWO_PI, 1.0, TWO_PI])
    scores, _ = _scores(spec, *seed_from_coords(spec, *x.T))
    best = {t: [] for t in targets}
    for count in _levels(cfg.random_restarts, 16):
        for t in targets:
            b = _Best()
            idx = int(np.argmax(scores[t][:count]))
            b.offer(float(scores[t][idx]), x[idx])
            best[t].append(b)
    return best


def _golden_max(fn, lo: float, hi: float):
    """Golden-section search for a maximum on ``[lo, hi]``; returns the best point seen.

    `fn` may return any totally ordered value (tuples included).
    """
    best_x, best_f = lo, fn(lo)
    fhi = fn(hi)
    if fhi > best_f:
        best_x, best_f = hi, fhi
    a, b = lo, hi
    x1, x2 = b - GOLDEN * (b - a), a + GOLDEN * (b - a)
    f1, f2 = fn(x1), fn(x2)
    for _ in range(GOLDEN_ITERS):
        for x, fx in ((x1, f1), (x2, f2)):
            if fx > best_f:
                best_x, best_f = x, fx
        if f1 < f2:
            a, x1, f1 = x1, x2, f2
            x2 = a + GOLDEN * (b - a)
            f2 = fn(x2)
        else:
            b, x2, f2 = x2, x1, f1
            x1 = b - GOLDEN * (b - a)
            f1 = fn(x1)
    return best_x, best_f


def _refine(spec: ClassSpec, target: str, x, steps: int):
    """Coordinate-wise golden-section ascent.

    Points are ranked by ``(objective, slack)`` so that moves which leave the
    objective unchanged still walk away from active constraints; this lets
    the radius grow again in the next sweep.  A coordinate keeps its bracket
    width while its optimum sits at the bracket edge and halves it otherwise.
    """
    x = np.array(x, dtype=float)
    upper = (_radius_max(spec), None, 1.0, None)
    # fixed initial bracket: refining a given start never depends on the budget
    h = np.array([_radius_max(spec), TWO_PI, 1.0, TWO_PI]) / INITIAL_BRACKET

    def rank(y):
        scores, margin = _scores(spec, *seed_from_coords(spec, *y))
        return float(scores[target]), float(margin)

    fx = rank(x)
    for _ in range(steps):
        for i in range(4):
            lo, hi = x[i] - h[i], x[i] + h[i]
            if upper[i] is not None:
                lo, hi = max(lo, 0.0), min(hi, upper[i])

            def along(t, i=i):
                y = x.copy()
                y[i] = t
                return rank(y)

            t, ft = _golden_max(along, lo, hi)
            moved = abs(t - x[i])
            if ft > fx:
                x[i], fx = t, ft
            if moved < 0.5 * h[i]:
                h[i] /= 2
    return x, fx[0]


def _seed_names(spec: ClassSpec):
    return ("b1", "b2") if isinstance(spec, PsiClass) else ("p1", "p2")


def _undefined(spec, which, value, cfg, reason, alternatives=None):
    return ConsistencyReport(describe(spec), f"{which}_{spec.kind}", value, 0.0, {},
                             0.0, "formula_undefined", cfg.tolerance,
                             alternatives or {}, reason)


def _formula(spec: ClassSpec, which: str):
    try:
        return bound_for(spec, which).value, None
    except (CesaroDomainError, FormulaUndefinedError) as exc:
        return None, str(exc)


def _oracle(spec: ClassSpec, cfg: SearchConfig, targets=("a2", "a3")):
    alternatives = {}
    if isinstance(spec, PsiClass):
        alternatives = {f"{k}_8B2": v for k, v in psi_variant_values(spec.cesaro, spec.psi).items()}
    try:
        weights(spec.cesaro)
    except ConstructionError as exc:
        out = {}
        for t in targets:
            value, _ = _formula(spec, t)
            alt = {k: v for k, v in alternatives.items() if k.startswith(t)}
            out[t] = _undefined(spec, t, value, cfg, f"empty objective region: {exc}", alt)
        return out

    grid = _grid(spec, cfg.grid_density, targets)
    rand = _restarts(spec, cfg, targets)
    out = {}
    for t in targets:
        # every start of a smaller budget is also a start of a doubled one,
        # so the result never decreases when the budget grows
        starts, seen = [], set()
        for b in grid[t] + rand[t]:
            if b.x is not None and b.x.tobytes() not in seen:
                seen.add(b.x.tobytes())
                starts.append(b)
        best = _Best()
        for start in starts:
            best.offer(start.value, start.x)
            x, fx = _refine(spec, t, start.x, cfg.refine_steps)
            best.offer(fx, x)
        s1, s2 = seed_from_coords(spec, *best.x)
        member = make_member(spec, complex(s1), complex(s2))
        if not member.feasible:
            raise RuntimeError(f"search witness {member.seed} rebuilt as infeasible")
        oracle = abs(member.a2 if t == "a2" else member.a3)
        seed = dict(zip(_seed_names(spec), member.seed))
        value, reason = _formula(spec, t)
        alt = {k: v for k, v in alternatives.items() if k.startswith(t)}
        if value is None:
            out[t] = ConsistencyReport(describe(spec), f"{t}_{spec.kind}", None, oracle, seed,
                                       0.0, "formula_undefined", cfg.tolerance, alt, reason)
            continue
        exceed = max(0.0, oracle - value)
        verdict = "oracle_exceeds" if exceed > cfg.tolerance else "consistent"
        out[t] = ConsistencyReport(describe(spec), f"{t}_{spec.kind}", value, oracle, seed,
                                   exceed, verdict, cfg.tolerance, alt)
    return out


def oracle_max_a2(spec: ClassSpec, cfg: SearchConfig) -> ConsistencyReport:
    return _oracle(spec, cfg, ("a2",))["a2"]


def oracle_max_a3(spec: ClassSpec, cfg: SearchConfig) -> ConsistencyReport:
    return _oracle(spec, cfg, ("a3",))["a3"]


def sweep(specs: list[ClassSpec], cfg: SearchConfig) -> list[ConsistencyReport]:
    """Both oracles for every spec, in input order (a2 report before a3)."""
    if not specs:
        raise ValueError("sweep needs at least one class spec")
    reports = []
    for spec in specs:
        res = _oracle(spec, cfg)
        reports.extend([res["a2"], res["a3"]])
    return reports
