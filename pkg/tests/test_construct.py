import json
import math

import numpy as np
import pytest

from bicesaro.bounds import (
    HBetaParams,
    PsiCoefficients,
    QParams,
    bound_a2_realpart,
    bound_a3_realpart,
)
from bicesaro.cesaro import CesaroParams
from bicesaro.classes import PsiClass, RealPartClass, StrongClass
from bicesaro.construct import (
    CaratheodoryPrefix,
    ConstructionError,
    SchwarzPrefix,
    caratheodory_from_schwarz,
    caratheodory_valid,
    make_Hbeta_member,
    make_member,
    make_psi_member,
    make_Q_member,
    schwarz_valid,
    seed_from_coefficients,
    verify_membership,
    weights,
)
from bicesaro.series import TaylorSeries

UNIT = CesaroParams.unit(3)


def random_caratheodory(rng, n):
    r = 2 * np.sqrt(rng.random(n))
    p1 = r * np.exp(2j * np.pi * rng.random(n))
    rad = (2 - r ** 2 / 2) * np.sqrt(rng.random(n))
    p2 = p1 ** 2 / 2 + rad * np.exp(2j * np.pi * rng.random(n))
    return p1, p2


def random_schwarz(rng, n):
    r = np.sqrt(rng.random(n))
    b1 = r * np.exp(2j * np.pi * rng.random(n))
    b2 = (1 - r ** 2) * np.sqrt(rng.random(n)) * np.exp(2j * np.pi * rng.random(n))
    return b1, b2


def random_mean(rng):
    return CesaroParams(int(rng.integers(3, 12)), float(rng.choice([0, 0.5, 1, 2, 5])))


class TestCaratheodoryFromSchwarz:
    def test_zero(self):
        p = caratheodory_from_schwarz(TaylorSeries.zero(6))
        assert p.coeffs.tolist() == [1, 0, 0, 0, 0, 0, 0]

    def test_identity(self):
        p = caratheodory_from_schwarz(TaylorSeries.from_coeffs([0, 1], 8))
        assert np.allclose(p.coeffs, [1] + [2] * 8)

    def test_square(self):
        p = caratheodory_from_schwarz(TaylorSeries.from_coeffs([0, 0, 1], 8))
        assert np.allclose(p.coeffs, [1, 0, 2, 0, 2, 0, 2, 0, 2])

    def test_not_schwarz(self):
        with pytest.raises(ValueError, match="Schwarz"):
            caratheodory_from_schwarz(TaylorSeries.from_coeffs([0, 1.5], 4))

    def test_output_prefix_is_admissible(self):
        u = TaylorSeries.from_coeffs([0, 0.4 + 0.2j, 0.3], 6)
        p = caratheodory_from_schwarz(u)
        assert caratheodory_valid(p[1], p[2])


class TestMembers:
    def test_zero_seed(self):
        for m in (make_Q_member(CaratheodoryPrefix(0, 0), UNIT, QParams(0.6, 2)),
                  make_Hbeta_member(CaratheodoryPrefix(0, 0), UNIT, HBetaParams(0.2, 1)),
                  make_psi_member(SchwarzPrefix(0, 0), UNIT, PsiCoefficients(2, 2))):
            assert m.a2 == 0 and m.a3 == 0 and m.dual == (0, 0) and m.feasible

    def test_q_extremal_seed(self):
        m = make_Q_member(CaratheodoryPrefix(2, 2), UNIT, QParams(1, 1))
        assert m.a2 == pytest.approx(1) and m.a3 == pytest.approx(2 / 3)
        assert m.dual[0] == -2

    def test_hbeta_extremal_seed_is_infeasible(self):
        m = make_Hbeta_member(CaratheodoryPrefix(2, 2), UNIT, HBetaParams(0, 1))
        assert m.a2 == pytest.approx(1) and m.a3 == pytest.approx(2 / 3)
        assert m.dual[1] == pytest.approx(4)
        assert not m.feasible

    def test_hbeta_half(self):
        m = make_Hbeta_member(CaratheodoryPrefix(1, 1), UNIT, HBetaParams(0.5, 1))
        assert m.a2 == pytest.approx(0.25) and m.a3 == pytest.approx(1 / 6)

    def test_psi_seed(self):
        m = make_psi_member(SchwarzPrefix(1, 0), UNIT, PsiCoefficients(2, 2))
        assert m.a2 == pytest.approx(1) and m.a3 == pytest.approx(2 / 3)
        assert m.dual[0] == -1

    def test_coefficients_land_in_series(self):
        m = make_Hbeta_member(CaratheodoryPrefix(0.5j, 0.3), CesaroParams(5, 1), HBetaParams(0.1, 2))
        assert m.f[2] == m.a2 and m.f[3] == m.a3 and m.f.order >= 5

    def test_inadmissible_seed_rejected(self):
        with pytest.raises(ConstructionError):
            make_Hbeta_member(CaratheodoryPrefix(2.5, 0), UNIT, HBetaParams(0, 1))
        with pytest.raises(ConstructionError):
            make_psi_member(SchwarzPrefix(0.9, 0.5), UNIT, PsiCoefficients(1, 1))

    def test_weights_need_k3(self):
        with pytest.raises(ConstructionError):
            weights(CesaroParams(2, 1))

    def test_prefix_types(self):
        assert CaratheodoryPrefix(2, 2).valid and not CaratheodoryPrefix(2, 1).valid
        assert SchwarzPrefix(0.5, 0.75).valid and not SchwarzPrefix(0.5, 0.8).valid


def _specs(rng):
    cp = random_mean(rng)
    return [
        RealPartClass(HBetaParams(float(rng.uniform(0, 0.99)), float(rng.uniform(1, 5))), cp),
        StrongClass(QParams(float(rng.uniform(0.01, 1)), float(rng.uniform(1, 5))), cp),
        PsiClass(PsiCoefficients(float(rng.uniform(0.1, 4)), float(rng.uniform(-3, 3))), cp),
    ]


class TestInvariants:
    def test_reseed_round_trip(self):
        rng = np.random.default_rng(11)
        for _ in range(300):
            for spec in _specs(rng):
                gen = random_schwarz if isinstance(spec, PsiClass) else random_caratheodory
                s1, s2 = (complex(v[0]) for v in gen(rng, 1))
                m = make_member(spec, s1, s2)
                r1, r2 = seed_from_coefficients(spec, m.a2, m.a3)
                assert abs(r1 - s1) < 1e-12 and abs(r2 - s2) < 1e-12

    def test_psi_two_sided_identity(self):
        """``2 A2^2 a2^2 (3B1^2 - 4B2) = B1^3 (b2 + c2)`` holds for every member."""
        rng = np.random.default_rng(5)
        for _ in range(300):
            spec = _specs(rng)[2]
            b1, b2 = (complex(v[0]) for v in random_schwarz(rng, 1))
            m = make_member(spec, b1, b2)
            A2, _ = weights(spec.cesaro)
            B1, B2 = spec.psi.B1, spec.psi.B2
            lhs = 2 * A2 ** 2 * m.a2 ** 2 * (3 * B1 ** 2 - 4 * B2)
            rhs = B1 ** 3 * (b2 + m.dual[1])
            assert abs(lhs - rhs) < 1e-9 * max(1, abs(rhs))

    def test_psi_identity_with_8b2_fails(self):
        spec = PsiClass(PsiCoefficients(2, 2), UNIT)
        m = make_member(spec, 0.5, 0.1)
        lhs = m.a2 ** 2 * (3 * 4 - 8 * 2)
        rhs = 8 * (0.1 + m.dual[1])
        assert abs(lhs - rhs) > 0.1

    def test_feasible_realpart_members_respect_bounds(self):
        rng = np.random.default_rng(3)
        checked = 0
        for _ in range(2000):
            spec = _specs(rng)[0]
            p1, p2 = (complex(v[0]) for v in random_caratheodory(rng, 1))
            m = make_member(spec, p1, p2)
            if not m.feasible:
                continue
            checked += 1
            assert abs(m.a2) <= bound_a2_realpart(spec.cesaro, spec.h).value * (1 + 1e-12)
            assert abs(m.a3) <= bound_a3_realpart(spec.cesaro, spec.h).value * (1 + 1e-12)
        assert checked > 200


class TestVerify:
    def test_identity_realpart(self):
        m = make_Hbeta_member(CaratheodoryPrefix(0, 0), CesaroParams(4, 1), HBetaParams(0.3, 2))
        rep = verify_membership(m, samples=64)
        assert rep.passed and rep.extremal_value == pytest.approx(1.0) and rep.threshold == 0.3

    def test_identity_strong(self):
        m = make_Q_member(CaratheodoryPrefix(0, 0), CesaroParams(4, 1), QParams(0.5, 1))
        rep = verify_membership(m, samples=64)
        assert rep.passed and rep.extremal_value == 0 and rep.threshold == pytest.approx(math.pi / 4)

    def test_identity_psi(self):
        m = make_psi_member(SchwarzPrefix(0, 0), CesaroParams(3, 1), PsiCoefficients(2, 2))
        rep = verify_membership(m, samples=64)
        assert rep.passed and rep.extremal_value == pytest.approx(0, abs=1e-15)

    def test_psi_condition_detects_schwarz_part(self):
        # psi = 1 + 2z exactly and b = (0.5, 0): f' = 1 + z, so u = z/2 on the f side
        spec = PsiClass(PsiCoefficients(2, 0), UNIT)
        m = make_member(spec, 0.5, 0)
        rep = verify_membership(m, radius=0.9, samples=256)
        assert rep.extremal_value >= 0.45 - 1e-9

    def test_extremal_seed_report(self):
        m = make_Hbeta_member(CaratheodoryPrefix(2, 2), CesaroParams(3, 0), HBetaParams(0, 1), order=3)
        rep = verify_membership(m)
        d = rep.to_dict()
        assert set(d) == {"class", "params", "radius", "samples", "extremal_value",
                          "threshold", "pass", "flags"}
        assert "infeasible seed: inverse-side prefix not admissible" in d["flags"]
        assert math.isfinite(d["extremal_value"])
        json.dumps(d)

    def test_argument_checks(self):
        m = make_Hbeta_member(CaratheodoryPrefix(0, 0), UNIT, HBetaParams(0, 1))
        with pytest.raises(ValueError):
            verify_membership(m, radius=1.0)
        with pytest.raises(ValueError):
            verify_membership(m, samples=8)


def test_admissibility_helpers_vectorize():
    p1 = np.array([0, 2, 2])
    p2 = np.array([0, 2, 1])
    assert caratheodory_valid(p1, p2).tolist() == [True, True, False]
    assert schwarz_valid(np.array([0.5]), np.array([0.75])).tolist() == [True]
