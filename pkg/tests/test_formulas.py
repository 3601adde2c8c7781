"""
Tests for the closed-form divisor classes and their consistency checks
"""

from fractions import Fraction

import pytest

from errors import DegenerateDenominator, NonIntegralD, NonIntegralN, ParameterRange
from formulas import (
    KoszulSetup,
    bn_corollary_slope,
    ehpetri_ratio,
    emitted_mg_classes,
    gp_class,
    gp_slope,
    harris_morrison_bound,
    khosla_b0,
    khosla_class,
    khosla_slope_display,
    koszul_bound_check,
    koszul_class,
    koszul_slope,
    lin_b1t,
    lin_class,
    lin_recursion_check,
    logan_check,
    mrc_c0n_check,
    mrc_class,
    mrc_remark_class,
    nfold_bn_w_check,
    nfold_class,
    pencil_relation,
    pointed2_check,
    rank_difference,
    rank_identity_check,
    section5_vectors,
    syz_class,
    two_cover_slope,
    wahl_class,
)
from grassmann import castelnuovo_rs
from models import CoefficientStatus
from moduli import MgClass, slope


class TestKoszul:
    def test_setup(self):
        setup = KoszulSetup(2, 0)
        assert (setup.r, setup.g, setup.d) == (4, 10, 12)
        with pytest.raises(ParameterRange):
            KoszulSetup(0, 0)

    def test_slope_seven(self):
        assert koszul_slope(2, 0) == 7

    @pytest.mark.parametrize("i", range(5))
    def test_pencil_specialization(self, i):
        assert koszul_slope(1, i) == bn_corollary_slope(i) == Fraction(6 * (i + 3), i + 2)

    def test_pencil_value(self):
        assert koszul_slope(1, 3) == Fraction(36, 5)

    @pytest.mark.parametrize("i", [0, 1])
    def test_two_cover_specialization(self, i):
        assert koszul_slope(2, i) == two_cover_slope(i)

    def test_two_cover_value(self):
        assert two_cover_slope(1) == Fraction(407, 61)

    @pytest.mark.parametrize("s", range(2, 6))
    def test_khosla_specialization(self, s):
        assert koszul_slope(s, 0) == khosla_slope_display(s)

    @pytest.mark.parametrize("s, i", [(2, 0), (2, 1), (2, 2), (3, 0), (3, 1), (4, 0)])
    def test_between_six_and_bound(self, s, i):
        assert koszul_bound_check(s, i)

    def test_bound_needs_s2(self):
        with pytest.raises(ParameterRange):
            koszul_bound_check(1, 0)

    def test_harris_morrison(self):
        assert harris_morrison_bound(10) == Fraction(78, 11)

    @pytest.mark.parametrize("s, i", [(1, 0), (1, 1), (2, 0), (2, 1), (3, 2)])
    def test_rank_identity(self, s, i):
        assert rank_identity_check(s, i)
        assert rank_difference(s, i) == 0

    def test_class_from_chain(self):
        cls = koszul_class(2, 0)
        assert slope(cls).s_b0 == 7
        assert pencil_relation(cls) == 0


class TestKhosla:
    def test_b0(self):
        assert khosla_b0(2) == 1

    def test_class(self):
        cls = khosla_class(2)
        assert cls.g == 10
        assert slope(cls).s_b0 == 7
        assert cls.b(1) == 5
        assert cls.b(5) == Fraction(50, 3)
        assert cls.b(4) == Fraction(72, 5)
        assert cls.delta[2].status is CoefficientStatus.UNKNOWN
        assert slope(cls).s_min is None
        assert pencil_relation(cls) == 0

    def test_needs_s2(self):
        with pytest.raises(ParameterRange):
            khosla_class(1)


class TestGiesekerPetri:
    def test_genus_four(self):
        assert gp_slope(1, 2) == Fraction(17, 2)
        cls = gp_class(1, 2)
        assert (cls.a, cls.b(0), cls.b(1)) == (408, 48, 168)

    @pytest.mark.parametrize("r", range(1, 6))
    def test_two_sheeted(self, r):
        assert gp_slope(r, 2) == ehpetri_ratio(r)

    @pytest.mark.parametrize("r, s", [(1, 2), (1, 3), (2, 2), (2, 3), (3, 2), (3, 4)])
    def test_class_slope(self, r, s):
        cls = gp_class(r, s)
        assert slope(cls).s_b0 == gp_slope(r, s)
        assert gp_slope(r, s) > harris_morrison_bound(cls.g)
        assert pencil_relation(cls) == 0

    def test_inner_b_are_bounds(self):
        cls = gp_class(2, 2)
        assert cls.delta[2].status is CoefficientStatus.LOWER_BOUND_ONLY
        assert cls.delta[2].bound == cls.b(1)

    def test_degenerate(self):
        with pytest.raises(DegenerateDenominator):
            gp_class(1, 1)


class TestPointedBrillNoether:
    @pytest.mark.parametrize("r", [2, 3, 4])
    def test_logan(self, r):
        comparison = logan_check(r)
        assert comparison.passed
        cls = lin_class(r, 1)
        assert cls.scale == 1
        assert (cls.lam.value, cls.psi.value, cls.d_irr.value) == (-1, 1, 0)

    @pytest.mark.parametrize("t", range(1, 4))
    def test_logan_genus_one_strata(self, t):
        assert lin_b1t(2, 1, t) == t * (t - 1) // 2

    @pytest.mark.parametrize("r", [1, 2, 3])
    def test_two_sheeted_display(self, r):
        assert pointed2_check(r).passed

    def test_two_sheeted_values(self):
        cls = lin_class(1, 2)
        n = castelnuovo_rs(1, 2)
        assert cls.scaled("lam") / n == 4
        assert cls.scaled("psi") / n == Fraction(1, 2)
        assert cls.scaled("d_irr") / n == Fraction(-1, 2)

    @pytest.mark.parametrize("r, s, t", [(2, 1, 1), (2, 1, 2), (1, 2, 1), (2, 2, 1), (2, 2, 2)])
    def test_genus_one_recursion(self, r, s, t):
        assert lin_recursion_check(r, s, 1, t)

    def test_degenerate(self):
        with pytest.raises(DegenerateDenominator):
            lin_class(1, 1)


class TestMinimalResolution:
    def test_scaled_values(self):
        cls = mrc_class(5, 1, 0)
        assert cls.n == 12
        assert cls.scale == Fraction(1, 4)
        assert cls.scaled("lam") == -13
        assert cls.scaled("psi") == 2
        assert cls.scaled("d_irr") == 1
        assert cls.scale * cls.delta(0, 2).value == -5

    def test_inner_strata_are_bounds(self):
        cls = mrc_class(4, 1, 0)
        assert cls.delta(1, 2).status is CoefficientStatus.LOWER_BOUND_ONLY

    @pytest.mark.parametrize("g", [4, 5, 6])
    @pytest.mark.parametrize("r", [1, 2])
    def test_display(self, g, r):
        display = mrc_remark_class(g, r)
        cls = mrc_class(g, r, 0)
        for name in ("lam", "psi", "d_irr"):
            assert cls.scaled(name) == display.scaled(name)
        assert cls.scale * cls.delta(0, 2).value == display.delta(0, 2).value

    @pytest.mark.parametrize("g", [3, 4, 5, 6])
    @pytest.mark.parametrize("r", [1, 2])
    def test_c0n_chain(self, g, r):
        for i in range(g + 1):
            if (2 * r + 1) * (g - 1) - 2 * i < 1:
                continue
            assert mrc_c0n_check(g, r, i).agrees, i

    def test_range(self):
        with pytest.raises(ParameterRange):
            mrc_class(2, 1, 0)
        with pytest.raises(ParameterRange):
            mrc_class(3, 1, 4)


class TestNfold:
    def test_values(self):
        cls = nfold_class(19, 7)
        assert (cls.lam.value, cls.psi.value, cls.d_irr.value) == (15484, 6188, -2548)

    @pytest.mark.parametrize("g, n", [(19, 7), (3, 1), (5, 3), (6, 2), (7, 9)])
    def test_bn_w(self, g, n):
        assert nfold_bn_w_check(g, n).passed

    def test_errors(self):
        with pytest.raises(NonIntegralD):
            nfold_class(4, 1)
        with pytest.raises(DegenerateDenominator):
            nfold_class(4, 4)
        with pytest.raises(ParameterRange):
            nfold_class(2, 2)


class TestSyzygyAndWahl:
    @pytest.mark.parametrize(
        "g, i, n, lam, psi",
        [(6, 0, 10, Fraction(-15, 4), Fraction(9, 4)), (5, 1, 10, Fraction(-14), Fraction(7))],
    )
    def test_syz(self, g, i, n, lam, psi):
        points, cls = syz_class(g, i)
        assert points == n
        assert cls.scaled("lam") == lam
        assert cls.scaled("psi") == psi
        assert cls.scaled("d_irr") == 0

    def test_syz_non_integral(self):
        with pytest.raises(NonIntegralN):
            syz_class(5, 0)

    @pytest.mark.parametrize("g, n, lam", [(1, 5, -3), (2, 7, -4), (5, 12, -6)])
    def test_wahl(self, g, n, lam):
        points, cls = wahl_class(g)
        assert points == n
        assert cls.lam.value == lam
        assert cls.psi.value == -lam
        assert cls.d_irr.value == -1

    def test_wahl_non_integral(self):
        with pytest.raises(NonIntegralN):
            wahl_class(3)


class TestQuotedVectors:
    def test_all_agree(self):
        vectors = section5_vectors()
        assert {v.name for v in vectors} == {
            "petri_M4", "mrc_M4_15", "mrc_M5_12", "mrc_M4_16_pullback", "lin_M18_9", "gp_M18",
        }
        for vector in vectors:
            assert vector.agrees, vector.name

    def test_emitted_classes_satisfy_pencil_relation(self):
        classes = emitted_mg_classes(koszul_points=(), gp_r=range(1, 3), gp_s=(2, 3), khosla_s=(2,))
        assert len(classes) == 5
        assert all(pencil_relation(cls) == 0 for cls in classes)

    def test_pencil_relation_needs_exact_b1(self):
        assert pencil_relation(MgClass.from_b(4, 1, {0: 1})) is None
