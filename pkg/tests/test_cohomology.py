"""Borel-Weil-Bott on the flag variety: anchors, calibration, duality."""
import pytest
from hypothesis import given, strategies as st

from g2cert.cohomology import (
    FLAG,
    K_F,
    K_M,
    FlagCohomology,
    LineClass,
    PicCalibration,
    Profile,
    SHIPPED_CALIBRATION,
    SWAPPED_CALIBRATION,
)
from g2cert.weights import Weight

line = st.builds(LineClass, st.integers(-6, 6), st.integers(-6, 6))


class TestProfile:
    def test_of_drops_zero_entries(self):
        assert Profile.of({0: 1, 2: 0}) == Profile(((0, 1),))

    def test_add_and_euler(self):
        p = Profile.of({0: 2}) + Profile.of({1: 3, 0: 1})
        assert p == Profile.of({0: 3, 1: 3})
        assert p.euler() == 0
        assert p.total() == 6

    def test_shift_and_dominates(self):
        p = Profile.of({1: 2})
        assert p.shifted(-1) == Profile.of({0: 2})
        assert p.dominates(Profile.of({1: 1}))
        assert not Profile.of({1: 1}).dominates(p)

    def test_render(self):
        assert Profile().render() == "acyclic"
        assert Profile.of({1: 1}).render() == "H^1 = 1"


class TestAnchors:
    def test_seven_dimensional_anchor(self):
        assert FLAG.line_cohomology(LineClass(1, 0)) == Profile.of({0: 7})

    def test_fourteen_dimensional_anchor(self):
        assert FLAG.line_cohomology(LineClass(0, 1)) == Profile.of({0: 14})

    def test_relative_dualizing_class_anchor(self):
        assert FLAG.line_cohomology(LineClass(3, -2)) == Profile.of({1: 1})

    def test_structure_sheaf(self):
        assert FLAG.bott(Weight((0, 0))) == Profile.of({0: 1})

    def test_negative_rho_singular(self):
        assert FLAG.bott(Weight((-1, -1))).is_empty()

    def test_serre_dual_of_structure_sheaf(self):
        assert FLAG.line_cohomology(LineClass(-2, -2)) == Profile.of({6: 1})

    def test_exactly_one_calibration_passes(self):
        anchors = [
            (LineClass(1, 0), Profile.of({0: 7})),
            (LineClass(0, 1), Profile.of({0: 14})),
            (LineClass(3, -2), Profile.of({1: 1})),
        ]
        winners = []
        for cal in (SHIPPED_CALIBRATION, SWAPPED_CALIBRATION):
            engine = FlagCohomology(cal)
            if all(engine.line_cohomology(c) == p for c, p in anchors):
                winners.append(cal)
        assert winners == [SHIPPED_CALIBRATION]

    def test_swapped_calibration_fails_loudly(self):
        engine = FlagCohomology(SWAPPED_CALIBRATION)
        assert engine.line_cohomology(LineClass(1, 0)) != Profile.of({0: 7})


class TestPicWeight:
    def test_zero_and_rho(self):
        assert FLAG.pic_weight(LineClass(0, 0)) == Weight((0, 0))
        assert FLAG.pic_weight(LineClass(1, 1)) == Weight((1, 1))
        assert FLAG.pic_weight(LineClass(-1, -1)) == -Weight((1, 1))

    @given(line, line)
    def test_additivity(self, c1, c2):
        assert FLAG.pic_weight(c1 + c2) == FLAG.pic_weight(c1) + FLAG.pic_weight(c2)


class TestVanishing:
    @pytest.mark.parametrize("t", range(-5, 6))
    def test_relative_degree_minus_one_families(self, t):
        assert FLAG.line_cohomology(LineClass(t, -1)).is_empty()
        assert FLAG.line_cohomology(LineClass(-1, t)).is_empty()

    def test_single_degree_or_empty_on_box(self):
        for a in range(-8, 9):
            for b in range(-8, 9):
                assert len(FLAG.line_cohomology(LineClass(a, b)).entries) <= 1

    def test_serre_duality_on_box(self):
        for a in range(-6, 7):
            for b in range(-6, 7):
                c = LineClass(a, b)
                p, q = FLAG.line_cohomology(c), FLAG.line_cohomology(K_F - c)
                for d in range(7):
                    assert p.get(d) == q.get(6 - d)


class TestEuler:
    def test_examples(self):
        assert FLAG.euler_line(LineClass(0, 1)) == 14
        assert FLAG.euler_line(LineClass(3, -2)) == -1
        assert FLAG.euler_line(LineClass(-1, -1)) == 0

    def test_vanishes_exactly_on_singular_weights(self):
        for a in range(-6, 7):
            for b in range(-6, 7):
                c = LineClass(a, b)
                singular = FLAG.system.make_dominant_dot(FLAG.pic_weight(c)).singular
                assert (FLAG.euler_line(c) == 0) == singular

    def test_euler_equals_profile_alternating_sum(self):
        for a in range(-6, 7):
            for b in range(-6, 7):
                c = LineClass(a, b)
                assert FLAG.euler_line(c) == FLAG.line_cohomology(c).euler()


class TestRender:
    @pytest.mark.parametrize("c,text", [
        (LineClass(3, -2), "3h-2H"),
        (LineClass(-2, 1), "H-2h"),
        (LineClass(-1, -1), "-h-H"),
        (LineClass(0, 0), "0"),
        (LineClass(1, 1), "h+H"),
        (LineClass(0, -1), "-H"),
        (LineClass(-3, 0), "-3h"),
    ])
    def test_canonical_forms(self, c, text):
        assert c.render() == text

    def test_memoization_is_transparent(self):
        fresh = FlagCohomology(SHIPPED_CALIBRATION)
        probes = [LineClass(a, b) for a in range(-4, 5) for b in range(-4, 5)]
        first = [fresh.line_cohomology(c) for c in probes]
        second = [fresh.line_cohomology(c) for c in probes]
        assert first == second
        assert first == [FLAG.line_cohomology(c) for c in probes]
