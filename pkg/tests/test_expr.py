"""Bundle expression grammar: parsing, precedence, round trips, errors."""
from collections import Counter

import pytest
from hypothesis import given, strategies as st

from g2cert.bundles import SPRIME, U, UD, dual, line_bundle, tensor, twist
from g2cert.cohomology import LineClass
from g2cert.expr import ParseError, parse_bundle, parse_line_form


class TestAtoms:
    def test_named_atoms(self):
        assert parse_bundle("U").factors == U.factors
        assert parse_bundle("Ud").factors == UD.factors
        assert parse_bundle("Sprime").factors == SPRIME.factors

    def test_line_atoms(self):
        assert parse_bundle("O(3h-2H)").factors == (LineClass(3, -2),)
        assert parse_bundle("O(-h)").factors == (LineClass(-1, 0),)
        assert parse_bundle("O(0)").factors == (LineClass(0, 0),)
        assert parse_bundle("O(H-2h)").factors == (LineClass(-2, 1),)
        assert parse_bundle("O(2h+3H)").factors == (LineClass(2, 3),)


class TestStructure:
    def test_dual_call(self):
        assert parse_bundle("dual(U)").factors == UD.factors

    def test_postfix_twist_binds_tighter_than_tensor(self):
        got = parse_bundle("U*U(h)")
        want = tensor(U, twist(U, LineClass(1, 0)))
        assert Counter(got.factors) == Counter(want.factors)

    def test_dual_then_twist(self):
        got = parse_bundle("dual(U)(-h)")
        want = twist(dual(U), LineClass(-1, 0))
        assert got.factors == want.factors

    def test_whitespace_insignificant(self):
        a = parse_bundle(" dual( U ) ( - h ) * O( 2H ) ")
        b = parse_bundle("dual(U)(-h)*O(2H)")
        assert a.factors == b.factors

    def test_iterated_twists_compose(self):
        got = parse_bundle("U(h)(h)(-2H)")
        assert got.factors == twist(U, LineClass(2, -2)).factors


class TestErrors:
    def test_unknown_atom_position(self):
        with pytest.raises(ParseError) as err:
            parse_bundle("O(3h-2X)")
        assert err.value.position == 6
        assert "h" in err.value.expected

    def test_trailing_garbage(self):
        with pytest.raises(ParseError):
            parse_bundle("U)")

    def test_bare_nonzero_constant(self):
        with pytest.raises(ParseError):
            parse_bundle("O(3)")

    def test_missing_paren(self):
        with pytest.raises(ParseError) as err:
            parse_bundle("dual(U")
        assert ")" in err.value.expected

    def test_empty_input(self):
        with pytest.raises(ParseError):
            parse_bundle("")


class TestRoundTrip:
    @given(st.integers(-9, 9), st.integers(-9, 9))
    def test_line_render_reparses(self, a, b):
        c = LineClass(a, b)
        assert parse_line_form(c.render()) == c

    @given(st.integers(-4, 4), st.integers(-4, 4))
    def test_builtin_twist_names_reparse(self, a, b):
        for base in (U, UD, SPRIME, line_bundle(LineClass(0, 0))):
            v = twist(base, LineClass(a, b))
            again = parse_bundle(v.name)
            assert again.factors == v.factors and again.shift == v.shift

    def test_dual_names_reparse(self):
        for v in (dual(U), twist(dual(UD), LineClass(2, -1)), dual(SPRIME)):
            again = parse_bundle(v.name)
            assert again.factors == v.factors
