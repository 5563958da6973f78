"""The logged fallback path: pushforward to a base plus the cited fact tables."""
import pytest

from g2cert.axioms import (
    justified_cohomology_M,
    justified_ext_M,
    resolve_cohomology_M,
)
from g2cert.bundles import (
    SPRIME,
    U,
    UD,
    dual,
    ext_M,
    line_bundle,
    tensor,
    twist,
)
from g2cert.cohomology import LineClass, Profile


def O(a, b):
    return line_bundle(LineClass(a, b))


EXC = Profile.of({0: 1})
EMPTY = Profile()


class TestResolver:
    def test_tautological_endomorphisms(self):
        got = resolve_cohomology_M(tensor(dual(U), U))
        assert got is not None
        profile, via = got
        assert profile == EXC and "rho" in via

    def test_spinor_type_endomorphisms(self):
        profile, via = resolve_cohomology_M(tensor(dual(SPRIME), SPRIME))
        assert profile == EXC and "pi" in via

    def test_spinor_type_sections_vanish(self):
        profile, via = resolve_cohomology_M(SPRIME)
        assert profile == EMPTY and "S" in via

    def test_unpresentable_mixed_tensor(self):
        mixed = tensor(twist(U, LineClass(1, 0)), SPRIME)
        assert resolve_cohomology_M(mixed) is None

    def test_resolution_agrees_with_direct_when_both_apply(self):
        v = twist(U, LineClass(1, 0))
        direct, det = ext_M(O(0, 0), v)
        assert det.determined
        resolved = resolve_cohomology_M(v)
        assert resolved is not None and resolved[0] == direct


class TestJustifiedChecks:
    @pytest.mark.parametrize("a,b,expected", [
        (U, U, EXC),
        (UD, UD, EXC),
        (SPRIME, SPRIME, EXC),
        (O(0, 0), SPRIME, EMPTY),
        (SPRIME, O(-1, 0), EMPTY),
        (SPRIME, O(-3, 0), EMPTY),
        (O(-2, 1), SPRIME, EMPTY),
        (UD, O(0, -1), EMPTY),
        (twist(UD, LineClass(0, 1)), U, EMPTY),
    ])
    def test_axiom_resolved_pairs(self, a, b, expected):
        rec = justified_ext_M("pair", a, b, expected)
        assert rec.ok and rec.justification == "axiom"
        assert "pushforward" in rec.via

    @pytest.mark.parametrize("a,b,expected", [
        (O(1, 0), O(1, 0), EXC),
        (UD, U, EMPTY),
        (twist(UD, LineClass(-1, 0)), U, Profile.of({1: 1})),
        (O(-1, 1), SPRIME, EMPTY),
    ])
    def test_direct_pairs_stay_direct(self, a, b, expected):
        rec = justified_ext_M("pair", a, b, expected)
        assert rec.ok and rec.justification == "direct"

    def test_mixed_pair_needs_declared_fact(self):
        a = twist(UD, LineClass(-1, 0))
        rec = justified_ext_M("pair", a, SPRIME, EMPTY)
        assert not rec.ok and rec.justification == "axiom"
        rec2 = justified_ext_M("pair", a, SPRIME, EMPTY, known="mutated-pair orthogonality")
        assert rec2.ok and rec2.via == "mutated-pair orthogonality"

    def test_declared_fact_cannot_override_infeasible_profile(self):
        # Expected value outside the cancellation cone is rejected even with a fact.
        a = twist(UD, LineClass(-1, 0))
        rec = justified_ext_M("pair", a, SPRIME, Profile.of({3: 1}),
                              known="bogus fact")
        assert not rec.ok
        assert rec.via == "expected profile inconsistent with bounds"

    def test_wrong_expected_value_fails_on_resolved_profile(self):
        rec = justified_ext_M("pair", U, U, EMPTY)
        assert not rec.ok and rec.justification == "axiom"

    def test_direct_checks_have_no_bounds_payload(self):
        rec = justified_cohomology_M("coh", twist(U, LineClass(1, 0)), EXC)
        assert rec.ok and rec.justification == "direct"
        assert isinstance(rec.found, dict) and "bounds" not in rec.found
