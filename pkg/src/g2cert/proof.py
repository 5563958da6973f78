"""The verification script: initial decomposition, ten moves, and the certificate.

The shipped script starts from the six-object decomposition pulled back
from G together with an opaque block, and replays the move sequence that
ends in the six-object decomposition pulled back from Q.  Each move is
re-verified numerically; after every move the whole collection is rechecked
for exceptionality and semiorthogonality.  The accumulated functor composed
onto the block must equal the expected composition.
"""
from __future__ import annotations

from dataclasses import dataclass

from . import __version__
from .axioms import justified_ext_M
from .bundles import (
    KD,
    SPRIME,
    U,
    UD,
    FilteredBundle,
    cohomology_F,
    cohomology_M,
    euler_M,
    line_bundle,
    twist,
)
from .certificate import Certificate, CheckRecord, Section, StepRecord, check
from .cohomology import FLAG, FlagCohomology, K_M, LineClass, Profile
from .mutations import (
    BlockMutation,
    Commute,
    ExcCollection,
    BlockToken,
    LeftMutation,
    MutationStep,
    RightMutation,
    SerreMove,
    apply_step,
    collection_checks,
    gram,
    is_upper_unitriangular,
    probe_set,
)

EXPECTED_FUNCTOR = "L<O(H-2h),O(H-h)> . R<O(h)> . L<O(H),Ud(H)> . j_* . q^*"

FINAL_DISPLAY = ("O(-3h)", "O(-2h)", "O(-h)", "Sprime", "O(0)", "O(h)", "Phi3(D(Y))")


@dataclass(frozen=True)
class ScriptStep:
    step_id: int
    kind: str
    moves: tuple[MutationStep, ...]
    quote: str
    expected_after: tuple[str, ...]


@dataclass(frozen=True)
class ProofScript:
    initial: ExcCollection
    steps: tuple[ScriptStep, ...]
    expected_functor: str | None = None
    final_display: tuple[str, ...] | None = None


def _O(a: int, b: int) -> FilteredBundle:
    return line_bundle(LineClass(a, b))


def initial_collection() -> ExcCollection:
    return ExcCollection((
        _O(0, -1), U, _O(0, 0), UD, _O(0, 1), twist(UD, LineClass(0, 1)),
        BlockToken("Phi0(D(Y))"),
    ))


def equivalence_script() -> ProofScript:
    """The ten recorded moves taking the G-side decomposition to the Q-side one."""
    steps = (
        ScriptStep(
            1, "block_mutation",
            (BlockMutation("Phi1(D(Y))", "L<O(H),Ud(H)>", -2),),
            "move the block two positions left through O(H) and Ud(H), composing the"
            " left mutation through that pair onto its functor",
            ("O(-H)", "U", "O(0)", "Ud", "Phi1(D(Y))", "O(H)", "Ud(H)"),
        ),
        ScriptStep(
            2, "serre_move",
            (SerreMove(("O(H)", "Ud(H)"), "far_left"),),
            "carry the trailing pair O(H), Ud(H) to the far left; both objects pick up"
            " a twist by the canonical class K_M = O(-h-H)",
            ("O(-h)", "Ud(-h)", "O(-H)", "U", "O(0)", "Ud", "Phi1(D(Y))"),
        ),
        ScriptStep(
            3, "commute",
            (Commute(("O(-h)", "Ud(-h)"), "right"),),
            "swap O(-h) and Ud(-h) one position right past O(-H); both forward Ext"
            " spaces vanish, via H^*(M, O(h-H)) = 0 and H^*(M, U(h-H)) = 0",
            ("O(-H)", "O(-h)", "Ud(-h)", "U", "O(0)", "Ud", "Phi1(D(Y))"),
        ),
        ScriptStep(
            4, "left_mutation",
            (LeftMutation("U", "Ud(-h)", SPRIME),),
            "mutate U one position left through Ud(-h); Ext^*(Ud(-h), U) is k in"
            " degree 1, so the mutation is the rank-4 extension Sprime",
            ("O(-H)", "O(-h)", "Sprime", "Ud(-h)", "O(0)", "Ud", "Phi1(D(Y))"),
        ),
        ScriptStep(
            5, "serre_move",
            (SerreMove(("O(-H)",), "far_right"),),
            "carry O(-H) to the far right; it picks up a twist by -K_M = O(h+H)",
            ("O(-h)", "Sprime", "Ud(-h)", "O(0)", "Ud", "Phi1(D(Y))", "O(h)"),
        ),
        ScriptStep(
            6, "block_mutation",
            (BlockMutation("Phi2(D(Y))", "R<O(h)>", 1),),
            "move the block one position right through O(h), composing the right"
            " mutation through O(h) onto its functor",
            ("O(-h)", "Sprime", "Ud(-h)", "O(0)", "Ud", "O(h)", "Phi2(D(Y))"),
        ),
        ScriptStep(
            7, "right_mutation",
            (RightMutation("Ud(-h)", "O(0)", _O(-2, 1)),
             RightMutation("Ud", "O(h)", _O(-1, 1))),
            "mutate Ud(-h) and Ud one position right through O(0) and O(h); both Ext"
            " spaces are k in degree 0 via H^*(M, U(h)) = k, and the cones of the"
            " evaluation surjections are O(H-2h) and O(H-h), shifted by one",
            ("O(-h)", "Sprime", "O(0)", "O(H-2h)", "O(h)", "O(H-h)", "Phi2(D(Y))"),
        ),
        ScriptStep(
            8, "commute",
            (Commute(("O(h)",), "left"),),
            "swap O(h) one position left past O(H-2h); the forward Ext vanishes via"
            " H^*(M, O(3h-H)) = 0",
            ("O(-h)", "Sprime", "O(0)", "O(h)", "O(H-2h)", "O(H-h)", "Phi2(D(Y))"),
        ),
        ScriptStep(
            9, "block_mutation",
            (BlockMutation("Phi3(D(Y))", "L<O(H-2h),O(H-h)>", -2),),
            "move the block two positions left through O(H-2h) and O(H-h), composing"
            " the left mutation through that pair onto its functor",
            ("O(-h)", "Sprime", "O(0)", "O(h)", "Phi3(D(Y))", "O(H-2h)", "O(H-h)"),
        ),
        ScriptStep(
            10, "serre_move",
            (SerreMove(("O(H-2h)", "O(H-h)"), "far_left"),),
            "carry the trailing pair O(H-2h), O(H-h) to the far left, twisting by"
            " K_M; they become O(-3h) and O(-2h)",
            FINAL_DISPLAY,
        ),
    )
    return ProofScript(initial_collection(), steps, EXPECTED_FUNCTOR, FINAL_DISPLAY)


# -- section reproductions ------------------------------------------------------

def _flag_check(name: str, v: FilteredBundle, expected: Profile,
                flag: FlagCohomology) -> CheckRecord:
    profile, det = cohomology_F(v, flag)
    ok = det.determined and profile == expected
    found = profile.to_json() if det.determined else {
        "bounds": {"lower": det.lower.to_json(), "upper": det.upper.to_json()}}
    return check(name, expected.to_json(), found, ok)


def _divisor_check(name: str, v: FilteredBundle, expected: Profile,
                   flag: FlagCohomology) -> CheckRecord:
    profile, det = cohomology_M(v, flag)
    ok = det.determined and profile == expected
    found = profile.to_json() if det.determined else {
        "bounds": {"lower": det.lower.to_json(), "upper": det.upper.to_json()}}
    return check(name, expected.to_json(), found, ok)


def verify_lemma1(flag: FlagCohomology = FLAG) -> Section:
    """Acyclicity and the three pinned profiles for line and rank-2 bundles on F."""
    empty = Profile()
    checks = []
    for t in range(-8, 9):
        checks.append(_flag_check(f"H(F, O({LineClass(t, -1).render()}))",
                                  _O(t, -1), empty, flag))
        checks.append(_flag_check(f"H(F, O({LineClass(-1, t).render()}))",
                                  _O(-1, t), empty, flag))
    checks.append(_flag_check("H(F, O(-2H))", _O(0, -2), empty, flag))
    checks.append(_flag_check("H(F, O(2h-2H))", _O(2, -2), empty, flag))
    checks.append(_flag_check("H(F, O(3h-2H))", _O(3, -2), Profile.single(1, 1), flag))
    from .bundles import tensor
    u_h = twist(U, LineClass(1, 0))
    items = (
        ("H(F, U(-2H))", twist(U, LineClass(0, -2)), empty),
        ("H(F, U(-H))", twist(U, LineClass(0, -1)), empty),
        ("H(F, U(h-H))", twist(U, LineClass(1, -1)), empty),
        ("H(F, U*U(-H))", tensor(U, twist(U, LineClass(0, -1))), empty),
        ("H(F, U(h))", u_h, Profile.single(0, 1)),
        ("H(F, U*U(h))", tensor(U, u_h), Profile.single(1, 1)),
    )
    for name, v, expected in items:
        checks.append(_flag_check(name, v, expected, flag))
    return Section("acyclicity on the flag variety", tuple(checks))


def verify_corollary(flag: FlagCohomology = FLAG) -> Section:
    """The five divisor-level profiles, plus the structure sheaf and an Euler recheck."""
    from .bundles import tensor
    empty = Profile()
    u_h = twist(U, LineClass(1, 0))
    items = (
        ("H(M, O(h-H))", _O(1, -1), empty),
        ("H(M, O(3h-H))", _O(3, -1), empty),
        ("H(M, U(h-H))", twist(U, LineClass(1, -1)), empty),
        ("H(M, U(h))", u_h, Profile.single(0, 1)),
        ("H(M, U*U(h))", tensor(U, u_h), Profile.single(1, 1)),
        ("H(M, O(0))", _O(0, 0), Profile.single(0, 1)),
    )
    checks = [_divisor_check(name, v, expected, flag) for name, v, expected in items]
    got = euler_M(u_h, flag)
    checks.append(check("euler consistency of H(M, U(h))", 1, got, got == 1))
    return Section("acyclicity on the divisor M", tuple(checks))


def verify_proposition(flag: FlagCohomology = FLAG) -> Section:
    """Construction data of the rank-4 extension Sprime.

    Checks the one-dimensional degree-1 Ext space on F and M, the
    one-dimensional space of middle extension classes, and the factor,
    rank, determinant and pullback bookkeeping of the three-step filtration
    O(-h), Kd(-2h), O(0).
    """
    from .bundles import dual, tensor
    checks = []
    ud_mh = twist(UD, LineClass(-1, 0))
    w = tensor(dual(ud_mh), U)
    profile_f, det_f = cohomology_F(w, flag)
    checks.append(check("Ext_F(Ud(-h), U)", {"1": 1}, profile_f.to_json(),
                        det_f.determined and profile_f == Profile.single(1, 1)))
    checks.append(_divisor_check("Ext_M(Ud(-h), U)", w, Profile.single(1, 1), flag))
    ext_cls = tensor(dual(_O(-2, 1)), _O(1, -1))
    checks.append(_flag_check("Ext_F(O(H-2h), O(h-H))", ext_cls,
                              Profile.single(1, 1), flag))
    middle = twist(KD, LineClass(-2, 0))
    expected_factors = (LineClass(-1, 0),) + middle.factors + (LineClass(0, 0),)
    checks.append(check(
        "three-step filtration factors O(-h), Kd(-2h), O(0)",
        [c.render() for c in expected_factors],
        [c.render() for c in SPRIME.factors],
        SPRIME.factors == expected_factors))
    checks.append(check("rank(Sprime)", 4, SPRIME.rank, SPRIME.rank == 4))
    det_expected = U.det + ud_mh.det
    checks.append(check("det(Sprime) = det(U) + det(Ud(-h))",
                        det_expected.render(), SPRIME.det.render(),
                        SPRIME.det == det_expected))
    pieces_pulled_back = (
        _O(-1, 0).presentation("pi") is not None
        and _O(0, 0).presentation("pi") is not None
        and KD.name == "Kd"  # Kd is the pi-pushforward of O(H), a Q-bundle by construction
    )
    checks.append(check(
        "three-step pieces are pullbacks from Q",
        True, pieces_pulled_back, pieces_pulled_back))
    return Section("construction of the rank-4 extension", tuple(checks))


def calibration_anchors(flag: FlagCohomology = FLAG) -> list[CheckRecord]:
    anchors = (
        ("H(F, O(h))", LineClass(1, 0), Profile.single(0, 7)),
        ("H(F, O(H))", LineClass(0, 1), Profile.single(0, 14)),
        ("H(F, O(3h-2H))", LineClass(3, -2), Profile.single(1, 1)),
    )
    out = []
    for name, c, expected in anchors:
        got = flag.line_cohomology(c)
        out.append(check(name, expected.to_json(), got.to_json(), got == expected))
    return out


def verify_final_identification(final: ExcCollection,
                                flag: FlagCohomology = FLAG) -> Section:
    """Numerical witness that Sprime occupies the spinor slot.

    Sprime must be right orthogonal to O(0) and O(h) and left orthogonal to
    O(-3h), O(-2h), O(-h); rank 4 forces multiplicity one against the cited
    rank-4 generator; and the Gram matrix of the final six objects must be
    upper unitriangular, with the lower triangle agreeing with the verified
    Ext profiles.
    """
    objs = {o.name: o for o in final.explicit()}
    sp = objs["Sprime"]
    checks = []
    pairs = (
        ("Ext(O(0),Sprime)", objs["O(0)"], sp),
        ("Ext(O(h),Sprime)", objs["O(h)"], sp),
        ("Ext(Sprime,O(-h))", sp, objs["O(-h)"]),
        ("Ext(Sprime,O(-2h))", sp, objs["O(-2h)"]),
        ("Ext(Sprime,O(-3h))", sp, objs["O(-3h)"]),
    )
    for name, a, b in pairs:
        checks.append(justified_ext_M(name, a, b, Profile(), flag,
                                      final.known_fact(a.name, b.name)))
    checks.append(check("rank forces multiplicity one", 4, sp.rank, sp.rank == 4))
    g = gram(final, flag)
    checks.append(check("final Gram upper unitriangular",
                        True, [list(r) for r in g], is_upper_unitriangular(g)))
    return Section("identification of the rank-4 slot", tuple(checks))


# -- the run ----------------------------------------------------------------------

MODEL_LIMITATIONS = (
    "objects are ordered line-bundle factor lists; extension data and morphisms are not modelled",
    "profiles are certified only when degree bookkeeping forces them; ambiguous values pass only through the logged axiom path",
    "declared results of mutations are verified by rank, determinant and probe equalities, which is numerical equivalence relative to the probe set, not K-theoretic equality",
    "acyclicity and exceptionality facts for the two cited base collections are axioms; fullness of those collections is assumed, not checked",
    "base facts for the rank-4 generator are applied to the constructed extension before the final identification; validity is carried by mutation invariance and confirmed by the identification section",
)


def run(script: ProofScript, flag: FlagCohomology = FLAG,
        probes: tuple[FilteredBundle, ...] | None = None,
        trace: bool = False) -> Certificate:
    """Replay the script with full logging and assemble the certificate."""
    import sys

    probes = probes if probes is not None else probe_set()

    def note(msg: str) -> None:
        if trace:
            print(msg, file=sys.stderr)

    anchors = calibration_anchors(flag)
    header = {
        "tool_version": __version__,
        "calibration": {
            "assignment": flag.calibration.describe(),
            "anchors": [c.to_json() for c in anchors],
        },
        "model_limitations": list(MODEL_LIMITATIONS),
        "probe_count": len(probes),
    }
    lemma1 = verify_lemma1(flag)
    corollary = verify_corollary(flag)
    proposition = verify_proposition(flag)
    note(f"sections: lemma1 {lemma1.ok}, corollary {corollary.ok}, proposition {proposition.ok}")

    functor = "j_* . q^*"
    coll = script.initial
    steps: list[StepRecord] = []
    initial_checks = collection_checks(coll, flag)
    steps.append(StepRecord(0, "initial", "checks of the starting decomposition",
                            tuple(initial_checks), coll.display()))
    note(f"step 0: {'PASS' if steps[-1].ok else 'FAIL'}")
    failed = not steps[-1].ok

    for sstep in script.steps:
        if failed:
            steps.append(StepRecord(sstep.step_id, sstep.kind, sstep.quote, (),
                                    (), skipped=True))
            continue
        checks: list[CheckRecord] = []
        structural_error = None
        for move in sstep.moves:
            if isinstance(move, BlockMutation):
                functor = f"{move.functor} . {functor}"
            try:
                coll, move_checks = apply_step(coll, move, sstep.step_id, probes, flag)
            except Exception as exc:  # structural failure: record and stop
                structural_error = str(exc)
                break
            checks.extend(move_checks)
        if structural_error is not None:
            checks.append(check("step applies structurally", "ok", structural_error, False))
        else:
            checks.extend(collection_checks(coll, flag))
            if sstep.expected_after:
                got = coll.display()
                checks.append(check("collection matches the recorded display",
                                    list(sstep.expected_after), list(got),
                                    got == sstep.expected_after))
        record = StepRecord(sstep.step_id, sstep.kind, sstep.quote, tuple(checks),
                            coll.display())
        steps.append(record)
        note(f"step {sstep.step_id}: {'PASS' if record.ok else 'FAIL'}")
        if not record.ok:
            failed = True

    final_section = None
    if (not failed and script.final_display is not None
            and coll.display() == script.final_display):
        fchecks = list(verify_final_identification(coll, flag).checks)
        if script.expected_functor is not None:
            same = _normalize(functor) == _normalize(script.expected_functor)
            fchecks.append(check("functor composition", script.expected_functor,
                                 functor, same))
        final_section = Section("identification of the rank-4 slot", tuple(fchecks))
        note(f"final identification: {'PASS' if final_section.ok else 'FAIL'}")

    overall = (
        all(c.ok for c in anchors)
        and lemma1.ok and corollary.ok and proposition.ok
        and all(s.ok for s in steps)
        and (final_section.ok if final_section is not None else not failed)
        and (final_section is not None or script.final_display is None)
    )
    return Certificate(header, lemma1, corollary, proposition, tuple(steps),
                       final_section, functor, overall)


def _normalize(s: str) -> str:
    return "".join(s.split())


def collection_after(script: ProofScript, step_id: int,
                     flag: FlagCohomology = FLAG) -> ExcCollection:
    """Replay without checks up to and including step_id (0 = initial)."""
    coll = script.initial
    probes = ()
    for sstep in script.steps:
        if sstep.step_id > step_id:
            break
        for move in sstep.moves:
            coll, _ = apply_step(coll, move, sstep.step_id, probes, flag)
    return coll


# -- negative-control variants ----------------------------------------------------

def script_with_wrong_declaration() -> ProofScript:
    """Declares O(H-h) where the first right mutation produces O(H-2h)."""
    base = equivalence_script()
    steps = list(base.steps)
    bad = ScriptStep(
        7, "right_mutation",
        (RightMutation("Ud(-h)", "O(0)", _O(-1, 1)),
         RightMutation("Ud", "O(h)", _O(-1, 1))),
        steps[6].quote, steps[6].expected_after)
    steps[6] = bad
    return ProofScript(base.initial, tuple(steps), base.expected_functor,
                       base.final_display)


def script_with_wrong_canonical_class() -> ProofScript:
    """Twists the first Serre move by O(-h) instead of the canonical class."""
    base = equivalence_script()
    steps = list(base.steps)
    bad = ScriptStep(
        2, "serre_move",
        (SerreMove(("O(H)", "Ud(H)"), "far_left", LineClass(-1, 0)),),
        steps[1].quote, steps[1].expected_after)
    steps[1] = bad
    return ProofScript(base.initial, tuple(steps), base.expected_functor,
                       base.final_display)
