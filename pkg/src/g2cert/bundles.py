"""Formal calculus of filtered homogeneous bundles on the flag variety F.

A bundle is modelled by an ordered list of line-bundle factor classes
(subobject first) plus a homological shift.  Cohomology on F is computed
factorwise through Borel-Weil-Bott, cohomology on the divisor M through the
two-term Koszul complex V(-h-H) -> V, and every profile comes with a
determinacy report saying whether degree bookkeeping alone forces it.

Extension data between factors is not modelled, so a profile is only
certified when no spectral-sequence differential can exist; otherwise the
report carries bounds and the caller must supply a justification.
"""
from __future__ import annotations

from dataclasses import dataclass, replace

from .cohomology import FLAG, EMPTY_PROFILE, FlagCohomology, K_M, LineClass, Profile

#: Fibration tags: "pi" contracts H-fibres onto the quadric Q (Pic = Z*h),
#: "rho" contracts h-fibres onto the Grassmannian hyperplane section G (Pic = Z*H).
PI = "pi"
RHO = "rho"


@dataclass(frozen=True)
class FiberPresentation:
    """Knowledge that a bundle is pullback(generator^power (x) O(base_twist)) (x) O(fiber_twist).

    The generator atom is the tautological rank-2 bundle U for rho and the
    rank-4 spinor-type bundle for pi; duals are normalised away using
    generator-dual = generator(1) on either base.
    """

    fibration: str
    power: int
    base_twist: int
    fiber_twist: int

    def dual(self) -> FiberPresentation:
        return FiberPresentation(
            self.fibration, self.power, self.power - self.base_twist, -self.fiber_twist
        )

    def twisted(self, c: LineClass) -> FiberPresentation:
        if self.fibration == PI:
            return replace(self, base_twist=self.base_twist + c.a,
                           fiber_twist=self.fiber_twist + c.b)
        return replace(self, base_twist=self.base_twist + c.b,
                       fiber_twist=self.fiber_twist + c.a)

    def tensor(self, other: FiberPresentation) -> FiberPresentation | None:
        if self.fibration != other.fibration:
            return None
        power = self.power + other.power
        if power > 2:
            return None
        return FiberPresentation(
            self.fibration,
            power,
            self.base_twist + other.base_twist,
            self.fiber_twist + other.fiber_twist,
        )


@dataclass(frozen=True)
class FilteredBundle:
    """Bundle modelled by ordered line-bundle factors (subobject first)."""

    name: str
    factors: tuple[LineClass, ...]
    shift: int = 0
    presentations: tuple[FiberPresentation, ...] = ()

    @property
    def rank(self) -> int:
        return len(self.factors)

    @property
    def det(self) -> LineClass:
        out = LineClass(0, 0)
        for f in self.factors:
            out = out + f
        return out

    def same_model(self, other: FilteredBundle) -> bool:
        return self.factors == other.factors and self.shift == other.shift

    def presentation(self, fibration: str) -> FiberPresentation | None:
        for p in self.presentations:
            if p.fibration == fibration:
                return p
        return None


def line_bundle(c: LineClass, name: str | None = None) -> FilteredBundle:
    """Rank-1 bundle O(c); lines carry both fibration presentations."""
    return FilteredBundle(
        name if name is not None else f"O({c.render()})",
        (c,),
        presentations=(
            FiberPresentation(PI, 0, c.a, c.b),
            FiberPresentation(RHO, 0, c.b, c.a),
        ),
    )


def twist(v: FilteredBundle, c: LineClass) -> FilteredBundle:
    """Tensor by the line bundle O(c); the name records the twist."""
    if c == LineClass(0, 0):
        return v
    return FilteredBundle(
        _twisted_name(v.name, c),
        tuple(f + c for f in v.factors),
        v.shift,
        tuple(p.twisted(c) for p in v.presentations),
    )


def dual(v: FilteredBundle) -> FilteredBundle:
    """Dual bundle: factors negated and reversed, shift negated."""
    return FilteredBundle(
        f"dual({v.name})",
        tuple(-f for f in reversed(v.factors)),
        -v.shift,
        tuple(p.dual() for p in v.presentations),
    )


def tensor(a: FilteredBundle, b: FilteredBundle) -> FilteredBundle:
    """Tensor product; factors are all pairwise sums, shifts add.

    No cancellation or simplification is performed, so rank and Euler
    characteristic bookkeeping stays exact.
    """
    pres = []
    for fib in (PI, RHO):
        pa, pb = a.presentation(fib), b.presentation(fib)
        if pa is not None and pb is not None:
            combined = pa.tensor(pb)
            if combined is not None:
                pres.append(combined)
    return FilteredBundle(
        f"{a.name}*{b.name}",
        tuple(fa + fb for fa in a.factors for fb in b.factors),
        a.shift + b.shift,
        tuple(pres),
    )


def shifted(v: FilteredBundle, delta: int) -> FilteredBundle:
    if delta == 0:
        return v
    return replace(v, name=f"{v.name}[{delta}]", shift=v.shift + delta)


def _twisted_name(name: str, c: LineClass) -> str:
    # Collapse a trailing twist on a named atom: "Ud(-h)" twisted again re-renders.
    base, tw = _split_twist(name)
    if base is not None:
        total = tw + c
        if total == LineClass(0, 0):
            return base if base != "O" else "O(0)"
        return f"{base}({total.render()})"
    return f"{name}({c.render()})"


def _split_twist(name: str) -> tuple[str | None, LineClass]:
    """Recognise ``atom`` or ``atom(lin)`` names so twists compose in display."""
    from .expr import parse_line_form  # local import to avoid a cycle

    atoms = ("O", "U", "Ud", "K", "Kd", "Sprime")
    if name in atoms:
        return name, LineClass(0, 0)
    for atom in atoms:
        if name.startswith(atom + "(") and name.endswith(")"):
            inner = name[len(atom) + 1:-1]
            lin = parse_line_form(inner)
            if lin is not None:
                return atom, lin
    return None, LineClass(0, 0)


# -- built-in bundles ---------------------------------------------------------

#: Tautological rank-2 subbundle pulled back from G: 0 -> O(-h) -> U -> O(h-H) -> 0.
U = FilteredBundle("U", (LineClass(-1, 0), LineClass(1, -1)),
                   presentations=(FiberPresentation(RHO, 1, 0, 0),))
#: Its dual: 0 -> O(H-h) -> Ud -> O(h) -> 0.
UD = FilteredBundle("Ud", (LineClass(-1, 1), LineClass(1, 0)),
                    presentations=(FiberPresentation(RHO, 1, 1, 0),))
#: Rank-2 bundle on Q with dual from 0 -> O(3h-H) -> Kd -> O(H) -> 0.
KD = FilteredBundle("Kd", (LineClass(3, -1), LineClass(0, 1)))
K = FilteredBundle("K", (LineClass(0, -1), LineClass(-3, 1)))
#: Rank-4 extension of Ud(-h) by U; equals the pullback of a rank-4 bundle on Q.
SPRIME = FilteredBundle(
    "Sprime",
    (LineClass(-1, 0), LineClass(1, -1), LineClass(-2, 1), LineClass(0, 0)),
    presentations=(FiberPresentation(PI, 1, 0, 0),),
)

BUILTINS = {"U": U, "Ud": UD, "K": K, "Kd": KD, "Sprime": SPRIME}


# -- determinacy --------------------------------------------------------------

@dataclass(frozen=True)
class Determinacy:
    """Whether degree bookkeeping forces a unique profile.

    When determined, lower == upper == the certified profile.  When
    ambiguous, upper assumes no spectral-sequence differential fires and
    lower applies a maximal chain of adjacent-degree cancellations (which
    preserves the Euler characteristic); `clashes` names the factor pairs
    that admit a differential.
    """

    determined: bool
    lower: Profile
    upper: Profile
    clashes: tuple[str, ...] = ()

    @staticmethod
    def certain(p: Profile) -> Determinacy:
        return Determinacy(True, p, p)

    def describe(self) -> str:
        if self.determined:
            return "Determined"
        return (f"Ambiguous (lower {self.lower.to_json()}, upper {self.upper.to_json()};"
                f" clashes: {'; '.join(self.clashes)})")


def greedy_lower(upper: Profile) -> Profile:
    """Profile left after maximal adjacent-degree cancellation, low degree first."""
    remaining = {d: n for d, n in upper.entries}
    for d in sorted(remaining):
        c = min(remaining.get(d, 0), remaining.get(d + 1, 0))
        if c > 0:
            remaining[d] -= c
            remaining[d + 1] -= c
    return Profile.of(remaining)


def cancellation_feasible(upper: Profile, target: Profile) -> bool:
    """Can `target` arise from `upper` by pairwise adjacent-degree cancellations?

    Each cancellation removes one class in degree d and one in degree d+1.
    Solves the chain system exactly.
    """
    if not upper.dominates(target):
        return False
    degrees = upper.degrees()
    if not degrees:
        return target.is_empty()
    lo, hi = min(degrees), max(degrees)
    carry = 0  # cancellations pairing degree d-1 with d
    for d in range(lo, hi + 1):
        deficit = upper.get(d) - target.get(d)
        c = deficit - carry  # cancellations pairing degree d with d+1
        if c < 0:
            return False
        carry = c
    return carry == 0


def _factor_profiles(v: FilteredBundle, flag: FlagCohomology) -> list[Profile]:
    return [flag.line_cohomology(c) for c in v.factors]


def _assemble(parts: list[tuple[str, Profile]], shift: int) -> tuple[Profile, Determinacy]:
    """Sum labelled per-piece profiles; ambiguous if adjacent degrees meet across pieces."""
    upper = EMPTY_PROFILE
    for _, p in parts:
        upper = upper + p
    clashes = []
    for i, (la, pa) in enumerate(parts):
        for j, (lb, pb) in enumerate(parts):
            if i >= j:
                continue
            for d, _ in pa.entries:
                if pb.get(d + 1) or pb.get(d - 1):
                    clashes.append(f"{la} vs {lb}")
                    break
    upper = upper.shifted(-shift)
    if clashes:
        return upper, Determinacy(False, greedy_lower(upper), upper, tuple(sorted(set(clashes))))
    return upper, Determinacy.certain(upper)


def cohomology_F(v: FilteredBundle, flag: FlagCohomology = FLAG) -> tuple[Profile, Determinacy]:
    """Factorwise Borel-Weil-Bott on F with a determinacy report.

    The profile is the degreewise sum of the factor profiles; it is certified
    only when no two distinct factors have cohomology in adjacent degrees.
    """
    parts = [(f"O({c.render()})", p)
             for c, p in zip(v.factors, _factor_profiles(v, flag)) if not p.is_empty()]
    profile, det = _assemble(parts, v.shift)
    if det.determined and v.shift == 0 and profile.entries:
        assert 0 <= profile.entries[0][0] and profile.entries[-1][0] <= 6
    return profile, det


def cohomology_M(v: FilteredBundle, flag: FlagCohomology = FLAG) -> tuple[Profile, Determinacy]:
    """Cohomology on the divisor M from the Koszul complex V(-h-H) -> V.

    Needs both F-profiles determined and degreewise disjoint; then
    H^d(M) = H^d(F, V) + H^(d+1)(F, V(-h-H)).  Any overlap, or ambiguity in
    either term, is propagated as an Ambiguous report with bounds.
    """
    v0 = replace(v, shift=0)
    restricted, det_v = cohomology_F(v0, flag)
    twisted_term, det_t = cohomology_F(twist(v0, K_M), flag)
    profile, det = koszul_combine(restricted, det_v, twisted_term, det_t)
    if det.determined and profile.entries:
        lo, hi = profile.entries[0][0], profile.entries[-1][0]
        assert 0 <= lo and hi <= 5, f"M-degree out of range for {v.name}"
    return profile.shifted(-v.shift), _shift_det(det, -v.shift)


def koszul_combine(prof_v: Profile, det_v: Determinacy,
                   prof_t: Profile, det_t: Determinacy) -> tuple[Profile, Determinacy]:
    """Combine H^*(F, V) with H^*(F, V(-h-H)) into H^*(M, V)."""
    combined_upper = prof_v + prof_t.shifted(-1)
    if not (det_v.determined and det_t.determined):
        clashes = det_v.clashes + det_t.clashes + ("ambiguous flag-level term",)
        upper = det_v.upper + det_t.upper.shifted(-1)
        return combined_upper, Determinacy(False, greedy_lower(upper), upper, clashes)
    overlap = [d for d, _ in prof_t.entries if prof_v.get(d)]
    if overlap:
        clashes = tuple(f"connecting map in degree {d}" for d in overlap)
        return combined_upper, Determinacy(
            False, greedy_lower(combined_upper), combined_upper, clashes)
    return combined_upper, Determinacy.certain(combined_upper)


def _shift_det(det: Determinacy, delta: int) -> Determinacy:
    if delta == 0:
        return det
    return Determinacy(det.determined, det.lower.shifted(delta),
                       det.upper.shifted(delta), det.clashes)


def ext_F(a: FilteredBundle, b: FilteredBundle,
          flag: FlagCohomology = FLAG) -> tuple[Profile, Determinacy]:
    """Ext profile on F: cohomology of dual(a) (x) b, degree-shifted by the shifts."""
    return cohomology_F(tensor(dual(a), b), flag)


def ext_M(a: FilteredBundle, b: FilteredBundle,
          flag: FlagCohomology = FLAG) -> tuple[Profile, Determinacy]:
    """Ext profile on M: Koszul cohomology of dual(a) (x) b."""
    return cohomology_M(tensor(dual(a), b), flag)


# -- Euler characteristics (always exact, independent of determinacy) ---------

def euler_F(v: FilteredBundle, flag: FlagCohomology = FLAG) -> int:
    sign = -1 if v.shift % 2 else 1
    return sign * sum(flag.euler_line(c) for c in v.factors)


def euler_M(v: FilteredBundle, flag: FlagCohomology = FLAG) -> int:
    return euler_F(v, flag) - euler_F(twist(v, K_M), flag)


def euler_pairing_M(a: FilteredBundle, b: FilteredBundle, flag: FlagCohomology = FLAG) -> int:
    return euler_M(tensor(dual(a), b), flag)


# -- projective-bundle pushforwards -------------------------------------------

@dataclass(frozen=True)
class PushforwardResult:
    """Total direct image of a line bundle along pi or rho."""

    zero: bool
    rank: int = 0
    det: LineClass = LineClass(0, 0)
    shift: int = 0
    description: str = ""


def pushforward_line(direction: str, c: LineClass) -> PushforwardResult:
    """Direct image of O(c) along a P^1-fibration of the flag variety.

    For pi the fibre coordinate is b and the base Pic is generated by h with
    the rank-2 bundle K; for rho the roles of a and b swap and K is replaced
    by U.  Fibre degree -1 kills the pushforward; degrees <= -2 contribute
    with a homological shift of one.
    """
    if direction == PI:
        fib, base = c.b, c.a
        det_gen, sym_dual, sym_low = -3, "Kd", "K"
        base_sym = "h"
    elif direction == RHO:
        fib, base = c.a, c.b
        det_gen, sym_dual, sym_low = -1, "Ud", "U"
        base_sym = "H"
    else:
        raise ValueError(f"unknown fibration {direction!r}")

    def base_line(k: int) -> LineClass:
        return LineClass(k, 0) if direction == PI else LineClass(0, k)

    if fib == -1:
        return PushforwardResult(zero=True, description="zero")
    if fib >= 0:
        rank = fib + 1
        det = base_line(-det_gen * (fib * (fib + 1) // 2) + base * rank)
        desc = f"Sym^{fib} {sym_dual}" if fib else "O"
        if base:
            desc += f"({base_line(base).render()})"
        return PushforwardResult(False, rank, det, 0, desc)
    m = -fib - 2
    rank = m + 1
    det = base_line(det_gen * (m * (m + 1) // 2) + det_gen * rank + base * rank)
    desc = f"Sym^{m} {sym_low} (x) det {sym_low}" if m else f"det {sym_low}"
    if base:
        desc += f"({base_line(base).render()})"
    return PushforwardResult(False, rank, det, 1, desc)
