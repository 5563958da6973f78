"""Exceptional collections on the divisor M at the numerical level.

Collections are immutable ordered tuples of explicit bundles and opaque
block tokens.  Exceptionality and semiorthogonality are checked through the
justified Ext machinery; mutations take declared results and verify them by
rank, determinant and probe bookkeeping against a fixed set of line-bundle
probes.  Positions of block tokens are pure bookkeeping.

Mutated pairs carry forward an orthogonality fact (the mutation of an
exceptional pair is again exceptional); the fact is stored on the
collection and consumed, with logging, only when a later direct computation
is ambiguous.
"""
from __future__ import annotations

from dataclasses import dataclass, replace
from typing import Union

from .axioms import justified_ext_M
from .bundles import FilteredBundle, dual, euler_pairing_M, line_bundle, tensor, twist
from .certificate import CheckRecord
from .cohomology import FLAG, FlagCohomology, K_M, LineClass, Profile

EXCEPTIONAL_PROFILE = Profile.single(0, 1)


@dataclass(frozen=True)
class BlockToken:
    """Opaque placeholder for a whole subcategory; never enters Ext checks."""

    label: str


Entry = Union[FilteredBundle, BlockToken]


@dataclass(frozen=True)
class ExcCollection:
    """Ordered semiorthogonal data: explicit bundles and block tokens.

    `known` holds orthogonality facts (later_name, earlier_name, provenance)
    granted by verified mutation steps; they remain valid while both objects
    survive unchanged.
    """

    entries: tuple[Entry, ...]
    known: tuple[tuple[str, str, str], ...] = ()

    def explicit(self) -> tuple[FilteredBundle, ...]:
        return tuple(e for e in self.entries if isinstance(e, FilteredBundle))

    def display(self) -> tuple[str, ...]:
        return tuple(
            e.name if isinstance(e, FilteredBundle) else e.label for e in self.entries
        )

    def index_of(self, name: str) -> int:
        for i, e in enumerate(self.entries):
            if isinstance(e, FilteredBundle) and e.name == name:
                return i
        raise KeyError(f"no object named {name!r} in the collection")

    def block_index(self) -> int:
        for i, e in enumerate(self.entries):
            if isinstance(e, BlockToken):
                return i
        raise KeyError("collection has no block token")

    def known_fact(self, later: str, earlier: str) -> str | None:
        for a, b, why in self.known:
            if a == later and b == earlier:
                return why
        return None

    def with_entries(self, entries: tuple[Entry, ...],
                     known: tuple[tuple[str, str, str], ...] | None = None) -> ExcCollection:
        return ExcCollection(entries, self.known if known is None else known)


# -- collection-level checks ---------------------------------------------------

def is_exceptional(obj: FilteredBundle, flag: FlagCohomology = FLAG,
                   known: str | None = None) -> CheckRecord:
    """Ext^*(E, E) must be exactly k in degree 0."""
    return justified_ext_M(f"exceptional({obj.name})", obj, obj,
                           EXCEPTIONAL_PROFILE, flag, known)


def is_semiorthogonal(coll: ExcCollection,
                      flag: FlagCohomology = FLAG) -> list[CheckRecord]:
    """Every backward Ext between explicit objects must vanish.

    Facts recorded on the collection are offered to the justifier for pairs
    whose direct computation is ambiguous.
    """
    objs = coll.explicit()
    out = []
    for j in range(len(objs)):
        for i in range(j):
            later, earlier = objs[j], objs[i]
            out.append(justified_ext_M(
                f"Ext({later.name},{earlier.name})", later, earlier, Profile(),
                flag, coll.known_fact(later.name, earlier.name)))
    return out


def collection_checks(coll: ExcCollection, flag: FlagCohomology = FLAG) -> list[CheckRecord]:
    checks = [is_exceptional(obj, flag) for obj in coll.explicit()]
    checks.extend(is_semiorthogonal(coll, flag))
    return checks


# -- probes and Gram matrices --------------------------------------------------

def probe_set(a_range: tuple[int, int] = (-3, 3),
              b_range: tuple[int, int] = (-2, 2)) -> tuple[FilteredBundle, ...]:
    """The fixed probe lines O(a*h + b*H), a in [-3,3], b in [-2,2] by default."""
    return tuple(
        line_bundle(LineClass(a, b))
        for a in range(a_range[0], a_range[1] + 1)
        for b in range(b_range[0], b_range[1] + 1)
    )


def probe_vector(obj: FilteredBundle, probes: tuple[FilteredBundle, ...],
                 flag: FlagCohomology = FLAG) -> tuple[int, ...]:
    left = tuple(euler_pairing_M(p, obj, flag) for p in probes)
    right = tuple(euler_pairing_M(obj, p, flag) for p in probes)
    return left + right


Gram = tuple[tuple[int, ...], ...]


def gram(coll: ExcCollection, flag: FlagCohomology = FLAG) -> Gram:
    objs = coll.explicit()
    return tuple(
        tuple(euler_pairing_M(a, b, flag) for b in objs) for a in objs
    )


def is_upper_unitriangular(g: Gram) -> bool:
    n = len(g)
    return all(
        (g[i][j] == (1 if i == j else 0)) for i in range(n) for j in range(i + 1)
    )


def _basis_change(g: Gram, rows: list[list[int]]) -> Gram:
    n = len(g)
    out = []
    for r in range(n):
        row = []
        for c in range(n):
            row.append(sum(rows[r][x] * g[x][y] * rows[c][y]
                           for x in range(n) for y in range(n)))
        out.append(tuple(row))
    return tuple(out)


def gram_mutate_left(g: Gram, i: int) -> Gram:
    """Numerical braid move at position i: ([B] - chi(A,B)[A], [A])."""
    n = len(g)
    if not 0 <= i < n - 1:
        raise IndexError(f"mutation position {i} out of range")
    c = g[i][i + 1]
    rows = [[1 if r == s else 0 for s in range(n)] for r in range(n)]
    rows[i] = [0] * n
    rows[i][i + 1] = 1
    rows[i][i] = -c
    rows[i + 1] = [0] * n
    rows[i + 1][i] = 1
    return _basis_change(g, rows)


def gram_mutate_right(g: Gram, i: int) -> Gram:
    """Inverse braid move at position i: ([B], [A] - chi(A,B)[B])."""
    n = len(g)
    if not 0 <= i < n - 1:
        raise IndexError(f"mutation position {i} out of range")
    c = g[i][i + 1]
    rows = [[1 if r == s else 0 for s in range(n)] for r in range(n)]
    rows[i] = [0] * n
    rows[i][i + 1] = 1
    rows[i + 1] = [0] * n
    rows[i + 1][i] = 1
    rows[i + 1][i + 1] = -c
    return _basis_change(g, rows)


# -- mutation steps --------------------------------------------------------------

@dataclass(frozen=True)
class Commute:
    """Swap a contiguous run of movers past one neighbour, both orders orthogonal."""

    movers: tuple[str, ...]
    direction: str  # "left" or "right"


@dataclass(frozen=True)
class SerreMove:
    """Carry extreme objects across the whole decomposition, twisting by the canonical class."""

    movers: tuple[str, ...]
    to: str  # "far_left" or "far_right"
    twist_by: LineClass = K_M


@dataclass(frozen=True)
class LeftMutation:
    """Replace target by the declared extension of target by through."""

    target: str
    through: str
    declared: FilteredBundle


@dataclass(frozen=True)
class RightMutation:
    """Replace target by the declared cone on a map to through (shift recorded)."""

    target: str
    through: str
    declared: FilteredBundle
    declared_shift: int = 1


@dataclass(frozen=True)
class BlockMutation:
    """Move the opaque block, recording the functor composed onto it."""

    new_label: str
    functor: str
    offset: int  # signed number of positions (negative moves left)


MutationStep = Union[Commute, SerreMove, LeftMutation, RightMutation, BlockMutation]


class StepError(ValueError):
    pass


def apply_step(coll: ExcCollection, step: MutationStep, step_id: int,
               probes: tuple[FilteredBundle, ...],
               flag: FlagCohomology = FLAG) -> tuple[ExcCollection, list[CheckRecord]]:
    """Execute one step, returning the new collection and its gate checks.

    Gate checks may fail; the caller decides whether to abort.  Structural
    impossibilities (missing names, non-adjacent pairs) raise StepError.
    """
    if isinstance(step, Commute):
        return _apply_commute(coll, step, flag)
    if isinstance(step, SerreMove):
        return _apply_serre(coll, step)
    if isinstance(step, LeftMutation):
        return _apply_left(coll, step, step_id, probes, flag)
    if isinstance(step, RightMutation):
        return _apply_right(coll, step, step_id, probes, flag)
    if isinstance(step, BlockMutation):
        return _apply_block(coll, step)
    raise StepError(f"unknown step {step!r}")


def _entry_positions(coll: ExcCollection, names: tuple[str, ...]) -> list[int]:
    pos = [coll.index_of(n) for n in names]
    if pos != list(range(pos[0], pos[0] + len(pos))):
        raise StepError(f"objects {names} are not contiguous")
    return pos


def _apply_commute(coll, step: Commute, flag):
    pos = _entry_positions(coll, step.movers)
    entries = list(coll.entries)
    if step.direction == "right":
        passed_idx = pos[-1] + 1
    elif step.direction == "left":
        passed_idx = pos[0] - 1
    else:
        raise StepError(f"bad commute direction {step.direction!r}")
    if not 0 <= passed_idx < len(entries):
        raise StepError("commute walks off the collection")
    passed = entries[passed_idx]
    if not isinstance(passed, FilteredBundle):
        raise StepError("commute across a block token is a block mutation")
    checks = []
    for name in step.movers:
        mover = entries[coll.index_of(name)]
        # The earlier object of the current order must have no forward Ext
        # into the later one; then the swap changes nothing.
        earlier, later = (mover, passed) if step.direction == "right" else (passed, mover)
        checks.append(justified_ext_M(
            f"Ext({earlier.name},{later.name})", earlier, later, Profile(), flag,
            coll.known_fact(earlier.name, later.name)))
    block = entries[pos[0]:pos[-1] + 1]
    del entries[pos[0]:pos[-1] + 1]
    if step.direction == "right":
        insert_at = pos[0] + 1
    else:
        insert_at = pos[0] - 1
    entries[insert_at:insert_at] = block
    return coll.with_entries(tuple(entries)), checks


def _apply_serre(coll, step: SerreMove):
    pos = _entry_positions(coll, step.movers)
    entries = list(coll.entries)
    n = len(entries)
    if step.to == "far_left":
        if pos[-1] != n - 1:
            raise StepError("far-left move requires the trailing objects")
        tw = step.twist_by
    elif step.to == "far_right":
        if pos[0] != 0:
            raise StepError("far-right move requires the leading objects")
        tw = -step.twist_by
    else:
        raise StepError(f"bad serre destination {step.to!r}")
    moved = [twist(entries[p], tw) for p in pos]
    renames = {coll.entries[p].name: m.name for p, m in zip(pos, moved)}
    del entries[pos[0]:pos[-1] + 1]
    if step.to == "far_left":
        entries[0:0] = moved
    else:
        entries.extend(moved)
    # Facts survive only if both members moved (a common twist preserves Ext).
    kept = []
    for a, b, why in coll.known:
        if a in renames and b in renames:
            kept.append((renames[a], renames[b], why))
        elif a not in renames and b not in renames:
            kept.append((a, b, why))
    return coll.with_entries(tuple(entries), tuple(kept)), []


def _declared_checks(kind: str, step_id: int, declared: FilteredBundle,
                     target: FilteredBundle, through: FilteredBundle, sigma: int,
                     probes, flag) -> list[CheckRecord]:
    """Rank, determinant and probe verification of a declared mutation result.

    At the class level [declared](-1)^sigma = [target] - epsilon[through]
    rearranges to the additive relations below; sigma is 0 for an extension
    and 1 for the cone of a surjection.
    """
    checks = []
    sign = -((-1) ** sigma)  # contribution of [declared] to [target] (right) or of [target]+[through] (left)
    if kind == "left":
        rank_expected = target.rank + through.rank
        det_expected = target.det + through.det
        rank_found, det_found = declared.rank, declared.det
    else:
        rank_expected = target.rank
        det_expected = target.det
        rank_found = through.rank + sign * declared.rank
        det_found = through.det + (declared.det if sign == 1 else -declared.det)
    checks.append(CheckRecord("rank bookkeeping", rank_expected, rank_found,
                              rank_expected == rank_found))
    checks.append(CheckRecord("det bookkeeping", det_expected.render(), det_found.render(),
                              det_expected == det_found))
    mismatches = []
    for p in probes:
        if kind == "left":
            lhs_l = euler_pairing_M(p, declared, flag)
            rhs_l = euler_pairing_M(p, target, flag) + euler_pairing_M(p, through, flag)
            lhs_r = euler_pairing_M(declared, p, flag)
            rhs_r = euler_pairing_M(target, p, flag) + euler_pairing_M(through, p, flag)
        else:
            lhs_l = euler_pairing_M(p, target, flag)
            rhs_l = euler_pairing_M(p, through, flag) + sign * euler_pairing_M(p, declared, flag)
            lhs_r = euler_pairing_M(target, p, flag)
            rhs_r = euler_pairing_M(through, p, flag) + sign * euler_pairing_M(declared, p, flag)
        if lhs_l != rhs_l or lhs_r != rhs_r:
            mismatches.append(f"{p.name}: ({lhs_l},{lhs_r}) vs ({rhs_l},{rhs_r})")
    checks.append(CheckRecord(
        "probe equality", f"all {len(probes)} probes on both sides",
        "agree" if not mismatches else "; ".join(mismatches[:4]), not mismatches))
    return checks


def _apply_left(coll, step: LeftMutation, step_id, probes, flag):
    i_through = coll.index_of(step.through)
    i_target = coll.index_of(step.target)
    if i_target != i_through + 1:
        raise StepError("left mutation needs through immediately before target")
    target = coll.entries[i_target]
    through = coll.entries[i_through]
    checks = [justified_ext_M(
        f"Ext({step.through},{step.target})", through, target,
        Profile.single(1, 1), flag, coll.known_fact(step.through, step.target))]
    checks.extend(_declared_checks("left", step_id, step.declared, target, through, 0,
                                   probes, flag))
    checks.append(is_exceptional(step.declared, flag))
    entries = list(coll.entries)
    entries[i_through] = step.declared
    entries[i_target] = through
    known = tuple(
        (a, b, why) for a, b, why in coll.known
        if step.target not in (a, b)
    ) + ((step.through, step.declared.name,
          f"left mutation (step {step_id}): an exceptional pair mutates to an exceptional pair"),)
    return coll.with_entries(tuple(entries), known), checks


def _apply_right(coll, step: RightMutation, step_id, probes, flag):
    i_target = coll.index_of(step.target)
    i_through = coll.index_of(step.through)
    if i_through != i_target + 1:
        raise StepError("right mutation needs through immediately after target")
    target = coll.entries[i_target]
    through = coll.entries[i_through]
    checks = [justified_ext_M(
        f"Ext({step.target},{step.through})", target, through,
        Profile.single(0, 1), flag, coll.known_fact(step.target, step.through))]
    checks.extend(_declared_checks("right", step_id, step.declared, target, through,
                                   step.declared_shift, probes, flag))
    checks.append(is_exceptional(step.declared, flag))
    entries = list(coll.entries)
    entries[i_target] = through
    entries[i_through] = step.declared
    known = tuple(
        (a, b, why) for a, b, why in coll.known
        if step.target not in (a, b)
    ) + ((step.declared.name, step.through,
          f"right mutation (step {step_id}): an exceptional pair mutates to an exceptional pair"),)
    return coll.with_entries(tuple(entries), known), checks


def _apply_block(coll, step: BlockMutation):
    i = coll.block_index()
    entries = list(coll.entries)
    token = entries.pop(i)
    j = i + step.offset
    if not 0 <= j <= len(entries):
        raise StepError("block move walks off the collection")
    entries.insert(j, BlockToken(step.new_label))
    return coll.with_entries(tuple(entries)), []
