"""Root-system and Weyl-group combinatorics driven by a Cartan matrix.

All arithmetic is exact (Python integers and fractions); operations are
pure functions of their inputs and safe to evaluate concurrently.  The
shipped instance is the rank-2 system of type G2.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Sequence


@dataclass(frozen=True)
class Weight:
    """Integral weight in fundamental-weight coordinates."""

    coords: tuple[int, ...]

    def __add__(self, other: Weight) -> Weight:
        return Weight(tuple(a + b for a, b in zip(self.coords, other.coords, strict=True)))

    def __sub__(self, other: Weight) -> Weight:
        return Weight(tuple(a - b for a, b in zip(self.coords, other.coords, strict=True)))

    def __neg__(self) -> Weight:
        return Weight(tuple(-a for a in self.coords))

    def scaled(self, k: int) -> Weight:
        return Weight(tuple(k * a for a in self.coords))

    def is_dominant(self) -> bool:
        return all(a >= 0 for a in self.coords)

    def is_strictly_dominant(self) -> bool:
        return all(a > 0 for a in self.coords)


@dataclass(frozen=True)
class WeylElement:
    """Weyl group element carried as a reduced word of simple-reflection indices."""

    word: tuple[int, ...]

    @property
    def length(self) -> int:
        return len(self.word)


@dataclass(frozen=True)
class DotResult:
    """Outcome of driving a weight to the dominant chamber under the dot action.

    Either singular (the shifted weight lies on a reflection wall) or regular
    with the unique dominant representative and the number of dot reflections
    used, which equals the length of the minimising Weyl element.
    """

    singular: bool
    dominant: Weight | None = None
    length: int | None = None


class RootSystem:
    """Simple root system presented by an integer Cartan matrix.

    Weights are always stored in fundamental-weight coordinates, so the
    pairing with the i-th simple coroot is simply the i-th coordinate, and
    the i-th simple root is the i-th column of the Cartan matrix.
    """

    def __init__(self, cartan: Sequence[Sequence[int]]):
        rank = len(cartan)
        mat = tuple(tuple(int(x) for x in row) for row in cartan)
        if any(len(row) != rank for row in mat):
            raise ValueError("cartan matrix must be square")
        for i in range(rank):
            if mat[i][i] != 2:
                raise ValueError("cartan diagonal entries must equal 2")
            for j in range(rank):
                if i != j and mat[i][j] > 0:
                    raise ValueError("cartan off-diagonal entries must be nonpositive")
        self.rank = rank
        self.cartan = mat
        self.rho = Weight((1,) * rank)
        self._symmetrizers = self._compute_symmetrizers()
        self._positive_simple, self._positive_fw = self._compute_positive_roots()
        self._coroot_functionals = self._compute_coroot_functionals()
        self._rho_pairings = tuple(
            sum(f[k] for k in range(rank)) for f in self._coroot_functionals
        )

    # -- construction helpers -------------------------------------------------

    def _compute_symmetrizers(self) -> tuple[int, ...]:
        # d_i with d_i * C[i][j] symmetric; propagated over the Dynkin graph.
        d: list[Fraction | None] = [None] * self.rank
        d[0] = Fraction(1)
        pending = [0]
        while pending:
            i = pending.pop()
            for j in range(self.rank):
                if i != j and self.cartan[i][j] != 0 and d[j] is None:
                    d[j] = d[i] * Fraction(self.cartan[i][j], self.cartan[j][i])
                    pending.append(j)
        if any(x is None for x in d):
            raise ValueError("cartan matrix must be connected")
        lcm = 1
        for x in d:
            lcm = lcm * x.denominator // _gcd(lcm, x.denominator)
        return tuple(int(x * lcm) for x in d)

    def simple_root(self, i: int) -> Weight:
        """The i-th simple root in fundamental-weight coordinates."""
        self._check_index(i)
        return Weight(tuple(self.cartan[r][i] for r in range(self.rank)))

    def _compute_positive_roots(self):
        # Orbit closure of the simple roots under all simple reflections,
        # tracked simultaneously in simple-root and fundamental coordinates.
        seen: dict[tuple[int, ...], tuple[int, ...]] = {}
        frontier = []
        for i in range(self.rank):
            simple = tuple(1 if k == i else 0 for k in range(self.rank))
            fw = self.simple_root(i).coords
            seen[fw] = simple
            frontier.append((fw, simple))
        while frontier:
            fw, simple = frontier.pop()
            for i in range(self.rank):
                p = fw[i]
                col = tuple(self.cartan[r][i] for r in range(self.rank))
                nfw = tuple(a - p * c for a, c in zip(fw, col))
                nsimple = tuple(
                    a - p * (1 if k == i else 0) for k, a in enumerate(simple)
                )
                if nfw not in seen:
                    seen[nfw] = nsimple
                    frontier.append((nfw, nsimple))
        positives = sorted(
            (simple, fw) for fw, simple in seen.items() if all(c >= 0 for c in simple)
        )
        return (
            tuple(simple for simple, _ in positives),
            tuple(Weight(fw) for _, fw in positives),
        )

    def _compute_coroot_functionals(self) -> tuple[tuple[int, ...], ...]:
        # For each positive root alpha, the integer functional lambda -> <lambda, alpha^vee>.
        out = []
        for simple in self._positive_simple:
            norm2 = sum(
                simple[i] * simple[j] * self._symmetrizers[i] * self.cartan[i][j]
                for i in range(self.rank)
                for j in range(self.rank)
            )
            f = []
            for k in range(self.rank):
                q = Fraction(2 * simple[k] * self._symmetrizers[k], norm2)
                if q.denominator != 1:
                    raise ArithmeticError("coroot pairing failed to be integral")
                f.append(int(q))
            out.append(tuple(f))
        return tuple(out)

    def _check_index(self, i: int) -> None:
        if not 0 <= i < self.rank:
            raise IndexError(f"simple-root index {i} out of range for rank {self.rank}")

    # -- basic operations ------------------------------------------------------

    def pairing(self, lam: Weight, i: int) -> int:
        """Pairing of a weight with the i-th simple coroot."""
        self._check_index(i)
        return lam.coords[i]

    def reflect(self, lam: Weight, i: int) -> Weight:
        """Simple reflection s_i(lam) = lam - <lam, alpha_i^vee> alpha_i."""
        self._check_index(i)
        p = lam.coords[i]
        col = self.cartan
        return Weight(tuple(a - p * col[r][i] for r, a in enumerate(lam.coords)))

    def dot_reflect(self, lam: Weight, i: int) -> Weight:
        """Dot action of s_i: s_i(lam + rho) - rho."""
        return self.reflect(lam + self.rho, i) - self.rho

    def make_dominant_dot(self, lam: Weight) -> DotResult:
        """Drive lam to the dominant chamber by dot reflections.

        Repeatedly reflects at the smallest index whose rho-shifted pairing is
        negative.  A zero pairing encountered at any stage means the shifted
        weight lies on a wall, so the dot orbit is singular.  Otherwise the
        count of reflections equals the length of the unique Weyl element
        taking lam into the dominant chamber.
        """
        v = lam + self.rho
        count = 0
        while True:
            coords = v.coords
            if 0 in coords:
                return DotResult(singular=True)
            neg = next((i for i, c in enumerate(coords) if c < 0), None)
            if neg is None:
                return DotResult(singular=False, dominant=v - self.rho, length=count)
            v = self.reflect(v, neg)
            count += 1

    def weyl_dim(self, lam: Weight) -> int:
        """Dimension of the irreducible representation with highest weight lam.

        Exact product over positive coroots; the rational arithmetic must
        cancel to an integer, which is asserted.
        """
        if not lam.is_dominant():
            raise ValueError(f"weyl_dim requires a dominant weight, got {lam.coords}")
        shifted = (lam + self.rho).coords
        num = 1
        den = 1
        for f, rp in zip(self._coroot_functionals, self._rho_pairings):
            num *= sum(fk * ck for fk, ck in zip(f, shifted))
            den *= rp
        q = Fraction(num, den)
        if q.denominator != 1 or q <= 0:
            raise ArithmeticError(f"weyl dimension did not cancel exactly: {q}")
        return int(q)

    def positive_roots(self) -> tuple[tuple[int, ...], ...]:
        """All positive roots as integer vectors in the simple-root basis."""
        return self._positive_simple

    def positive_root_weights(self) -> tuple[Weight, ...]:
        """All positive roots in fundamental-weight coordinates."""
        return self._positive_fw

    @lru_cache(maxsize=None)
    def enumerate_weyl(self) -> tuple[WeylElement, ...]:
        """Every Weyl group element with a reduced word, in (length, word) order.

        Breadth-first closure of left multiplication by simple reflections;
        elements are distinguished by their action on rho, which is faithful.
        """
        identity = WeylElement(())
        seen = {self.rho.coords: identity}
        layer = [(identity, self.rho)]
        while layer:
            nxt = []
            for elem, image in layer:
                for i in range(self.rank):
                    nimage = self.reflect(image, i)
                    if nimage.coords not in seen:
                        nelem = WeylElement((i,) + elem.word)
                        seen[nimage.coords] = nelem
                        nxt.append((nelem, nimage))
            layer = nxt
        return tuple(sorted(seen.values(), key=lambda w: (w.length, w.word)))

    def act(self, element: WeylElement, lam: Weight) -> Weight:
        """Ordinary linear action; the rightmost letter acts first."""
        for i in reversed(element.word):
            lam = self.reflect(lam, i)
        return lam

    def dot_act(self, element: WeylElement, lam: Weight) -> Weight:
        return self.act(element, lam + self.rho) - self.rho


def _gcd(a: int, b: int) -> int:
    while b:
        a, b = b, a % b
    return a


#: Shipped instance: type G2, with the first simple root long and the second short.
G2 = RootSystem(((2, -1), (-3, 2)))
