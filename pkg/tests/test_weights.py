"""Root system and Weyl group tests, checked against a matrix-closure oracle.

The oracle builds the whole Weyl group as matrices acting on fundamental
coordinates, independent of the package's word-based enumeration, and
computes element lengths by counting inverted positive roots.
"""
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from g2cert.weights import G2, DotResult, RootSystem, Weight

coords = st.tuples(st.integers(-6, 6), st.integers(-6, 6))


def reflection_matrix(system, i):
    rank = system.rank
    rows = []
    for r in range(rank):
        row = [1 if r == c else 0 for c in range(rank)]
        row[i] -= system.cartan[r][i]
        rows.append(tuple(row))
    return tuple(rows)


def mat_mul(a, b):
    n = len(a)
    return tuple(
        tuple(sum(a[r][k] * b[k][c] for k in range(n)) for c in range(n))
        for r in range(n)
    )


def mat_apply(m, vec):
    return tuple(sum(m[r][c] * vec[c] for c in range(len(vec))) for r in range(len(vec)))


def weyl_closure(system):
    gens = [reflection_matrix(system, i) for i in range(system.rank)]
    identity = tuple(
        tuple(1 if r == c else 0 for c in range(system.rank)) for r in range(system.rank)
    )
    group = {identity}
    frontier = [identity]
    while frontier:
        m = frontier.pop()
        for g in gens:
            prod = mat_mul(g, m)
            if prod not in group:
                group.add(prod)
                frontier.append(prod)
    return group


def inverse_cartan(system):
    # Exact inverse via Gauss elimination over the rationals.
    n = system.rank
    aug = [[Fraction(system.cartan[r][c]) for c in range(n)]
           + [Fraction(1 if c == r else 0) for c in range(n)] for r in range(n)]
    for col in range(n):
        piv = next(r for r in range(col, n) if aug[r][col] != 0)
        aug[col], aug[piv] = aug[piv], aug[col]
        scale = aug[col][col]
        aug[col] = [x / scale for x in aug[col]]
        for r in range(n):
            if r != col and aug[r][col] != 0:
                f = aug[r][col]
                aug[r] = [x - f * y for x, y in zip(aug[r], aug[col])]
    return [row[n:] for row in aug]


def oracle_length(system, matrix, cinv):
    count = 0
    for root in system.positive_root_weights():
        image = mat_apply(matrix, root.coords)
        simple = [sum(cinv[r][c] * image[c] for c in range(system.rank))
                  for r in range(system.rank)]
        if all(x <= 0 for x in simple):
            count += 1
    return count


def oracle_dot(system, group, cinv, lam):
    shifted = (lam + system.rho).coords
    winners = []
    for m in group:
        image = mat_apply(m, shifted)
        if all(x >= 1 for x in image):
            winners.append((m, image))
    if not winners:
        return DotResult(singular=True)
    assert len(winners) == 1
    m, image = winners[0]
    dominant = Weight(image) - system.rho
    return DotResult(False, dominant, oracle_length(system, m, cinv))


class TestStructure:
    def test_positive_root_count(self):
        assert len(G2.positive_roots()) == 6

    def test_contains_simple_roots(self):
        roots = set(G2.positive_roots())
        assert (1, 0) in roots and (0, 1) in roots

    def test_positive_roots_sum_to_twice_rho(self):
        total = Weight((0, 0))
        for w in G2.positive_root_weights():
            total = total + w
        assert total == G2.rho.scaled(2)

    def test_weyl_count_and_lengths(self):
        elems = G2.enumerate_weyl()
        assert len(elems) == 12
        lengths = sorted(w.length for w in elems)
        assert lengths == [0, 1, 1, 2, 2, 3, 3, 4, 4, 5, 5, 6]
        assert max(lengths) == len(G2.positive_roots())

    def test_length_distribution_is_palindromic(self):
        from collections import Counter
        counts = Counter(w.length for w in G2.enumerate_weyl())
        for k in range(7):
            assert counts[k] == counts[6 - k]

    def test_enumeration_matches_matrix_closure(self):
        assert len(weyl_closure(G2)) == 12

    def test_cartan_validation(self):
        with pytest.raises(ValueError):
            RootSystem(((2, 1), (1, 2)))
        with pytest.raises(ValueError):
            RootSystem(((1, -1), (-1, 2)))


class TestBasicOps:
    def test_pairing_duality(self):
        w0, w1 = Weight((1, 0)), Weight((0, 1))
        assert G2.pairing(w0, 0) == 1 and G2.pairing(w0, 1) == 0
        assert G2.pairing(w1, 0) == 0 and G2.pairing(w1, 1) == 1

    def test_pairing_rho(self):
        assert all(G2.pairing(G2.rho, i) == 1 for i in range(2))

    def test_index_errors(self):
        with pytest.raises(IndexError):
            G2.pairing(G2.rho, 2)
        with pytest.raises(IndexError):
            G2.reflect(G2.rho, -1)

    def test_reflect_fixes_orthogonal_fundamental(self):
        assert G2.reflect(Weight((0, 1)), 0) == Weight((0, 1))
        assert G2.reflect(Weight((0, 0)), 0) == Weight((0, 0))

    def test_dot_reflect_at_zero_gives_negative_simple_root(self):
        for i in range(2):
            assert G2.dot_reflect(Weight((0, 0)), i) == -G2.simple_root(i)

    def test_dot_reflect_fixes_negative_rho(self):
        for i in range(2):
            assert G2.dot_reflect(-G2.rho, i) == -G2.rho

    @given(coords, st.integers(0, 1))
    def test_reflect_involution(self, c, i):
        lam = Weight(c)
        assert G2.reflect(G2.reflect(lam, i), i) == lam

    @given(coords, st.integers(0, 1))
    def test_dot_reflect_involution(self, c, i):
        lam = Weight(c)
        assert G2.dot_reflect(G2.dot_reflect(lam, i), i) == lam


class TestDominantDot:
    def test_zero_weight(self):
        res = G2.make_dominant_dot(Weight((0, 0)))
        assert res == DotResult(False, Weight((0, 0)), 0)

    def test_negative_rho_is_singular(self):
        assert G2.make_dominant_dot(-G2.rho).singular

    def test_agrees_with_brute_force_on_box(self):
        group = weyl_closure(G2)
        cinv = inverse_cartan(G2)
        for a in range(-6, 7):
            for b in range(-6, 7):
                lam = Weight((a, b))
                got = G2.make_dominant_dot(lam)
                want = oracle_dot(G2, group, cinv, lam)
                assert got == want, (a, b)


class TestWeylDim:
    @pytest.mark.parametrize("coords_,dim", [((0, 0), 1), ((0, 1), 7), ((1, 0), 14)])
    def test_anchor_dimensions(self, coords_, dim):
        assert G2.weyl_dim(Weight(coords_)) == dim

    def test_rejects_non_dominant(self):
        with pytest.raises(ValueError):
            G2.weyl_dim(Weight((-1, 0)))

    def test_positive_and_monotone(self):
        box = [Weight((a, b)) for a in range(0, 4) for b in range(0, 4)]
        for lam in box:
            assert G2.weyl_dim(lam) >= 1
        strict = Weight((1, 1))
        for mu in box:
            if mu == Weight((0, 0)):
                continue
            assert G2.weyl_dim(strict + mu) > G2.weyl_dim(strict)
