import random
from math import factorial

import pytest

from lamtrans.characters import class_size
from lamtrans.errors import CapExceeded
from lamtrans.partitions import multinomial, partitions_of, refines
from lamtrans.perm import Permutation, compose, identity, inverse, parse_perm
from lamtrans.tabloids import (
    Tabloid,
    YoungCoset,
    act,
    fixed_tabloid_count,
    tabloids_of_shape,
    young_subgroup,
)


def rep_of_type(alpha):
    """Canonical permutation with the given cycle type: consecutive cycles."""
    n = sum(alpha)
    images = list(range(1, n + 1))
    start = 1
    for length in alpha:
        pts = list(range(start, start + length))
        for a, b in zip(pts, pts[1:] + pts[:1]):
            images[a - 1] = b
        start += length
    return Permutation(images)


def fixed_count_oracle(g, la):
    """Definition-level count: enumerate every tabloid and test blockwise
    fixedness directly."""
    return sum(1 for P in tabloids_of_shape(g.degree, la) if act(g, P) == P)


def rand_perm(rng, n):
    imgs = list(range(1, n + 1))
    rng.shuffle(imgs)
    return Permutation(imgs)


class TestTabloid:
    def test_validation(self):
        with pytest.raises(ValueError):
            Tabloid([{1}, {2, 3}])  # sizes increase
        with pytest.raises(ValueError):
            Tabloid([{1, 2}, {2, 3}])  # overlap
        with pytest.raises(ValueError):
            Tabloid([{1, 2}, {4}])  # gap

    def test_printing(self):
        assert str(Tabloid([{1, 2, 5}, {3, 7}, {4, 6}])) == "{1,2,5|3,7|4,6}"

    def test_order_matters_for_equal_sizes(self):
        assert Tabloid([{1, 2}, {3, 4}]) != Tabloid([{3, 4}, {1, 2}])


class TestEnumeration:
    @pytest.mark.parametrize(
        "n,la,count", [(4, (2, 2), 6), (7, (5, 1, 1), 42), (3, (3,), 1)]
    )
    def test_counts(self, n, la, count):
        tabs = tabloids_of_shape(n, la)
        assert len(tabs) == count == multinomial(la)

    def test_canonical_order_strictly_increasing(self):
        for la in partitions_of(5):
            keys = [P.sort_key() for P in tabloids_of_shape(5, la)]
            assert keys == sorted(keys)
            assert len(set(keys)) == len(keys)

    def test_weight_mismatch(self):
        with pytest.raises(ValueError):
            tabloids_of_shape(5, (2, 2))


class TestAction:
    def test_identity_fixes(self):
        for P in tabloids_of_shape(4, (2, 1, 1)):
            assert act(identity(4), P) == P

    def test_direct_image(self):
        P = Tabloid([{1, 3}, {2}])
        assert act(parse_perm("(1 2)", 3), P) == Tabloid([{2, 3}, {1}])

    def test_action_axiom(self):
        rng = random.Random(21)
        tabs = tabloids_of_shape(5, (2, 2, 1))
        for _ in range(50):
            g, h = rand_perm(rng, 5), rand_perm(rng, 5)
            P = rng.choice(tabs)
            assert act(g, act(h, P)) == act(compose(g, h), P)

    def test_degree_mismatch(self):
        with pytest.raises(ValueError):
            act(identity(4), Tabloid([{1, 2, 3}]))


class TestYoungSubgroup:
    def test_trivial(self):
        P = Tabloid([{i} for i in range(1, 5)])
        assert len(young_subgroup(P)) == 1

    def test_full(self):
        assert len(young_subgroup(Tabloid([set(range(1, 5))]))) == 24

    def test_two_blocks_exact_elements(self):
        Y = young_subgroup(Tabloid([{1, 2}, {3, 4}]))
        expected = {
            identity(4),
            parse_perm("(1 2)", 4),
            parse_perm("(3 4)", 4),
            parse_perm("(1 2)(3 4)", 4),
        }
        assert Y.elements == expected
        assert Y.known_group

    def test_cap(self):
        with pytest.raises(CapExceeded):
            young_subgroup(Tabloid([set(range(1, 11))]), cap=10**5)

    def test_order_formula(self):
        P = Tabloid([{1, 2, 3}, {4, 5}, {6}])
        assert len(young_subgroup(P)) == factorial(3) * factorial(2)


class TestYoungCoset:
    def test_membership_matches_explicit_coset(self):
        rng = random.Random(23)
        P = Tabloid([{1, 2}, {3, 4}])
        Y = young_subgroup(P)
        g = rand_perm(rng, 4)
        coset = YoungCoset(P, act(g, P))
        explicit = {compose(g, y) for y in Y}
        import itertools

        for h in (Permutation(p) for p in itertools.permutations(range(1, 5))):
            assert (h in coset) == (h in explicit)

    def test_intersection_size_is_coset_count(self):
        # for the full group every coset of a shape-la stabilizer meets it
        # in exactly prod(la_i!) elements
        import itertools

        S4 = [Permutation(p) for p in itertools.permutations(range(1, 5))]
        P = Tabloid([{1, 2}, {3}, {4}])
        for Q in tabloids_of_shape(4, (2, 1, 1)):
            assert YoungCoset(P, Q).intersection_size(S4) == 2

    def test_shape_mismatch(self):
        with pytest.raises(ValueError):
            YoungCoset(Tabloid([{1, 2}, {3}]), Tabloid([{1}, {2}, {3}]))


class TestFixedCount:
    def test_identity_fixes_all(self):
        for la in partitions_of(5):
            assert fixed_tabloid_count(identity(5), la) == multinomial(la)

    def test_double_transposition(self):
        g = parse_perm("(1 2)(3 4)", 4)
        assert fixed_tabloid_count(g, (2, 2)) == 2

    def test_full_cycle_fixes_nothing_finer(self):
        g = parse_perm("(1 2 3 4 5 6)", 6)
        for la in partitions_of(6):
            if la != (6,):
                assert fixed_tabloid_count(g, la) == 0

    def test_matches_enumeration_oracle(self):
        for n in range(2, 7):
            for alpha in partitions_of(n):
                g = rep_of_type(alpha)
                for la in partitions_of(n):
                    assert fixed_tabloid_count(g, la) == fixed_count_oracle(g, la)

    def test_depends_only_on_cycle_type(self):
        rng = random.Random(22)
        for _ in range(20):
            g = rand_perm(rng, 6)
            h = rand_perm(rng, 6)
            conj = compose(h, compose(g, inverse(h)))
            for la in partitions_of(6):
                assert fixed_tabloid_count(g, la) == fixed_tabloid_count(conj, la)

    def test_burnside_over_full_group_gives_one_orbit(self):
        for n in range(2, 7):
            for la in partitions_of(n):
                total = sum(
                    class_size(alpha) * fixed_tabloid_count(rep_of_type(alpha), la)
                    for alpha in partitions_of(n)
                )
                assert total == factorial(n)

    def test_positive_iff_type_refines_shape(self):
        for n in range(2, 7):
            for alpha in partitions_of(n):
                g = rep_of_type(alpha)
                for la in partitions_of(n):
                    assert (fixed_tabloid_count(g, la) > 0) == refines(alpha, la)
