import itertools
from fractions import Fraction
from math import factorial

import pytest

from lamtrans.characters import class_size, mn_character
from lamtrans.errors import CapExceeded
from lamtrans.partitions import (
    depth,
    dominates,
    hook_degree,
    partitions_of,
    refines,
)
from lamtrans.perm import compose, inverse
from lamtrans.scheme import (
    class_matrix,
    coeffs_m,
    coeffs_n,
    idempotent,
    krein,
    pair_type_table,
    sn_elements,
    split_matrix,
)


def frac_rank(rows):
    """Row rank over the rationals by Gaussian elimination (test oracle)."""
    rows = [[Fraction(x) for x in row] for row in rows]
    rank = 0
    cols = len(rows[0]) if rows else 0
    r = 0
    for c in range(cols):
        pivot = next((i for i in range(r, len(rows)) if rows[i][c] != 0), None)
        if pivot is None:
            continue
        rows[r], rows[pivot] = rows[pivot], rows[r]
        inv = 1 / rows[r][c]
        rows[r] = [x * inv for x in rows[r]]
        for i in range(len(rows)):
            if i != r and rows[i][c] != 0:
                f = rows[i][c]
                rows[i] = [a - f * b for a, b in zip(rows[i], rows[r])]
        r += 1
        rank += 1
    return rank


def krein_by_character_sums(n, la, mu, nu):
    """Independent route: structure constants from the triple character sum
    (f_la f_mu / (f_nu n!)) sum_alpha |C_alpha| chi_la chi_mu chi_nu."""
    s = sum(
        class_size(al) * mn_character(la, al) * mn_character(mu, al) * mn_character(nu, al)
        for al in partitions_of(n)
    )
    return Fraction(hook_degree(la) * hook_degree(mu), hook_degree(nu) * factorial(n)) * s


class TestEnumeration:
    def test_lexicographic_elements(self):
        elems = sn_elements(3)
        assert [g.images for g in elems] == sorted(g.images for g in elems)
        assert len(elems) == 6

    def test_type_table_symmetric(self):
        t = pair_type_table(4)
        for a in range(24):
            for b in range(24):
                assert t[a][b] == t[b][a]


class TestClassMatrices:
    def test_identity_type(self):
        A = class_matrix(4, (1, 1, 1, 1))
        assert all(A.entries[i][j] == (i == j) for i in range(24) for j in range(24))

    def test_sum_is_all_ones(self):
        n = 4
        total = [[0] * 24 for _ in range(24)]
        for alpha in partitions_of(n):
            A = class_matrix(n, alpha)
            for i in range(24):
                for j in range(24):
                    total[i][j] += A.entries[i][j]
        assert all(v == 1 for row in total for v in row)

    def test_row_sums_are_class_sizes(self):
        for alpha in partitions_of(3):
            A = class_matrix(3, alpha)
            assert all(sum(row) == class_size(alpha) for row in A.entries)

    def test_entry_is_cycle_type_relation(self):
        elems = sn_elements(3)
        A = class_matrix(3, (2, 1))
        for i, g in enumerate(elems):
            for j, h in enumerate(elems):
                gh = compose(g, inverse(h))
                expect = 1 if sorted(len(c) for c in gh.cycles(full=True)) == [1, 2] else 0
                assert A.entries[i][j] == expect

    def test_cap(self):
        with pytest.raises(CapExceeded):
            class_matrix(6, (6,))


class TestIdempotents:
    def test_top_is_uniform(self):
        E = idempotent(4, (4,))
        assert all(v == Fraction(1, 24) for row in E.entries for v in row)

    def test_traces_are_squared_degrees(self):
        for mu in partitions_of(4):
            assert idempotent(4, mu).trace() == hook_degree(mu) ** 2

    def test_n3_trace_example(self):
        assert idempotent(3, (2, 1)).trace() == 4

    def test_resolution_of_identity(self):
        n = 4
        dim = 24
        total = [[Fraction(0)] * dim for _ in range(dim)]
        for mu in partitions_of(n):
            E = idempotent(n, mu)
            for i in range(dim):
                for j in range(dim):
                    total[i][j] += E.entries[i][j]
        assert all(total[i][j] == (1 if i == j else 0) for i in range(dim) for j in range(dim))

    def test_cap(self):
        with pytest.raises(CapExceeded):
            idempotent(6, (6,))


def unordered_partitions_two_two():
    """The three unordered {2,2} set partitions of {1..4}."""
    return [
        ({1, 2}, {3, 4}),
        ({1, 3}, {2, 4}),
        ({1, 4}, {2, 3}),
    ]


class TestSplitMatrix:
    def test_singleton_shape_is_identity(self):
        C = split_matrix(4, (1, 1, 1, 1))
        assert all(C.entries[i][j] == (i == j) for i in range(24) for j in range(24))

    def test_single_block_is_all_ones(self):
        C = split_matrix(4, (4,))
        assert all(v == 1 for row in C.entries for v in row)

    def test_two_two_entries_by_enumeration(self):
        # independent oracle: count unordered pair partitions whose blocks
        # are unions of cycles of a b^-1, for every entry
        elems = sn_elements(4)
        C = split_matrix(4, (2, 2))
        for i, a in enumerate(elems):
            for j, b in enumerate(elems):
                g = compose(a, inverse(b))
                cycles = [frozenset(c) for c in g.cycles(full=True)]
                count = 0
                for B1, B2 in unordered_partitions_two_two():
                    if all(c <= B1 or c <= B2 for c in cycles):
                        count += 1
                assert C.entries[i][j] == count

    def test_diagonal_of_two_two(self):
        C = split_matrix(4, (2, 2))
        assert all(C.entries[i][i] == 3 for i in range(24))


class TestCoefficients:
    def test_m_values_for_two_two(self):
        assert coeffs_m(4, (2, 2)) == {
            (4,): 0, (3, 1): 0, (2, 2): 1, (2, 1, 1): 1, (1, 1, 1, 1): 3,
        }

    def test_m_singleton_shape(self):
        m = coeffs_m(5, (1, 1, 1, 1, 1))
        assert all(v == (1 if al == (1, 1, 1, 1, 1) else 0) for al, v in m.items())

    def test_m_support_is_refinement(self):
        for n in range(2, 9):
            for la in partitions_of(n):
                m = coeffs_m(n, la)
                assert m[la] >= 1
                for al, v in m.items():
                    assert (v > 0) == refines(al, la)

    def test_n_top_shape(self):
        for n in (3, 4, 5):
            nn = coeffs_n(n, (n,))
            assert all(v == (factorial(n) if mu == (n,) else 0) for mu, v in nn.items())

    def test_n_singleton_shape(self):
        nn = coeffs_n(4, (1, 1, 1, 1))
        assert all(v == 1 for v in nn.values())

    def test_n_support_is_dominance(self):
        for n in range(2, 9):
            for la in partitions_of(n):
                nn = coeffs_n(n, la)
                for mu, v in nn.items():
                    assert (v != 0) == dominates(mu, la)

    def test_n_two_two_support(self):
        nn = coeffs_n(4, (2, 2))
        assert [mu for mu, v in nn.items() if v != 0] == [(4,), (3, 1), (2, 2)]

    @pytest.mark.parametrize("n", [3, 4])
    def test_matrix_cross_check(self, n):
        dim = factorial(n)
        for la in partitions_of(n):
            C = split_matrix(n, la)
            m = coeffs_m(n, la)
            nn = coeffs_n(n, la)
            As = {al: class_matrix(n, al) for al in partitions_of(n)}
            Es = {mu: idempotent(n, mu) for mu in partitions_of(n)}
            for i in range(dim):
                for j in range(dim):
                    from_m = sum(m[al] * As[al].entries[i][j] for al in m)
                    from_n = sum(nn[mu] * Es[mu].entries[i][j] for mu in nn)
                    assert C.entries[i][j] == from_m == from_n

    @pytest.mark.parametrize("n", [3, 4, 5])
    def test_split_family_has_full_rank(self, n):
        rows = [list(coeffs_m(n, la).values()) for la in partitions_of(n)]
        assert frac_rank(rows) == len(partitions_of(n))


class TestBoseMesnerAxioms:
    @pytest.mark.parametrize("n", [3, 4])
    def test_products_stay_in_span(self, n):
        # A_alpha A_beta must be constant on pair-type classes
        parts = partitions_of(n)
        table = pair_type_table(n)
        dim = factorial(n)
        mats = {al: class_matrix(n, al) for al in parts}
        for al, be in itertools.product(parts, repeat=2):
            A = mats[al].entries
            B = mats[be].entries
            values = {}
            for i in range(dim):
                for j in range(dim):
                    v = sum(A[i][k] * B[k][j] for k in range(dim))
                    cls = table[i][j]
                    if cls in values:
                        assert values[cls] == v
                    else:
                        values[cls] = v

    def test_schur_products_are_diagonal(self):
        n = 4
        parts = partitions_of(n)
        mats = {al: class_matrix(n, al) for al in parts}
        for al, be in itertools.product(parts, repeat=2):
            A, B = mats[al], mats[be]
            for i in range(24):
                for j in range(24):
                    prod = A.entries[i][j] * B.entries[i][j]
                    expect = A.entries[i][j] if al == be else 0
                    assert prod == expect

    def test_identity_and_all_ones_present(self):
        n = 4
        I = class_matrix(n, (1,) * n)
        assert all(I.entries[i][j] == (i == j) for i in range(24) for j in range(24))
        total = [[sum(class_matrix(n, al).entries[i][j] for al in partitions_of(n))
                  for j in range(24)] for i in range(24)]
        assert all(v == 1 for row in total for v in row)

    def test_products_stay_in_span_n5(self):
        import numpy as np

        n = 5
        parts = partitions_of(n)
        table = pair_type_table(n)
        cls = np.array(table, dtype=np.int64)
        mats = {
            al: np.array([[int(v) for v in row] for row in class_matrix(n, al).entries],
                         dtype=np.int64)
            for al in parts
        }
        for al, be in itertools.combinations_with_replacement(parts, 2):
            P = mats[al] @ mats[be]
            for k in range(len(parts)):
                values = np.unique(P[cls == k])
                assert len(values) == 1, (al, be, parts[k])


class TestKrein:
    def test_top_pair(self):
        q = krein(4, (4,), (4,))
        assert q[(4,)] == 1
        assert all(v == 0 for nu, v in q.items() if nu != (4,))

    def test_depth_vanishing_example(self):
        q = krein(4, (3, 1), (3, 1))
        assert q[(1, 1, 1, 1)] == 0  # depth 3 > 1 + 1
        assert q[(2, 1, 1)] != 0  # depth 2 is allowed and realized here

    @pytest.mark.parametrize("n", [3, 4])
    def test_matches_character_sum_route(self, n):
        parts = partitions_of(n)
        for la, mu in itertools.combinations_with_replacement(parts, 2):
            q = krein(n, la, mu)
            for nu in parts:
                assert q[nu] == krein_by_character_sums(n, la, mu, nu)

    def test_depth_vanishing_sweep_n4(self):
        parts = partitions_of(4)
        for la, mu in itertools.combinations_with_replacement(parts, 2):
            q = krein(4, la, mu)
            for nu, v in q.items():
                if depth(nu) > depth(la) + depth(mu):
                    assert v == 0

    def test_cap(self):
        with pytest.raises(CapExceeded):
            krein(6, (6,), (6,))
