"""The commutative algebra of class sums of the symmetric group, as
explicit matrices over exact rationals.

Matrices are n!Xn!, rows and columns indexed by the permutations of
{1..n} in lexicographic order of image sequences; every matrix here is
constant on positions with a fixed cycle type of a b^-1, so each one is
determined by a vector of p(n) class values.  Dense forms are gated by a
cap (default n <= 5); the coefficient-level operations work from the
class values alone and scale much further.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from functools import cache
from math import factorial, lcm

import numpy as np

from .characters import _mn, class_size
from .errors import CapExceeded
from .partitions import (
    Partition,
    check_partition,
    hook_degree,
    partition_index,
    partitions_of,
)
from .perm import Permutation, compose, cycle_type, inverse
from .tabloids import _pack_count, shape_multiplicity_factor

DEFAULT_MATRIX_CAP = 5


@cache
def sn_elements(n: int) -> tuple[Permutation, ...]:
    """S_n in lexicographic order of image sequences (fixed forever)."""
    return tuple(Permutation(p) for p in itertools.permutations(range(1, n + 1)))


@cache
def pair_type_table(n: int) -> tuple[tuple[int, ...], ...]:
    """Table T[a][b] = canonical index of the cycle type of g_a g_b^-1."""
    elems = sn_elements(n)
    idx = {la: i for i, la in enumerate(partitions_of(n))}
    invs = [inverse(g) for g in elems]
    return tuple(
        tuple(idx[cycle_type(compose(g, hinv))] for hinv in invs) for g in elems
    )


def _check_cap(n: int, max_n: int) -> None:
    if n > max_n:
        raise CapExceeded(f"dense {factorial(n)}x{factorial(n)} matrix for n={n} exceeds cap {max_n}")


@dataclass(frozen=True)
class SchemeMatrix:
    """A dense member of the algebra, tagged by what it is."""

    n: int
    kind: str  # "class" | "idempotent" | "split"
    label: Partition
    entries: tuple[tuple[Fraction, ...], ...]

    @property
    def dim(self) -> int:
        return len(self.entries)

    def trace(self) -> Fraction:
        return sum(self.entries[i][i] for i in range(self.dim))


def _from_class_values(n: int, kind: str, label: Partition, values) -> SchemeMatrix:
    """Expand a vector of per-class values through the pair-type table."""
    table = pair_type_table(n)
    vals = tuple(Fraction(v) for v in values)
    entries = tuple(tuple(vals[t] for t in row) for row in table)
    return SchemeMatrix(n, kind, label, entries)


def _scaled_int_array(M: SchemeMatrix) -> tuple[np.ndarray, int]:
    den = 1
    for row in M.entries:
        for x in row:
            den = lcm(den, x.denominator)
    ints = [[int(x.numerator * (den // x.denominator)) for x in row] for row in M.entries]
    bound = max((max(map(abs, row), default=0) for row in ints), default=0)
    dtype = object if bound and bound * bound * len(ints) >= 2**62 else np.int64
    return np.array(ints, dtype=dtype), den


def _matmul(A: SchemeMatrix, B: SchemeMatrix) -> list[list[Fraction]]:
    """Exact product, done in scaled integers for speed."""
    Ai, da = _scaled_int_array(A)
    Bi, db = _scaled_int_array(B)
    if Ai.dtype == np.int64 and Bi.dtype == np.int64:
        bound = int(np.abs(Ai).max(initial=0)) * int(np.abs(Bi).max(initial=0)) * Ai.shape[0]
        if bound >= 2**62:
            Ai = Ai.astype(object)
    P = Ai @ Bi
    scale = da * db
    return [[Fraction(int(v), scale) for v in row] for row in P]


def _trace_product(A: SchemeMatrix, B: SchemeMatrix) -> Fraction:
    Ai, da = _scaled_int_array(A)
    Bi, db = _scaled_int_array(B)
    if Ai.dtype == np.int64 and Bi.dtype == np.int64:
        bound = int(np.abs(Ai).max(initial=0)) * int(np.abs(Bi).max(initial=0)) * Ai.size
        if bound >= 2**62:
            Ai = Ai.astype(object)
    total = int(np.einsum("ab,ba->", Ai, Bi)) if Ai.dtype != object else int((Ai * Bi.T).sum())
    return Fraction(total, da * db)


def class_matrix(n: int, alpha: Partition, max_n: int = DEFAULT_MATRIX_CAP) -> SchemeMatrix:
    """0/1 adjacency matrix of the relation "g h^-1 has cycle type alpha"."""
    _check_cap(n, max_n)
    alpha = check_partition(alpha)
    if sum(alpha) != n:
        raise ValueError(f"type weight {sum(alpha)} != n = {n}")
    k = partition_index(alpha)
    values = [Fraction(1 if i == k else 0) for i in range(len(partitions_of(n)))]
    return _from_class_values(n, "class", alpha, values)


@cache
def _idempotent_family(n: int) -> dict[Partition, SchemeMatrix]:
    parts = partitions_of(n)
    nfact = factorial(n)
    family: dict[Partition, SchemeMatrix] = {}
    for mu in parts:
        f = hook_degree(mu)
        values = [Fraction(f * _mn(mu, alpha), nfact) for alpha in parts]
        family[mu] = _from_class_values(n, "idempotent", mu, values)

    # one-time verification of the defining identities
    dim = factorial(n)
    mus = list(parts)
    for i, mu in enumerate(mus):
        E = family[mu]
        f = hook_degree(mu)
        if E.trace() != f * f:
            raise RuntimeError(f"trace of idempotent {mu} is not {f * f}")
        for nu in mus[i:]:
            P = _matmul(E, family[nu])
            expect = E.entries if nu == mu else None
            for a in range(dim):
                row = P[a]
                for b in range(dim):
                    want = expect[a][b] if expect is not None else 0
                    if row[b] != want:
                        raise RuntimeError(f"idempotent identity fails for {mu}, {nu} at {(a, b)}")
    for a in range(dim):
        for b in range(dim):
            s = sum(family[mu].entries[a][b] for mu in mus)
            if s != (1 if a == b else 0):
                raise RuntimeError("idempotents do not resolve the identity")
    return family


def idempotent(n: int, mu: Partition, max_n: int = DEFAULT_MATRIX_CAP) -> SchemeMatrix:
    """Primitive idempotent for the irreducible mu, fully verified
    (idempotency, mutual orthogonality, trace, resolution of identity)."""
    _check_cap(n, max_n)
    mu = check_partition(mu)
    if sum(mu) != n:
        raise ValueError(f"weight {sum(mu)} != n = {n}")
    return _idempotent_family(n)[mu]


def coeffs_m(n: int, la: Partition) -> dict[Partition, int]:
    """Coordinates of the split matrix in the class-matrix basis: the
    number of unordered set partitions of shape la whose blocks are unions
    of cycles of a type-alpha element."""
    la = check_partition(la)
    if sum(la) != n:
        raise ValueError(f"shape weight {sum(la)} != n = {n}")
    fac = shape_multiplicity_factor(la)
    out: dict[Partition, int] = {}
    for alpha in partitions_of(n):
        ordered = _pack_count(alpha, la)
        if ordered % fac != 0:
            raise RuntimeError(f"ordered count {ordered} not divisible by {fac}")
        out[alpha] = ordered // fac
    return out


def coeffs_n(n: int, la: Partition) -> dict[Partition, Fraction]:
    """Coordinates of the split matrix in the idempotent basis, computed
    eigenvalue-wise: each class matrix acts on the mu eigenspace as
    |C_alpha| chi^mu_alpha / f_mu."""
    m = coeffs_m(n, la)
    sizes = {alpha: class_size(alpha) for alpha in partitions_of(n)}
    out: dict[Partition, Fraction] = {}
    for mu in partitions_of(n):
        f = hook_degree(mu)
        s = sum(m[alpha] * sizes[alpha] * _mn(mu, alpha) for alpha in partitions_of(n))
        out[mu] = Fraction(s, f)
    return out


def split_matrix(n: int, la: Partition, max_n: int = DEFAULT_MATRIX_CAP) -> SchemeMatrix:
    """Gram matrix of the incidence between permutations and cosets of
    Young subgroups of shape la: entry (a, b) counts the unordered shape-la
    set partitions fixed blockwise by a b^-1."""
    _check_cap(n, max_n)
    m = coeffs_m(n, la)
    values = [m[alpha] for alpha in partitions_of(n)]
    return _from_class_values(n, "split", la, values)


def krein(n: int, la: Partition, mu: Partition, max_n: int = DEFAULT_MATRIX_CAP) -> dict[Partition, Fraction]:
    """Structure constants q^nu of the idempotent basis under entrywise
    multiplication, via exact projection; the defining expansion is
    reconstituted entrywise and nonnegativity is asserted."""
    _check_cap(n, max_n)
    la = check_partition(la)
    mu = check_partition(mu)
    if sum(la) != n or sum(mu) != n:
        raise ValueError("weights must equal n")
    family = _idempotent_family(n)
    E1, E2 = family[la], family[mu]
    dim = E1.dim
    had = tuple(
        tuple(E1.entries[a][b] * E2.entries[a][b] for b in range(dim)) for a in range(dim)
    )
    X = SchemeMatrix(n, "split", la, had)  # container for the entrywise product
    nfact = factorial(n)
    out: dict[Partition, Fraction] = {}
    for nu in partitions_of(n):
        f = hook_degree(nu)
        q = nfact * _trace_product(X, family[nu]) / (f * f)
        if q < 0:
            raise RuntimeError(f"negative Krein parameter q^{nu} = {q}")
        out[nu] = q
    for a in range(dim):
        for b in range(dim):
            s = sum(out[nu] * family[nu].entries[a][b] for nu in out)
            if s != nfact * had[a][b]:
                raise RuntimeError(f"Krein expansion fails to reconstitute entry {(a, b)}")
    return out
