"""Exact integer character theory of the symmetric group.

Character values are computed by recursive border-strip removal over
beta-sets: removing a strip of length t from a shape replaces one beta
number b by b - t, with sign (-1)^(number of beta numbers jumped over).
Strips are removed for the cycle lengths in decreasing order, and the
recursion is memoized on (shape, remaining cycle multiset).
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cache
from math import factorial

from .errors import CapExceeded
from .partitions import (
    Partition,
    check_partition,
    hook_degree,
    partitions_of,
)


@cache
def _mn(mu: Partition, alpha: Partition) -> int:
    if not alpha:
        return 1 if not mu else 0
    t = alpha[0]
    rest = alpha[1:]
    m = len(mu)
    beta = tuple(mu[i] + (m - 1 - i) for i in range(m))
    bset = set(beta)
    total = 0
    for b in beta:
        c = b - t
        if c < 0 or c in bset:
            continue
        jumped = sum(1 for x in beta if c < x < b)
        newbeta = sorted((x for x in beta if x != b), reverse=True)
        newbeta.append(c)
        newbeta.sort(reverse=True)
        newmu = tuple(newbeta[j] - (m - 1 - j) for j in range(m))
        while newmu and newmu[-1] == 0:
            newmu = newmu[:-1]
        total += (-1) ** jumped * _mn(newmu, rest)
    return total


def mn_character(mu: Partition, alpha: Partition) -> int:
    """Irreducible character value for shape mu on the class of type alpha."""
    mu = check_partition(mu)
    alpha = check_partition(alpha)
    if sum(mu) != sum(alpha):
        raise ValueError(f"weight mismatch: {mu} vs {alpha}")
    return _mn(mu, alpha)


def class_size(alpha: Partition) -> int:
    """Size of the conjugacy class with cycle type alpha."""
    alpha = check_partition(alpha)
    n = sum(alpha)
    denom = 1
    mult: dict[int, int] = {}
    for v in alpha:
        mult[v] = mult.get(v, 0) + 1
    for v, m in mult.items():
        denom *= v**m * factorial(m)
    return factorial(n) // denom


@dataclass(frozen=True)
class CharacterTable:
    """Full integer character table of S_n in canonical partition order.

    Rows are irreducibles mu, columns conjugacy classes alpha; degrees is
    the column at (1^n) and class_sizes the matching class cardinalities.
    """

    n: int
    partitions: tuple[Partition, ...]
    values: tuple[tuple[int, ...], ...]
    degrees: tuple[int, ...]
    class_sizes: tuple[int, ...]

    def value(self, mu: Partition, alpha: Partition) -> int:
        parts = self.partitions
        return self.values[parts.index(mu)][parts.index(alpha)]


def character_table(n: int, max_n: int = 12) -> CharacterTable:
    """Character table of S_n, verified against its defining identities."""
    if n > max_n:
        raise CapExceeded(f"character table for n={n} exceeds cap {max_n}")
    return _table(n)


@cache
def _table(n: int) -> CharacterTable:
    parts = partitions_of(n)
    values = tuple(tuple(_mn(mu, alpha) for alpha in parts) for mu in parts)
    degrees = tuple(row[-1] for row in values)  # column (1^n) is last
    sizes = tuple(class_size(alpha) for alpha in parts)

    nfact = factorial(n)
    for i, mu in enumerate(parts):
        if degrees[i] != hook_degree(mu):
            raise RuntimeError(f"degree mismatch for {mu}: {degrees[i]} vs hook formula")
    if sum(f * f for f in degrees) != nfact:
        raise RuntimeError("sum of squared degrees != n!")
    for i in range(len(parts)):
        for j in range(i, len(parts)):
            s = sum(sizes[k] * values[i][k] * values[j][k] for k in range(len(parts)))
            if s != (nfact if i == j else 0):
                raise RuntimeError(f"row orthogonality fails at {parts[i]}, {parts[j]}")
    return CharacterTable(n, parts, values, degrees, sizes)
