"""Deciding shape-transitivity of permutation sets, two independent ways.

A set D in S_n is la-transitive when every ordered pair of tabloids of
shape la is connected by the same number r of elements of D.  The oracle
route counts those connections directly; the character route tests that
the dual distribution vanishes on every partition strictly between la
and (n) in dominance order.  Both are exact; they must always agree.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import cache
from math import factorial
from typing import Iterator, Literal

from .characters import _mn, class_size
from .errors import CapExceeded
from .partitions import (
    Partition,
    check_partition,
    dominates,
    multinomial,
    partitions_of,
    up_set,
)
from .perm import PermSet, Permutation, compose, cycle_type, inverse
from .tabloids import Tabloid, act, fixed_tabloid_count, tabloids_of_shape

Method = Literal["oracle", "character", "orbit"]

DEFAULT_ORACLE_BUDGET = 10**8


@dataclass(frozen=True)
class DistributionVector:
    """Inner (a) or dual (b) distribution, indexed by canonical partitions."""

    kind: Literal["inner", "dual"]
    n: int
    index: tuple[Partition, ...]
    values: tuple[Fraction, ...]

    def as_dict(self) -> dict[Partition, Fraction]:
        return dict(zip(self.index, self.values))

    def __getitem__(self, la: Partition) -> Fraction:
        return self.values[self.index.index(la)]


@dataclass(frozen=True)
class OracleWitness:
    """A tabloid pair whose connection count deviates from the common value."""

    P: Tabloid
    Q: Tabloid
    count: int


@dataclass(frozen=True)
class CharacterWitness:
    """A partition whose dual-distribution entry should vanish but does not."""

    mu: Partition
    b: Fraction


@dataclass(frozen=True)
class TransitivityVerdict:
    lam: Partition
    transitive: bool
    r: Fraction
    method: Method
    witness: OracleWitness | CharacterWitness | None = None

    def __post_init__(self):
        if self.transitive and self.r.denominator != 1:
            raise RuntimeError(f"transitive verdict with non-integer r={self.r}")


def _require_nonempty(D: PermSet) -> None:
    if len(D) == 0:
        raise ValueError("empty permutation set")


def pair_class_distribution(D: PermSet) -> dict[Partition, int]:
    """Counts c_alpha of ordered pairs (g, h) in DxD with g h^-1 of type alpha.

    For a set already known to be a group the map (g, h) -> g h^-1 is
    |D|-to-one onto D, so the quadratic pass collapses to a linear one.
    """
    _require_nonempty(D)
    counts: dict[Partition, int] = {}
    if D.known_group is True:
        for g in D:
            t = cycle_type(g)
            counts[t] = counts.get(t, 0) + len(D)
    else:
        inverses = [inverse(h) for h in D]
        for g in D:
            for hinv in inverses:
                t = cycle_type(compose(g, hinv))
                counts[t] = counts.get(t, 0) + 1
    return counts


def inner_distribution(D: PermSet) -> DistributionVector:
    """a_alpha = c_alpha / |D| as exact rationals."""
    counts = pair_class_distribution(D)
    parts = partitions_of(D.degree)
    values = tuple(Fraction(counts.get(a, 0), len(D)) for a in parts)
    if sum(values) != len(D):
        raise RuntimeError("inner distribution does not sum to |D|")
    return DistributionVector("inner", D.degree, parts, values)


def dual_distribution(D: PermSet) -> DistributionVector:
    """b_mu = (f_mu / |D|) sum_alpha c_alpha chi^mu_alpha, exact and >= 0."""
    counts = pair_class_distribution(D)
    n = D.degree
    parts = partitions_of(n)
    values = []
    for mu in parts:
        f = _mn(mu, (1,) * n)
        s = sum(c * _mn(mu, alpha) for alpha, c in counts.items())
        b = Fraction(f * s, len(D))
        if b < 0:
            raise RuntimeError(f"negative dual entry b_{mu} = {b}; character values corrupt")
        values.append(b)
    vec = DistributionVector("dual", n, parts, tuple(values))
    if values[0] != len(D) or sum(values) != factorial(n):
        raise RuntimeError("dual distribution identities fail")
    return vec


def _block_vectors(n: int, la: Partition) -> tuple[list[bytes], dict[bytes, int], list[Tabloid]]:
    """Tabloids of shape la encoded as point->block-index byte strings."""
    tabs = tabloids_of_shape(n, la)
    vecs = []
    for P in tabs:
        v = bytearray(n)
        for bi, block in enumerate(P.blocks):
            for p in block:
                v[p - 1] = bi
        vecs.append(bytes(v))
    rank = {v: i for i, v in enumerate(vecs)}
    return vecs, rank, tabs


def check_oracle(
    D: PermSet, la: Partition, budget: int = DEFAULT_ORACLE_BUDGET
) -> TransitivityVerdict:
    """Count |{g in D : gP = Q}| over every ordered tabloid pair of shape la.

    Transitive iff every count equals |D| / (number of tabloids); the
    witness is the first deviant pair in canonical tabloid order.
    """
    _require_nonempty(D)
    la = check_partition(la)
    n = D.degree
    if sum(la) != n:
        raise ValueError(f"shape weight {sum(la)} != degree {n}")
    N = multinomial(la)
    if N * N * len(D) > budget:
        raise CapExceeded(
            f"oracle needs ~{N * N * len(D)} operations, budget is {budget}; "
            "try the character method"
        )
    vecs, rank, tabs = _block_vectors(n, la)
    counts: dict[int, int] = {}
    for g in D:
        imgs = g.images
        for i, v in enumerate(vecs):
            w = bytearray(n)
            for p in range(n):
                w[imgs[p] - 1] = v[p]
            j = rank[bytes(w)]
            key = i * N + j
            counts[key] = counts.get(key, 0) + 1
    r = Fraction(len(D), N)
    transitive = len(counts) == N * N and all(c == r for c in counts.values())
    if transitive:
        return TransitivityVerdict(la, True, r, "oracle")
    for key in range(N * N):
        c = counts.get(key, 0)
        if c != r:
            i, j = divmod(key, N)
            return TransitivityVerdict(
                la, False, r, "oracle", OracleWitness(tabs[i], tabs[j], c)
            )
    raise RuntimeError("unreachable: non-transitive without a deviant pair")


def check_character(D: PermSet, la: Partition) -> TransitivityVerdict:
    """Test sum_alpha c_alpha chi^mu_alpha = 0 for every mu strictly
    dominating-or-equal to la except (n) itself (exact integer test)."""
    _require_nonempty(D)
    la = check_partition(la)
    n = D.degree
    if sum(la) != n:
        raise ValueError(f"shape weight {sum(la)} != degree {n}")
    counts = pair_class_distribution(D)
    items = tuple(counts.items())
    r = Fraction(len(D), multinomial(la))
    for mu in up_set(la):
        if mu == (n,):
            continue
        s = sum(c * _mn(mu, alpha) for alpha, c in items)
        if s != 0:
            f = _mn(mu, (1,) * n)
            witness = CharacterWitness(mu, Fraction(f * s, len(D)))
            return TransitivityVerdict(la, False, r, "character", witness)
    return TransitivityVerdict(la, True, r, "character")


def _iter_tabloid_keys(n: int, la: Partition) -> Iterator[tuple[tuple[int, ...], ...]]:
    """Canonical-order tabloid keys without materializing Tabloid objects."""
    import itertools

    def rec(remaining: tuple[int, ...], i: int, acc):
        if i == len(la):
            yield acc
            return
        for combo in itertools.combinations(remaining, la[i]):
            chosen = set(combo)
            rest = tuple(p for p in remaining if p not in chosen)
            yield from rec(rest, i + 1, acc + (combo,))

    yield from rec(tuple(range(1, n + 1)), 0, ())


def check_group_orbit(G: PermSet, la: Partition) -> TransitivityVerdict:
    """Single-orbit test: G is la-transitive iff G P0 covers every tabloid
    of shape la, where P0 is the canonical first tabloid."""
    _require_nonempty(G)
    la = check_partition(la)
    n = G.degree
    if sum(la) != n:
        raise ValueError(f"shape weight {sum(la)} != degree {n}")
    if not G.is_group():
        raise ValueError("orbit method requires a group (set not closed under composition)")
    first_key = next(_iter_tabloid_keys(n, la))
    P0 = Tabloid(first_key)
    orbit = {act(g, P0).sort_key() for g in G}
    N = multinomial(la)
    r = Fraction(len(G), N)
    if len(orbit) == N:
        return TransitivityVerdict(la, True, r, "orbit")
    for key in _iter_tabloid_keys(n, la):
        if key not in orbit:
            return TransitivityVerdict(
                la, False, r, "orbit", OracleWitness(P0, Tabloid(key), 0)
            )
    raise RuntimeError("unreachable: orbit smaller than tabloid count but nothing missing")


def orbit_count(G: PermSet, la: Partition) -> int:
    """Number of orbits of G on tabloids of shape la (Burnside average of
    blockwise-fixed tabloid counts); the division must be exact."""
    _require_nonempty(G)
    la = check_partition(la)
    if sum(la) != G.degree:
        raise ValueError(f"shape weight {sum(la)} != degree {G.degree}")
    if not G.is_group():
        raise ValueError("orbit counting requires a group")
    by_type: dict[Partition, int] = {}
    for g in G:
        t = cycle_type(g)
        by_type[t] = by_type.get(t, 0) + 1
    from .tabloids import _pack_count

    total = sum(cnt * _pack_count(t, la) for t, cnt in by_type.items())
    if total % len(G) != 0:
        raise RuntimeError(f"Burnside sum {total} not divisible by |G| = {len(G)}")
    return total // len(G)


def check(
    D: PermSet,
    la: Partition,
    method: Method = "character",
    oracle_budget: int = DEFAULT_ORACLE_BUDGET,
) -> TransitivityVerdict:
    if method == "oracle":
        return check_oracle(D, la, oracle_budget)
    if method == "character":
        return check_character(D, la)
    if method == "orbit":
        return check_group_orbit(D, la)
    raise ValueError(f"unknown method {method!r}")


def profile(
    D: PermSet,
    method: Method = "character",
    oracle_budget: int = DEFAULT_ORACLE_BUDGET,
) -> tuple[Partition, ...]:
    """Dominance-minimal shapes for which D is transitive.

    Shapes are tested from the top of the dominance order down; once a
    shape fails, everything it dominates is pruned (transitivity is
    upward closed), so the survivors form the full transitive up-set and
    its minimal elements are reported.
    """
    _require_nonempty(D)
    n = D.degree
    parts = partitions_of(n)
    status: dict[Partition, bool] = {}
    for la in parts:  # canonical order is a top-down linear extension
        if la in status:
            continue
        if la == (n,):
            status[la] = True
            continue
        verdict = check(D, la, method, oracle_budget)
        status[la] = verdict.transitive
        if not verdict.transitive:
            for nu in parts:
                if nu not in status and dominates(la, nu):
                    status[nu] = False
    transitive = [la for la in parts if status[la]]
    minimal = [
        la
        for la in transitive
        if not any(nu != la and dominates(la, nu) for nu in transitive)
    ]
    return tuple(minimal)


def transitivity_table(D: PermSet) -> dict[Partition, bool]:
    """Verdict for every shape at once, sharing one pair-distribution pass.

    The character sums S_mu are computed once; a shape is transitive
    exactly when S_mu vanishes for every mu dominating it except (n).
    """
    _require_nonempty(D)
    n = D.degree
    counts = tuple(pair_class_distribution(D).items())
    nonzero = set()
    for mu in partitions_of(n):
        if mu == (n,):
            continue
        if sum(c * _mn(mu, alpha) for alpha, c in counts) != 0:
            nonzero.add(mu)
    return {
        la: not any(mu in nonzero for mu in up_set(la))
        for la in partitions_of(n)
    }


@dataclass(frozen=True)
class DivisibilityResult:
    """Outcome of the counting bound: |D| must be divisible by the
    multinomial of every shape dominating la."""

    ok: bool
    size: int
    lam: Partition
    failures: tuple[tuple[Partition, int], ...]  # (mu, multinomial that fails to divide)


def divisibility_check(size: int, la: Partition) -> DivisibilityResult:
    """Necessary condition on |D| for la-transitivity; a False result is a
    proof of non-transitivity that never looks at D itself."""
    if size < 1:
        raise ValueError("size must be positive")
    la = check_partition(la)
    failures = []
    for mu in up_set(la):
        m = multinomial(mu)
        if size % m != 0:
            failures.append((mu, m))
    return DivisibilityResult(not failures, size, la, tuple(failures))
