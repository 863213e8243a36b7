"""Integer partitions: generation, dominance and refinement, counting statistics.

Partitions are plain tuples of weakly decreasing positive integers.  The
canonical ordering used everywhere for indexing vectors and tables is
reverse-lexicographic: (n) first, (1,...,1) last.
"""

from __future__ import annotations

from functools import cache
from math import factorial, prod

from .errors import ParseError

Partition = tuple[int, ...]


def check_partition(la) -> Partition:
    la = tuple(la)
    if not la:
        raise ValueError("empty partition")
    for i, p in enumerate(la):
        if not isinstance(p, int) or p < 1:
            raise ValueError(f"part {p!r} is not a positive integer")
        if i and la[i - 1] < p:
            raise ValueError(f"parts not weakly decreasing: {la}")
    return la


def weight(la: Partition) -> int:
    return sum(la)


@cache
def partitions_of(n: int) -> tuple[Partition, ...]:
    """All partitions of n in reverse-lexicographic (canonical) order."""
    if n < 1:
        raise ValueError("n must be at least 1")
    out: list[Partition] = []

    def rec(remaining: int, biggest: int, prefix: Partition) -> None:
        if remaining == 0:
            out.append(prefix)
            return
        for p in range(min(biggest, remaining), 0, -1):
            rec(remaining - p, p, prefix + (p,))

    rec(n, n, ())
    return tuple(out)


def partition_index(la: Partition) -> int:
    """Position of la in the canonical list of its weight."""
    return _index_map(weight(la))[la]


@cache
def _index_map(n: int) -> dict[Partition, int]:
    return {la: i for i, la in enumerate(partitions_of(n))}


def _check_same_weight(a: Partition, b: Partition) -> None:
    if sum(a) != sum(b):
        raise ValueError(f"weight mismatch: {a} has weight {sum(a)}, {b} has weight {sum(b)}")


def dominates(mu: Partition, la: Partition) -> bool:
    """True iff every prefix sum of mu is >= the matching prefix sum of la."""
    _check_same_weight(mu, la)
    sm = sl = 0
    for i in range(max(len(mu), len(la))):
        sm += mu[i] if i < len(mu) else 0
        sl += la[i] if i < len(la) else 0
        if sm < sl:
            return False
    return True


def refines(alpha: Partition, la: Partition) -> bool:
    """True iff the parts of alpha can be grouped to sum to the parts of la.

    Decided by multiset-packing backtracking, largest part first.
    """
    _check_same_weight(alpha, la)
    parts = sorted(alpha, reverse=True)
    bins = list(la)

    def bt(i: int) -> bool:
        if i == len(parts):
            return True  # equal weights force every bin to be exactly filled
        a = parts[i]
        tried: set[int] = set()
        for j, room in enumerate(bins):
            if room >= a and room not in tried:
                tried.add(room)
                bins[j] -= a
                if bt(i + 1):
                    bins[j] += a
                    return True
                bins[j] += a
        return False

    return bt(0)


def multinomial(la: Partition) -> int:
    """n! / prod(part!) as an exact integer."""
    return factorial(sum(la)) // prod(factorial(p) for p in la)


def conjugate(la: Partition) -> Partition:
    return tuple(sum(1 for p in la if p > i) for i in range(la[0]))


def hook_degree(mu: Partition) -> int:
    """Number of standard Young tableaux of shape mu (hook-length formula)."""
    conj = conjugate(mu)
    num = factorial(sum(mu))
    for i, row in enumerate(mu):
        for j in range(row):
            num //= (row - j) + (conj[j] - i) - 1
    return num


def kostka(nu: Partition, la: Partition) -> int:
    """Number of semistandard Young tableaux of shape nu and content la.

    Counted by direct backtracking (rows weakly increase, columns strictly
    increase, value v appears la[v-1] times); no combinatorial shortcuts,
    so this stays an independent oracle for dominance-related identities.
    """
    _check_same_weight(nu, la)
    nvals = len(la)
    remaining = list(la)
    rows = [[0] * r for r in nu]

    def fill(r: int, c: int) -> int:
        if r == len(nu):
            return 1
        nr, nc = (r, c + 1) if c + 1 < nu[r] else (r + 1, 0)
        lo = 1
        if c > 0:
            lo = rows[r][c - 1]
        if r > 0 and c < nu[r - 1]:
            lo = max(lo, rows[r - 1][c] + 1)
        total = 0
        for v in range(lo, nvals + 1):
            if remaining[v - 1] == 0:
                continue
            remaining[v - 1] -= 1
            rows[r][c] = v
            total += fill(nr, nc)
            remaining[v - 1] += 1
        return total

    return fill(0, 0)


def depth(nu: Partition) -> int:
    """Weight minus the first part."""
    return sum(nu) - nu[0]


def up_set(la: Partition) -> tuple[Partition, ...]:
    """All partitions dominating la (la and (n) included), canonical order."""
    return tuple(mu for mu in partitions_of(sum(la)) if dominates(mu, la))


def parse_partition(text: str) -> Partition:
    """Parse comma-separated parts, e.g. "5,2,1"."""
    try:
        parts = tuple(int(tok) for tok in text.split(","))
    except ValueError:
        raise ParseError(f"bad partition {text!r}: parts must be integers") from None
    try:
        return check_partition(parts)
    except ValueError as exc:
        raise ParseError(f"bad partition {text!r}: {exc}") from None


def format_partition(la: Partition) -> str:
    return ",".join(str(p) for p in la)
