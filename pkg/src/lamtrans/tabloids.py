"""Ordered set partitions of {1..n} and the symmetric-group action on them.

A tabloid is a tuple of disjoint non-empty blocks covering {1..n} with
weakly decreasing sizes; its shape is the partition of block sizes.  The
counting kernel ``fixed_tabloid_count`` answers how many tabloids of a
given shape a permutation fixes blockwise, which drives both Burnside
orbit counts and the split-basis coefficients.
"""

from __future__ import annotations

import itertools
from functools import cache
from math import factorial, prod
from typing import Iterable

from .errors import CapExceeded
from .partitions import Partition, check_partition, multinomial
from .perm import Permutation, PermSet, cycle_type


class Tabloid:
    """An ordered set partition with weakly decreasing block sizes."""

    __slots__ = ("blocks", "_key")

    def __init__(self, blocks: Iterable[Iterable[int]]):
        bs = tuple(frozenset(b) for b in blocks)
        if not bs:
            raise ValueError("tabloid needs at least one block")
        sizes = tuple(len(b) for b in bs)
        if any(s == 0 for s in sizes):
            raise ValueError("empty block")
        if any(sizes[i] < sizes[i + 1] for i in range(len(sizes) - 1)):
            raise ValueError(f"block sizes {sizes} not weakly decreasing")
        n = sum(sizes)
        cover: set[int] = set()
        for b in bs:
            cover.update(b)
        if cover != set(range(1, n + 1)):
            raise ValueError("blocks must be disjoint and cover {1..n}")
        object.__setattr__(self, "blocks", bs)
        object.__setattr__(self, "_key", tuple(tuple(sorted(b)) for b in bs))

    def __setattr__(self, name, value):
        raise AttributeError("Tabloid is immutable")

    @classmethod
    def _unchecked(cls, blocks: tuple[frozenset[int], ...]) -> "Tabloid":
        self = object.__new__(cls)
        object.__setattr__(self, "blocks", blocks)
        object.__setattr__(self, "_key", tuple(tuple(sorted(b)) for b in blocks))
        return self

    @property
    def degree(self) -> int:
        return sum(len(b) for b in self.blocks)

    @property
    def shape(self) -> Partition:
        return tuple(len(b) for b in self.blocks)

    def sort_key(self) -> tuple[tuple[int, ...], ...]:
        """Blocks as sorted tuples; the canonical ranking compares these."""
        return self._key

    def __eq__(self, other) -> bool:
        return isinstance(other, Tabloid) and self._key == other._key

    def __hash__(self) -> int:
        return hash(self._key)

    def __lt__(self, other: "Tabloid") -> bool:
        return self._key < other._key

    def __str__(self) -> str:
        return "{" + "|".join(",".join(str(p) for p in b) for b in self._key) + "}"

    def __repr__(self) -> str:
        return f"Tabloid({str(self)})"


class YoungCoset:
    """A coset of the stabilizer of ``base``, named by its image tabloid.

    Under the correspondence between shape-la tabloids and cosets of the
    subgroup fixing ``base`` blockwise, the coset {g : g base = image} is
    identified with ``image``; membership never enumerates elements.
    """

    __slots__ = ("base", "image")

    def __init__(self, base: Tabloid, image: Tabloid):
        if base.shape != image.shape:
            raise ValueError(f"shape mismatch: {base.shape} vs {image.shape}")
        object.__setattr__(self, "base", base)
        object.__setattr__(self, "image", image)

    def __setattr__(self, name, value):
        raise AttributeError("YoungCoset is immutable")

    def __contains__(self, g: Permutation) -> bool:
        return act(g, self.base) == self.image

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, YoungCoset)
            and self.base == other.base
            and self.image == other.image
        )

    def __hash__(self) -> int:
        return hash((self.base, self.image))

    def __repr__(self) -> str:
        return f"YoungCoset(base={self.base}, image={self.image})"

    def intersection_size(self, D) -> int:
        """|gY ∩ D| for this coset; the quantity the coset-count oracle
        tests for constancy."""
        return sum(1 for g in D if g in self)


def tabloids_of_shape(n: int, la: Partition) -> list[Tabloid]:
    """All tabloids of the given shape, in canonical (lexicographic) order."""
    la = check_partition(la)
    if sum(la) != n:
        raise ValueError(f"shape {la} has weight {sum(la)}, degree is {n}")
    out: list[Tabloid] = []

    def rec(remaining: tuple[int, ...], i: int, acc: tuple[frozenset[int], ...]) -> None:
        if i == len(la):
            out.append(Tabloid._unchecked(acc))
            return
        for combo in itertools.combinations(remaining, la[i]):
            chosen = set(combo)
            rest = tuple(p for p in remaining if p not in chosen)
            rec(rest, i + 1, acc + (frozenset(combo),))

    rec(tuple(range(1, n + 1)), 0, ())
    return out


def act(g: Permutation, P: Tabloid) -> Tabloid:
    """Blockwise image of the tabloid: g sends each block to its image set."""
    if g.degree != P.degree:
        raise ValueError(f"degree mismatch: permutation {g.degree}, tabloid {P.degree}")
    imgs = g.images
    return Tabloid._unchecked(tuple(frozenset(imgs[p - 1] for p in b) for b in P.blocks))


def young_subgroup(P: Tabloid, cap: int = 10**6) -> PermSet:
    """All permutations fixing each block of P setwise, as an explicit set."""
    order = prod(factorial(len(b)) for b in P.blocks)
    if order > cap:
        raise CapExceeded(f"Young subgroup has {order} elements, cap is {cap}")
    n = P.degree
    blocks = [tuple(sorted(b)) for b in P.blocks]
    elems = []
    for assignment in itertools.product(*(itertools.permutations(b) for b in blocks)):
        images = [0] * n
        for pts, imgs in zip(blocks, assignment):
            for p, v in zip(pts, imgs):
                images[p - 1] = v
        elems.append(Permutation(images))
    return PermSet(n, elems, is_group=True)


def fixed_tabloid_count(g: Permutation, la: Partition) -> int:
    """Number of ordered tabloids of shape la fixed blockwise by g.

    A tabloid is fixed blockwise exactly when each block is a union of
    cycles of g, so the count is a packing number of the cycle-length
    multiset into the parts of la.  It depends only on the cycle type.
    """
    la = check_partition(la)
    if sum(la) != g.degree:
        raise ValueError(f"shape weight {sum(la)} != degree {g.degree}")
    return _pack_count(cycle_type(g), la)


@cache
def _pack_count(cycles: tuple[int, ...], caps: tuple[int, ...]) -> int:
    """Assignments of the distinct cycles (lengths ``cycles``) to capacity
    bins ``caps`` filling every bin exactly; bins are distinguishable."""
    if not cycles:
        return 1 if not caps else 0
    c = cycles[0]
    rest = cycles[1:]
    total = 0
    tried: set[int] = set()
    for j, room in enumerate(caps):
        if room < c or room in tried:
            continue
        tried.add(room)
        mult = caps.count(room)
        reduced = list(caps)
        del reduced[j]
        if room > c:
            reduced.append(room - c)
        total += mult * _pack_count(rest, tuple(sorted(reduced, reverse=True)))
    return total


def shape_multiplicity_factor(la: Partition) -> int:
    """prod m_s! over the multiplicities of equal parts; the ratio between
    ordered-tabloid counts and unordered set-partition counts of shape la."""
    fac = 1
    run = 1
    for i in range(1, len(la) + 1):
        if i < len(la) and la[i] == la[i - 1]:
            run += 1
        else:
            fac *= factorial(run)
            run = 1
    return fac


def tabloid_count(n: int, la: Partition) -> int:
    """Number of tabloids of shape la on n points."""
    if sum(la) != n:
        raise ValueError(f"shape {la} has weight {sum(la)}, degree is {n}")
    return multinomial(la)
