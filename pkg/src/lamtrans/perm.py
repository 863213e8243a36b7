"""Permutations of {1..n} and finite sets of them.

Composition is fixed once and for all as "apply the right factor first":
``compose(g, h)`` sends x to g(h(x)).  Points are 1-based everywhere.
"""

from __future__ import annotations

import re
from typing import Iterable, Iterator, Sequence

from .errors import CapExceeded, ParseError


class Permutation:
    """A bijection on {1..n}, stored as the tuple of images of 1, 2, ..., n."""

    __slots__ = ("images",)

    def __init__(self, images: Sequence[int]):
        images = tuple(images)
        n = len(images)
        if n < 1:
            raise ValueError("permutation degree must be at least 1")
        seen = [False] * (n + 1)
        for v in images:
            if not isinstance(v, int) or not 1 <= v <= n:
                raise ValueError(f"image {v!r} out of range 1..{n}")
            if seen[v]:
                raise ValueError(f"image {v} repeated; not a bijection")
            seen[v] = True
        object.__setattr__(self, "images", images)

    def __setattr__(self, name, value):
        raise AttributeError("Permutation is immutable")

    @property
    def degree(self) -> int:
        return len(self.images)

    def __call__(self, point: int) -> int:
        """Image of a point under the permutation."""
        return self.images[point - 1]

    def __mul__(self, other: "Permutation") -> "Permutation":
        return compose(self, other)

    def __invert__(self) -> "Permutation":
        return inverse(self)

    def __eq__(self, other) -> bool:
        return isinstance(other, Permutation) and self.images == other.images

    def __lt__(self, other: "Permutation") -> bool:
        return self.images < other.images

    def __hash__(self) -> int:
        return hash(self.images)

    def __repr__(self) -> str:
        return f"Permutation({list(self.images)})"

    def __str__(self) -> str:
        return self.cycle_string()

    def is_identity(self) -> bool:
        return all(v == i + 1 for i, v in enumerate(self.images))

    def is_even(self) -> bool:
        n = self.degree
        return (n - len(self.cycles(full=True))) % 2 == 0

    def cycles(self, full: bool = False) -> list[tuple[int, ...]]:
        """Cycle decomposition; fixed points included only when ``full``.

        Cycles start at their least point and are listed by increasing start.
        """
        n = self.degree
        seen = [False] * (n + 1)
        out = []
        for start in range(1, n + 1):
            if seen[start]:
                continue
            cyc = [start]
            seen[start] = True
            cur = self.images[start - 1]
            while cur != start:
                seen[cur] = True
                cyc.append(cur)
                cur = self.images[cur - 1]
            if full or len(cyc) > 1:
                out.append(tuple(cyc))
        return out

    def cycle_string(self) -> str:
        cycs = self.cycles()
        if not cycs:
            return "()"
        return "".join("(" + " ".join(str(p) for p in c) + ")" for c in cycs)

    def one_line(self) -> str:
        return " ".join(str(v) for v in self.images)


def identity(n: int) -> Permutation:
    return Permutation(tuple(range(1, n + 1)))


def compose(g: Permutation, h: Permutation) -> Permutation:
    """The permutation x -> g(h(x)); h is applied first."""
    if g.degree != h.degree:
        raise ValueError(f"degree mismatch: {g.degree} vs {h.degree}")
    gi = g.images
    out = Permutation.__new__(Permutation)
    object.__setattr__(out, "images", tuple(gi[v - 1] for v in h.images))
    return out


def inverse(g: Permutation) -> Permutation:
    inv = [0] * g.degree
    for i, v in enumerate(g.images):
        inv[v - 1] = i + 1
    out = Permutation.__new__(Permutation)
    object.__setattr__(out, "images", tuple(inv))
    return out


def cycle_type(g: Permutation) -> tuple[int, ...]:
    """Multiset of cycle lengths (fixed points included), weakly decreasing."""
    return tuple(sorted((len(c) for c in g.cycles(full=True)), reverse=True))


_TOKEN_RE = re.compile(r"\d+|\(|\)|[,\s]+|.")


def parse_perm(text: str, n: int, *, line: int | None = None) -> Permutation:
    """Parse one-line ("4 3 6 1 2 5") or cycle ("(1 4)(2 3 6 5)") notation.

    In cycle notation, unlisted points are fixed.  When n <= 9 a run of
    digits inside a cycle, like "(14)", denotes the individual points 1, 4.
    """
    stripped = text.strip()
    if stripped.startswith("("):
        return _parse_cycles(text, n, line)
    return _parse_one_line(text, n, line)


def _parse_one_line(text: str, n: int, line: int | None) -> Permutation:
    images = []
    for m in re.finditer(r"\S+", text):
        tok = m.group()
        if not tok.isdigit():
            raise ParseError(f"expected a point, got {tok!r}", line=line, column=m.start() + 1)
        images.append(int(tok))
    if len(images) != n:
        raise ParseError(f"expected {n} images, got {len(images)}", line=line)
    try:
        return Permutation(images)
    except ValueError as exc:
        raise ParseError(str(exc), line=line) from None


def _parse_cycles(text: str, n: int, line: int | None) -> Permutation:
    images = list(range(1, n + 1))
    used = [False] * (n + 1)
    cycle: list[int] | None = None
    for m in _TOKEN_RE.finditer(text):
        tok = m.group()
        col = m.start() + 1
        if tok == "(":
            if cycle is not None:
                raise ParseError("nested '(' in cycle notation", line=line, column=col)
            cycle = []
        elif tok == ")":
            if cycle is None:
                raise ParseError("unmatched ')'", line=line, column=col)
            for a, b in zip(cycle, cycle[1:] + cycle[:1]):
                images[a - 1] = b
            cycle = None
        elif tok.isdigit():
            if cycle is None:
                raise ParseError(f"point {tok} outside any cycle", line=line, column=col)
            pts = [int(d) for d in tok] if n <= 9 and len(tok) > 1 else [int(tok)]
            for p in pts:
                if not 1 <= p <= n:
                    raise ParseError(f"point {p} out of range 1..{n}", line=line, column=col)
                if used[p]:
                    raise ParseError(f"point {p} repeated", line=line, column=col)
                used[p] = True
                cycle.append(p)
        elif tok.strip(", \t") == "":
            continue
        else:
            raise ParseError(f"unexpected character {tok!r}", line=line, column=col)
    if cycle is not None:
        raise ParseError("unclosed '('", line=line)
    return Permutation(images)


class PermSet:
    """A finite set of permutations sharing one degree.

    ``is_group`` caches whether the set is closed under composition; pass
    ``is_group=True`` only when closure is guaranteed by construction.
    Iteration is always in lexicographic order of image sequences so that
    every downstream computation and output file is reproducible.
    """

    __slots__ = ("degree", "_set", "_sorted", "_is_group")

    def __init__(self, degree: int, elements: Iterable[Permutation], *, is_group: bool | None = None):
        elems = frozenset(elements)
        for g in elems:
            if g.degree != degree:
                raise ValueError(f"element of degree {g.degree} in a set of degree {degree}")
        self._set = elems
        self._sorted = tuple(sorted(elems, key=lambda g: g.images))
        self.degree = degree
        self._is_group = is_group

    def __len__(self) -> int:
        return len(self._set)

    def __iter__(self) -> Iterator[Permutation]:
        return iter(self._sorted)

    def __contains__(self, g: Permutation) -> bool:
        return g in self._set

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, PermSet)
            and self.degree == other.degree
            and self._set == other._set
        )

    def __hash__(self) -> int:
        return hash((self.degree, self._set))

    def __repr__(self) -> str:
        return f"PermSet(degree={self.degree}, size={len(self)})"

    @property
    def elements(self) -> frozenset[Permutation]:
        return self._set

    @property
    def known_group(self) -> bool | None:
        """Cached closure answer; None when it has never been established."""
        return self._is_group

    def is_group(self, budget: int = 4_000_000) -> bool:
        """Whether the set is a subgroup (closed under composition).

        Verified by checking all pairwise products unless the answer is
        already known; raises CapExceeded when |D|^2 exceeds the budget and
        no cached answer exists.
        """
        if self._is_group is not None:
            return self._is_group
        n = len(self._set)
        if n == 0:
            self._is_group = False
            return False
        if n * n > budget:
            raise CapExceeded(
                f"group check needs {n * n} products, budget is {budget}; "
                "construct the set with an explicit is_group flag"
            )
        closed = all(compose(a, b) in self._set for a in self._sorted for b in self._sorted)
        self._is_group = closed
        return closed


def closure(generators: Sequence[Permutation], cap: int) -> PermSet:
    """Subgroup generated by the given permutations, as an explicit set.

    Breadth-first multiplication by generators; raises CapExceeded as soon
    as more than ``cap`` elements have been found.
    """
    if not generators:
        raise ValueError("need at least one generator")
    n = generators[0].degree
    for g in generators:
        if g.degree != n:
            raise ValueError("generators must share a degree")
    elems = {identity(n)}
    frontier = [identity(n)]
    while frontier:
        new: list[Permutation] = []
        for x in frontier:
            for g in generators:
                y = compose(x, g)
                if y not in elems:
                    elems.add(y)
                    if len(elems) > cap:
                        raise CapExceeded(
                            f"closure exceeded cap {cap}: at least {len(elems)} elements"
                        )
                    new.append(y)
        frontier = new
    return PermSet(n, elems, is_group=True)


def load_permset(text: str, *, is_group: bool | None = None) -> PermSet:
    """Read the permutation set file format.

    '#' starts a comment line; the first non-comment line is "n <degree>";
    each further non-empty line is one permutation in one-line or cycle
    notation.  A repeated permutation is an error.
    """
    degree: int | None = None
    elems: list[Permutation] = []
    seen: set[tuple[int, ...]] = set()
    for lineno, raw in enumerate(text.splitlines(), start=1):
        stripped = raw.strip()
        if not stripped or stripped.startswith("#"):
            continue
        if degree is None:
            m = re.fullmatch(r"n\s+(\d+)", stripped)
            if not m:
                raise ParseError('expected header "n <degree>"', line=lineno)
            degree = int(m.group(1))
            if degree < 1:
                raise ParseError("degree must be at least 1", line=lineno)
            continue
        g = parse_perm(raw, degree, line=lineno)
        if g.images in seen:
            raise ParseError(f"duplicate permutation {g.cycle_string()}", line=lineno)
        seen.add(g.images)
        elems.append(g)
    if degree is None:
        raise ParseError('missing header "n <degree>"')
    return PermSet(degree, elems, is_group=is_group)


def dump_permset(D: PermSet, *, comment: str | None = None) -> str:
    """Write the permutation set file format (one-line notation, sorted)."""
    lines = []
    if comment:
        lines.extend(f"# {c}" for c in comment.splitlines())
    lines.append(f"n {D.degree}")
    lines.extend(g.one_line() for g in D)
    return "\n".join(lines) + "\n"


def read_permset(path, *, is_group: bool | None = None) -> PermSet:
    with open(path, "r", encoding="utf-8") as fh:
        return load_permset(fh.read(), is_group=is_group)
