"""Builders of shape-transitive sets: block designs, the product
construction, the halved affine set, and classical (semi)linear groups.

Finite fields GF(p^e) label their elements 0..q-1 by reading coefficient
vectors as base-p integers; permutation actions on a field use points
1..q in that order, and projective actions add the point at infinity as
q+1.  These labelings are fixed so constructed sets are reproducible.
"""

from __future__ import annotations

import itertools
import re
from dataclasses import dataclass
from functools import cache
from math import comb, factorial, gcd

from .errors import CapExceeded, ParseError
from .partitions import Partition
from .perm import Permutation, PermSet
from .transitivity import check_character

# Monic irreducible modulus per prime power, as ascending coefficient
# tuples (constant term first).  Users may pass their own to FiniteField.
BUILTIN_MODULI: dict[int, tuple[int, ...]] = {
    4: (1, 1, 1),            # x^2 + x + 1 over GF(2)
    8: (1, 1, 0, 1),         # x^3 + x + 1 over GF(2)
    9: (1, 0, 1),            # x^2 + 1 over GF(3)
    16: (1, 1, 0, 0, 1),     # x^4 + x + 1 over GF(2)
    25: (2, 0, 1),           # x^2 + 2 over GF(5)
    27: (1, 2, 0, 1),        # x^3 + 2x + 1 over GF(3)
    32: (1, 0, 1, 0, 0, 1),  # x^5 + x^2 + 1 over GF(2)
    49: (1, 0, 1),           # x^2 + 1 over GF(7)
}


def _factor_prime_power(q: int) -> tuple[int, int]:
    if q < 2:
        raise ValueError(f"{q} is not a prime power")
    for p in range(2, q + 1):
        if q % p == 0:
            e = 0
            m = q
            while m % p == 0:
                m //= p
                e += 1
            if m != 1:
                raise ValueError(f"{q} is not a prime power")
            return p, e
    raise ValueError(f"{q} is not a prime power")


class FiniteField:
    """GF(p^e) on element labels 0..q-1.

    Arithmetic goes through polynomial residues; all pairwise products are
    tabulated at construction, so later map-building is table lookups.
    """

    def __init__(self, q: int, modulus: tuple[int, ...] | None = None):
        p, e = _factor_prime_power(q)
        self.q = q
        self.p = p
        self.e = e
        if e == 1:
            self.modulus = None
        else:
            if modulus is None:
                if q not in BUILTIN_MODULI:
                    raise ValueError(f"no built-in modulus for GF({q}); pass one explicitly")
                modulus = BUILTIN_MODULI[q]
            modulus = tuple(c % p for c in modulus)
            if len(modulus) != e + 1 or modulus[-1] != 1:
                raise ValueError(f"modulus must be monic of degree {e}")
            if not self._irreducible(modulus):
                raise ValueError(f"modulus {modulus} is reducible over GF({p})")
            self.modulus = modulus
        self._mul = [[self._mul_slow(a, b) for b in range(q)] for a in range(q)]
        self._inv = [0] * q
        for a in range(1, q):
            for b in range(1, q):
                if self._mul[a][b] == 1:
                    self._inv[a] = b
                    break

    def _coeffs(self, a: int) -> list[int]:
        p = self.p
        out = []
        for _ in range(self.e):
            out.append(a % p)
            a //= p
        return out

    def _value(self, coeffs: list[int]) -> int:
        v = 0
        for c in reversed(coeffs):
            v = v * self.p + (c % self.p)
        return v

    def _poly_mod(self, poly: list[int]) -> list[int]:
        p = self.p
        mod = self.modulus
        e = self.e
        poly = [c % p for c in poly]
        for i in range(len(poly) - 1, e - 1, -1):
            c = poly[i]
            if c:
                for j in range(e + 1):
                    poly[i - e + j] = (poly[i - e + j] - c * mod[j]) % p
        return poly[:e] + [0] * max(0, e - len(poly))

    def _irreducible(self, modulus: tuple[int, ...]) -> bool:
        # trial division by every monic polynomial of degree 1..e//2
        p, e = self.p, self.e
        for d in range(1, e // 2 + 1):
            for combo in itertools.product(range(p), repeat=d):
                divisor = list(combo) + [1]
                if self._poly_divides(divisor, list(modulus)):
                    return False
        return True

    def _poly_divides(self, d: list[int], f: list[int]) -> bool:
        p = self.p
        f = f[:]
        while len(f) >= len(d) and any(f):
            while f and f[-1] == 0:
                f.pop()
            if len(f) < len(d):
                break
            lead = f[-1]  # d is monic
            shift = len(f) - len(d)
            for i, c in enumerate(d):
                f[shift + i] = (f[shift + i] - lead * c) % p
        return not any(f)

    def add(self, a: int, b: int) -> int:
        if self.e == 1:
            return (a + b) % self.p
        ca, cb = self._coeffs(a), self._coeffs(b)
        return self._value([(x + y) % self.p for x, y in zip(ca, cb)])

    def neg(self, a: int) -> int:
        if self.e == 1:
            return (-a) % self.p
        return self._value([(-c) % self.p for c in self._coeffs(a)])

    def sub(self, a: int, b: int) -> int:
        return self.add(a, self.neg(b))

    def _mul_slow(self, a: int, b: int) -> int:
        if self.e == 1:
            return (a * b) % self.p
        ca, cb = self._coeffs(a), self._coeffs(b)
        prod = [0] * (2 * self.e - 1)
        for i, x in enumerate(ca):
            if x:
                for j, y in enumerate(cb):
                    prod[i + j] += x * y
        return self._value(self._poly_mod(prod))

    def mul(self, a: int, b: int) -> int:
        return self._mul[a][b]

    def inv(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError("0 has no inverse")
        return self._inv[a]

    def pow(self, a: int, k: int) -> int:
        out = 1
        base = a
        while k:
            if k & 1:
                out = self.mul(out, base)
            base = self.mul(base, base)
            k >>= 1
        return out

    def frobenius(self, a: int, i: int = 1) -> int:
        return self.pow(a, self.p**i)

    @property
    def elements(self) -> range:
        return range(self.q)

    @property
    def squares(self) -> frozenset[int]:
        return frozenset(self.mul(a, a) for a in range(1, self.q))


@cache
def _field(q: int, modulus: tuple[int, ...] | None = None) -> FiniteField:
    return FiniteField(q, modulus)


@dataclass(frozen=True)
class BlockDesign:
    """A collection of k-subsets of {1..n} with computed strength t:
    every i-subset with i <= t lies in a constant number of blocks, and
    nu_table[(i, j)] counts blocks containing i given points and avoiding
    j given others (constant for i + j <= t)."""

    n: int
    k: int
    blocks: tuple[frozenset[int], ...]
    t: int
    nu: int
    nu_table: dict[tuple[int, int], int]


def validate_design(n: int, k: int, blocks) -> BlockDesign:
    """Recompute strength and the nu table by direct counting.

    Strength is never trusted from input; it is the largest t such that
    every i-subset for i <= t has constant coverage.  Constancy of
    nu_{i,j} for all i + j <= t is verified exhaustively.
    """
    bs = []
    seen = set()
    for b in blocks:
        fb = frozenset(b)
        if len(fb) != k or len(set(b)) != len(tuple(b)):
            raise ValueError(f"block {sorted(b)} does not have {k} distinct points")
        if any(not 1 <= p <= n for p in fb):
            raise ValueError(f"block {sorted(b)} has a point outside 1..{n}")
        if fb in seen:
            raise ValueError(f"repeated block {sorted(fb)}")
        seen.add(fb)
        bs.append(fb)
    if not bs:
        raise ValueError("design has no blocks")

    points = range(1, n + 1)
    t = 0
    for i in range(1, k + 1):
        coverage = {sub: 0 for sub in itertools.combinations(points, i)}
        for b in bs:
            for sub in itertools.combinations(sorted(b), i):
                coverage[sub] += 1
        if len(set(coverage.values())) != 1:
            break
        t = i

    nu_table: dict[tuple[int, int], int] = {}
    for i in range(t + 1):
        for j in range(t + 1 - i):
            values = set()
            for inc in itertools.combinations(points, i):
                rest = [p for p in points if p not in inc]
                for out in itertools.combinations(rest, j):
                    iset, oset = set(inc), set(out)
                    values.add(sum(1 for b in bs if iset <= b and not (oset & b)))
                    if len(values) > 1:
                        raise ValueError(
                            f"coverage nu_({i},{j}) not constant at strength {t}: {sorted(values)}"
                        )
            nu_table[(i, j)] = values.pop()
    return BlockDesign(n, k, tuple(bs), t, nu_table.get((t, 0), len(bs)), nu_table)


def nu_identities_check(d: BlockDesign) -> tuple[bool, tuple[int, int] | None]:
    """Counting identities tying adjacent nu entries together; these hold
    for every valid design, so a failure flags a counting bug.  Returns
    (ok, first failing (i, j))."""
    n, k = d.n, d.k
    for (i, j), nu in d.nu_table.items():
        if (i + 1, j) in d.nu_table:
            if d.nu_table[(i + 1, j)] * (n - i - j) != nu * (k - i):
                return False, (i, j)
        if (i, j + 1) in d.nu_table:
            if d.nu_table[(i, j + 1)] * (n - i - j) != nu * (n - k - j):
                return False, (i, j)
        if (i + 1, j - 1) in d.nu_table:
            if d.nu_table[(i + 1, j - 1)] * (n - k - j + 1) != nu * (k - i):
                return False, (i, j)
    return True, None


def load_design(text: str) -> BlockDesign:
    """Design file: '#' comments, header "n <n> k <k>", one block per line."""
    header = None
    blocks = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        stripped = raw.strip()
        if not stripped or stripped.startswith("#"):
            continue
        if header is None:
            m = re.fullmatch(r"n\s+(\d+)\s+k\s+(\d+)", stripped)
            if not m:
                raise ParseError('expected header "n <n> k <k>"', line=lineno)
            header = (int(m.group(1)), int(m.group(2)))
            continue
        try:
            blocks.append([int(tok) for tok in stripped.split()])
        except ValueError:
            raise ParseError(f"bad block line {stripped!r}", line=lineno) from None
    if header is None:
        raise ParseError('missing header "n <n> k <k>"')
    return validate_design(header[0], header[1], blocks)


@dataclass(frozen=True)
class BijectionAssignment:
    """Fixed orderings phi_b of each block and psi_b of its complement.

    phi[b][i] is the image of i+1 under the block bijection; psi[b][j]
    the image of j+1 under the complement bijection.
    """

    phi: dict[frozenset[int], tuple[int, ...]]
    psi: dict[frozenset[int], tuple[int, ...]]

    @classmethod
    def ascending(cls, design: BlockDesign) -> "BijectionAssignment":
        points = set(range(1, design.n + 1))
        phi = {b: tuple(sorted(b)) for b in design.blocks}
        psi = {b: tuple(sorted(points - b)) for b in design.blocks}
        return cls(phi, psi)

    @classmethod
    def parse(cls, text: str, design: BlockDesign) -> "BijectionAssignment":
        """One line per block: "p1 .. pk: q1 .. qk | c1 .. c(n-k)" where the
        left side names the block and the right side lists phi then psi."""
        base = cls.ascending(design)
        phi = dict(base.phi)
        psi = dict(base.psi)
        points = set(range(1, design.n + 1))
        for lineno, raw in enumerate(text.splitlines(), start=1):
            stripped = raw.strip()
            if not stripped or stripped.startswith("#"):
                continue
            if ":" not in stripped:
                raise ParseError("expected 'block: phi | psi'", line=lineno)
            left, right = stripped.split(":", 1)
            try:
                block = frozenset(int(tok) for tok in left.split())
            except ValueError:
                raise ParseError(f"bad block {left!r}", line=lineno) from None
            if block not in phi:
                raise ParseError(f"unknown block {sorted(block)}", line=lineno)
            if "|" not in right:
                raise ParseError("expected '|' between phi and psi orders", line=lineno)
            phi_part, psi_part = right.split("|", 1)
            try:
                phi_order = tuple(int(tok) for tok in phi_part.split())
                psi_order = tuple(int(tok) for tok in psi_part.split())
            except ValueError:
                raise ParseError("orders must be integers", line=lineno) from None
            if frozenset(phi_order) != block or len(phi_order) != design.k:
                raise ParseError(f"phi order must list the block {sorted(block)}", line=lineno)
            if frozenset(psi_order) != points - block or len(psi_order) != design.n - design.k:
                raise ParseError("psi order must list the complement of the block", line=lineno)
            phi[block] = phi_order
            psi[block] = psi_order
        return cls(phi, psi)


def t_transitivity_shape(m: int, t: int) -> Partition:
    """The shape on m points whose transitivity means t-transitivity."""
    if not 0 <= t <= m:
        raise ValueError(f"need 0 <= t <= {m}, got {t}")
    if m - t == 0:
        return (1,) * t
    return (m - t,) + (1,) * t


def product_construct(
    design: BlockDesign,
    D1: PermSet,
    D2: PermSet,
    bij: BijectionAssignment | None = None,
    verify_components: bool = True,
) -> PermSet:
    """Glue a strength-t design with t-transitive sets on the block and on
    the complement into a t-transitive set on all n points.

    The element for (block b, pi, sigma) maps i <= k to phi_b(pi(i)) and
    j > k to psi_b(sigma(j - k)).
    """
    n, k, t = design.n, design.k, design.t
    if t < 1:
        raise ValueError(f"design strength is {t}; need at least 1")
    if D1.degree != k:
        raise ValueError(f"first component must act on {k} points, acts on {D1.degree}")
    if D2.degree != n - k:
        raise ValueError(f"second component must act on {n - k} points, acts on {D2.degree}")
    if verify_components:
        for name, D, m in (("first", D1, k), ("second", D2, n - k)):
            shape = t_transitivity_shape(m, t)
            verdict = check_character(D, shape)
            if not verdict.transitive:
                raise ValueError(
                    f"{name} component is not {t}-transitive: "
                    f"b_{verdict.witness.mu} = {verdict.witness.b} != 0"
                )
    if bij is None:
        bij = BijectionAssignment.ascending(design)
    elems: set[Permutation] = set()
    expected = len(design.blocks) * len(D1) * len(D2)
    for b in design.blocks:
        phi = bij.phi[b]
        psi = bij.psi[b]
        for pi in D1:
            head = tuple(phi[pi.images[i] - 1] for i in range(k))
            for sigma in D2:
                tail = tuple(psi[sigma.images[j] - 1] for j in range(n - k))
                g = Permutation(head + tail)
                if g in elems:
                    raise ValueError(
                        f"duplicate element {g.cycle_string()}; bijection assignment degenerate"
                    )
                elems.add(g)
    assert len(elems) == expected
    return PermSet(n, elems)


def default_half_set(field: FiniteField) -> frozenset[int]:
    """Greedy half-set: scan elements in canonical order, keep x when -x
    has not been kept yet."""
    S: set[int] = set()
    for x in range(1, field.q):
        if field.neg(x) not in S:
            S.add(x)
    return frozenset(S)


def agl_halved(q: int, S=None, modulus: tuple[int, ...] | None = None) -> PermSet:
    """The maps x -> a x + b with a restricted to a half-set S (one of each
    pair {a, -a}); q(q-1)/2 permutations of the q field points."""
    F = _field(q, modulus)
    if q % 2 == 0:
        raise ValueError("q must be odd")
    if S is None:
        S = default_half_set(F)
    else:
        S = frozenset(int(a) for a in S)
        if 0 in S or any(not 0 <= a < q for a in S):
            raise ValueError("half-set must consist of nonzero field labels")
        negs = {F.neg(a) for a in S}
        if S & negs or (S | negs) != set(range(1, q)):
            raise ValueError("S must pick exactly one of each pair {a, -a}")
    elems = []
    for a in sorted(S):
        for b in range(q):
            elems.append(Permutation(tuple(F.add(F.mul(a, x), b) + 1 for x in range(q))))
    D = PermSet(q, elems)
    assert len(D) == q * (q - 1) // 2
    return D


GROUP_KINDS = ("sym", "alt", "cyclic", "agl1", "agammal1", "psl2", "pgl2", "pgammal2")


def classical_group(
    kind: str,
    *,
    n: int | None = None,
    q: int | None = None,
    cap: int = 10**6,
    modulus: tuple[int, ...] | None = None,
) -> PermSet:
    """Explicit element sets of the classical small actions.

    sym/alt/cyclic act on n points.  agl1/agammal1 act on the q field
    elements; psl2/pgl2/pgammal2 act on the projective line (q+1 points,
    infinity labeled q+1).
    """
    if kind in ("sym", "alt", "cyclic"):
        if n is None:
            raise ValueError(f"{kind} needs n")
        return _point_group(kind, n, cap)
    if kind not in GROUP_KINDS:
        raise ValueError(f"unknown kind {kind!r}; expected one of {GROUP_KINDS}")
    if q is None:
        raise ValueError(f"{kind} needs q")
    F = _field(q, modulus)
    if kind == "agl1":
        order = q * (q - 1)
        perms = _affine_maps(F, frobenius=False)
    elif kind == "agammal1":
        order = q * (q - 1) * F.e
        perms = _affine_maps(F, frobenius=True)
    elif kind == "pgl2":
        order = q**3 - q
        perms = _fractional_maps(F, squares_only=False, frobenius=False)
    elif kind == "psl2":
        order = (q**3 - q) // gcd(2, q - 1)
        perms = _fractional_maps(F, squares_only=True, frobenius=False)
    else:  # pgammal2
        order = (q**3 - q) * F.e
        perms = _fractional_maps(F, squares_only=False, frobenius=True)
    if order > cap:
        raise CapExceeded(f"{kind}(q={q}) has {order} elements, cap is {cap}")
    degree = q if kind.startswith("a") else q + 1
    D = PermSet(degree, perms, is_group=True)
    if len(D) != order:
        raise RuntimeError(f"{kind}(q={q}) built {len(D)} elements, expected {order}")
    return D


def _point_group(kind: str, n: int, cap: int) -> PermSet:
    orders = {"sym": factorial(n), "alt": factorial(n) // 2 if n > 1 else 1, "cyclic": n}
    if orders[kind] > cap:
        raise CapExceeded(f"{kind}(n={n}) has {orders[kind]} elements, cap is {cap}")
    if kind == "cyclic":
        start = Permutation(tuple(list(range(2, n + 1)) + [1])) if n > 1 else Permutation((1,))
        elems = []
        g = Permutation(tuple(range(1, n + 1)))
        for _ in range(n):
            elems.append(g)
            g = Permutation(tuple(start.images[v - 1] for v in g.images))
        return PermSet(n, elems, is_group=True)
    all_perms = (Permutation(p) for p in itertools.permutations(range(1, n + 1)))
    if kind == "sym":
        return PermSet(n, all_perms, is_group=True)
    return PermSet(n, (g for g in all_perms if g.is_even()), is_group=True)


def _affine_maps(F: FiniteField, frobenius: bool) -> list[Permutation]:
    twists = range(F.e) if frobenius else range(1)
    out = []
    for i in twists:
        frob = [F.frobenius(x, i) for x in range(F.q)]
        for a in range(1, F.q):
            row = [F.mul(a, fx) for fx in frob]
            for b in range(F.q):
                out.append(Permutation(tuple(F.add(rx, b) + 1 for rx in row)))
    return out


def _fractional_maps(F: FiniteField, squares_only: bool, frobenius: bool) -> list[Permutation]:
    """Fractional-linear maps on the projective line, from projectively
    normalized matrices (a=1, or a=0 and b=1), optionally pre-composed
    with field automorphisms."""
    q = F.q
    INF = q  # internal marker; labeled q+1 externally
    squares = F.squares if squares_only else None

    def image(a, b, c, d, x):
        if x == INF:
            return F.mul(a, F.inv(c)) if c != 0 else INF
        num = F.add(F.mul(a, x), b)
        den = F.add(F.mul(c, x), d)
        if den == 0:
            return INF
        return F.mul(num, F.inv(den))

    matrices = []
    for b, c in itertools.product(range(q), repeat=2):
        for d in range(q):
            det = F.sub(d, F.mul(b, c))  # det of [[1, b], [c, d]]
            if det == 0:
                continue
            if squares is not None and det not in squares:
                continue
            matrices.append((1, b, c, d))
    for c in range(1, q):
        for d in range(q):
            det = F.neg(c)  # det of [[0, 1], [c, d]]
            if squares is not None and det not in squares:
                continue
            matrices.append((0, 1, c, d))

    twists = range(F.e) if frobenius else range(1)
    out = []
    for i in twists:
        frob = [F.frobenius(x, i) for x in range(q)] + [INF]
        for a, b, c, d in matrices:
            images = []
            for x in range(q + 1):
                y = image(a, b, c, d, frob[x])
                images.append(q + 1 if y == INF else y + 1)
            out.append(Permutation(tuple(images)))
    return out


FANO_BLOCKS = ((1, 2, 4), (2, 3, 5), (3, 4, 6), (4, 5, 7), (5, 6, 1), (6, 7, 2), (7, 1, 3))


def fano_design() -> BlockDesign:
    """The seven-point plane as a validated strength-2 design."""
    return validate_design(7, 3, FANO_BLOCKS)
