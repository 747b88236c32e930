"""Intersection lattices of surfaces, divisor classes and blow-ups."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import isqrt
from typing import Iterator, Optional, Sequence


class LatticeError(ValueError):
    pass


@dataclass(frozen=True)
class DivisorClass:
    coords: tuple[int, ...]

    def __init__(self, coords: Sequence[int]):
        object.__setattr__(self, "coords", tuple(int(c) for c in coords))

    def __len__(self):
        return len(self.coords)

    def __iter__(self):
        return iter(self.coords)

    def __add__(self, other: DivisorClass) -> DivisorClass:
        _same_length(self, other)
        return DivisorClass(a + b for a, b in zip(self.coords, other.coords))

    def __sub__(self, other: DivisorClass) -> DivisorClass:
        _same_length(self, other)
        return DivisorClass(a - b for a, b in zip(self.coords, other.coords))

    def __neg__(self) -> DivisorClass:
        return DivisorClass(-a for a in self.coords)

    def __mul__(self, k: int) -> DivisorClass:
        return DivisorClass(k * a for a in self.coords)

    __rmul__ = __mul__

    def __repr__(self):
        return f"DivisorClass({list(self.coords)})"


def _same_length(a: DivisorClass, b: DivisorClass):
    if len(a) != len(b):
        raise LatticeError(f"class lengths differ: {len(a)} vs {len(b)}")


@dataclass(frozen=True)
class IntersectionLattice:
    """Integer symmetric Gram matrix of a Néron-Severi lattice.

    Symmetry is enforced on construction; the hyperbolic signature is not,
    since callers sometimes need to report on bad input.  Use
    :func:`check_signature` for that.
    """

    gram: tuple[tuple[int, ...], ...]

    def __init__(self, gram: Sequence[Sequence[int]]):
        rows = tuple(tuple(int(x) for x in row) for row in gram)
        n = len(rows)
        if n == 0 or any(len(row) != n for row in rows):
            raise LatticeError("Gram matrix must be square and non-empty")
        for i in range(n):
            for j in range(i):
                if rows[i][j] != rows[j][i]:
                    raise LatticeError(f"Gram matrix is not symmetric at ({i}, {j})")
        object.__setattr__(self, "gram", rows)

    @property
    def rank(self) -> int:
        return len(self.gram)

    def cls(self, *coords: int) -> DivisorClass:
        c = DivisorClass(coords)
        self._check(c)
        return c

    def basis(self, i: int) -> DivisorClass:
        return DivisorClass(int(i == j) for j in range(self.rank))

    def _check(self, c: DivisorClass):
        if len(c) != self.rank:
            raise LatticeError(f"class of length {len(c)} does not live in a rank {self.rank} lattice")

    def pairing_vector(self, a: DivisorClass) -> tuple[int, ...]:
        """The row vector ``a^T G`` (products of ``a`` with each basis class)."""
        self._check(a)
        return tuple(sum(a.coords[i] * self.gram[i][j] for i in range(self.rank)) for j in range(self.rank))


def intersect(lattice: IntersectionLattice, a: DivisorClass, b: DivisorClass) -> int:
    lattice._check(a)
    lattice._check(b)
    g = lattice.gram
    return sum(a.coords[i] * g[i][j] * b.coords[j] for i in range(lattice.rank) for j in range(lattice.rank) if g[i][j])


def self_intersection(lattice: IntersectionLattice, a: DivisorClass) -> int:
    return intersect(lattice, a, a)


def diagonalize(gram: Sequence[Sequence[int]]) -> list[Fraction]:
    """Diagonal of a rational congruence transform ``P^T G P``.

    By Sylvester's law the signs of the result give the inertia of ``G``.
    """
    a = [[Fraction(x) for x in row] for row in gram]
    n = len(a)
    diag = []
    for k in range(n):
        if a[k][k] == 0:
            # bring a non-zero pivot into place: swap with a later diagonal
            # entry, otherwise add a row/column with a non-zero off-diagonal
            j = next((j for j in range(k + 1, n) if a[j][j] != 0), None)
            if j is not None:
                a[k], a[j] = a[j], a[k]
                for row in a:
                    row[k], row[j] = row[j], row[k]
            else:
                j = next((j for j in range(k + 1, n) if a[k][j] != 0), None)
                if j is not None:
                    for c in range(n):
                        a[k][c] += a[j][c]
                    for r in range(n):
                        a[r][k] += a[r][j]
        p = a[k][k]
        diag.append(p)
        if p == 0:
            continue
        for i in range(k + 1, n):
            f = a[i][k] / p
            if f:
                for c in range(k, n):
                    a[i][c] -= f * a[k][c]
        for i in range(k + 1, n):
            a[k][i] = Fraction(0)
    return diag


@dataclass(frozen=True)
class SignatureCheck:
    ok: bool
    positive: int
    negative: int
    zero: int

    @property
    def details(self) -> str:
        return f"signature (+{self.positive}, -{self.negative}, 0:{self.zero})"

    def __bool__(self):
        return self.ok


def check_signature(lattice: IntersectionLattice) -> SignatureCheck:
    d = diagonalize(lattice.gram)
    pos = sum(x > 0 for x in d)
    neg = sum(x < 0 for x in d)
    zero = len(d) - pos - neg
    return SignatureCheck(pos == 1 and zero == 0, pos, neg, zero)


def hodge_filter(L2: int, LC: int, C2: int) -> bool:
    """True iff ``L2 * C2 <= LC**2``, i.e. the triple is compatible with Hodge index."""
    if L2 <= 0:
        raise ValueError("Hodge filter needs L^2 > 0")
    return L2 * C2 <= LC * LC


def arithmetic_genus(C: DivisorClass, K: DivisorClass, lattice: IntersectionLattice) -> Fraction:
    return Fraction(intersect(lattice, C, C) + intersect(lattice, C, K), 2) + 1


@dataclass(frozen=True)
class BlowupExtension:
    """The lattice of the blow-up at ``r`` points.

    The extended basis is the base basis followed by ``E_1, ..., E_r``.
    """

    base: IntersectionLattice
    r: int
    extended: IntersectionLattice
    canonical: Optional[DivisorClass]

    def lift(self, v: DivisorClass) -> DivisorClass:
        self.base._check(v)
        return DivisorClass(v.coords + (0,) * self.r)

    @property
    def exceptionals(self) -> tuple[DivisorClass, ...]:
        n = self.base.rank
        return tuple(self.extended.basis(n + i) for i in range(self.r))

    def pullback_minus(self, v: DivisorClass, mults: Sequence[int]) -> DivisorClass:
        """``lift(v) - sum m_i E_i``."""
        if len(mults) != self.r:
            raise LatticeError(f"expected {self.r} multiplicities, got {len(mults)}")
        return DivisorClass(v.coords + tuple(-m for m in mults))


def blowup_extend(lattice: IntersectionLattice, K: Optional[DivisorClass], r: int) -> BlowupExtension:
    if r < 1:
        raise ValueError("need at least one point to blow up")
    sig = check_signature(lattice)
    if not sig:
        raise LatticeError(f"base lattice is not hyperbolic: {sig.details}")
    n = lattice.rank
    gram = [list(row) + [0] * r for row in lattice.gram]
    gram += [[0] * n + [-int(i == j) for j in range(r)] for i in range(r)]
    ext = IntersectionLattice(gram)
    canonical = None
    if K is not None:
        lattice._check(K)
        canonical = DivisorClass(K.coords + (1,) * r)
    return BlowupExtension(lattice, r, ext, canonical)


@dataclass(frozen=True)
class NefCheck:
    """Outcome of testing a class against finitely many curves.

    Always partial: passing is necessary evidence for nefness, never proof.
    """

    partial_nef: bool
    violator: Optional[DivisorClass] = None
    reason: str = ""
    partial: bool = field(default=True, init=False)

    @property
    def label(self) -> str:
        return "PartialNef" if self.partial_nef else "Violator"


def is_nef_against(catalog: Sequence[DivisorClass], D: DivisorClass, lattice: IntersectionLattice) -> NefCheck:
    for C in catalog:
        p = intersect(lattice, D, C)
        if p < 0:
            return NefCheck(False, C, f"D.C = {p} < 0")
    d2 = intersect(lattice, D, D)
    if d2 < 0:
        return NefCheck(False, D, f"D^2 = {d2} < 0")
    return NefCheck(True, None, "non-negative against every listed class and D^2 >= 0")


def _upper_unit_ldl(m: list[list[Fraction]]) -> tuple[list[Fraction], list[list[Fraction]]]:
    """``x^T M x = sum_i d_i (x_i + sum_{j>i} u_ij x_j)^2`` for positive definite ``M``."""
    n = len(m)
    d = [Fraction(0)] * n
    u = [[Fraction(0)] * n for _ in range(n)]
    for i in range(n):
        d[i] = m[i][i] - sum(d[k] * u[k][i] ** 2 for k in range(i))
        if d[i] <= 0:
            raise LatticeError("form is not positive definite")
        for j in range(i + 1, n):
            u[i][j] = (m[i][j] - sum(d[k] * u[k][i] * u[k][j] for k in range(i))) / d[i]
    return d, u


def short_vectors(
    m: list[list[Fraction]], bound: Fraction, centre: Optional[Sequence[Fraction]] = None
) -> Iterator[tuple[int, ...]]:
    """All integer ``x`` with ``(x - c)^T M (x - c) <= bound`` (Fincke-Pohst, exact)."""
    n = len(m)
    if n == 0:
        if bound >= 0:
            yield ()
        return
    c = [Fraction(0)] * n if centre is None else [Fraction(v) for v in centre]
    d, u = _upper_unit_ldl(m)
    x = [0] * n

    def rec(i: int, budget: Fraction):
        if i < 0:
            yield tuple(x)
            return
        mid = c[i] - sum(u[i][j] * (x[j] - c[j]) for j in range(i + 1, n))
        room = budget / d[i]
        reach = isqrt(room.numerator // room.denominator) + 1
        lo = (mid.numerator // mid.denominator) - reach
        hi = -((-mid.numerator) // mid.denominator) + reach
        for xi in range(lo, hi + 1):
            t = (xi - mid) ** 2
            if t <= room:
                x[i] = xi
                yield from rec(i - 1, budget - d[i] * t)
        x[i] = 0

    if bound >= 0:
        yield from rec(n - 1, Fraction(bound))


def _column_reduce(ell: Sequence[int]) -> tuple[int, list[list[int]]]:
    """Unimodular ``U`` with ``ell U = (g, 0, ..., 0)`` and ``g = gcd(ell) >= 0``."""
    n = len(ell)
    a = list(ell)
    u = [[int(i == j) for j in range(n)] for i in range(n)]

    def col_sub(i, p, q):
        a[i] -= q * a[p]
        for row in u:
            row[i] -= q * row[p]

    while sum(1 for v in a if v) > 1:
        p = min((i for i in range(n) if a[i]), key=lambda i: abs(a[i]))
        for i in range(n):
            if i != p and a[i]:
                col_sub(i, p, a[i] // a[p])
    p = next((i for i in range(n) if a[i]), 0)
    if p:
        a[0], a[p] = a[p], a[0]
        for row in u:
            row[0], row[p] = row[p], row[0]
    if a[0] < 0:
        a[0] = -a[0]
        for row in u:
            row[0] = -row[0]
    return a[0], u


def _solve(m: list[list[Fraction]], b: list[Fraction]) -> list[Fraction]:
    n = len(m)
    a = [list(row) + [b[i]] for i, row in enumerate(m)]
    for k in range(n):
        p = next(i for i in range(k, n) if a[i][k] != 0)
        a[k], a[p] = a[p], a[k]
        for i in range(n):
            if i != k and a[i][k]:
                f = a[i][k] / a[k][k]
                for j in range(k, n + 1):
                    a[i][j] -= f * a[k][j]
    return [a[i][n] / a[i][i] for i in range(n)]


def find_curve_class(
    lattice: IntersectionLattice,
    L: DivisorClass,
    degree: int,
    min_self: int,
    K: Optional[DivisorClass] = None,
    min_genus: int = 0,
) -> Optional[DivisorClass]:
    """Some class ``C`` with ``L.C = degree`` and ``C^2 >= min_self``, or None.

    With ``K`` given, also requires ``p_a(C) >= min_genus``.  The lattice must
    be hyperbolic and ``L^2 > 0``: then ``-C^2`` is positive definite on the
    orthogonal complement of ``L`` and the search below is exhaustive.
    """
    L2 = intersect(lattice, L, L)
    if L2 <= 0:
        raise LatticeError("need L^2 > 0")
    if min_self * L2 > degree * degree:
        return None
    ell = lattice.pairing_vector(L)
    g, U = _column_reduce(ell)
    if g == 0 or degree % g:
        return None
    n = lattice.rank
    z1 = degree // g
    # Gram matrix in the basis given by the columns of U
    G = lattice.gram
    cols = [[U[i][j] for i in range(n)] for j in range(n)]
    Gz = [[sum(cols[a][i] * G[i][k] * cols[b][k] for i in range(n) for k in range(n)) for b in range(n)] for a in range(n)]
    # columns 1.. span the complement of L; there C^2 = z1^2 G00 + 2 z1 b.w - w^T M w
    M = [[Fraction(-Gz[i][j]) for j in range(1, n)] for i in range(1, n)]
    b = [Fraction(Gz[0][j]) for j in range(1, n)]
    y = _solve(M, [z1 * v for v in b]) if n > 1 else []
    top = z1 * z1 * Gz[0][0] + sum(z1 * bi * yi for bi, yi in zip(b, y))
    # C^2 = top - (w - y)^T M (w - y)
    for w in short_vectors(M, top - min_self, y):
        coords = [z1 * cols[0][i] + sum(w[k] * cols[k + 1][i] for k in range(n - 1)) for i in range(n)]
        C = DivisorClass(coords)
        if intersect(lattice, C, C) < min_self:
            continue
        if K is not None and arithmetic_genus(C, K, lattice) < min_genus:
            continue
        return C
    return None
