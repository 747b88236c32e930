"""Exact arithmetic on rationals and rational multiples of square roots.

Every Seshadri-type quantity handled by this package has the shape
``q * sqrt(s)`` with ``q`` rational and ``s`` a square-free integer, so a
single closed type is enough.  Comparisons are decided by squaring with
explicit sign handling; nothing here ever touches a float.
"""

from __future__ import annotations

import enum
import re
from dataclasses import dataclass
from fractions import Fraction
from functools import total_ordering
from math import gcd, isqrt

Rational = Fraction


class Cmp(enum.IntEnum):
    LT = -1
    EQ = 0
    GT = 1

    @classmethod
    def of(cls, a, b) -> Cmp:
        return cls((a > b) - (a < b))


def _square_part(n: int) -> tuple[int, int]:
    """Split ``n >= 1`` as ``k*k * s`` with ``s`` square-free; return ``(k, s)``."""
    k, s = 1, 1
    p = 2
    while p * p <= n:
        e = 0
        while n % p == 0:
            n //= p
            e += 1
        k *= p ** (e // 2)
        if e % 2:
            s *= p
        p += 1 if p == 2 else 2
    return k, s * n


def is_squarefree(n: int) -> bool:
    return n >= 1 and _square_part(n)[0] == 1


@total_ordering
@dataclass(frozen=True)
class RadicalRational:
    """The real number ``coeff * sqrt(radicand)``.

    Construct through :func:`rr_normalize` (or the helpers below) unless the
    pair is already known to be normal; the constructor only validates.
    """

    coeff: Fraction
    radicand: int = 1

    def __post_init__(self):
        if not isinstance(self.coeff, Fraction):
            object.__setattr__(self, "coeff", Fraction(self.coeff))
        if self.radicand < 1 or not is_squarefree(self.radicand):
            raise ValueError(f"radicand {self.radicand} is not a positive square-free integer")
        if self.coeff == 0 and self.radicand != 1:
            raise ValueError("zero must be stored as (0, 1)")

    @property
    def is_rational(self) -> bool:
        return self.radicand == 1

    def sign(self) -> int:
        return (self.coeff > 0) - (self.coeff < 0)

    def square(self) -> Fraction:
        return rr_square(self)

    def __lt__(self, other):
        return rr_cmp(self, _coerce(other)) is Cmp.LT

    def __eq__(self, other):
        try:
            other = _coerce(other)
        except TypeError:
            return NotImplemented
        return self.coeff == other.coeff and self.radicand == other.radicand

    def __hash__(self):
        # agree with Fraction/int hashing on the rational sub-case
        return hash(self.coeff) if self.radicand == 1 else hash((self.coeff, self.radicand))

    def __mul__(self, other):
        try:
            return rr_mul(self, _coerce(other))
        except TypeError:
            return NotImplemented

    __rmul__ = __mul__

    def __neg__(self):
        return RadicalRational(-self.coeff, self.radicand)

    def __abs__(self):
        return RadicalRational(abs(self.coeff), self.radicand)

    def __str__(self):
        return format_rr(self)

    def __repr__(self):
        return f"RadicalRational({self.coeff!s}, {self.radicand})"

    def to_json(self) -> dict:
        return {"coeff": f"{self.coeff.numerator}/{self.coeff.denominator}", "radicand": self.radicand}

    @classmethod
    def from_json(cls, data: dict) -> RadicalRational:
        return rr_normalize(Fraction(data["coeff"]), int(data["radicand"]))

    def decimal(self, places: int = 6) -> str:
        return to_decimal(self, places)


def _coerce(x) -> RadicalRational:
    if isinstance(x, RadicalRational):
        return x
    if isinstance(x, (int, Fraction)):
        return RadicalRational(Fraction(x), 1)
    raise TypeError(f"cannot interpret {x!r} as a RadicalRational")


def rr_normalize(coeff, radicand: int) -> RadicalRational:
    """Pull the largest square factor of ``radicand`` into ``coeff``."""
    coeff = Fraction(coeff)
    if radicand < 0:
        raise ValueError("radicand must be non-negative")
    if radicand == 0 or coeff == 0:
        return RadicalRational(Fraction(0), 1)
    k, s = _square_part(radicand)
    return RadicalRational(coeff * k, s)


def rr_sqrt(q) -> RadicalRational:
    """Exact square root of a non-negative rational."""
    q = Fraction(q)
    if q < 0:
        raise ValueError("square root of a negative rational")
    # sqrt(p/q) = sqrt(p*q) / q
    return rr_normalize(Fraction(1, q.denominator), q.numerator * q.denominator)


def rr_square(a: RadicalRational) -> Fraction:
    return a.coeff * a.coeff * a.radicand


def rr_cmp(a: RadicalRational, b: RadicalRational) -> Cmp:
    sa, sb = a.sign(), b.sign()
    if sa != sb:
        return Cmp.of(sa, sb)
    if sa == 0:
        return Cmp.EQ
    # same non-zero sign: compare magnitudes by squaring, flip for negatives
    mag = Cmp.of(rr_square(a), rr_square(b))
    return mag if sa > 0 else Cmp(-mag)


def rr_mul(a: RadicalRational, b: RadicalRational) -> RadicalRational:
    g = gcd(a.radicand, b.radicand)
    # sqrt(g*x) * sqrt(g*y) = g * sqrt(x*y), and x*y is square-free when gcd(x, y) = 1
    return rr_normalize(a.coeff * b.coeff * g, (a.radicand // g) * (b.radicand // g))


def format_rr(a: RadicalRational) -> str:
    """Human form: ``3/2``, ``√3``, ``2·√3``, ``(1/2)·√2``."""
    c = a.coeff
    if a.radicand == 1:
        return str(c)
    root = f"√{a.radicand}"
    if c == 1:
        return root
    if c == -1:
        return "-" + root
    if c.denominator == 1:
        return f"{c}·{root}"
    return f"({c})·{root}"


def to_decimal(a: RadicalRational, places: int = 6) -> str:
    """Round-half-up decimal rendering computed by integer square roots."""
    scale = 10 ** (places + 1)
    sq = rr_square(a) * scale * scale
    n = sq.numerator // sq.denominator
    digits = (isqrt(n) + 5) // 10
    sign = "-" if a.sign() < 0 and digits else ""
    whole, frac = divmod(digits, 10**places)
    if places == 0:
        return f"{sign}{whole}"
    return f"{sign}{whole}.{frac:0{places}d}"


_RR_PATTERN = re.compile(
    r"""^\s*
    (?P<sign>[+-])?\s*
    (?P<coeff>\d+(?:/\d+)?)?\s*
    (?:\*?\s*(?:sqrt\(\s*(?P<s1>\d+)\s*\)|√\s*(?P<s2>\d+)))?
    \s*$""",
    re.VERBOSE,
)


def parse_rr(text: str) -> RadicalRational:
    """Parse ``p/q``, ``p/q*sqrt(s)``, ``sqrt(s)`` or ``p/q·√s``."""
    cleaned = text.replace("·", "*").strip()
    # allow a parenthesised coefficient as produced by format_rr
    cleaned = re.sub(r"^\(([^)]*)\)", r"\1", cleaned)
    m = _RR_PATTERN.match(cleaned)
    if not m or (m.group("coeff") is None and m.group("s1") is None and m.group("s2") is None):
        raise ValueError(f"cannot parse {text!r}; expected 'p/q' or 'p/q*sqrt(s)'")
    coeff = Fraction(m.group("coeff")) if m.group("coeff") else Fraction(1)
    if m.group("sign") == "-":
        coeff = -coeff
    s = m.group("s1") or m.group("s2") or "1"
    return rr_normalize(coeff, int(s))
