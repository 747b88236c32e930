"""Seshadri quotients, the upper bound, Xu/Küchle constraints and the certifier.

The certifier turns the standard "assume a sub-threshold Seshadri curve and
derive a contradiction" argument into a finite search.  A potential curve is
summarised by its multiplicities ``m`` at the points and its degree
``d = L.C``.  It violates a target ``t`` when ``d / sum(m) < t``; it is ruled
out when Hodge index together with Xu's self-intersection floor forbids it.
All bounds here concern very general points only, since Xu's lemma needs a
moving family of curves.
"""

from __future__ import annotations

import itertools
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from math import isqrt
from typing import Iterable, Iterator, Optional, Sequence

from .exact import Cmp, RadicalRational, parse_rr, rr_cmp, rr_sqrt, rr_square
from .lattice import DivisorClass, IntersectionLattice, find_curve_class, intersect

VERY_GENERAL_POINTS = "VERY_GENERAL_POINTS"

SINGLE_POINT_ASSUMPTION = (
    "a curve moving in a non-trivial family through one general point with multiplicity 1 "
    "has non-negative self-intersection (Xu floor 0)"
)


class BoundsError(ValueError):
    pass


class KuechleHypothesisError(BoundsError):
    """The vector does not satisfy the hypotheses of Küchle's lemma."""


@dataclass(frozen=True, order=True)
class MultiplicityVector:
    m: tuple[int, ...]

    def __init__(self, m: Iterable[int]):
        m = tuple(int(x) for x in m)
        if not m:
            raise BoundsError("multiplicity vector must have at least one entry")
        if any(x < 0 for x in m):
            raise BoundsError(f"negative multiplicity in {m}")
        if any(a < b for a, b in zip(m, m[1:])):
            raise BoundsError(f"multiplicities must be non-increasing: {m}")
        if sum(m) < 1:
            raise BoundsError("multiplicity vector is identically zero")
        object.__setattr__(self, "m", m)

    @classmethod
    def unsorted(cls, m: Iterable[int]) -> MultiplicityVector:
        return cls(sorted(m, reverse=True))

    @property
    def r(self) -> int:
        return len(self.m)

    @property
    def total(self) -> int:
        return sum(self.m)

    @property
    def support(self) -> tuple[int, ...]:
        return tuple(x for x in self.m if x > 0)

    def __iter__(self):
        return iter(self.m)

    def __len__(self):
        return len(self.m)

    def __str__(self):
        return "(" + ",".join(map(str, self.m)) + ")"


def _mv(m) -> MultiplicityVector:
    return m if isinstance(m, MultiplicityVector) else MultiplicityVector(m)


def epsilon_upper(L2: int, r: int) -> RadicalRational:
    """``sqrt(L^2 / r)``."""
    if L2 < 1 or r < 1:
        raise BoundsError("need L^2 >= 1 and r >= 1")
    return rr_sqrt(Fraction(L2, r))


def seshadri_quotient(LC: int, m) -> Fraction:
    return Fraction(LC, _mv(m).total)


def xu_floor(m) -> int:
    m = _mv(m)
    s = m.support
    if len(s) == 1:
        return 0 if s[0] == 1 else s[0] * (s[0] - 1) + 1
    return sum(x * x for x in s) - s[-1]


def kuechle_holds(m) -> bool:
    """``(r+1) sum m_i^2 > (sum m_i)^2 + m_r (r+1)``."""
    m = _mv(m)
    r = m.r
    if r < 2 or m.m[-1] < 1 or m.m[0] < 2:
        raise KuechleHypothesisError(f"{m} needs r >= 2, all entries >= 1 and m_1 >= 2")
    return (r + 1) * sum(x * x for x in m) > m.total ** 2 + m.m[-1] * (r + 1)


def kuechle_vectors(r_max: int, m_max: int) -> Iterator[tuple[int, ...]]:
    """Every admissible Küchle vector with ``2 <= r <= r_max`` and ``m_1 <= m_max``."""
    for r in range(2, r_max + 1):
        # non-increasing tuples drawn from m_max..1
        for m in itertools.combinations_with_replacement(range(m_max, 0, -1), r):
            if m[0] >= 2:
                yield m


def kuechle_scan(r_max: int, m_max: int) -> list[MultiplicityVector]:
    if r_max < 2 or m_max < 2:
        raise BoundsError("kuechle_scan needs r_max >= 2 and m_max >= 2")
    bad = []
    for m in kuechle_vectors(r_max, m_max):
        r = len(m)
        s = sum(m)
        if not (r + 1) * sum(x * x for x in m) > s * s + m[-1] * (r + 1):
            bad.append(MultiplicityVector(m))
    return bad


def _as_target(t) -> RadicalRational:
    if isinstance(t, RadicalRational):
        return t
    if isinstance(t, str):
        return parse_rr(t)
    return RadicalRational(Fraction(t), 1)


def enumeration_bound(L2: int, r: int, t) -> int:
    """Strict cap on ``sum(m)`` for any curve that could violate ``t``.

    Hodge and Xu give ``L2 * (S^2/r - S/r) <= L2 * xu(m) <= d^2 < t^2 S^2``
    with ``S = sum(m)``, using ``sum m_i^2 >= S^2/r`` and ``m_min <= S/r``;
    hence ``S < L2 / (L2 - r t^2)``.
    """
    t = _as_target(t)
    if L2 < 1:
        raise BoundsError("L^2 must be positive")
    if t.sign() <= 0:
        return 1
    gap = L2 - r * rr_square(t)
    if gap <= 0:
        raise BoundsError(f"target {t} is not below the upper bound {epsilon_upper(L2, r)}")
    x = Fraction(L2) / gap
    return -((-x.numerator) // x.denominator)


def multiplicity_vectors(r: int, below: int) -> Iterator[MultiplicityVector]:
    """Non-increasing vectors of length ``r`` with ``1 <= sum < below``, lexicographic order."""

    def parts(n: int, k: int, cap: int):
        # non-increasing k-tuples with entries <= cap summing to n
        if k == 0:
            if n == 0:
                yield ()
            return
        for first in range(0, min(n, cap) + 1):
            if first * k < n:
                continue
            for rest in parts(n - first, k - 1, first):
                yield (first,) + rest

    vecs = [v for n in range(1, below) for v in parts(n, r, n)]
    for v in sorted(vecs):
        yield MultiplicityVector(v)


def _max_below_sqrt(x: Fraction) -> int:
    """Largest integer ``d >= 0`` with ``d^2 < x`` (``-1`` if none)."""
    if x <= 0:
        return -1
    d = isqrt(x.numerator // x.denominator)
    return d if d * d < x else d - 1


def _min_at_least_sqrt(n: int) -> int:
    """Least integer ``d >= 0`` with ``d^2 >= n``."""
    if n <= 0:
        return 0
    d = isqrt(n)
    return d if d * d == n else d + 1


@dataclass(frozen=True)
class LatticeContext:
    """Surface data that sharpens the certifier: degrees must come from real classes.

    When the lattice is the full Néron-Severi lattice, a curve of degree ``d``
    with Xu floor ``c`` needs a class ``C`` with ``L.C = d`` and ``C^2 >= c``
    (and, given ``K``, arithmetic genus at least the number of nodes forced
    by the multiplicities).
    """

    name: str
    gram: tuple[tuple[int, ...], ...]
    L: tuple[int, ...]
    K: Optional[tuple[int, ...]] = None

    @property
    def lattice(self) -> IntersectionLattice:
        return IntersectionLattice(self.gram)

    @property
    def L2(self) -> int:
        return intersect(self.lattice, DivisorClass(self.L), DivisorClass(self.L))

    def witness(self, degree: int, min_self: int, min_genus: int) -> Optional[DivisorClass]:
        return _lattice_witness(self, degree, min_self, min_genus)


@lru_cache(maxsize=4096)
def _lattice_witness(ctx: LatticeContext, degree: int, min_self: int, min_genus: int):
    K = DivisorClass(ctx.K) if ctx.K is not None else None
    return find_curve_class(ctx.lattice, DivisorClass(ctx.L), degree, min_self, K, min_genus)


@dataclass(frozen=True)
class CaseRecord:
    """How one multiplicity vector was excluded.

    ``filter`` is one of ``degree-positivity`` (no positive degree below
    ``t * sum(m)``), ``hodge-xu`` (``L2 * xu >= t^2 sum(m)^2``),
    ``degree-integrality`` (the real window holds no integer) or
    ``lattice`` (every admissible degree lacks a realising class).
    """

    m: MultiplicityVector
    filter: str
    xu: int
    d_min: int
    d_max: int

    def to_json(self) -> dict:
        return {"m": list(self.m.m), "filter": self.filter, "xu_floor": self.xu, "d_min": self.d_min, "d_max": self.d_max}


@dataclass(frozen=True)
class RefutationTrace:
    m: MultiplicityVector
    d: int
    xu: int
    d_min: int
    d_max: int
    filters_failed: tuple[str, ...]

    @property
    def quotient(self) -> Fraction:
        return Fraction(self.d, self.m.total)

    def to_json(self) -> dict:
        return {
            "m": list(self.m.m),
            "d": self.d,
            "quotient": str(self.quotient),
            "xu_floor": self.xu,
            "degree_interval": [self.d_min, self.d_max],
            "filters_failed": list(self.filters_failed),
        }


@dataclass(frozen=True)
class Certificate:
    L2: int
    r: int
    t: RadicalRational
    enumeration_bound: int
    cases_checked: int
    refuted_by: tuple[CaseRecord, ...]
    lattice: Optional[str] = None
    semantic_scope: str = VERY_GENERAL_POINTS
    assumptions: tuple[str, ...] = (SINGLE_POINT_ASSUMPTION,)

    def to_json(self) -> dict:
        return {
            "kind": "certificate",
            "L2": self.L2,
            "r": self.r,
            "t": self.t.to_json(),
            "t_text": str(self.t),
            "enumeration_bound": self.enumeration_bound,
            "cases_checked": self.cases_checked,
            "refuted_by": [c.to_json() for c in self.refuted_by],
            "lattice": self.lattice,
            "semantic_scope": self.semantic_scope,
            "assumptions": list(self.assumptions),
        }


def _nodes_forced(m: MultiplicityVector) -> int:
    return sum(x * (x - 1) // 2 for x in m)


def examine_vector(L2: int, t: RadicalRational, m: MultiplicityVector, ctx: Optional[LatticeContext] = None):
    """Classify one vector: a :class:`CaseRecord` or a list of surviving traces."""
    xu = xu_floor(m)
    t2s2 = rr_square(t) * m.total * m.total
    d_max = _max_below_sqrt(t2s2) if t.sign() > 0 else -1
    d_min = max(1, _min_at_least_sqrt(L2 * xu))
    if d_max < 1:
        return CaseRecord(m, "degree-positivity", xu, d_min, d_max)
    if L2 * xu >= t2s2:
        return CaseRecord(m, "hodge-xu", xu, d_min, d_max)
    if d_min > d_max:
        return CaseRecord(m, "degree-integrality", xu, d_min, d_max)
    survivors = []
    for d in range(d_min, d_max + 1):
        if ctx is not None and ctx.witness(d, xu, _nodes_forced(m)) is None:
            continue
        failed = ("degree-positivity", "hodge-xu", "degree-integrality") + (("lattice",) if ctx else ())
        survivors.append(RefutationTrace(m, d, xu, d_min, d_max, failed))
    if not survivors:
        return CaseRecord(m, "lattice", xu, d_min, d_max)
    return survivors


def _examine_chunk(args):
    L2, t_json, vecs, ctx = args
    t = RadicalRational.from_json(t_json)
    return [examine_vector(L2, t, MultiplicityVector(v), ctx) for v in vecs]


def default_jobs() -> int:
    try:
        return max(1, int(os.environ.get("SESHADRI_JOBS", "1")))
    except ValueError:
        return 1


def certify_lower_bound(L2: int, r: int, t, ctx: Optional[LatticeContext] = None, jobs: Optional[int] = None):
    """Try to prove ``eps(L; r) >= t`` at very general points.

    Returns a :class:`Certificate` when every candidate ``(m, d)`` is
    excluded, otherwise the sorted list of surviving
    :class:`RefutationTrace` objects.  Survivors mean "not certified", not
    "disproved".
    """
    t = _as_target(t)
    if L2 < 1:
        raise BoundsError("L^2 must be positive")
    if r < 1:
        raise BoundsError("need at least one point")
    if ctx is not None and ctx.L2 != L2:
        raise BoundsError(f"lattice context has L^2 = {ctx.L2}, not {L2}")
    cap = enumeration_bound(L2, r, t)
    vecs = [v.m for v in multiplicity_vectors(r, cap)]
    jobs = default_jobs() if jobs is None else max(1, jobs)

    if jobs == 1 or len(vecs) < 2:
        outcomes = [examine_vector(L2, t, MultiplicityVector(v), ctx) for v in vecs]
    else:
        chunks = [vecs[i::jobs] for i in range(jobs)]
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            parts = list(pool.map(_examine_chunk, [(L2, t.to_json(), c, ctx) for c in chunks]))
        outcomes = [o for part in parts for o in part]

    records, traces = [], []
    for o in outcomes:
        if isinstance(o, CaseRecord):
            records.append(o)
        else:
            traces.extend(o)
    if traces:
        return sorted(traces, key=lambda tr: (tr.m.m, tr.d))
    records.sort(key=lambda c: c.m.m)
    return Certificate(L2, r, t, cap, len(vecs), tuple(records), ctx.name if ctx else None)


def verify_certificate(data: dict, ctx: Optional[LatticeContext] = None) -> list[str]:
    """Re-check a serialized certificate; returns a list of problems (empty if valid)."""
    problems = []
    L2, r = int(data["L2"]), int(data["r"])
    t = RadicalRational.from_json(data["t"])
    if data.get("semantic_scope") != VERY_GENERAL_POINTS:
        problems.append("missing or wrong semantic scope")
    if data.get("lattice") and ctx is None:
        problems.append(f"certificate relies on lattice {data['lattice']!r}; supply it to verify")
        return problems
    try:
        cap = enumeration_bound(L2, r, t)
    except BoundsError as exc:
        return [str(exc)]
    if cap != data["enumeration_bound"]:
        problems.append(f"enumeration bound {data['enumeration_bound']} != recomputed {cap}")
    expected = [v.m for v in multiplicity_vectors(r, cap)]
    listed = [tuple(c["m"]) for c in data["refuted_by"]]
    if listed != expected:
        problems.append("refuted cases do not match the enumeration")
    if data["cases_checked"] != len(expected):
        problems.append(f"cases_checked {data['cases_checked']} != {len(expected)}")
    for case in data["refuted_by"]:
        o = examine_vector(L2, t, MultiplicityVector(case["m"]), ctx)
        if not isinstance(o, CaseRecord):
            problems.append(f"case {case['m']} is not refuted (degree {o[0].d} survives)")
        elif o.filter != case["filter"]:
            problems.append(f"case {case['m']}: filter {case['filter']} != recomputed {o.filter}")
    return problems


# ---------------------------------------------------------------------------
# Replaying the multi-point case analysis


@dataclass(frozen=True)
class Step:
    """One exact comparison ``lhs op rhs`` together with its truth value."""

    label: str
    lhs: Fraction
    op: str
    rhs: Fraction

    @property
    def holds(self) -> bool:
        c = Cmp.of(self.lhs, self.rhs)
        return {"<": c < 0, "<=": c <= 0, "==": c == 0, ">=": c >= 0, ">": c > 0}[self.op]

    def __str__(self):
        return f"{self.label}: {self.lhs} {self.op} {self.rhs} [{'true' if self.holds else 'false'}]"

    def to_json(self) -> dict:
        return {"label": self.label, "lhs": str(self.lhs), "op": self.op, "rhs": str(self.rhs), "holds": self.holds}


@dataclass(frozen=True)
class ContradictionReport:
    """Outcome of pushing one multiplicity vector through the case analysis.

    ``threshold`` is the bound ``c`` on ``(L.C)^2 / (sum m)^2 L^2`` being
    assumed violated.  ``contradiction`` is True when the assumption is
    impossible; False only for the single-point multiplicity-one curve,
    where the argument ends in a fibration instead.
    """

    r: int
    m: MultiplicityVector
    case: str
    threshold: Fraction
    chain: tuple[Step, ...]
    contradiction: bool
    first_principles: bool
    reduced: Optional[ContradictionReport] = None
    conclusion: str = ""

    def to_json(self) -> dict:
        return {
            "r": self.r,
            "m": list(self.m.m),
            "case": self.case,
            "threshold": str(self.threshold),
            "chain": [s.to_json() for s in self.chain],
            "contradiction": self.contradiction,
            "first_principles": self.first_principles,
            "conclusion": self.conclusion,
            "reduced": self.reduced.to_json() if self.reduced else None,
        }


def _single_point(m1: int, threshold: Fraction) -> ContradictionReport:
    mv = MultiplicityVector((m1,))
    xu = xu_floor(mv)
    # violation would need xu / m1^2 < threshold
    step = Step("Xu floor over m^2 against threshold", Fraction(xu, m1 * m1), "<", threshold)
    if m1 == 1:
        chain = (step, Step("Hodge forces C^2 = 0 for the moving curve", Fraction(0), "==", Fraction(0)))
        return ContradictionReport(
            1, mv, "single-point", threshold, chain, False, not step.holds,
            conclusion="multiplicity-one curve with C^2 = 0: the single-point theorem yields a Seshadri fibration",
        )
    # (m/2 - 1)^2 >= 0  <=>  m^2 - m + 1 >= (3/4) m^2
    square = Step("(m/2 - 1)^2 >= 0", Fraction(m1 - 2, 2) ** 2, ">=", Fraction(0))
    ineq = Step("m^2 - m + 1 >= (3/4) m^2", Fraction(xu), ">=", Fraction(3, 4) * m1 * m1)
    below = Step("threshold <= 3/4", threshold, "<=", Fraction(3, 4))
    return ContradictionReport(
        1, mv, "single-point", threshold, (step, square, ineq, below),
        square.holds and ineq.holds and below.holds, not step.holds,
        conclusion="no sub-threshold curve of multiplicity >= 2 at one point",
    )


def reproduce_case_analysis(r: int, m, threshold: Optional[Fraction] = None) -> ContradictionReport:
    """Replay the case analysis for ``r`` points and multiplicities ``m``.

    The assumption under attack is ``(L.C)^2 < threshold * (sum m)^2 * L^2``
    with ``threshold = (r-1)/r^2`` by default, i.e. a quotient below
    ``sqrt((r-1)/r) * eps_upper(L; r)``.
    """
    m = _mv(m)
    if m.r != r:
        raise BoundsError(f"vector {m} does not have {r} entries")
    if r < 2:
        raise BoundsError("the multi-point analysis needs r >= 2")
    c = Fraction(r - 1, r * r) if threshold is None else Fraction(threshold)
    S = m.total
    xu = xu_floor(m)
    # violation assumed: xu * L2 <= C^2 L2 <= (L.C)^2 < c S^2 L2, so xu < c S^2
    direct = Step("Hodge + Xu leave room for a violation (xu < c S^2)", Fraction(xu), "<", c * S * S)
    first_principles = not direct.holds

    if m.m[-1] == 0:
        sub = MultiplicityVector(m.m[:-1])
        if r == 2:
            c_sub = Fraction(3, 4)
            steps = (
                Step("threshold for one point", c, "<", c_sub),
            )
            reduced = _single_point(sub.m[0], c)
            return ContradictionReport(
                r, m, "(c)", c, (direct,) + steps, reduced.contradiction, first_principles, reduced,
                conclusion="reduces to one point, below the single-point threshold 3/4",
            )
        c_sub = Fraction(r - 2, (r - 1) ** 2)
        step = Step(f"(r-1)/r^2 < (r-2)/(r-1)^2 for r={r}", Fraction(r - 1, r * r), "<", c_sub)
        stronger = Step("current threshold <= (r-1)/r^2", c, "<=", Fraction(r - 1, r * r))
        reduced = reproduce_case_analysis(r - 1, sub, c)
        return ContradictionReport(
            r, m, "(c)", c, (direct, step, stronger), reduced.contradiction, first_principles, reduced,
            conclusion=f"the hypothesis also holds for {r - 1} points; delegated",
        )

    if r == 2:
        m1, m2 = m.m
        lhs = 2 * (m1 * m1 + m2 * m2) + (m1 - m2) ** 2
        steps = (
            Step("m1^2 + m2^2 - m2 < (1/4)(m1 + m2)^2 (assumed)", Fraction(m1 * m1 + m2 * m2 - m2), "<", Fraction((m1 + m2) ** 2, 4)),
            Step("2(m1^2 + m2^2) + (m1 - m2)^2 < 4 m2 (equivalent form)", Fraction(lhs), "<", Fraction(4 * m2)),
            Step("threshold <= 1/4", c, "<=", Fraction(1, 4)),
        )
        contradiction = not steps[0].holds and not steps[1].holds and steps[2].holds
        return ContradictionReport(
            r, m, "r=2", c, (direct,) + steps, contradiction, first_principles,
            conclusion="false as m1 >= m2 >= 1" if contradiction else "no contradiction",
        )

    if all(x == 1 for x in m):
        # C^2 >= r - 1, so (L.C)^2 / r^2 >= (r-1)/r^2 L^2
        steps = (
            Step("Xu floor for all-ones", Fraction(xu), "==", Fraction(r - 1)),
            Step("quotient^2 / L^2 >= (r-1)/r^2, compare threshold", Fraction(r - 1, r * r), ">=", c),
        )
        contradiction = all(s.holds for s in steps)
        return ContradictionReport(
            r, m, "(b)", c, (direct,) + steps, contradiction, first_principles,
            conclusion="quotient cannot drop strictly below the threshold" if contradiction else "no contradiction",
        )

    if m.m[0] < 2:
        raise BoundsError(f"{m} fits no case")
    A = Fraction(sum(x * x for x in m) - m.m[-1])
    kue = kuechle_holds(m)
    steps = (
        Step("sum m^2 - m_r < (r-1)/r^2 (sum m)^2 (assumed)", A, "<", Fraction(r - 1, r * r) * S * S),
        Step("Küchle: (sum m)^2 < (r+1)(sum m^2 - m_r)", Fraction(S * S), "<", (r + 1) * A),
        Step("(r-1)(r+1)/r^2 < 1", Fraction((r - 1) * (r + 1), r * r), "<", Fraction(1)),
        Step("threshold <= (r-1)/r^2", c, "<=", Fraction(r - 1, r * r)),
    )
    contradiction = kue and steps[1].holds and steps[2].holds and steps[3].holds
    return ContradictionReport(
        r, m, "(a)", c, (direct,) + steps, contradiction, first_principles,
        conclusion="sum m^2 - m_r < (r^2-1)/r^2 (sum m^2 - m_r) is impossible" if contradiction else "no contradiction",
    )


# ---------------------------------------------------------------------------
# Catalog minimum


@dataclass(frozen=True)
class QuotientWitness:
    curve_name: str
    LC: int
    mults: MultiplicityVector
    quotient: Fraction
    provenance: str = ""

    def to_json(self) -> dict:
        return {
            "curve": self.curve_name,
            "LC": self.LC,
            "mults": list(self.mults.m),
            "quotient": str(self.quotient),
            "provenance": self.provenance,
        }


MAXIMAL = "MAXIMAL"


def catalog_quotients(surface, r: int) -> list[QuotientWitness]:
    """Quotient of every catalog curve that meets at least one of ``r`` general points."""
    if r < 1:
        raise BoundsError("need at least one point")
    out = []
    for entry in surface.catalog:
        mults = entry.profile.place(r)
        if mults is None:
            continue
        LC = intersect(surface.lattice, surface.L, entry.cls)
        out.append(QuotientWitness(entry.name, LC, mults, seshadri_quotient(LC, mults), entry.provenance))
    return out


def min_quotient_over_catalog(surface, r: int):
    """Smallest catalog quotient, or :data:`MAXIMAL` if none is below the upper bound."""
    if not surface.catalog:
        raise BoundsError(f"surface {surface.name!r} has an empty catalog")
    quotients = catalog_quotients(surface, r)
    L2 = intersect(surface.lattice, surface.L, surface.L)
    upper = epsilon_upper(L2, r)
    best = min(quotients, key=lambda w: w.quotient, default=None)
    if best is None or rr_cmp(RadicalRational(best.quotient), upper) is not Cmp.LT:
        return MAXIMAL
    return best
