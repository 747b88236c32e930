"""Fibration verdicts from the single- and multi-point threshold theorems.

The input is a value of ``eps(L; r)`` (exact, an upper bound, or a lower
bound).  Everything is decided by exact comparison of the ratio
``rho = eps^2 * r / L^2`` against rational threshold constants.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from .exact import Cmp, RadicalRational, rr_mul, rr_sqrt, rr_square
from .bounds import BoundsError, epsilon_upper

FIBRATION_FORCED = "FIBRATION_FORCED"
FIBRATION_OR_CUBIC = "FIBRATION_OR_CUBIC"
BOUNDARY_INCONCLUSIVE = "BOUNDARY_INCONCLUSIVE"
INCONCLUSIVE = "INCONCLUSIVE"
MAXIMAL = "MAXIMAL"

EXACT, UPPER, LOWER = "exact", "upper", "lower"

SINGLE_POINT_THEOREM = "single-point fibration theorem (Hwang-Keum), threshold 3/4"
CUBIC_EQUALITY = "equality case: not fibered forces the cubic surface with its hyperplane bundle"
CUBIC_COROLLARY = "improved single-point threshold 7/9 (cubic or fibered)"
MULTI_POINT_THEOREM = "multi-point fibration theorem, threshold (r-1)/r"
OPTIMALITY = "(r-1)/r is attained by P2 and rational normal scrolls, which are not fibered by Seshadri curves"


@dataclass(frozen=True)
class Comparison:
    label: str
    lhs: Fraction
    rhs: Fraction
    result: Cmp

    def replay(self) -> Cmp:
        return Cmp.of(self.lhs, self.rhs)

    def __str__(self):
        sym = {Cmp.LT: "<", Cmp.EQ: "=", Cmp.GT: ">"}[self.result]
        return f"{self.label}: {self.lhs} {sym} {self.rhs}"

    def to_json(self) -> dict:
        return {"label": self.label, "lhs": str(self.lhs), "rhs": str(self.rhs), "result": self.result.name}


@dataclass(frozen=True)
class Verdict:
    kind: str
    r: int
    ratio_squared: Fraction
    threshold_used: Fraction
    source: str
    bound: str
    trace: tuple[Comparison, ...]
    notes: tuple[str, ...] = ()

    def replay(self) -> str:
        """Recompute the kind from the recorded comparisons alone."""
        for c in self.trace:
            if c.replay() is not c.result:
                raise AssertionError(f"trace entry does not replay: {c}")
        return _decide(self.r, self.ratio_squared, self.bound)[0]

    def to_json(self) -> dict:
        return {
            "kind": self.kind,
            "r": self.r,
            "ratio_squared": str(self.ratio_squared),
            "threshold": str(self.threshold_used),
            "source": self.source,
            "eps_bound": self.bound,
            "trace": [c.to_json() for c in self.trace],
            "notes": list(self.notes),
        }


def _cmp(label: str, lhs, rhs) -> Comparison:
    lhs, rhs = Fraction(lhs), Fraction(rhs)
    return Comparison(label, lhs, rhs, Cmp.of(lhs, rhs))


def _decide(r: int, rho: Fraction, bound: str):
    """Return ``(kind, threshold, source, trace, notes)``."""
    trace = [_cmp("rho vs 1 (maximal)", rho, 1)]
    if r == 1:
        lo, hi = Fraction(3, 4), Fraction(7, 9)
        c_lo = _cmp("rho vs 3/4", rho, lo)
        c_hi = _cmp("rho vs 7/9", rho, hi)
        trace += [c_lo, c_hi]
        if bound == LOWER:
            if trace[0].result is Cmp.EQ:
                return MAXIMAL, Fraction(1), "upper bound attained", trace, ("a lower bound equal to the upper bound pins eps",)
            return INCONCLUSIVE, lo, SINGLE_POINT_THEOREM, trace, ("a lower bound cannot force a fibration",)
        if c_lo.result is Cmp.LT:
            return FIBRATION_FORCED, lo, SINGLE_POINT_THEOREM, trace, ("there is a fibration whose fibers are Seshadri curves",)
        if c_lo.result is Cmp.EQ:
            return FIBRATION_OR_CUBIC, lo, CUBIC_EQUALITY, trace, ("fibered by Seshadri curves, or the cubic surface in P3 with L = O(1)",)
        if c_hi.result is Cmp.LT:
            # kept as the disjunction so that FIBRATION_FORCED stays monotone in eps
            return FIBRATION_OR_CUBIC, hi, CUBIC_COROLLARY, trace, (
                "fibered by Seshadri curves, or the cubic surface in P3 with L = O(1) (whose ratio is exactly 3/4)",
            )
        if trace[0].result is Cmp.EQ and bound == EXACT:
            return MAXIMAL, Fraction(1), "upper bound attained", trace, ()
        return INCONCLUSIVE, hi, CUBIC_COROLLARY, trace, ("at or above 7/9 no structure is forced",)

    th = Fraction(r - 1, r)
    c_th = _cmp(f"rho vs (r-1)/r = {th}", rho, th)
    trace.append(c_th)
    if bound == LOWER:
        if trace[0].result is Cmp.EQ:
            return MAXIMAL, Fraction(1), "upper bound attained", trace, ("a lower bound equal to the upper bound pins eps",)
        return INCONCLUSIVE, th, MULTI_POINT_THEOREM, trace, ("a lower bound cannot force a fibration",)
    if c_th.result is Cmp.LT:
        return FIBRATION_FORCED, th, MULTI_POINT_THEOREM, trace, (
            "for very general points the fiber through any P_i computes eps(L; P_1..P_r)",
        )
    if c_th.result is Cmp.EQ:
        return BOUNDARY_INCONCLUSIVE, th, f"{MULTI_POINT_THEOREM}; {OPTIMALITY}", trace, ()
    if trace[0].result is Cmp.EQ and bound == EXACT:
        return MAXIMAL, Fraction(1), "upper bound attained", trace, ()
    return INCONCLUSIVE, th, MULTI_POINT_THEOREM, trace, ()


def ratio_squared(eps: RadicalRational, L2: int, r: int) -> Fraction:
    return rr_square(eps) * r / L2


def _verdict(eps: RadicalRational, L2: int, r: int, bound: str) -> Verdict:
    if bound not in (EXACT, UPPER, LOWER):
        raise ValueError(f"unknown bound kind {bound!r}")
    if not isinstance(eps, RadicalRational):
        eps = RadicalRational(Fraction(eps))
    if eps.sign() <= 0:
        raise BoundsError("eps must be positive")
    if eps > epsilon_upper(L2, r):
        raise BoundsError(f"eps = {eps} exceeds the upper bound {epsilon_upper(L2, r)}")
    rho = ratio_squared(eps, L2, r)
    kind, th, source, trace, notes = _decide(r, rho, bound)
    return Verdict(kind, r, rho, th, source, bound, tuple(trace), tuple(notes))


def classify_single(eps, L2: int, bound: str = EXACT) -> Verdict:
    return _verdict(eps, L2, 1, bound)


def classify_multi(eps, L2: int, r: int, bound: str = EXACT) -> Verdict:
    if r < 2:
        raise BoundsError("classify_multi needs r >= 2")
    return _verdict(eps, L2, r, bound)


def classify(eps, L2: int, r: int, bound: str = EXACT) -> Verdict:
    return classify_single(eps, L2, bound) if r == 1 else classify_multi(eps, L2, r, bound)


@dataclass(frozen=True)
class NagataRow:
    r: int
    ratio: RadicalRational
    ratio_squared: Fraction
    lower_bound: RadicalRational

    def to_json(self) -> dict:
        return {
            "r": self.r,
            "ratio": self.ratio.to_json(),
            "ratio_text": str(self.ratio),
            "ratio_decimal": self.ratio.decimal(),
            "ratio_squared": str(self.ratio_squared),
            "lower_bound": self.lower_bound.to_json(),
            "lower_bound_text": str(self.lower_bound),
            "lower_bound_decimal": self.lower_bound.decimal(),
        }


def nagata_biran_table(L2: int, r_from: int, r_to: int) -> list[NagataRow]:
    """Lower bounds ``sqrt((r-1)/r) * eps_upper(L; r)`` valid on surfaces with no fibration over a curve."""
    if not 2 <= r_from <= r_to:
        raise BoundsError("need 2 <= r_from <= r_to")
    rows = []
    for r in range(r_from, r_to + 1):
        ratio = rr_sqrt(Fraction(r - 1, r))
        rows.append(NagataRow(r, ratio, Fraction(r - 1, r), rr_mul(ratio, epsilon_upper(L2, r))))
    return rows
