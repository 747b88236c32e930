# ---
# jupyter:
#   jupytext:
#     formats: py:light
#     text_representation:
#       extension: .py
#       format_name: light
# ---

# # Exact numbers of the form q·√s
#
# Seshadri constants and their upper bounds live in Q(√s) for a single
# square-free s, so every value here is a `RadicalRational`.  Comparisons
# square both sides after looking at signs; no float ever enters.

from fractions import Fraction

from seshadri import RadicalRational, rr_cmp, rr_mul, rr_sqrt
from seshadri.exact import format_rr, parse_rr, to_decimal

# The upper bound for one point on a cubic surface is √3.  Three halves is
# √(3/4) times that, which is where the interesting threshold sits.

eps_upper = rr_sqrt(3)
ratio = rr_sqrt(Fraction(3, 4))
print(eps_upper, "≈", to_decimal(eps_upper))
print(ratio, "·", eps_upper, "=", rr_mul(ratio, eps_upper))

# Normal form strips square factors out of the radicand.

print(parse_rr("1/2*sqrt(8)"), "|", parse_rr("(1/2)·√2"), "|", format_rr(rr_sqrt(Fraction(1, 2))))

# Comparisons that would be fragile in floating point are exact here.
# √(7/9)·√9 and √7 agree, while √(1/2) sits strictly above 7/10.

a = rr_mul(rr_sqrt(Fraction(7, 9)), rr_sqrt(9))
print(a, rr_cmp(a, rr_sqrt(7)).name)
print(rr_cmp(rr_sqrt(Fraction(1, 2)), RadicalRational(Fraction(7, 10))).name)

# JSON keeps the exact pair; the decimal string is only a rendering.

print(rr_sqrt(Fraction(2, 3)).to_json(), to_decimal(rr_sqrt(Fraction(2, 3))))
