# ---
# jupyter:
#   jupytext:
#     formats: py:light
#     text_representation:
#       extension: .py
#       format_name: light
# ---

# # Certified lower bounds
#
# To certify ε(L; r) ≥ t for very general points we rule out every curve
# with L·C / Σm < t.  Hodge and Xu's floor bound Σm, so the search is
# finite.  A failure is reported as surviving cases, never as a disproof.

from fractions import Fraction

from seshadri import Certificate, builtin, certify_lower_bound, enumeration_bound, verify_certificate

# Two points in the plane: the line through them gives 1/2, and 1/2 certifies.

cert = certify_lower_bound(1, 2, Fraction(1, 2))
print(type(cert).__name__, "cap on sum(m):", cert.enumeration_bound, "cases:", cert.cases_checked)
for rec in cert.refuted_by:
    print("  ", rec.m.m, rec.filter)

# A thousandth above 1/2 the line itself survives.

for tr in certify_lower_bound(1, 2, Fraction(1, 2) + Fraction(1, 1000)):
    print("survivor:", tr.m.m, "d =", tr.d, "quotient", tr.quotient)

# With only L² = 3 known, t = 3/2 at one point is not certifiable: a degree
# 1 curve through the point with C² = 0 is numerically allowed, and the
# cubic scroll in P⁴ really has one.  The cubic surface's lattice has no
# such class, which the lattice filter detects.

print([(t.m.m, t.d) for t in certify_lower_bound(3, 1, Fraction(3, 2))])
cubic = builtin("cubic")
cert = certify_lower_bound(3, 1, Fraction(3, 2), cubic.context())
print([(r.m.m, r.filter) for r in cert.refuted_by])

# Above 3/2 the nodal hyperplane section (m = 2, d = 3) survives.

print([(t.m.m, t.d) for t in certify_lower_bound(3, 1, Fraction(13, 8), cubic.context())])

# Certificates are plain data and can be re-checked independently.

data = cert.to_json()
print("verify without lattice:", verify_certificate(data))
print("verify with lattice:", verify_certificate(data, cubic.context()))
print("cap for L2=4, r=3, t=1:", enumeration_bound(4, 3, Fraction(1)))
