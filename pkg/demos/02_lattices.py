# ---
# jupyter:
#   jupytext:
#     formats: py:light
#     text_representation:
#       extension: .py
#       format_name: light
# ---

# # Intersection lattices, blow-ups and Hodge
#
# The cubic surface is the plane blown up in six points.  Its Néron–Severi
# lattice is diag(1, -1, ..., -1) in the basis e0, e1..e6.

from seshadri import DivisorClass, blowup_extend, builtin, check_signature, hodge_filter, intersect, is_nef_against
from seshadri.lattice import arithmetic_genus, find_curve_class

cubic = builtin("cubic")
H, K = cubic.L, cubic.K
print("H^2 =", intersect(cubic.lattice, H, H), " K^2 =", intersect(cubic.lattice, K, K))
print(check_signature(cubic.lattice).details)

# Hodge index: L² C² ≤ (L·C)² for any class.  A line passes, and so does a
# hyperplane section, which is the equality case.

line = cubic.entry("L12").cls
print(hodge_filter(3, intersect(cubic.lattice, H, line), intersect(cubic.lattice, line, line)))
print(hodge_filter(3, 3, 3), hodge_filter(3, 3, 4))

# Blowing up r more points appends r exceptional classes with E² = -1.
# Pulled-back products are unchanged and K picks up the exceptionals.

ext = blowup_extend(cubic.lattice, K, 2)
E1, E2 = ext.exceptionals
print(ext.canonical.coords, intersect(ext.extended, E1, E1), intersect(ext.extended, ext.lift(H), ext.lift(H)))

# On the blow-up, H - E1 is the class of hyperplane sections through the
# blown-up point.  A partial nef test against the known curves: the
# exceptional curves and the proper transforms of the lines.

D = ext.lift(H) - E1
curves = [E1, E2] + [ext.lift(c.cls) for c in cubic.catalog[1:]]
res = is_nef_against(curves, D, ext.extended)
print(res.label, res.reason)

# Searching the lattice.  No degree-1 class has C² ≥ 0, so no pencil of
# lines exists.  In degree 2 the search finds H - E6, the conics residual to
# a line in its hyperplane sections, which move in a pencil.

for d, c2 in [(1, 0), (2, 0), (3, 3)]:
    C = find_curve_class(cubic.lattice, H, d, c2)
    print(f"degree {d}, C^2 >= {c2}:", C.coords if C else None,
          "" if C is None else f"p_a = {arithmetic_genus(C, K, cubic.lattice)}")
