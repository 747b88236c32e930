# ---
# jupyter:
#   jupytext:
#     formats: py:light
#     text_representation:
#       extension: .py
#       format_name: light
# ---

# # Surfaces and their curve catalogs
#
# A catalog entry is a class plus an asserted profile: how many general
# points a member passes through, and with what multiplicity.

from seshadri import builtin, load_surface, min_quotient_over_catalog, validate
from seshadri.bounds import catalog_quotients
from seshadri.catalog import SurfaceError, shipped_path

for name, r in [("P2", 2), ("cubic", 1), ("scroll(5)", 5)]:
    s = builtin(name)
    w = min_quotient_over_catalog(s, r)
    print(f"{name}: L^2 = {s.L2}, {len(s.catalog)} entries, min quotient at {r} points = {w.quotient} ({w.curve_name})")

# On a scroll the hyperplane section through r points beats the fibre.

for q in catalog_quotients(builtin("scroll(5)"), 5):
    print("  ", q.curve_name, q.mults.m, q.quotient)

# The golden JSON files round-trip to the built-ins and validate cleanly.

s = load_surface(shipped_path("cubic"))
print(s == builtin("cubic"), [d for d in validate(s) if d.level != "ok"])

# Bad input is reported with every problem at once.

try:
    load_surface({"name": "bad", "rank": 2, "gram": [[1, 0], [0, 1]], "L": [1, 0], "catalog": []})
except SurfaceError as exc:
    print(exc.errors)
try:
    load_surface({"name": "bad", "rank": 1, "gram": [[1]], "L": [1],
                  "catalog": [{"name": "x", "class": [-1], "profile": {"max_points": 1, "mult": 1}},
                              {"name": "y", "class": [1], "profile": {"mult": 0}}]})
except SurfaceError as exc:
    print(exc.errors)
