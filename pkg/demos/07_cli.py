# ---
# jupyter:
#   jupytext:
#     formats: py:light
#     text_representation:
#       extension: .py
#       format_name: light
# ---

# # The `seshadri` command
#
# Each call below is what you would type after `seshadri`.  Exit status 0
# means success, 1 means "not certified" and 2 means bad input.

import shlex

from seshadri.cli import main

for line in [
    "upper-bound --L2 3 --r 1",
    "certify --surface P2 --r 2 --t 1/2",
    "certify --L2 3 --r 1 --t 13/8",
    "classify --surface cubic --r 1 --from-catalog",
    "nagata-table --L2 1 --r 2..5 --csv",
    "certify --L2 1 --r 2 --t 3/4",
]:
    print("$ seshadri", line)
    code = main(shlex.split(line))
    print(f"[exit {code}]\n")
