"""Extrema, branches and the real inverses they define.

Run with ``python3 demos/02_branches.py``.
"""

# %% The exact rows behind the numerics.
from invbessel import branch_interval, coefficients, evaluate, infsupum, inverse

for fam in "YJIK":
    print(coefficients(fam, 2))

# %% Infsupum records of y_0.  m = 0 is the pole, m = 1 the first positive extremum.
for m in range(-2, 3):
    r = infsupum("Y", 0, m)
    if r.kind == "pole":
        print(f"m = {m:2d}: pole at 0, {r.ordinate_above} from above, {r.ordinate_below} from below")
    else:
        print(f"m = {m:2d}: x = {r.abscissa:.6g}, y = {r.ordinate:.6g}")

# %% A branch runs from one infsupum up to, but not including, the next.
for b in (0, 1, 2):
    print(branch_interval("J", 0, b).describe())

# %% Each branch is monotonic, so it has a true inverse.
for b in (-1, 0, 1, 2, 3):
    iv = branch_interval("J", 1, b)
    try:
        x = inverse("J", 1, b, 0.0)
    except ValueError:
        continue
    print(f"inverse_{b}(j_1)(0) = {x:.10f}   check j_1(x) = {evaluate('J', 1, x):.1e}   in {iv.left:.4f}..{iv.right:.4f}")
