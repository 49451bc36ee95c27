"""k_0(x) = exp(-x)/x ties the modified family to Lambert W.

Run with ``python3 demos/03_lambert_and_k2.py``.
"""

# %% w e^w = d is the same equation as k_0(w) = 1/d.
from invbessel import branch_interval, inverse, lambert_w, solve_equation, w_via_k0

for branch, d in ((0, 1.0), (0, 2.0), (0, -0.2), (-1, -0.2)):
    print(f"W_{branch}({d}) = {lambert_w(branch, d):.15f}   via k_0: {w_via_k0(branch, d):.15f}")
print("omega =", inverse("K", 0, 1, 1.0))

# %% An equation with a k_2 left side and a transcendental right side.
res = solve_equation("(1/x + 3/x^2 + 3/x^3) exp(-x) = 3/(3 log(2) - pi)")
print(res.normal_form)
for s in res:
    print(f"  {s.tag} = {s.value:.10f}  (relative residual {s.residual:.1e})")
print("branches -1 and 0 meet at", branch_interval("K", 2, -1).right)
