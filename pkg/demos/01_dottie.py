"""The Dottie number as a branch of an inverse spherical Bessel function.

Run with ``python3 demos/01_dottie.py``.
"""

# %% Recognize the decimal first, the way a constant lookup would.
from fractions import Fraction

from invbessel import Limits, branches_containing, recognize, solve_equation

for cand in recognize("0.739085133215160642")[:3]:
    print(f"{str(cand):<28} agreement {cand.agreement:5.2f}  entropy10 {cand.entropy10:4.2f}  margin {cand.margin:5.2f}")

# %% The same number falls out of the solver.  Dividing cos x = x by -x gives
# y_0(x) = -1, and only branch 1 of y_0 reaches -1.
res = solve_equation("cos(x) = x")
print(res.normal_form, "->", [(s.tag, s.value) for s in res])
print("branches holding -1:", branches_containing("Y", 0, -1.0).branches)

# %% Generalized Dottie equations cos x = c x.  The count of real roots in
# |x| <= 10 jumps by two whenever -c crosses an extremum ordinate of y_0.
for c in ("2", "0.336508", "0.3", "-0.336508", "-0.4"):
    q = Fraction(c)
    res = solve_equation(f"cos(x) = {q} x", Limits(max_abs_x=10.0))
    print(f"c = {c:>9}: {len(res)} roots", [round(v, 5) for v in res.values])
