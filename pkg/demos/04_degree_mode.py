"""The Dottie number for a calculator left in degree mode.

Pressing cos repeatedly in degree mode converges to the root of
cos(pi x/180) = x.  Substituting s = pi x/180 turns it into cos(s)/s = 180/pi,
that is y_0(s) = -180/pi.

Run with ``python3 demos/04_degree_mode.py``.
"""

import math

from invbessel import solve_equation

res = solve_equation("cos(x)/x = 180/pi")
(s,) = res.solutions
x = 180 * s.value / math.pi
print(f"s = {s.tag} = {s.value:.15f}")
print(f"x = 180 s/pi = {x:.10f}")

# %% Pressing the key 30 times agrees.
y = 1.0
for _ in range(30):
    y = math.cos(math.radians(y))
print(f"iterated: {y:.10f}")
