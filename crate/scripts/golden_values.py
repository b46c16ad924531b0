"""Regenerate the 50-digit reference values embedded in crates/core/src/golden.rs.

Evaluates the order-8 abscissa for the curve with roots (i, 0, -i) directly
from its nested-radical definition with mpmath, and compares it with the
simplified closed form sqrt(2) - 1 - i*sqrt(2*(sqrt(2) - 1)).
"""

import mpmath as mp

mp.mp.dps = 60

e1, e2, e3 = mp.mpc(0, 1), mp.mpc(0), mp.mpc(0, -1)
I = mp.mpc(0, 1)

beta = mp.sqrt((e1 - e3) / (e1 - e2))
gamma = mp.sqrt((e1 - e3) * (e1 - e2))
beta1 = mp.sqrt((beta + 1) / (beta - 1)) + mp.sqrt(2 / (beta - 1))
beta2 = mp.sqrt(2 / (beta + 1)) + 1 / beta
x = e1 - gamma - gamma * (mp.sqrt((beta + 1) / 2) - 1) * (
    1 - 1 / beta
    + mp.sqrt(1 + 1 / beta) * (mp.sqrt(beta1 + beta2) + I * (mp.sqrt(beta1 - beta2) + mp.sqrt(1 - 1 / beta)))
)

s2 = mp.sqrt(2)
closed = s2 - 1 - I * mp.sqrt(2 * (s2 - 1))
assert abs(x - closed) < mp.mpf(10) ** -50

with mp.workdps(50):
    for name, value in [
        ("SQRT_2", s2),
        ("X_P_RE", x.real),
        ("X_P_IM", x.imag),
        ("BETA1", beta1.real),
        ("BETA2", beta2.real),
        ("TWO_SQRT_2", 2 * s2),
    ]:
        print(f"{name} = {mp.nstr(value, 50)}")
