"""Rational points: the Hilbert function is linear in D with slope the Weil height.

For X = [1:c] the annihilator of I_D is spanned by the evaluation functional
x^b -> c^{b_1}, whose only wedge coordinate is c^D.  So H_norm(X; D) = D log c
on the nose, and the normalized value is log c at every degree.
"""

import math

from hilbheight import VarietyInput, estimate_height, h_norm, weil_height_point

for coords in [(1, 2), (1, 3), (2, 3), (1, 10)]:
    a, b = coords
    V = VarietyInput.from_strings(2, [f"{a}*x1 - {b}*x0"], name=f"[{a}:{b}]")
    print(f"point {V.name}")
    for D in (1, 2, 5, 10):
        s = h_norm(V, D)
        print(f"  D={D:2d}  exp(H_norm) = {s.hnorm_ratio}  H_norm/D = {s.hnorm_hi / D:.12f}  ({s.method})")
    oracle = weil_height_point(coords)
    rep = estimate_height(V, range(1, 21), oracle=oracle)
    print(f"  estimate {rep.estimate.fitted:.15f}   Weil height {oracle.value:.15f}")
    print()

# Two points at once.  The height of the 0-cycle is the sum of the heights,
# but now the annihilator has two rows that interact, and the normalized
# values only approach the sum like c - beta/D.
pair = VarietyInput.from_strings(2, ["2*x0^2 - 5*x0*x1 + 2*x1^2"], name="[1:2] + [2:1]")
rep = estimate_height(pair, range(4, 25, 4))
print(f"{pair.name}: n = {rep.n}, normalized values",
      [round(v.mid, 6) for v in rep.normalized], f"target {2 * math.log(2):.6f}")
print(f"c + beta/D fit: {rep.estimate.fitted:.6f}  in [{rep.estimate.lo:.6f}, {rep.estimate.hi:.6f}]")
