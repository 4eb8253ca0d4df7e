"""Two routes to H_arith: the ideal side and the annihilator side.

On the ideal side one takes the wedge of a basis of I_D in the metric of
the monomial norms and adds 1/2 log gamma.  On the annihilator side one
takes the wedge of a basis of Ann(I_D) in the dual metric, with weights
nu^{-1}.  For k in {1, inf} both are exact rationals after exponentiating,
and they agree exactly; for finite k they agree within the quadrature error.
"""

from hilbheight import VarietyInput, consistency_report, h_arith, h_norm

V = VarietyInput.from_strings(3, ["x0^2 + 3*x1*x2 - x2^2"], name="conic 2")
for D in (1, 2, 3, 4):
    print(f"D = {D}")
    for k in (1, 4, float("inf")):
        p, d = h_arith(V, D, k, "primal"), h_arith(V, D, k, "dual")
        if p.exact is not None:
            verdict = "=" if p.exact == d.exact else "!="
            print(f"  k={k:>4}  exp(2H): primal {verdict} dual = {d.exact}")
        else:
            print(f"  k={k:>4}  primal {p.value:.12f}  dual {d.value:.12f}  err {p.error + d.error:.1e}")
    s = h_norm(V, D)
    print(f"  H_norm = {s.hnorm_hi:.6f} ({s.method}) <= H_arith(inf) = {h_arith(V, D, float('inf')).value:.6f}")
    rep = consistency_report(V, D, ks=(1, 4, float("inf")))
    print(f"  consistency: {'all checks pass' if rep.passed else rep.failures()}")
