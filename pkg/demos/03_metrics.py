"""The metric family h_k and the lower bound on monomial norms.

nu_{a,k} = <x^a, x^a>_k interpolates between the Fubini-Study value
N! prod a_i! / (D+N)! at k = 1 and the constant 1 of the sup metric.  The
comparison max|x_i| <= ||x||_{2k} <= (N+1)^{1/2k} max|x_i| gives
h_k >= (1 - eps_k)^2 h_inf with eps_k = 1 - (N+1)^{-1/(2k)}, and cutting
the integral down to a box [delta, 1]^N in each of N+1 charts gives

    nu_{a,k} >= (1 - eps_k)^{2D} N! (N+1) delta^{D/k} mu_delta.
"""

from hilbheight.metrics import gamma_log, monomial_norm_exact, monomial_norm_numeric
from hilbheight.oracles import check_m5, epsilon_k, mu_delta

print("nu_{(1,1),k} as k grows (N = 1):")
print(f"  k=  1  {float(monomial_norm_exact((1, 1), 1)):.10f}  (exact 1/6)")
for k in (2, 4, 8, 16, 64):
    v = monomial_norm_numeric((1, 1), k)
    print(f"  k={k:3d}  {v.value:.10f}  +/- {v.error:.1e}")
print("  k=inf  1")
print()

print("log gamma(N; D, k) for N = 2, D = 4:")
for k in (1, 2, 4, 8):
    g = gamma_log(2, 4, k)
    print(f"  k={k}  {g.log:.8f}" + (f"  = log {g.exact}" if g.exact is not None else ""))
print()

print("lower bound check, N = 2, k = 4, delta = 1/2")
print(f"  eps_k = {epsilon_k(2, 4):.6f}, mu_delta = {mu_delta(2, 0.5):.8f}")
for a in [(1, 0, 0), (1, 1, 0), (2, 1, 1), (4, 0, 0)]:
    r = check_m5(a, 4, 0.5)
    print(f"  a={a}  nu={r.norm:.6f}  bound={r.lower_bound:.6f}  "
          f"1/nu={r.inverse_norm:.4f} <= {r.inverse_bound:.4f}  {'ok' if r.passed else 'FAIL'}")
print()

# With the constant 2^N (N+1) in place of N! (N+1) the bound can fail.
r = check_m5((1, 0), 8, 0.25)
print("a=(1,0), k=8, delta=1/4:")
print(f"  nu = {r.norm:.6f} (= 8/9), N!(N+1) bound = {r.lower_bound:.6f}, "
      f"2^N(N+1) bound = {r.unnormalized_bound:.6f}")
