"""Development smoke checks (not part of the deliverable)."""
import math
import time

import numpy as np

import crwscatter as cs

print("NUMBA_ENABLED:", cs.NUMBA_ENABLED)
t0 = time.time()

# --- Fig2a point ---
sys2 = cs.symmetric_two_port(xi=1, j_c=1, gamma=1, delta=0, phi=math.pi / 2)
E = cs.dispersion_energy(sys2.crw_a, math.pi / 2)
res = cs.smatrix_two_port(sys2, E)
print("fig2a s_ba:", res.amplitude("b", "a"), " s_ab:", res.amplitude("a", "b"))
print("fig2a I_ba:", res.flow("b", "a"), " I_ab:", res.flow("a", "b"))
print("compile+eval time:", time.time() - t0)

# --- phase reversal ---
sys2r = cs.symmetric_two_port(xi=1, j_c=1, gamma=1, delta=0, phi=3 * math.pi / 2)
resr = cs.smatrix_two_port(sys2r, E)
print("fig2b I_ab:", resr.flow("a", "b"), " I_ba:", resr.flow("b", "a"))

# --- three-port perfect point Fig5a ---
sys3 = cs.symmetric_three_port(xi=1, xi_c=1, j_c=1, phi=math.pi / 2)
res3 = cs.smatrix_three_port(sys3, 0.0)
print("fig5a flows:\n", res3.flows)

# --- closed form vs matrix at fig5a ---
cf = cs.smatrix_three_port_closed_form(sys3, 0.0)
print("closed vs matrix dev:", np.max(np.abs(cf.amplitudes - res3.amplitudes)))

# --- random symmetric equivalence ---
from crwscatter.verify import verify_closed_form, verify_against_oracle
t0 = time.time()
dev = verify_closed_form(seed=1, n=200)
print("closed-form dev over 200 random:", dev, " time:", time.time() - t0)

# --- oracle ---
t0 = time.time()
sol = cs.solve_scattering(sys2, E, "a", n_sites=50)
print("oracle s_ba:", sol.amplitudes["b"], " s_aa:", sol.amplitudes["a"],
      " residual:", sol.max_residual, " time:", time.time() - t0)

# oracle vs closed form random
t0 = time.time()
rep = verify_against_oracle(seed=2, n_two=50, n_three=50, n_sites=16)
print("oracle dev two:", rep.max_dev_two, " three:", rep.max_dev_three,
      " time:", time.time() - t0)

# --- absorption identity ---
from crwscatter.lattice import absorbed_fraction, flows_from_solution
sysg = cs.symmetric_two_port(xi=1, j_c=1.2, gamma=0.7, delta=0.3, phi=1.1)
Eg = cs.dispersion_energy(sysg.crw_a, 1.0)
solg = cs.solve_scattering(sysg, Eg, "a", n_sites=40)
fl = flows_from_solution(solg)
deficit = 1.0 - sum(fl.values())
ident = absorbed_fraction(sysg, solg)
print("deficit:", deficit, " identity:", ident, " diff:", abs(deficit - ident))

# closed-form deficit vs oracle identity
rg = cs.smatrix_two_port(sysg, Eg)
print("closed deficit:", rg.absorption("a"), " diff vs ident:",
      abs(rg.absorption("a") - ident))

# --- n_sites independence ---
s3 = cs.solve_scattering(sysg, Eg, "a", n_sites=3)
s100 = cs.solve_scattering(sysg, Eg, "a", n_sites=100)
print("n_sites 3 vs 100 dev:",
      max(abs(s3.amplitudes[l] - s100.amplitudes[l]) for l in ("a", "b")))

# --- conditions ---
cond = cs.nonreciprocity_conditions(1.0, 1.0, 1.0)
print("cond phi:", cond.phi_forward, "delta:", cond.delta_required, "balanced:", cond.balanced)
jc, gam = cs.params_for_detuning(1.0, 0.0, math.pi / 3)
print("params_for_detuning(1,0,pi/3):", jc, gam, " expect sqrt2, sqrt3:", math.sqrt(2), math.sqrt(3))

# --- circulation reversal: flows(2pi-phi) = flows(phi)^T at same k ---
sysf = cs.symmetric_three_port(xi=1, xi_c=1.7, j_c=0.8, phi=1.234)
sysb = cs.symmetric_three_port(xi=1, xi_c=1.7, j_c=0.8, phi=2 * math.pi - 1.234)
Ef = cs.dispersion_energy(sysf.crw_a, 0.9)
ff = cs.smatrix_three_port(sysf, Ef).flows
fb = cs.smatrix_three_port(sysb, Ef).flows
print("transpose identity dev:", np.nanmax(np.abs(ff - fb.T)))

# --- Fig6 total reflection ---
sys6 = cs.symmetric_three_port(xi=1, xi_c=2, j_c=math.sqrt(2), phi=math.pi / 2)
kc = 0.2 * math.pi
E6 = cs.dispersion_energy(sys6.crw_c, kc)
r6 = cs.smatrix_three_port(sys6, E6)
print("fig6f I_cc at kc=0.2pi:", r6.flow("c", "c"))
print("fig6 unequal perfect point:")
sys6a = cs.symmetric_three_port(xi=1, xi_c=0.5, j_c=1 / math.sqrt(2), phi=math.pi / 2)
r6a = cs.smatrix_three_port(sys6a, 0.0)
print(r6a.flows)
