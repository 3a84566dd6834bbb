"""Dev scratch: lemma residuals, Lie closure, simulator drift."""
import math
import time
import numpy as np

from cubint import (Family, ModelSpec, PhaseState, build, preset,
                    residual_lemma1, lie_generators, poisson_bracket,
                    poisson_bracket_oracle, run, drift_report)

# Lemma 1 residuals
m = build(ModelSpec(Family.Q0_ZETA, {"c0": -1.0, "rho0": 0.0, "chi0": 1.0, "beta0": 0.3}))
r = residual_lemma1(m)
print("q0-zeta residuals:", ["%.2e" % x for x in r["residuals"]])
r = residual_lemma1(m, perturb_gamma=1e-3)
print("q0-zeta perturbed:", ["%.2e" % x for x in r["residuals"]])

spec = ModelSpec(Family.PNEG_ZETA, {
    "c0": -(0.1 * 0.2 * 1.0), "c1": 0.1 * 0.2 + 0.1 * 1.0 + 0.2 * 1.0,
    "c2": -(0.1 + 0.2 + 1.0), "alpha": 1.0, "beta": 0.25})
m2 = build(spec)
print("pneg-zeta domain:", m2.domain.x1)
r = residual_lemma1(m2)
print("pneg-zeta residuals:", ["%.2e" % x for x in r["residuals"]])

m3 = build(ModelSpec(Family.PPOS_ZETA, {
    "c0": -6.0, "c1": 11.0, "c2": -6.0, "alpha": 0.7, "beta": -0.2}))
r = residual_lemma1(m3)
print("ppos-zeta residuals:", ["%.2e" % x for x in r["residuals"]])

# Lie closure spot check
L1, L2, L3 = lie_generators("so3")
M1, M2, M3 = lie_generators("so21")
rng = np.random.default_rng(3)
worst = 0.0
for _ in range(100):
    s = PhaseState("theta-phi", rng.uniform(0.3, 2.8), rng.uniform(0, 6.28),
                   rng.normal(), rng.normal())
    worst = max(worst,
                abs(poisson_bracket(L1, L2, s) + L3(s)),
                abs(poisson_bracket(L3, L1, s) + L2(s)),
                abs(poisson_bracket(L2, L3, s) + L1(s)))
print("so3 closure worst:", worst)
worst = 0.0
for _ in range(100):
    s = PhaseState("u-phi", rng.uniform(0.2, 2.5), rng.uniform(0, 6.28),
                   rng.normal(), rng.normal())
    worst = max(worst,
                abs(poisson_bracket(M1, M2, s) - M3(s)),
                abs(poisson_bracket(M3, M1, s) + M2(s)),
                abs(poisson_bracket(M2, M3, s) + M1(s)))
print("so21 closure worst:", worst)
# oracle sign confirmation for {L1,L2}
s = PhaseState("theta-phi", 1.1, 0.4, 0.3, -0.7)
print("{L1,L2} fd:", poisson_bracket_oracle(L1, L2, s), " -L3:", -L3(s))

# Simulator drift (the acceptance-critical measurement)
gc = build(preset("goryachev-chaplygin"))
s0 = PhaseState("theta-phi", 1.2, 0.3, 0.1, 0.8)
t0 = time.time()
traj = run(gc, s0, 1e-3, 100.0)
el = time.time() - t0
rep = drift_report(traj)
h0, q0 = traj.H_values[0], traj.Q_values[0]
print(f"GC t=100 dt=1e-3: steps={rep.steps} halt={traj.halt} time={el:.1f}s")
print(f"  dH={rep.max_abs_dH:.3e} rel={rep.max_abs_dH/(1+abs(h0)):.3e}")
print(f"  dQ={rep.max_abs_dQ:.3e} rel={rep.max_abs_dQ/(1+abs(q0)):.3e}")
t0 = time.time()
traj2 = run(gc, s0, 2e-3, 100.0)
rep2 = drift_report(traj2)
print(f"GC dt=2e-3: dH={rep2.max_abs_dH:.3e} ratio={rep2.max_abs_dH/rep.max_abs_dH:.2f} time={time.time()-t0:.1f}s")
