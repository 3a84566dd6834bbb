"""Dev scratch: drift magnitude vs initial state for the GC preset."""
import time
import numpy as np

from cubint import PhaseState, build, preset, run, drift_report, step as _step
from cubint.simulate import step

gc = build(preset("goryachev-chaplygin"))

# single-step energy residual at the pinned example state
s0 = PhaseState("theta-phi", 1.2, 0.3, 0.1, 0.8)
h0 = gc.H(s0)
s1 = step(gc, s0, 1e-3)
print("single-step |dH| at (1.2,0.3,0.1,0.8):", abs(gc.H(s1) - h0))

cands = [
    (1.2, 0.3, 0.1, 0.8),
    (1.2, 0.3, 0.05, 0.4),
    (1.2, 0.3, 0.02, 0.16),
    (1.0, 3.0, 0.05, 0.1),
    (0.9, 3.14, 0.05, 0.05),
    (0.9, 3.14, 0.1, 0.1),
    (0.95, 3.0, 0.15, 0.1),
]
for st in cands:
    s = PhaseState("theta-phi", *st)
    t0 = time.time()
    tr = run(gc, s, 1e-3, 100.0)
    rep = drift_report(tr)
    h0 = tr.H_values[0]
    q0 = tr.Q_values[0]
    relH = rep.max_abs_dH / (1 + abs(h0))
    relQ = rep.max_abs_dQ / (1 + abs(q0))
    # theta range explored
    th = [x.x1 for x in tr.states]
    print(f"{st}: relH={relH:.2e} relQ={relQ:.2e} halt={tr.halt is not None} "
          f"theta in [{min(th):.2f},{max(th):.2f}] t={time.time()-t0:.0f}s")
