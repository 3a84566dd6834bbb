"""Dev scratch: gate every family, check elliptic/identities."""
import math
import time
import numpy as np

from cubint import (Family, ModelSpec, build, jacobi, complete_elliptic_k,
                    sample_spec, scaled_bracket, poisson_bracket,
                    poisson_bracket_oracle, lie_generators)

# 1. elliptic sanity
t = jacobi(0.5, 0.5)
print("jacobi(0.5,0.5):", t)
print("K(0.5):", complete_elliptic_k(0.5))
print("sn(K)=", jacobi(complete_elliptic_k(0.5), 0.5).sn)
print("m=1-eps degeneration:", abs(jacobi(2.0, 1 - 1e-8).sn - math.tanh(2.0)))

# 2. gate every family
rng = np.random.default_rng(7)
t0 = time.time()
for fam in Family:
    worst = 0.0
    for draw in range(3):
        spec = sample_spec(fam, rng)
        try:
            m = build(spec)
        except Exception as e:
            print(f"{fam.value}: BUILD FAIL draw {draw}: {e}")
            continue
        states = m.domain.sample_states(np.random.default_rng(100 + draw), 50)
        w = max(scaled_bracket(m.H, m.Q, s) for s in states)
        worst = max(worst, w)
        if m.provenance["fitted_scalings"]:
            print(f"  {fam.value} fitted: {m.provenance['fitted_scalings']}")
    print(f"{fam.value:26s} max scaled |{{H,Q}}| = {worst:.3e}")
print("gate time:", time.time() - t0)
