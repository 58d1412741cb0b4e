"""Singlet correlations for two spin-1/2 particles.

The maximally entangled spin-1/2 cat state (the singlet) predicts a
joint two-outcome correlation of -a.b for measurement axes a and b.
This script sweeps the relative angle between the axes and compares the
measured correlation against the dot-product law, then shows that for
half-integer spin every measurement round is conclusive, so the raw and
postselected correlation modes coincide.
"""

import math

import numpy as np

import bellcat as bc

state = bc.singlet(bc.SpinQuantum(1))
a = bc.Direction(0.0, 0.0)

print("singlet s=1/2, axis a along z, axis b tilted by theta")
print(f"{'theta/pi':>10} {'P(a,b)':>12} {'-a.b':>12} {'|diff|':>10}")
for k in range(9):
    theta = k * math.pi / 8
    b = bc.Direction(theta, 0.0)
    br = bc.correlation(state, a, b)
    exact = -a.dot(b)
    print(f"{theta / math.pi:>10.3f} {br.p_total:>12.6f} {exact:>12.6f} "
          f"{abs(br.p_total - exact):>10.1e}")

print()
rng = np.random.default_rng(11)
worst_weight = 1.0
worst_gap = 0.0
for _ in range(500):
    t1, t2 = np.arccos(rng.uniform(-1, 1, size=2))
    p1, p2 = rng.uniform(0, 2 * math.pi, size=2)
    a, b = bc.Direction(t1, p1), bc.Direction(t2, p2)
    raw = bc.correlation(state, a, b, mode="raw")
    post = bc.correlation(state, a, b, mode="postselected")
    worst_weight = min(worst_weight, raw.postselect_weight)
    worst_gap = max(worst_gap, abs(raw.p_total - post.p_total))
print(f"500 random axis pairs: min conclusive weight = {worst_weight:.12f}")
print(f"max |raw - postselected| = {worst_gap:.1e}")
print("half-integer spin never produces inconclusive rounds, so the")
print("two correlation modes agree identically")
