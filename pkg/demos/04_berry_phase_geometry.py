"""Geometric phase of spin coherent state overlaps.

The overlap <+n1|+n2> between two spin coherent states is complex; its
argument is not arbitrary but equals s times the signed area of the
spherical triangle spanned by n1, n2 and the north pole.  Its modulus
follows ((1 + n1.n2)/2)^s.  Both laws are checked here for a ladder of
spins, and the canonical octant triangle (area pi/2) is worked through
explicitly.
"""

import cmath
import math

import numpy as np

import bellcat as bc

x_axis = bc.Direction(math.pi / 2, 0.0)
y_axis = bc.Direction(math.pi / 2, math.pi / 2)
octant = bc.berry_area(x_axis, y_axis)
print(f"octant triangle (north pole, x axis, y axis):")
print(f"  signed area = {octant:.12f}  (pi/2 = {math.pi / 2:.12f})")
print()

print("overlap phase versus s * area, random axis pairs")
print(f"{'2s':>4} {'pairs':>6} {'max phase residual':>20} {'max modulus err':>17}")
rng = np.random.default_rng(44)


def random_axis():
    return bc.Direction(math.acos(rng.uniform(-0.9, 1.0)),
                        rng.uniform(0, 2 * math.pi))


for two_s in range(1, 7):
    s = bc.SpinQuantum(two_s)
    worst_phase = 0.0
    worst_mod = 0.0
    n = 0
    while n < 300:
        n1, n2 = random_axis(), random_axis()
        cosang = n1.dot(n2)
        if cosang < -0.9:
            continue  # phase is ill conditioned near antipodal axes
        n += 1
        ov = bc.overlap_plus(s, n1, n2)
        area = bc.berry_area(n1, n2)
        resid = (cmath.phase(ov) - s.s * area) % (2 * math.pi)
        worst_phase = max(worst_phase, min(resid, 2 * math.pi - resid))
        worst_mod = max(worst_mod,
                        abs(abs(ov) - ((1 + cosang) / 2) ** s.s))
    print(f"{two_s:>4} {n:>6} {worst_phase:>20.2e} {worst_mod:>17.2e}")

print()
print("for the octant pair the law gives phase = s * pi/2 exactly:")
for two_s in (1, 2, 3, 4):
    s = bc.SpinQuantum(two_s)
    ov = bc.overlap_plus(s, x_axis, y_axis)
    arg = cmath.phase(ov) % (2 * math.pi)
    want = (s.s * octant) % (2 * math.pi)
    print(f"  2s = {two_s}: arg = {arg / math.pi:.6f} pi, "
          f"predicted {want / math.pi:.6f} pi")
