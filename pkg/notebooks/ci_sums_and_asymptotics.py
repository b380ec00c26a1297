# Weighted Ci sums against their closed forms, and the alpha^-2k asymptotics of the phi sums.
import math

import numpy as np

from stieltjes0.asymsums import fit_exponent, phi_sum_asym
from stieltjes0.cisums import CaseId, prop4_report

betas = np.pi * np.array([0.25, 0.5, 1.0, 1.5, 2.0])
cases = ["P2", "P2Alt", "P4", "P4Alt", "Even2k(3)", "RealA(2.5)", "RealAAlt(3.7)", "Odd(1.5)", "PowerZ(-0.5)"]

print(f"{'case':15s}" + "".join(f"{b / math.pi:>10.2f}pi" for b in betas))
for label in cases:
    c = CaseId.parse(label)
    print(f"{label:15s}" + "".join(f"{prop4_report(b, c).residual:12.1e}" for b in betas))

print("\nfitted error exponents of the phi-sum expansion")
for K in (0, 1, 2):
    print(f"  K={K}: {fit_exponent(K):.3f}")

print("\nerror after K terms")
for alpha in (8.0, 16.0, 32.0):
    partial, direct = phi_sum_asym(alpha, 3)
    print(f"  alpha={alpha:<5} direct {direct: .3e}  " + " ".join(f"{abs(direct - p):.1e}" for p in partial))
