# A quick tour: psi(a) by each representation, and how the truncated series converge.
import numpy as np

from stieltjes0 import DEFAULT_CTRL, RepDigamma, psi_ref, psi_rep

grid = [0.25, 0.5, 1.0, 2.0, 3.7, 10.0]

print(f"{'rep':18s}" + "".join(f"{a:>11}" for a in grid))
for rep in RepDigamma:
    ctrl = DEFAULT_CTRL.replace(max_terms=100000) if rep is RepDigamma.LIMIT_SUM else DEFAULT_CTRL
    errs = [abs(psi_rep(a, rep, ctrl).value - psi_ref(a)) for a in grid]
    print(f"{rep.value:18s}" + "".join(f"{e:11.1e}" for e in errs))

# the binomial-log series without its remainder: slow for small a
print("\nbinomial-log, raw truncation error vs K")
Ks = [5, 10, 15, 20, 25]
for a in (0.5, 1.0, 3.7):
    errs = [abs(psi_rep(a, RepDigamma.BINOMIAL_LOG, DEFAULT_CTRL.replace(max_terms=K, tail_order=0)).value
                - psi_ref(a)) for K in Ks]
    slope = np.polyfit(np.log(Ks), np.log(errs), 1)[0]
    print(f"  a={a:<4} " + " ".join(f"{e:.1e}" for e in errs) + f"   log-log slope {slope:.2f}")

# Fourier form: tail correction against J
print("\nfourier-ci-si at a=1.5")
for J in (100, 1000, 4000):
    for t in (0, 2):
        r = psi_rep(1.5, RepDigamma.FOURIER_CI_SI, DEFAULT_CTRL.replace(max_terms=J, tail_order=t))
        print(f"  J={J:<5} tail_order={t}  err {abs(r.value - psi_ref(1.5)):.1e}")
