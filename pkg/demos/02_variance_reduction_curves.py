"""Theoretical variance-reduction curves g2(alpha) for canonical noise.

g2 < 1 means the adaptive estimator beats the sample mean asymptotically.
Heavy tails push the optimum toward alpha = 0; light tails push it toward
alpha = 1; Gaussian noise is flat at 1 (no gain anywhere).
"""

from fracmom import NonFiniteMoment, g2_sweep, parse_spec, write_sweep_csv

for name in ("laplace", "gg:0.5", "gg:1.5", "gg:4", "uniform", "gaussian",
             "beta:2:5"):
    curve = g2_sweep(parse_spec(name), grid_step=0.05, band=0.05)
    lo, hi = curve.excluded_band
    print(f"{name:10s} argmin alpha = {curve.argmin_alpha:4.2f}   "
          f"min g2 = {curve.argmin_g2:.4f}   "
          f"(band ({lo:.2f},{hi:.2f}) excluded)")

print()
print("Cauchy has no finite variance, so the ratio against the mean refuses:")
try:
    g2_sweep(parse_spec("cauchy"))
except NonFiniteMoment as exc:
    print(f"  NonFiniteMoment: {exc}")

print()
curve = g2_sweep(parse_spec("laplace"))
write_sweep_csv(curve, "laplace_sweep.csv")
print("Laplace curve written to laplace_sweep.csv (alpha,g2,degenerate_flag)")
