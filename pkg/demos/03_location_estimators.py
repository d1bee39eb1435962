"""The estimator stack on one sample: full weighted solver, scalar proxy,
and the protected-band fallback to the mean."""

import numpy as np

from fracmom import (
    estimate_full,
    estimate_ols,
    estimate_proxy,
    parse_spec,
    sample,
)

x = 3.0 + sample(parse_spec("laplace"), 400, seed=20240501)
print(f"sample: N = {x.size}, true location = 3.0, mean = {x.mean():.4f}, "
      f"median = {np.median(x):.4f}")
print()

print("full weighted estimator across the dial:")
for a in (0.05, 0.30, 0.70, 0.95):
    res = estimate_full(x, a)
    print(f"  alpha={a:4.2f}: theta_hat = {res.theta_hat:.4f}  "
          f"method={res.method}  iters={res.outer_iters}  "
          f"cond={res.cond_last:9.1f}  converged={res.converged}")

print()
print("inside the protected band the stack returns the mean by design:")
res = estimate_full(x, 0.5)
print(f"  alpha=0.50: theta_hat = {res.theta_hat:.4f}  method={res.method}")

print()
print("scalar signed-power proxy (bracketing root, no weight matrix):")
for a in (0.05, 0.95):
    res = estimate_proxy(x, a)
    print(f"  alpha={a:4.2f}: theta_hat = {res.theta_hat:.4f}  "
          f"method={res.method}")

print()
print("the proxy also handles infinite-variance noise, where the mean fails:")
heavy = sample(parse_spec("cauchy"), 400, seed=7)
print(f"  cauchy sample: mean = {estimate_ols(heavy).theta_hat:+.3f}  "
      f"proxy(alpha=0.05) = {estimate_proxy(heavy, 0.05).theta_hat:+.3f}  "
      f"(location is 0)")
