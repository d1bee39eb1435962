"""Tour of the tunable exponent family and the signed-power basis.

One dial alpha in [0, 1] moves every basis member between three regimes:
sub-linear roots (alpha=0), the all-linear collapse (alpha=1/2), and odd
integer-like powers (alpha=1).
"""

import numpy as np

from fracmom import basis_value, collision_roots, exponent

print("Exponent curves p_i(alpha) for members i = 2..5")
alphas = np.round(np.linspace(0.0, 1.0, 11), 2)
header = "alpha " + " ".join(f"p_{i}(a)".rjust(8) for i in range(2, 6))
print(header)
for a in alphas:
    row = " ".join(f"{exponent(i, a):8.4f}" for i in range(2, 6))
    print(f"{a:5.2f} {row}")

print()
print("The three anchor regimes for member i = 4:")
print(f"  alpha=0    -> p = {exponent(4, 0.0):.4f}  (fourth root)")
print(f"  alpha=1/2  -> p = {exponent(4, 0.5):.4f}  (identity, collapse)")
print(f"  alpha=1    -> p = {exponent(4, 1.0):.4f}  (signed fourth power)")

print()
print("Any two exponent curves meet only twice, once inside [0,1]:")
for pair in [(2, 3), (2, 5), (3, 4)]:
    inside, outside = collision_roots(*pair)
    print(f"  p_{pair[0]} = p_{pair[1]} at alpha = {inside} and {outside:.4f}")

print()
print("The basis is odd and sign-preserving; at alpha=1/2 it is the identity:")
xi = np.array([-2.0, -0.5, 0.5, 2.0])
for a in (0.0, 0.5, 1.0):
    print(f"  alpha={a}: phi_2(xi) = {np.round(basis_value(2, a, xi), 4)}")
