"""The Farey map, the scaling function phi and the mother wavelet psi.

Prints the normalising constants, a few knot values, and the residual of
the two-scale relation, which vanishes at half-integers but not between
them.  Run: python3 demos/01_scaling_function.py
"""
import numpy as np

from fareywave import (
    K, K0, K1, SignConvention, constants, eval_farey, eval_phi, eval_psi, filters, tabulate, two_scale_residual,
)

print(f"K  = 1/(4 ln2 - 2) = {K:.15f}")
print(f"K0 = {K0:.15f}   K1 = K*K0 = {K1:.15f}")

print("\nknot values")
print(f"  F(1/2)   = {eval_farey(0.5):.15f}  (= K)")
print(f"  phi(0)   = {eval_phi(0.0):.15f}  (= K)")
print(f"  phi(1/2) = {eval_phi(0.5):.15f}  (= K/3)")
for conv in SignConvention:
    print(f"  psi(1/2) under {conv.name:15s} = {eval_psi(0.5, conv):+.15f}")

c = constants()
print(f"\nmean of psi (sum form) = {c.psi_mean:.12f}; the shift c = {c.c_corrected:.12f} removes it")

f = filters()
print(f"\nlow-pass taps h(-1), h(0), h(1) = {f.h(-1):.10f}, {f.h(0):.10f}, {f.h(1):.10f}")
print("two-scale residual phi(x) - sqrt2 sum_k h_k phi(2x - k):")
for x in (-1, -0.75, -0.5, -0.25, 0, 0.25, 0.5):
    print(f"  x = {x:+.2f}   residual = {two_scale_residual(x):+.3e}")
print(f"at x = 1/4 the residual is 7K/45 = {7 * K / 45:.12f}: the relation holds only on the half-integers")

t = tabulate("psi", -0.5, 1.5, 9, SignConvention.PIECEWISE_FORM)
print("\npsi table (piecewise form), the data behind a plot of the mother wavelet")
for x, v in t.rows:
    print(f"  {x:+.3f}  {v:+.6f}")
x = np.linspace(-1, 1, 2001)
print(f"\nphi is even on [-1, 1]: max |phi(x) - phi(-x)| = {np.max(np.abs(eval_phi(x) - eval_phi(-x))):.1e}")
