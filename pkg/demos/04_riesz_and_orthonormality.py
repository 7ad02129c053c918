"""Overlap function, Riesz bounds and the orthonormalised scaling function.

phi lives on [-1, 1], so only the lags 0 and +-1 of its autocorrelation
survive and the overlap function is g0 + 2 g1 cos(w) exactly.  Its extremes
are the sharp Riesz bounds.  The pair (1, -1) on adjacent shifts reaches
g0 - g1, below ||phi||^2, so ||phi||^2 cannot serve as the lower bound.
Run: python3 demos/04_riesz_and_orthonormality.py
"""
import numpy as np

from fareywave import gram_phi_orthonormal, overlap_gamma, riesz_bounds
from fareywave.spectral import overlap_tail_bound, phi_inner

g0, g1 = phi_inner(0), phi_inner(1)
w = np.linspace(0, 2 * np.pi, 9)
print(f"g0 = ||phi||^2 = {g0:.12f}, g1 = <phi, phi(.-1)> = {g1:.12f}")
print(" w        Gamma(w)         g0 + 2 g1 cos w")
for x, g in zip(w, overlap_gamma(w)):
    print(f" {x:5.3f}   {g:.12f}   {g0 + 2 * g1 * np.cos(x):.12f}")
print(f"truncation tail bound at order 64: {overlap_tail_bound(64):.2e}")

r = riesz_bounds(1000)
print(f"\nsharp bounds [inf Gamma, sup Gamma] = [{r.a_gamma:.9f}, {r.b_gamma:.9f}]")
print(f"random Rayleigh ratios fell in     [{r.empirical_min_ratio:.9f}, {r.empirical_max_ratio:.9f}]")
print(f"(1, -1) on adjacent shifts: {g0 - g1:.9f} < ||phi||^2 = {g0:.9f}")

print("\nGram entries of the orthonormalised Phi")
for l in range(-3, 4):
    print(f"  <Phi_0, Phi_{l:+d}> = {gram_phi_orthonormal(l):+.3e}")
