"""Closed-form Fourier transforms against adaptive quadrature.

The closed form of phi_hat needs an overall factor K (and a plus sign on
the sine-integral term) to agree with direct quadrature; without K it
evaluates to 4 ln2 - 2 at the origin instead of 1.  The refinement
symbols are also shown: M0(0) = 5/6, so phi_hat(2 xi) = M0(xi) phi_hat(xi)
cannot hold exactly.  Run: python3 demos/02_fourier_transforms.py
"""
import numpy as np

from fareywave import K, K0, phi_hat, psi_hat, refinement_residual, symbols
from fareywave.spectral import phi_hat_as_printed

xi = np.round(np.arange(-500, 501) * 0.1, 12)
closed = phi_hat(xi)
quad = phi_hat(xi, "quadrature")
print(f"phi_hat closed vs quadrature on [-50, 50]: max dev {np.max(np.abs(closed - quad)):.2e}")
print(f"phi_hat(0) = {phi_hat(0.0).real:.15f}")
print(f"form without K at 0: {phi_hat_as_printed(0.0):.15f} = 4 ln2 - 2; times K: {K * phi_hat_as_printed(0.0):.15f}")

dev = np.max(np.abs(psi_hat(xi) - psi_hat(xi, method="quadrature")))
print(f"\npsi_hat = M1(xi/2) phi_hat(xi/2) vs quadrature: max dev {dev:.2e}")
print(f"psi_hat(0) = {psi_hat(0.0).real:.12f} = K0/6 = {K0 / 6:.12f}, so psi has nonzero mean")

m0, m1 = symbols(0.0)
print(f"\nM0(0) = {m0:.15f} (5/6), |M1(0)| = {abs(m1):.12f}")
for x in (0.5, 1.0, 2.0, 4.0):
    print(f"  |phi_hat(2 xi) - M0(xi) phi_hat(xi)| at xi = {x}: {abs(refinement_residual(x)):.3e}")

print("\ndecay: |phi_hat(xi)| xi^2 stays below 8K")
for x in (10.0, 100.0, 1000.0):
    print(f"  xi = {x:6.0f}   |phi_hat| xi^2 = {abs(phi_hat(x)) * x * x:.6f}   8K = {8 * K:.6f}")
