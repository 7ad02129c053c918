"""Admissibility: psi diverges, the mean-corrected psi_tilde does not.

The constant splits into a near-zero part integrated directly, a middle
part, and a tail bounded through |f_hat(w)| <= TV(f)/w.  The antisymmetric
wavelet has first moment ln2 - 3/4, so its transform leaves the origin
with slope 3/4 - ln2 = 0.0569; a slope of (4 ln2 - 1)/4 = 0.443 is not
reproducible.  Run: python3 demos/03_admissibility.py
"""
import math

from fareywave import admissibility, get_function, moment

psi = admissibility(get_function("psi"), 1e-6)
print(f"psi: mean {psi.mean:.9f}, divergent = {psi.divergent}")

for name in ("psi-tilde", "psi-antisym"):
    fn = get_function(name)
    print(f"\n{name}: mean {moment(fn, 0):+.1e}")
    for tol in (1e-4, 1e-6, 1e-8):
        est = admissibility(fn, tol)
        print(f"  tol {tol:.0e}: A = {est.value:.12f} +- {est.error_estimate:.1e}"
              f"  (near {est.near_zero_part:.3e}, mid {est.mid_part:.6f}, tail {est.tail_part:.1e})")

anti = admissibility(get_function("psi-antisym"), 1e-8)
print(f"\nslope of the antisymmetric transform at 0: {anti.slope_at_zero:.10f}")
print(f"  3/4 - ln2       = {0.75 - math.log(2):.10f}")
print(f"  (4 ln2 - 1)/4   = {(4 * math.log(2) - 1) / 4:.10f}  (not reproduced)")
