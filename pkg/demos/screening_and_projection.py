"""
Recognising q-characters, and forgetting the spectral parameter
===============================================================

Two smaller tools around the reflection action.  The screening
operators cut out exactly the q-characters: the sl2 fundamental
character lies in the kernel, and dropping one of its two terms does
not.  The classical projection y[i] <- Y[i,k] turns each reflection
operator into the ordinary Weyl action on rational characters.
"""

import random

from qweyl.classical import check_equivariance, format_y_poly, varpi_poly
from qweyl.laurent import Poly, y_mono
from qweyl.qchar import block_polynomial, sl2_fundamental_qchar, t_elt
from qweyl.qdiff import sigma
from qweyl.rootsystem import build_cartan
from qweyl.screening import in_kernel, in_kernel_all, screen

# -- screening kernels --------------------------------------------------------

a1 = build_cartan("A1")
chi = sl2_fundamental_qchar(0)
print("sl2 fundamental:", chi)
print("  in kernel:", in_kernel(a1, 1, chi))
print("  top term alone:", in_kernel(a1, 1, Poly.from_mono(y_mono(1, 0))))

b2 = build_cartan("B2")
t3 = t_elt(b2, 2, 0, 3)
print("\nB2 length-3 block at the short node:",
      len(t3.terms), "terms")
print("  killed by its own screening:", in_kernel(b2, 2, t3))
print("  killed by the other node's: ", in_kernel(b2, 1, t3))

blk = block_polynomial(b2, 1, random.Random(3))
print("random block polynomial for node 1 -> node-1 kernel:",
      in_kernel(b2, 1, blk), "/ both kernels:", in_kernel_all(b2, blk))
print("its screening under node 2 is nonzero:", not screen(b2, 2, blk).is_zero())

# -- classical projection -----------------------------------------------------

print("\nclassical images (spectral parameter forgotten):")
print("  ", format_y_poly(varpi_poly(chi)))
print("  ", format_y_poly(varpi_poly(t3)))

# the projection intertwines each reflection operator with the
# matrix action on y-variables, series by series
ok = 0
for w in b2.weyl_enumerate():
    for i in (1, 2):
        assert check_equivariance(sigma(w, i, 0, 5), i) is None
        ok += 1
print(f"projection/reflection compatibility on {ok} tower series: all exact")
