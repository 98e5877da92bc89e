"""
Walking a generator around the rank-two dihedral group
======================================================

Each simple reflection acts on a completed ring of q-character series.
Applying them alternately to a single variable Y[2,0] of B2 produces, at
every stop, a monomial times a ratio of tower series -- the same shape
the closed-form expansions predict.  The walk returns home after the
full dihedral word, which is the braid relation seen concretely.
"""

from qweyl.laurent import y_mono
from qweyl.qdiff import iterated_sigma, sigma
from qweyl.rootsystem import build_cartan
from qweyl.series import PSeries
from qweyl.weylaction import ThetaContext, theta_on_series

ORDER = 6

cd = build_cartan("B2")
ctx = ThetaContext(cd, ORDER)

# start from the short-node generator in the identity completion
x = PSeries.from_mono(cd.identity(), y_mono(2, 0), ORDER)
print(f"start at w = e:   {x.anchor}  (+ nothing)")

# one reflection: the image anchors at the reflected variable and drags
# a weight-zero series tail behind it
for step, node in enumerate((2, 1, 2, 1), start=1):
    x = theta_on_series(x, node, ctx)
    tail = sum(1 for m in x.terms if m != x.anchor)
    print(f"step {step}: apply node {node:d} -> w = {x.w.word_str():6s} "
          f"anchor {x.anchor}  (+ {tail} lower terms)")

# check the whole series against the tower-ratio form it must equal
w = x.w
expect = iterated_sigma(w, (2, 1, 2), -3, ORDER) \
    .mul(iterated_sigma(w, (2, 1, 2), -1, ORDER).inv()) \
    .mul_mono(y_mono(2, -6, -1))
print("matches monomial * Sigma-tower ratio:", x.compare(expect) is None)

# four more steps of the other alternation bring the variable back
back = theta_on_series(x, 2, ctx)
for node in (1, 2, 1):
    back = theta_on_series(back, node, ctx)
home = PSeries.from_mono(back.w, y_mono(2, 0), ORDER)
print("returned to the start after the dihedral word:",
      back.compare(home) is None)

# the single-sigma building block, for scale
print("\nthe building block Sigma at w = e, order 3:")
print("  ", sigma(cd.identity(), 2, 0, 3).poly())
