"""The operators Theta_i between completions.

Theta_i sends the w-completion to the (w s_i)-completion.  On a single
variable it is
    Y[i,k] |-> Y[i,k] A[i,k-d]^-1 * Sigma(i,k-3d) / Sigma(i,k-d)
with the Sigma factors expanded at the *target* w s_i, and Y[j,k] |-> Y[j,k]
for j != i.  On a series it acts term by term: the monomial part goes
through the weight reflection m |-> m * prod A[i,k-d]^-u (one factor per
i-occurrence), and each occurrence contributes one power of the ratio
    R(i,k) = Sigma(i,k-3d) / Sigma(i,k-d).
This map preserves anchors, heights and truncation order, because the
ratio's leading monomial has weight zero.
"""

from __future__ import annotations

from .laurent import Mono, Poly, a_mono, y_mono
from .qdiff import sigma
from .rootsystem import CartanData, WeylElt
from .series import PiElt, PSeries, embed


class ThetaContext:
    """Shared cache of Sigma powers and their products for one Cartan datum.

    Everything a Theta application needs from the completion at w2 depends
    on w2 only through two scalars: the branch (the sign of w2(alpha_i))
    and the height h of the root +-w2(alpha_i).  All offsets in a Sigma
    product are multiples of alpha_i, so the w2-height of a term is h
    times its height at a rank-one representative.  Powers are therefore
    computed once per (branch, node, exponent) at base point 0 and unit
    height, then shifted, truncated at order // h and rescaled on lookup.
    """

    def __init__(self, cartan: CartanData, order: int):
        self.cartan = cartan
        self.order = order
        self._powers: dict = {}
        self._products: dict = {}

    def _rep(self, branch: bool, i: int) -> WeylElt:
        e = self.cartan.identity()
        return e if branch else e.times_s(i)

    def _power(self, branch: bool, i: int, e: int) -> PSeries:
        key = (branch, i, e)
        hit = self._powers.get(key)
        if hit is not None:
            return hit
        if e == 0:
            out = PSeries.one(self._rep(branch, i), self.order)
        elif e == 1:
            out = sigma(self._rep(branch, i), i, 0, self.order)
        elif e == -1:
            out = self._power(branch, i, 1).inv()
        elif e > 1:
            out = self._power(branch, i, e - 1).mul(self._power(branch, i, 1))
        else:
            out = self._power(branch, i, e + 1).mul(self._power(branch, i, -1))
        self._powers[key] = out
        return out

    def contrib(self, w2: WeylElt, i: int, profile, need: int):
        """Anchor and height-sorted (mono, coeff, height) triples of
        prod_t Sigma(i,t)^e in the w2-grading, valid up to height ``need``.

        profile is a sorted tuple of (base point t, net exponent e).  The
        product is computed only to the order actually required -- series
        sizes grow fast with order, so a source term high above its anchor
        asks for a far cheaper product than the anchor itself does.
        """
        cd = self.cartan
        branch = w2.is_positive(cd.alpha(i))
        h = abs(sum(w2.apply_root(cd.alpha(i))))
        key = (branch, h, i, profile)
        unit = min(need, self.order) // h
        hit = self._products.get(key)
        if hit is not None and hit[0] >= unit:
            return hit[1], hit[2]
        out = PSeries.one(self._rep(branch, i), unit)
        for t, e in profile:
            out = out.mul(self._power(branch, i, e).truncate(unit).tau(t))
        oh = out.heights
        triples = sorted(
            ((m, c, oh[m] * h) for m, c in out.terms.items()),
            key=lambda t: t[2],
        )
        val = (unit, out.anchor, tuple(triples))
        self._products[key] = val
        return val[1], val[2]


def theta_on_series(x: PSeries, i: int, ctx: ThetaContext | None = None) -> PSeries:
    """Theta_i applied to a pointed series; result lives at x.w * s_i."""
    cd = x.w.cartan
    if ctx is None:
        ctx = ThetaContext(cd, x.order)
    if ctx.order < x.order:
        raise ValueError("context order is too small for this series")
    w2 = x.w.times_s(i)
    d = cd.d[i - 1]
    order = x.order
    out_t: dict[Mono, int] = {}
    out_h: dict[Mono, int] = {}
    anchor_img = None
    # low terms first, so each profile is cached at its deepest order up front
    for m, c in sorted(x.terms.items(), key=lambda mc: x.heights[mc[0]]):
        h0 = x.heights[m]
        tm = m
        net: dict[int, int] = {}
        for (node, k), u in m.pairs:
            if node != i:
                continue
            tm = tm * (a_mono(cd, i, k - d).inv() ** u)
            net[k - 3 * d] = net.get(k - 3 * d, 0) + u
            net[k - d] = net.get(k - d, 0) - u
        profile = tuple(sorted((t, e) for t, e in net.items() if e))
        if not profile:
            key = tm
            n = out_t.get(key, 0) + c
            if n:
                out_t[key] = n
                out_h[key] = h0
            else:
                del out_t[key], out_h[key]
            if m == x.anchor:
                anchor_img = tm
            continue
        cap = order - h0
        anchor2, triples = ctx.contrib(w2, i, profile, cap)
        for mm, cc, dh in triples:
            if dh > cap:
                break
            key = tm * mm
            n = out_t.get(key, 0) + c * cc
            if n:
                hh = h0 + dh
                if key in out_h and out_h[key] != hh:
                    raise AssertionError("height collision: completion invariant broken")
                out_t[key] = n
                out_h[key] = hh
            else:
                del out_t[key], out_h[key]
        if m == x.anchor:
            anchor_img = tm * anchor2
    if anchor_img is None or anchor_img not in out_t:
        raise AssertionError("anchor image vanished under Theta")
    return PSeries(w2, anchor_img, out_t, out_h, order)


def theta_on_generator(w: WeylElt, i: int, j: int, k: int, order: int,
                       ctx: ThetaContext | None = None) -> PSeries:
    src = PSeries.from_mono(w, y_mono(j, k), order)
    return theta_on_series(src, i, ctx)


def theta_on_pi(x: PiElt, i: int, ctx: ThetaContext | None = None) -> PiElt:
    parts = [theta_on_series(p, i, ctx) for p in x.parts]
    return PiElt(x.w.times_s(i), parts)


def theta_word_on_pi(x: PiElt, word, ctx: ThetaContext | None = None) -> PiElt:
    for i in word:
        x = theta_on_pi(x, i, ctx)
    return x


def verify_involution(w: WeylElt, i: int, poly: Poly, order: int,
                      ctx: ThetaContext | None = None):
    """None if Theta_i(Theta_i(poly)) == poly in the w-completion."""
    src = embed(poly, w, order)
    back = theta_on_pi(theta_on_pi(src, i, ctx), i, ctx)
    return src.compare(back, order)


def verify_braid(cartan: CartanData, i: int, j: int, poly: Poly, order: int,
                 ctx: ThetaContext | None = None, w: WeylElt | None = None):
    """None if the two alternating Theta words of braid length agree on poly.

    Both sides start in the w-completion (identity by default); they end in
    the same component since the alternating words of braid length are two
    reduced words for the longest dihedral element of the pair (i, j).
    """
    m = _braid_order(cartan, i, j)
    src = embed(poly, cartan.identity() if w is None else w, order)
    left = theta_word_on_pi(src, _alternate(i, j, m), ctx)
    right = theta_word_on_pi(src, _alternate(j, i, m), ctx)
    return left.compare(right, order)


def _braid_order(cartan: CartanData, i: int, j: int) -> int:
    return {0: 2, 1: 3, 2: 4, 3: 6}[cartan.C[i - 1][j - 1] * cartan.C[j - 1][i - 1]]


def _alternate(first: int, second: int, length: int):
    return tuple(first if t % 2 == 0 else second for t in range(length))
