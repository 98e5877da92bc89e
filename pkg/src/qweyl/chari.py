"""Monomial braid operators and the leading-term truncation.

T_i rescales each Y[i,k] occurrence by A[i,k-d_i]^-1 and leaves the other
nodes alone.  Extended multiplicatively it is an automorphism of the
monomial group, and the family satisfies the braid relations but not the
Coxeter ones (T_i has infinite order, so no Weyl group here).

The bridge back to the series layer is the truncation Lambda, which reads
off the leading monomial of a unit expanded in the identity completion:
pushing a monomial through Theta_i and truncating lands exactly on T_i.
"""

from __future__ import annotations

from .laurent import Mono, Poly, a_mono
from .rootsystem import CartanData
from .series import PSeries
from .weylaction import ThetaContext, _alternate, _braid_order, theta_on_series


def chari_t(cartan: CartanData, i: int, m: Mono) -> Mono:
    """T_i(m): each Y[i,k]^u occurrence contributes a factor A[i,k-d_i]^-u."""
    cartan._check_node(i)
    d = cartan.d[i - 1]
    out = m
    for (node, k), u in m.pairs:
        if node == i:
            out = out * (a_mono(cartan, i, k - d) ** (-u))
    return out


def chari_t_word(cartan: CartanData, word, m: Mono) -> Mono:
    for i in word:
        m = chari_t(cartan, i, m)
    return m


def chari_t_poly(cartan: CartanData, i: int, p: Poly) -> Poly:
    acc: dict[Mono, int] = {}
    for m, c in p.terms.items():
        im = chari_t(cartan, i, m)
        acc[im] = acc.get(im, 0) + c
    return Poly(acc)


def lambda_trunc(x: PSeries) -> Mono:
    """Leading monomial of a unit series in the identity completion.

    Factoring out the anchor must leave a tail with constant term 1, so
    the anchor coefficient has to be +1 (a -1 unit is rejected, not
    sign-folded).
    """
    if not x.w.is_identity():
        raise ValueError("truncation reads the identity-completion expansion")
    if x.terms[x.anchor] != 1:
        raise ValueError(f"anchor coefficient is {x.terms[x.anchor]}, not +1")
    return x.anchor


def lambda_theta(cartan: CartanData, i: int, m: Mono, order: int,
                 ctx: ThetaContext | None = None) -> Mono:
    """Lambda(Theta_i(m)): route the monomial through s_i so Theta lands at e."""
    si = cartan.identity().times_s(i)
    src = PSeries.from_mono(si, m, order)
    return lambda_trunc(theta_on_series(src, i, ctx))


def verify_braid_t(cartan: CartanData, i: int, j: int, monos) -> list:
    """Exact braid check per sample; rows are (mono, status, left, right).

    Also witnesses that T_i is not an involution: a status row flips to
    "mismatch" only if the two alternating words disagree, which would
    contradict the braid relation, while the (separately tested) failure
    of T_i^2 = id is what keeps the action a braid-group one.
    """
    n = _braid_order(cartan, i, j)
    rows = []
    for m in monos:
        left = chari_t_word(cartan, _alternate(i, j, n), m)
        right = chari_t_word(cartan, _alternate(j, i, n), m)
        rows.append((m, "ok" if left == right else "mismatch", left, right))
    return rows
