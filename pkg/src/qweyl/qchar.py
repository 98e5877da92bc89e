"""Kirillov-Reshetikhin style building blocks.

V-monomials are the descending A-inverse products that show up in every
series expansion here; T-elements are the associated polynomial blocks
(for sl2 these are the fundamental q-characters and their fusions).
"""

from __future__ import annotations

from functools import lru_cache

from .laurent import Mono, Poly, a_mono, y_mono
from .rootsystem import CartanData, build_cartan

T_LEN_CAP = 16


def v_mono(cartan: CartanData, i: int, k: int, alpha: int) -> Mono:
    """V^(alpha) at Y[i,k]: for alpha > 0 the product of A[i,k-2t*d_i]^-1
    over 0 <= t < alpha; V^(0) = 1; negative alpha inverts the mirror image,
    V^(alpha) = (V^(-alpha) at k - 2*alpha*d_i)^-1.
    """
    if alpha == 0:
        return Mono.one()
    d = cartan.d[i - 1]
    if alpha < 0:
        return v_mono(cartan, i, k - 2 * alpha * d, -alpha).inv()
    m = Mono.one()
    for t in range(alpha):
        m = m * a_mono(cartan, i, k - 2 * t * d).inv()
    return m


def t_elt(cartan: CartanData, i: int, k: int, length: int) -> Poly:
    """The T-block of the given length based at Y[i,k].

    Equals  Y[i,k] Y[i,k-2d] ... Y[i,k-2(length-1)d] * sum_{0<=a<=length}
    V^(a) at Y[i,k+d]; its omega-weight chain is totally ordered, so it is
    single-pointed in the identity completion.
    """
    if not 0 <= length <= T_LEN_CAP:
        raise ValueError(f"length must be in 0..{T_LEN_CAP}")
    d = cartan.d[i - 1]
    prefix = Mono.one()
    for t in range(length):
        prefix = prefix * y_mono(i, k - 2 * t * d)
    terms: dict[Mono, int] = {}
    for a in range(length + 1):
        m = prefix * v_mono(cartan, i, k + d, a)
        terms[m] = terms.get(m, 0) + 1
    return Poly(terms)


def t_elt_nested(cartan: CartanData, i: int, k: int, length: int) -> Poly:
    """Same block via the nested form
    prefix * (1 + A[i,k+d]^-1 (1 + A[i,k-d]^-1 (... + A[i,k+(3-2*length)d]^-1))).
    """
    if not 0 <= length <= T_LEN_CAP:
        raise ValueError(f"length must be in 0..{T_LEN_CAP}")
    d = cartan.d[i - 1]
    acc = Poly.const(1)
    for t in reversed(range(length)):
        a = a_mono(cartan, i, k + d - 2 * t * d).inv()
        acc = Poly.const(1) + acc.mul_mono(a)
    prefix = Mono.one()
    for t in range(length):
        prefix = prefix * y_mono(i, k - 2 * t * d)
    return acc.mul_mono(prefix)


def sl2_fundamental_qchar(k: int = 0) -> Poly:
    """Y[1,k] + Y[1,k+2]^-1, the sl2 fundamental q-character."""
    return t_elt(_A1(), 1, k, 1)


@lru_cache(maxsize=1)
def _A1() -> CartanData:
    return build_cartan("A1")


def block_polynomial(cartan: CartanData, i: int, rng, blocks: int = 3, span: int = 6) -> Poly:
    """A random sum of products of single T-blocks at node i times
    monomials in the other nodes' variables.

    Every summand is annihilated by the node-i screening, so the whole
    polynomial is a kernel witness.
    """
    out = Poly()
    for _ in range(blocks):
        term = Poly.const(rng.choice([1, 1, 1, 2, 3, -1, -2]))
        for _ in range(rng.randint(1, 2)):
            term = term * t_elt(cartan, i, rng.randint(-span, span), 1)
        m = Mono.one()
        for j in range(1, cartan.rank + 1):
            if j == i:
                continue
            for _ in range(rng.randint(0, 2)):
                m = m * y_mono(j, rng.randint(-span, span), rng.choice([1, -1]))
        out = out + term.mul_mono(m)
    if out.is_zero():
        out = t_elt(cartan, i, 0, 1)
    return out
