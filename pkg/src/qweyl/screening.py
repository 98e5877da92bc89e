"""Screening operators as the flat limit of the deformed reflections.

A screening element is a finite sum  sum_k P_k s[i,k]  with Laurent
polynomial coefficients, where the basis symbols rewrite as

    s[i,k] = A[i,k-d] s[i,k-2d]          (d = d_i)

so each class of k mod 2d collapses onto its lowest representative.
S_i is the derivation Y[i,k]^u -> u Y[i,k]^u s[i,k] (variables of other
nodes go to zero).  The same module receives the h-linear coefficient of
the one-parameter deformation of the reflection operator, which acts on
generators by

    Y[i,k]   -> Y[i,k]   (1 - h x[i,k-d])
    Y[i,k]^-1-> Y[i,k]^-1(1 + h A[i,k-d] x[i,k-3d])

with x[i,m] = -s[i,m+d].  The two routes land on the same canonical
form precisely because of the rewriting rule; comparing them checks the
rule on every negative exponent.
"""

from __future__ import annotations

from .laurent import Mono, Poly, a_mono
from .rootsystem import CartanData


class SElt:
    """Finite combination sum P_{i,k} s[i,k] over a fixed Cartan datum."""

    __slots__ = ("cartan", "terms")

    def __init__(self, cartan: CartanData, terms: dict | None = None):
        self.cartan = cartan
        self.terms = {key: p for key, p in (terms or {}).items() if not p.is_zero()}

    def add(self, other: "SElt") -> "SElt":
        if other.cartan is not self.cartan and other.cartan != self.cartan:
            raise ValueError("mixed Cartan data")
        out = dict(self.terms)
        for key, p in other.terms.items():
            q = out.get(key)
            out[key] = p if q is None else q + p
        return SElt(self.cartan, out)

    def neg(self) -> "SElt":
        return SElt(self.cartan, {k: -p for k, p in self.terms.items()})

    def sub(self, other: "SElt") -> "SElt":
        return self.add(other.neg())

    def mul_poly(self, p: Poly) -> "SElt":
        return SElt(self.cartan, {k: q * p for k, q in self.terms.items()})

    def canonical(self) -> "SElt":
        """Rewrite every symbol down to the lowest k occurring in its
        class mod 2d; coefficients pick up the interleaved A-monomials."""
        cd = self.cartan
        groups: dict[tuple[int, int], list[int]] = {}
        for (i, k) in self.terms:
            step = 2 * cd.d[i - 1]
            groups.setdefault((i, k % step), []).append(k)
        out: dict[tuple[int, int], Poly] = {}
        for (i, _res), ks in groups.items():
            d = cd.d[i - 1]
            kmin = min(ks)
            for k in ks:
                factor = Mono.one()
                for l in range(kmin + d, k, 2 * d):
                    factor = factor * a_mono(cd, i, l)
                p = self.terms[(i, k)].mul_mono(factor)
                q = out.get((i, kmin))
                out[(i, kmin)] = p if q is None else q + p
        return SElt(cd, out)

    def is_zero(self) -> bool:
        return not self.canonical().terms

    def __eq__(self, other) -> bool:
        if not isinstance(other, SElt):
            return NotImplemented
        return self.sub(other).is_zero()

    def __repr__(self) -> str:
        if not self.terms:
            return "0"
        bits = []
        for (i, k) in sorted(self.terms):
            bits.append(f"({self.terms[(i, k)]})*s[{i},{k}]")
        return " + ".join(bits)


def s_unit(cartan: CartanData, i: int, k: int) -> SElt:
    return SElt(cartan, {(i, k): Poly.const(1)})


def screen(cartan: CartanData, i: int, poly: Poly) -> SElt:
    """S_i applied to a Laurent polynomial."""
    cartan._check_node(i)
    terms: dict[tuple[int, int], Poly] = {}
    for m, c in poly.terms.items():
        for (j, k), u in m.pairs:
            if j != i:
                continue
            key = (i, k)
            q = terms.get(key)
            add = Poly({m: c * u})
            terms[key] = add if q is None else q + add
    return SElt(cartan, terms)


def theta_deform_linear_term(cartan: CartanData, i: int, poly: Poly) -> SElt:
    """h-coefficient of the deformed reflection, straight off the
    generator formulas (no rewriting at generation time)."""
    cartan._check_node(i)
    d = cartan.d[i - 1]
    terms: dict[tuple[int, int], Poly] = {}
    for m, c in poly.terms.items():
        for (j, k), u in m.pairs:
            if j != i:
                continue
            if u > 0:
                key, add = (i, k), Poly({m: c * u})
            else:
                key = (i, k - 2 * d)
                add = Poly({m * a_mono(cartan, i, k - d): c * u})
            q = terms.get(key)
            terms[key] = add if q is None else q + add
    return SElt(cartan, terms)


def in_kernel(cartan: CartanData, i: int, poly: Poly) -> bool:
    return screen(cartan, i, poly).is_zero()


def in_kernel_all(cartan: CartanData, poly: Poly) -> bool:
    return all(in_kernel(cartan, i, poly) for i in range(1, cartan.rank + 1))
