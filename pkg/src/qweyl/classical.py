"""Projection to the classical character ring and its reflections.

Dropping every spectral parameter (Y[i,k] -> y[i]) sends each completed
ring onto a ring of formal series in classical monomials; we reuse the
pointed-series machinery with all spectral indices pinned to zero.  The
reflections act by s_i(y[j]) = y[j] * a[i]^{-delta_ij} where a[i] is the
classical image of the A-variables, and the projection intertwines them
with the Theta operators.

A small arena of rational fractions sits inside all the completions at
once: Laurent monomials divided by factors (1 - a_alpha^{-1}), alpha a
positive root.  Each factor expands geometrically, in the direction the
completion dictates.
"""

from __future__ import annotations

from .laurent import Mono, Poly, y_mono
from .rootsystem import CartanData, WeylElt
from .series import PiElt, PSeries, _reanchor, dominates


def classical_a(cartan: CartanData, i: int) -> Mono:
    """Image of the A-variables at node i: prod_j y[j]^{C_ji}."""
    cartan._check_node(i)
    return Mono(((j + 1, 0), cartan.C[j][i - 1]) for j in range(cartan.rank))


def classical_a_root(cartan: CartanData, coords) -> Mono:
    """a_alpha for a root alpha given in root coordinates."""
    m = Mono.one()
    for i, c in enumerate(coords, start=1):
        m = m * classical_a(cartan, i) ** c
    return m


def varpi_mono(m: Mono) -> Mono:
    sums: dict[int, int] = {}
    for (i, _k), e in m.pairs:
        sums[i] = sums.get(i, 0) + e
    return Mono(((i, 0), e) for i, e in sums.items())


def varpi_poly(p: Poly) -> Poly:
    out: dict[Mono, int] = {}
    for m, c in p.terms.items():
        key = varpi_mono(m)
        n = out.get(key, 0) + c
        if n:
            out[key] = n
        else:
            del out[key]
    return Poly(out)


def varpi(x: PSeries) -> PSeries:
    """Project a pointed series; heights survive because the projection
    preserves omega-weights, but distinct monomials may now collide."""
    terms: dict[Mono, int] = {}
    heights: dict[Mono, int] = {}
    for m, c in x.terms.items():
        key = varpi_mono(m)
        n = terms.get(key, 0) + c
        if n:
            terms[key] = n
            heights[key] = x.heights[m]
        else:
            del terms[key], heights[key]
    anchor = varpi_mono(x.anchor)
    if anchor in terms:
        return PSeries(x.w, anchor, terms, heights, x.order)
    return _reanchor(x.w, terms, heights, x.order)


def varpi_pi(x: PiElt) -> PiElt:
    out = PiElt(x.w, [])
    for p in x.parts:
        out = out.add_series(varpi(p))
    return out


def reflect_mono(cartan: CartanData, m: Mono, i: int) -> Mono:
    e = 0
    for (j, _k), u in m.pairs:
        if j == i:
            e += u
    return m * (classical_a(cartan, i) ** (-e)) if e else m


def classical_reflect_poly(cartan: CartanData, p: Poly, i: int) -> Poly:
    out: dict[Mono, int] = {}
    for m, c in p.terms.items():
        out[reflect_mono(cartan, m, i)] = c
    return Poly(out)


def classical_reflect_series(x: PSeries, i: int) -> PSeries:
    """s_i from the w-completion to the (w s_i)-completion.  Monomials
    reflect injectively and keep their heights."""
    cd = x.w.cartan
    w2 = x.w.times_s(i)
    terms: dict[Mono, int] = {}
    heights: dict[Mono, int] = {}
    for m, c in x.terms.items():
        key = reflect_mono(cd, m, i)
        terms[key] = c
        heights[key] = x.heights[m]
    return PSeries(w2, reflect_mono(cd, x.anchor, i), terms, heights, x.order)


def classical_reflect_pi(x: PiElt, i: int) -> PiElt:
    return PiElt(x.w.times_s(i), [classical_reflect_series(p, i) for p in x.parts])


def check_equivariance(x: PSeries, i: int, ctx=None):
    """None when projecting after Theta_i agrees with reflecting the
    projection."""
    from .weylaction import theta_on_series
    lhs = varpi(theta_on_series(x, i, ctx))
    rhs = classical_reflect_series(varpi(x), i)
    return lhs.compare(rhs)


class RElt:
    """coeff * mono / prod_alpha (1 - a_alpha^{-1}), alphas positive roots."""

    __slots__ = ("cartan", "coeff", "mono", "denoms")

    def __init__(self, cartan: CartanData, coeff: int, mono: Mono, denoms):
        self.cartan = cartan
        self.coeff = coeff
        self.mono = mono
        ds = []
        for c in denoms:
            c = tuple(c)
            if not cartan.is_root(c) or any(x < 0 for x in c):
                raise ValueError(f"not a positive root: {c}")
            ds.append(c)
        self.denoms = tuple(sorted(ds))

    def reflect(self, i: int) -> "RElt":
        cd = self.cartan
        coeff = self.coeff
        mono = reflect_mono(cd, self.mono, i)
        denoms = []
        for c in self.denoms:
            image = cd._reflection_matrix(i)
            newc = tuple(sum(image[r][t] * c[t] for t in range(cd.rank))
                         for r in range(cd.rank))
            if all(x >= 0 for x in newc):
                denoms.append(newc)
            else:
                # only alpha_i flips sign; fold it back with
                # (1 - a)^{-1} = -a^{-1} (1 - a^{-1})^{-1}
                pos = tuple(-x for x in newc)
                coeff = -coeff
                mono = mono * classical_a_root(cd, pos).inv()
                denoms.append(pos)
        return RElt(cd, coeff, mono, denoms)

    def reflect_word(self, word) -> "RElt":
        out = self
        for i in word:
            out = out.reflect(i)
        return out

    def expand(self, w: WeylElt, order: int) -> PSeries:
        out = PSeries.from_mono(w, self.mono, order).scale(self.coeff)
        for c in self.denoms:
            out = out.mul(_geometric(w, c, order))
        return out

    def __eq__(self, other) -> bool:
        if not isinstance(other, RElt):
            return NotImplemented
        return (self.cartan == other.cartan and self.coeff == other.coeff
                and self.mono == other.mono and self.denoms == other.denoms)

    def __repr__(self) -> str:
        den = "".join(f"(1-a_{list(c)}^-1)" for c in self.denoms)
        num = f"{self.coeff}*{format_y_mono(self.mono)}"
        return f"{num}/{den}" if den else num


def _geometric(w: WeylElt, coords, order: int) -> PSeries:
    """Expansion of (1 - a_alpha^{-1})^{-1} in the w-completion."""
    cd = w.cartan
    a = classical_a_root(cd, coords)
    if w.is_positive(coords):
        terms = {a.inv() ** n: 1 for n in range(order + 1)}
    else:
        terms = {a ** n: -1 for n in range(1, order + 2)}
    return PSeries.build(w, terms, order)


def format_y_mono(m: Mono) -> str:
    if not m.pairs:
        return "1"
    return "*".join(f"y[{i}]" + (f"^{e}" if e != 1 else "")
                    for (i, _k), e in m.pairs)


def format_y_poly(p: Poly) -> str:
    if p.is_zero():
        return "0"
    out = []
    for m, c in p.sorted_terms():
        mag = abs(c)
        if m.is_one():
            body = str(mag)
        elif mag == 1:
            body = format_y_mono(m)
        else:
            body = f"{mag}*{format_y_mono(m)}"
        if not out:
            out.append(body if c > 0 else f"-{body}")
        else:
            out.append(f" {'-' if c < 0 else '+'} {body}")
    return "".join(out)
