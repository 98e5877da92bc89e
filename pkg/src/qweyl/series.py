"""Pointed truncated series in the w-completion of the Laurent ring.

A :class:`PSeries` represents  anchor * (c0 + lower terms)  where "lower"
is measured by the w-twisted weight offset: a monomial m lies below the
anchor m0 iff  w(wt(m0) - wt(m))  has nonnegative integer coordinates in
the simple-root basis, not all zero.  The *height* of m is the sum of
those coordinates; terms are kept up to height <= order and everything
beyond is unknown rather than zero.

All arithmetic tracks how far the truncation guarantee extends, so a
result's ``order`` can be smaller than its inputs' (re-anchoring after a
cancellation shortens it by the new anchor's old height).
"""

from __future__ import annotations

from .laurent import Mono, Poly, mono_from_json, mono_to_json
from .rootsystem import WeylElt


class SplitRequired(Exception):
    """A sum has no single dominating monomial at its current anchors."""


def offset_of(w: WeylElt, m0: Mono, m: Mono):
    """Root coordinates of w(wt(m0) - wt(m)), or None outside the root lattice."""
    cd = w.cartan
    u0, u = m0.weight(cd), m.weight(cd)
    du = tuple(a - b for a, b in zip(u0, u))
    try:
        return w.root_offset(du)
    except ValueError:
        return None


def dominates(w: WeylElt, m0: Mono, m: Mono) -> bool:
    """True iff m0 strictly dominates m in the w-order."""
    off = offset_of(w, m0, m)
    return off is not None and all(x >= 0 for x in off) and any(x > 0 for x in off)


class PSeries:
    __slots__ = ("w", "anchor", "terms", "heights", "order")

    def __init__(self, w, anchor, terms, heights, order):
        # trusted constructor -- see build() for the validating one
        self.w = w
        self.anchor = anchor
        self.terms = terms
        self.heights = heights
        self.order = order

    # -- construction -------------------------------------------------------

    @staticmethod
    def build(w: WeylElt, poly, order: int, anchor: Mono | None = None) -> "PSeries":
        """Validating constructor from a Poly (or mono->coeff dict).

        The anchor must dominate every other monomial; terms of height
        beyond ``order`` are discarded (they carry no guarantee).
        """
        raw = poly.terms if isinstance(poly, Poly) else poly
        terms = {m: c for m, c in raw.items() if c != 0}
        if not terms:
            raise ValueError("empty series has no anchor")
        if anchor is None:
            cands = [m for m in terms if not any(dominates(w, m2, m) for m2 in terms)]
            if len(cands) != 1:
                raise ValueError(
                    f"{len(cands)} maximal monomials; use embed() for multi-pointed input"
                )
            anchor = cands[0]
        elif anchor not in terms:
            raise ValueError("anchor has zero coefficient")
        heights = {}
        kept = {}
        for m, c in terms.items():
            if m == anchor:
                heights[m] = 0
                kept[m] = c
                continue
            off = offset_of(w, anchor, m)
            if off is None or any(x < 0 for x in off) or not any(x > 0 for x in off):
                raise ValueError(f"monomial {m!r} is not dominated by the anchor")
            h = sum(off)
            if h <= order:
                heights[m] = h
                kept[m] = c
        return PSeries(w, anchor, kept, heights, order)

    @staticmethod
    def one(w: WeylElt, order: int, coeff: int = 1) -> "PSeries":
        return PSeries.from_mono(w, Mono.one(), order, coeff)

    @staticmethod
    def from_mono(w: WeylElt, m: Mono, order: int, coeff: int = 1) -> "PSeries":
        if coeff == 0:
            raise ValueError("zero coefficient")
        return PSeries(w, m, {m: coeff}, {m: 0}, order)

    # -- ring operations -----------------------------------------------------

    def _require_same_w(self, other: "PSeries"):
        if self.w != other.w:
            raise ValueError("series live in different completions")

    def mul(self, other: "PSeries") -> "PSeries":
        self._require_same_w(other)
        order = min(self.order, other.order)
        terms, heights = _mul_terms(
            self.terms, self.heights, other.terms, other.heights, order
        )
        anchor = self.anchor * other.anchor
        if anchor not in terms:
            return _reanchor(self.w, terms, heights, order)
        return PSeries(self.w, anchor, terms, heights, order)

    def add(self, other: "PSeries") -> "PSeries":
        self._require_same_w(other)
        if self.anchor == other.anchor:
            lead, low, gap = self, other, 0
        else:
            off = offset_of(self.w, self.anchor, other.anchor)
            if off is not None and all(x >= 0 for x in off) and any(x > 0 for x in off):
                lead, low, gap = self, other, sum(off)
            else:
                off = offset_of(self.w, other.anchor, self.anchor)
                if off is not None and all(x >= 0 for x in off) and any(x > 0 for x in off):
                    lead, low, gap = other, self, sum(off)
                else:
                    raise SplitRequired(
                        f"anchors {self.anchor!r} and {other.anchor!r} are incomparable"
                    )
        order = min(lead.order, low.order + gap)
        terms = {}
        heights = {}
        for m, c in lead.terms.items():
            if lead.heights[m] <= order:
                terms[m] = c
                heights[m] = lead.heights[m]
        for m, c in low.terms.items():
            h = low.heights[m] + gap
            if h > order:
                continue
            n = terms.get(m, 0) + c
            if n:
                terms[m] = n
                heights[m] = h
            else:
                terms.pop(m, None)
                heights.pop(m, None)
        if lead.anchor not in terms:
            return _reanchor(self.w, terms, heights, order)
        return PSeries(self.w, lead.anchor, terms, heights, order)

    def scale(self, c: int) -> "PSeries":
        if c == 0:
            raise ValueError("cannot scale a pointed series to zero")
        return PSeries(
            self.w, self.anchor, {m: c * x for m, x in self.terms.items()},
            self.heights, self.order,
        )

    def neg(self) -> "PSeries":
        return self.scale(-1)

    def mul_mono(self, m: Mono, coeff: int = 1) -> "PSeries":
        if coeff == 0:
            raise ValueError("zero coefficient")
        return PSeries(
            self.w,
            self.anchor * m,
            {m0 * m: coeff * c for m0, c in self.terms.items()},
            {m0 * m: h for m0, h in self.heights.items()},
            self.order,
        )

    def inv(self) -> "PSeries":
        c0 = self.terms[self.anchor]
        if c0 * c0 != 1:
            raise ValueError("anchor coefficient must be a unit for inversion")
        # x = c0*m0*(1 + eps) with eps of height >= 1, so
        # 1/x = c0 * m0^-1 * (1 - eps + eps^2 - ...)  -- finite at this order.
        inv0 = self.anchor.inv()
        eps_terms = {}
        eps_heights = {}
        for m, c in self.terms.items():
            if m == self.anchor:
                continue
            eps_terms[m * inv0] = c * c0
            eps_heights[m * inv0] = self.heights[m]
        one = Mono.one()
        acc = PSeries(self.w, one, {one: 1}, {one: 0}, self.order)
        if not eps_terms:
            return acc.mul_mono(inv0, c0)
        eps = _raw(self.w, eps_terms, eps_heights, self.order)
        minh = min(eps_heights.values())
        sign, j, cur = -1, 1, eps
        while cur is not None and j * minh <= self.order:
            acc = _add_loose(acc, cur, sign)
            sign = -sign
            cur = _mul_loose(cur, eps, self.order)
            j += 1
        return acc.mul_mono(inv0, c0)

    def tau(self, s: int) -> "PSeries":
        if s == 0:
            return self
        return PSeries(
            self.w,
            self.anchor.tau(s),
            {m.tau(s): c for m, c in self.terms.items()},
            {m.tau(s): h for m, h in self.heights.items()},
            self.order,
        )

    def truncate(self, order: int) -> "PSeries":
        if order >= self.order:
            if order > self.order:
                raise ValueError("cannot raise the guaranteed order")
            return self
        terms = {}
        heights = {}
        for m, h in self.heights.items():
            if h <= order:
                terms[m] = self.terms[m]
                heights[m] = h
        return PSeries(self.w, self.anchor, terms, heights, order)

    # -- inspection -----------------------------------------------------------

    def compare(self, other: "PSeries", order: int | None = None):
        """None if equal up to min(order guarantee), else the first mismatch."""
        n = min(self.order, other.order)
        if order is not None:
            if order > n:
                raise ValueError(f"comparison order {order} exceeds guarantee {n}")
            n = order
        if self.w != other.w:
            return {"reason": "different w", "left": self.w.word_str(), "right": other.w.word_str()}
        keys = set()
        for m, h in self.heights.items():
            if h <= n:
                keys.add(m)
        for m, h in other.heights.items():
            if h <= n:
                keys.add(m)
        for m in sorted(keys, key=lambda x: (self.heights.get(x, other.heights.get(x, 0)), x.pairs)):
            c1, c2 = self.terms.get(m, 0), other.terms.get(m, 0)
            if c1 != c2:
                return {
                    "height": self.heights.get(m, other.heights.get(m)),
                    "mono": repr(m),
                    "left": c1,
                    "right": c2,
                }
        return None

    def check(self):
        """Re-derive every height from scratch; raises on any violation."""
        assert self.terms.get(self.anchor, 0) != 0, "anchor must have nonzero coefficient"
        assert self.heights[self.anchor] == 0
        for m, c in self.terms.items():
            assert c != 0
            h = self.heights[m]
            assert 0 <= h <= self.order
            if m == self.anchor:
                continue
            off = offset_of(self.w, self.anchor, m)
            assert off is not None, f"{m!r} not in root lattice coset"
            assert all(x >= 0 for x in off) and any(x > 0 for x in off), f"{m!r} not dominated"
            assert sum(off) == h, f"stored height {h} != {sum(off)} for {m!r}"
        return True

    def term_count(self) -> int:
        return len(self.terms)

    def poly(self) -> Poly:
        """The truncation as a plain Laurent polynomial (forgets the tail)."""
        return Poly(dict(self.terms))

    def to_json(self) -> dict:
        rows = sorted(self.terms.items(), key=lambda t: (self.heights[t[0]], t[0].pairs))
        return {
            "w": self.w.word_str(),
            "order": self.order,
            "anchor": mono_to_json(self.anchor),
            "terms": [
                {"mono": mono_to_json(m), "coeff": str(c), "height": self.heights[m]}
                for m, c in rows
            ],
        }

    @staticmethod
    def from_json(data: dict, w: WeylElt) -> "PSeries":
        terms = {}
        heights = {}
        for row in data["terms"]:
            m = mono_from_json(row["mono"])
            terms[m] = int(row["coeff"])
            heights[m] = int(row["height"])
        return PSeries(w, mono_from_json(data["anchor"]), terms, heights, int(data["order"]))

    def __repr__(self):
        shown = sorted(self.terms.items(), key=lambda t: (self.heights[t[0]], t[0].pairs))[:6]
        body = " + ".join(f"{c}*{m!r}@h{self.heights[m]}" for m, c in shown)
        more = "" if len(self.terms) <= 6 else f" ... ({len(self.terms)} terms)"
        return f"<PSeries w={self.w.word_str()} order={self.order}: {body}{more}>"


def _raw(w, terms, heights, order):
    if not terms:
        return None
    return PSeries(w, None, dict(terms), dict(heights), order)


def _mul_terms(st, sh, ot, oh, order):
    """Term-bag product truncated at order; heights add, so sorting the
    factors by height lets the inner loop stop at the first overflow."""
    lhs = sorted(((h, m) for m, h in sh.items() if h <= order),
                 key=lambda t: t[0])
    rhs = sorted(((h, m) for m, h in oh.items() if h <= order),
                 key=lambda t: t[0])
    terms: dict = {}
    heights: dict = {}
    get = terms.get
    for h1, m1 in lhs:
        cap = order - h1
        c1 = st[m1]
        for h2, m2 in rhs:
            if h2 > cap:
                break
            m = m1 * m2
            n = get(m, 0) + c1 * ot[m2]
            if n:
                terms[m] = n
                heights[m] = h1 + h2
            else:
                del terms[m], heights[m]
    return terms, heights


def _mul_loose(x, y, order):
    """Product of anchorless term bags, truncated at order."""
    if x is None or y is None:
        return None
    terms, heights = _mul_terms(x.terms, x.heights, y.terms, y.heights, order)
    return _raw(x.w, terms, heights, order)


def _add_loose(x, bag, sign):
    terms = dict(x.terms)
    heights = dict(x.heights)
    for m, c in bag.terms.items():
        h = bag.heights[m]
        if h > x.order:
            continue
        n = terms.get(m, 0) + sign * c
        if n:
            terms[m] = n
            heights[m] = h
        else:
            terms.pop(m, None)
            heights.pop(m, None)
    return PSeries(x.w, x.anchor, terms, heights, x.order)


def _reanchor(w, terms, heights, order):
    """Recover a pointed form after the old anchor cancelled away."""
    if not terms:
        raise SplitRequired("all terms cancelled; zero is not a pointed series")
    hmin = min(heights.values())
    cands = [m for m, h in heights.items() if h == hmin]
    if len(cands) != 1:
        raise SplitRequired(f"{len(cands)} minimal-height terms after cancellation")
    m0 = cands[0]
    for m in terms:
        if m == m0:
            continue
        off = offset_of(w, m0, m)
        if off is None or any(x < 0 for x in off) or not any(x > 0 for x in off):
            raise SplitRequired(f"new anchor does not dominate {m!r}")
    new_order = order - hmin
    out_t, out_h = {}, {}
    for m, c in terms.items():
        h = heights[m] - hmin
        if h <= new_order:
            out_t[m] = c
            out_h[m] = h
    return PSeries(w, m0, out_t, out_h, new_order)


# -- multi-pointed elements ---------------------------------------------------

class PiElt:
    """A finite sum of pointed series with pairwise incomparable anchors."""

    __slots__ = ("w", "parts")

    def __init__(self, w: WeylElt, parts):
        self.w = w
        self.parts = sorted(parts, key=lambda p: p.anchor.pairs)

    @property
    def order(self) -> int:
        return min((p.order for p in self.parts), default=0)

    def add_series(self, s: PSeries) -> "PiElt":
        parts = list(self.parts)
        pending = [s]
        while pending:
            cur = pending.pop()
            for idx, p in enumerate(parts):
                if p.anchor == cur.anchor or dominates(self.w, p.anchor, cur.anchor) \
                        or dominates(self.w, cur.anchor, p.anchor):
                    parts.pop(idx)
                    if p.terms != {m: -c for m, c in cur.terms.items()}:
                        pending.append(p.add(cur))
                    break
            else:
                parts.append(cur)
        return PiElt(self.w, parts)

    def normalized(self) -> "PiElt":
        """Re-merge parts whose anchors turn out to be comparable.

        Operator images are produced part-by-part, so two image parts can
        land in the same dominance cone; comparisons need the canonical
        decomposition on both sides.
        """
        out = PiElt(self.w, [])
        for p in self.parts:
            out = out.add_series(p)
        return out

    def compare(self, other: "PiElt", order: int | None = None):
        if len(self.parts) != len(other.parts):
            return {"reason": "component counts differ",
                    "left": len(self.parts), "right": len(other.parts)}
        for a, b in zip(self.parts, other.parts):
            bad = a.compare(b, order)
            if bad is not None:
                return bad
        return None

    def to_json(self) -> dict:
        return {"w": self.w.word_str(), "components": [p.to_json() for p in self.parts]}

    def __repr__(self):
        return f"<PiElt {len(self.parts)} component(s) w={self.w.word_str()}>"


def embed(poly: Poly, w: WeylElt, order: int) -> PiElt:
    """A Laurent polynomial viewed in the w-completion, split into pointed parts."""
    if poly.is_zero():
        raise ValueError("zero polynomial has no pointed decomposition")
    monos = list(poly.terms)
    maximal = [m for m in monos if not any(dominates(w, m2, m) for m2 in monos)]
    maximal.sort(key=lambda m: m.pairs)
    groups = {m: {m: poly.terms[m]} for m in maximal}
    for m in monos:
        if m in groups:
            continue
        for m0 in maximal:
            if dominates(w, m0, m):
                groups[m0][m] = poly.terms[m]
                break
        else:
            raise AssertionError("unreachable: every monomial has a maximal dominator")
    parts = [PSeries.build(w, g, order, anchor=m0) for m0, g in groups.items()]
    return PiElt(w, parts)
