"""q-difference equations  F*U = H + G*tau(U, -r)  and their pointed
solutions in a fixed w-completion.

The Sigma series (geometric towers in a single A-direction) are expanded
directly; the iterated Sigma family attached to length >= 2 alternating
words is defined by a table of such equations and produced by the solver.
Every solve() re-checks its residual before returning, so a wrong branch
or a bad table entry cannot slip through silently.
"""

from __future__ import annotations

from dataclasses import dataclass

from .laurent import Mono, a_mono
from .qchar import v_mono
from .rootsystem import WeylElt
from .series import PSeries


class SolveError(Exception):
    pass


@dataclass(frozen=True)
class QDiffEq:
    """F*U = H + G*tau(U, -r) with F, H, G pointed series over w."""

    w: WeylElt
    F: PSeries
    H: PSeries
    G: PSeries
    r: int


_sigma_cache: dict = {}
_iter_cache: dict = {}


def clear_caches():
    _sigma_cache.clear()
    _iter_cache.clear()


def sigma(w: WeylElt, i: int, k: int, order: int) -> PSeries:
    """The basic tower at node i, base q^k, expanded in the w-completion.

    If w(alpha_i) > 0 this is 1 + A[i,k]^-1 (1 + A[i,k-2d]^-1 (1 + ...));
    otherwise it is -A[i,k+2d](1 + A[i,k+4d](1 + ...)).
    """
    key = (w, i, k, order)
    hit = _sigma_cache.get(key)
    if hit is not None:
        return hit
    cd = w.cartan
    cd._check_node(i)
    d = cd.d[i - 1]
    ai = cd.alpha(i)
    terms: dict[Mono, int] = {}
    heights: dict[Mono, int] = {}
    if w.is_positive(ai):
        step = sum(w.apply_root(ai))
        m, h, t = Mono.one(), 0, 0
        while h <= order:
            terms[m] = 1
            heights[m] = h
            m = m * a_mono(cd, i, k - 2 * t * d).inv()
            t += 1
            h += step
        out = PSeries(w, Mono.one(), terms, heights, order)
    else:
        step = -sum(w.apply_root(ai))
        m = a_mono(cd, i, k + 2 * d)
        anchor = m
        h, t = 0, 2
        while h <= order:
            terms[m] = -1
            heights[m] = h
            m = m * a_mono(cd, i, k + 2 * t * d)
            t += 1
            h += step
        out = PSeries(w, anchor, terms, heights, order)
    _sigma_cache[key] = out
    return out


def solve(eq: QDiffEq) -> PSeries:
    """The unique pointed solution of eq in its w-completion."""
    invF = eq.F.inv()
    H1 = eq.H.mul(invF)
    G1 = eq.G.mul(invF)
    G2 = G1.mul(H1.tau(-eq.r)).mul(H1.inv())
    u = _solve_unit(eq.w, G2, -eq.r)
    U = H1.mul(u)
    lhs = eq.F.mul(U)
    rhs = eq.H.add(eq.G.mul(U.tau(-eq.r)))
    bad = lhs.compare(rhs)
    if bad is not None:
        raise SolveError(f"residual mismatch: {bad}")
    return U


def _solve_unit(w: WeylElt, G2: PSeries, shift: int, depth: int = 0) -> PSeries:
    """Solve u = 1 + G2 * tau(u, shift) for a unit-anchored u."""
    cd = w.cartan
    alpha = cd.root_of_weight(G2.anchor.weight(cd))
    if alpha is None or not cd.is_root(alpha):
        raise SolveError(f"step weight {G2.anchor!r} is not a root")
    img = w.apply_root(alpha)
    if all(x <= 0 for x in img):
        # the step is strictly below 1, so iteration contracts
        order = G2.order
        u = PSeries.one(w, order)
        for _ in range(order + 2):
            nxt = PSeries.one(w, order).add(G2.mul(u.tau(shift)))
            if nxt.compare(u) is None:
                return nxt
            u = nxt
        raise SolveError("fixed-point iteration did not stabilize")
    if depth >= 1:
        raise SolveError("equation does not contract in either direction")
    # resum from the other side: u = -G3 + G3*tau(u, -shift),
    # G3 = inv(tau(G2, -shift)); the renormalized step has weight -alpha.
    G3 = G2.tau(-shift).inv()
    u2 = _solve_unit(w, G3.tau(-shift), -shift, depth + 1)
    return G3.neg().mul(u2)


# -- the iterated family ------------------------------------------------------

# Defining equations for alternating words, in role coordinates: the node
# called "i" has C[i][j] = -1 and C[j][i] = -c.  Each entry lists the
# Sigma factors of F and H as (subword pattern, base shift), the A^-1
# factors of G as (role, shift), extra Sigma factors of G, and the shift r.
_RECIPES = {
    1: {
        "ij": dict(F=[], H=[("i", -1)], GA=[("j", 0), ("i", -1)], GS=[], r=2),
        "ji": dict(F=[], H=[("j", -1)], GA=[("i", 0), ("j", -1)], GS=[], r=2),
    },
    2: {
        "ij": dict(F=[], H=[("i", -2), ("i", -4)], GA=[("j", 0), ("i", -2)], GS=[], r=2),
        "ji": dict(F=[], H=[("j", 0)], GA=[("i", 0), ("j", -2), ("j", 0)], GS=[], r=4),
        "iji": dict(F=[("i", -4)], H=[("ij", 0)],
                    GA=[("i", -2), ("j", -2), ("j", 0)], GS=[("i", 0)], r=4),
        "jij": dict(F=[("j", -2)], H=[("ji", -2), ("ji", -4)],
                    GA=[("i", -2), ("j", -4)], GS=[("j", 0)], r=2),
    },
    3: {
        "ij": dict(F=[], H=[("i", -3), ("i", -5), ("i", -7)],
                   GA=[("j", 0), ("i", -3)], GS=[], r=2),
        "ji": dict(F=[], H=[("j", 1)],
                   GA=[("i", 0), ("j", 1), ("j", -1), ("j", -3)], GS=[], r=6),
        "iji": dict(F=[("i", -6)], H=[("ij", 1)],
                    GA=[("i", -2), ("i", -4), ("j", 1), ("j", -1), ("j", -3)],
                    GS=[("i", 0)], r=6),
        "jij": dict(F=[("j", -2)], H=[("ji", -3), ("ji", -5), ("ji", -7)],
                    GA=[("i", -3), ("j", -4), ("j", -6)], GS=[("j", 0)], r=2),
        "jiji": dict(F=[("ji", -6)], H=[("jij", 1)],
                     GA=[("i", -2), ("i", -4), ("j", -3), ("j", -5), ("j", -7)],
                     GS=[("ji", 0)], r=6),
        "ijij": dict(F=[("ij", -2)], H=[("iji", -3), ("iji", -5), ("iji", -7)],
                     GA=[("i", -7), ("j", -4), ("j", -6)], GS=[("ij", 0)], r=2),
        "ijiji": dict(F=[("iji", -6)], H=[("ijij", 1)],
                      GA=[("i", -6), ("j", -3), ("j", -5), ("j", -7)],
                      GS=[("iji", 0)], r=6),
        "jijij": dict(F=[("jij", -2)], H=[("jiji", -3), ("jiji", -5), ("jiji", -7)],
                      GA=[("i", -7), ("j", -10)], GS=[("jij", 0)], r=2),
    },
}


def _role_split(cd, word):
    if len(word) < 2:
        raise ValueError("need a word of length >= 2")
    a, b = word[0], word[1]
    if a == b:
        raise ValueError("word must alternate between two distinct nodes")
    for t, n in enumerate(word):
        if n != (a if t % 2 == 0 else b):
            raise ValueError("word must alternate between two distinct nodes")
    cab, cba = cd.C[a - 1][b - 1], cd.C[b - 1][a - 1]
    if cab == 0:
        raise ValueError("nodes are orthogonal: no mixed tower exists")
    c = max(-cab, -cba)
    i_node, j_node = (a, b) if -cab == 1 else (b, a)
    pattern = "".join("i" if n == i_node else "j" for n in word)
    return i_node, j_node, c, pattern


def iterated_sigma(w: WeylElt, word, k: int, order: int) -> PSeries:
    """The tower attached to an alternating word, from its defining equation."""
    word = tuple(word)
    if len(word) == 1:
        return sigma(w, word[0], k, order)
    key = (w, word, k, order)
    hit = _iter_cache.get(key)
    if hit is not None:
        return hit
    cd = w.cartan
    i_node, j_node, c, pattern = _role_split(cd, word)
    rec = _RECIPES.get(c, {}).get(pattern)
    if rec is None:
        raise ValueError(f"no defining equation for word {word} (pattern {pattern})")
    node_of = {"i": i_node, "j": j_node}

    def sig(ref):
        sub_pattern, off = ref
        sub = tuple(node_of[ch] for ch in sub_pattern)
        return iterated_sigma(w, sub, k + off, order)

    F = PSeries.one(w, order)
    for ref in rec["F"]:
        F = F.mul(sig(ref))
    H = PSeries.one(w, order)
    for ref in rec["H"]:
        H = H.mul(sig(ref))
    gm = Mono.one()
    for role, off in rec["GA"]:
        gm = gm * a_mono(cd, node_of[role], k + off).inv()
    G = PSeries.from_mono(w, gm, order)
    for ref in rec["GS"]:
        G = G.mul(sig(ref))
    out = solve(QDiffEq(w, F, H, G, rec["r"]))
    _iter_cache[key] = out
    return out


# -- closed-form oracles -------------------------------------------------------

def closed_form_oracle(w: WeylElt, word, k: int, order: int) -> PSeries:
    """Independent direct enumerations of selected towers.

    Available: any length-2 word in a simply-laced rank-2 pair (all w);
    both length-2 and both length-3 words for a double bond and the
    length-5 long-node word for a triple bond (each at w = e and at the
    one simple reflection that fixes the term set).
    """
    word = tuple(word)
    cd = w.cartan
    i_node, j_node, c, pattern = _role_split(cd, word)
    if c == 1 and len(word) == 2:
        return _oracle_single_bond(w, word[0], word[1], k, order)
    if c == 2:
        if pattern == "ij":
            return _oracle_b2_ij(w, i_node, j_node, k, order)
        if pattern == "ji":
            return _oracle_b2_ji(w, i_node, j_node, k, order)
        if pattern == "iji":
            return _oracle_b2_iji(w, i_node, j_node, k, order)
        if pattern == "jij":
            return _oracle_b2_jij(w, i_node, j_node, k, order)
    if c == 3 and pattern == "ijiji":
        return _oracle_g2_ijiji(w, i_node, j_node, k, order)
    raise ValueError(f"no closed form for word {word}")


def _require_w(w: WeylElt, allowed_nodes):
    """w must be e or s_x for x in allowed_nodes."""
    if w.is_identity():
        return
    for x in allowed_nodes:
        if w == w.cartan.identity().times_s(x):
            return
    raise ValueError("closed form is not stated for this w")


def _oracle_single_bond(w, j, i, k, order):
    # terms V^(a) at (j, k-1) times V^(b) at (i, k); the four sign cases
    # of (w(alpha_j), w(alpha_i + alpha_j)) choose the summation domain.
    cd = w.cartan
    aj, ai = cd.alpha(j), cd.alpha(i)
    aij = tuple(x + y for x, y in zip(ai, aj))
    sj, sij = w.is_positive(aj), w.is_positive(aij)
    if sj and sij:
        dom, sign = (lambda a, b: 0 <= b <= a), 1
    elif not sj and sij:
        dom, sign = (lambda a, b: 0 <= b and a < b), -1
    elif sj and not sij:
        dom, sign = (lambda a, b: b < 0 and b <= a), -1
    else:
        dom, sign = (lambda a, b: a < b < 0), 1
    B = 3 * order + 12
    pts = []
    for a in range(-B, B + 1):
        for b in range(-B, B + 1):
            if dom(a, b):
                du = tuple(a * x + b * y for x, y in zip(aj, ai))
                pts.append((a, b, sum(w.apply_root(du))))
    m0 = min(h for _a, _b, h in pts)
    terms: dict[Mono, int] = {}
    for a, b, h in pts:
        if h - m0 <= order:
            assert max(abs(a), abs(b)) < B - 1, "enumeration box too small"
            m = v_mono(cd, j, k - 1, a) * v_mono(cd, i, k, b)
            terms[m] = terms.get(m, 0) + sign
    return PSeries.build(w, terms, order)


def _accumulate(cd, terms, specs):
    m = Mono.one()
    for node, base, alpha in specs:
        m = m * v_mono(cd, node, base, alpha)
    terms[m] = terms.get(m, 0) + 1


def _oracle_b2_ij(w, i, j, k, order):
    _require_w(w, (j,))
    cd = w.cartan
    terms: dict[Mono, int] = {}
    for a in range(order + 1):
        for a2 in range(order + 1):
            for b in range(min(2 * a, 2 * a2 + 1) + 1):
                _accumulate(cd, terms, [(i, k - 2, a), (i, k - 4, a2), (j, k, b)])
    return PSeries.build(w, terms, order)


def _oracle_b2_ji(w, i, j, k, order):
    _require_w(w, (i,))
    cd = w.cartan
    terms: dict[Mono, int] = {}
    for a in range(order + 2):
        for b in range(a // 2 + 1):
            _accumulate(cd, terms, [(j, k, a), (i, k, b)])
    return PSeries.build(w, terms, order)


def _oracle_b2_iji(w, i, j, k, order):
    _require_w(w, (j,))
    cd = w.cartan
    terms: dict[Mono, int] = {}
    for a in range(order + 1):
        for g in range(order + 1):
            for b in range(2 * g, 2 * a + 1):
                _accumulate(cd, terms, [(i, k - 2, a), (j, k, b), (i, k, g)])
    return PSeries.build(w, terms, order)


def _oracle_b2_jij(w, i, j, k, order):
    # the printed domain for this tower omits its constant term; the gamma
    # bound used here is the computational repair, pinned against the
    # solver in the tests.
    _require_w(w, (i,))
    cd = w.cartan
    terms: dict[Mono, int] = {}
    for a in range(order + 1):
        for b in range(a // 2 + 1):
            for b2 in range((a + 1) // 2 + 1):
                for g in range(min(1 + 2 * b, 2 * b2) + 1):
                    _accumulate(
                        cd, terms,
                        [(j, k - 4, a), (i, k - 4, b), (i, k - 2, b2), (j, k, g)],
                    )
    return PSeries.build(w, terms, order)


def _oracle_g2_ijiji(w, i, j, k, order):
    _require_w(w, (j,))
    cd = w.cartan
    n = order
    terms: dict[Mono, int] = {}
    for a in range(n + 1):
        for b in range(3 * a + 1):
            if a + b > n and 4 * a - b > n:
                continue
            for g in range(min((b + 1) // 3, n) + 1):
                # The g2 bound is 3*g2 <= b; a looser bound admits spurious
                # lattice points starting at height 3 (checked against the
                # recursive solution through order 10).
                for g2 in range(min(b // 3, n) + 1):
                    dmax = min(3 * g, 3 * g2 + 1)
                    for dd in range(dmax + 1):
                        for e in range(min(dd // 3, n) + 1):
                            _accumulate(
                                cd, terms,
                                [(i, k - 6, a), (j, k - 3, b), (i, k - 2, g),
                                 (i, k - 4, g2), (j, k + 1, dd), (i, k, e)],
                            )
    return PSeries.build(w, terms, order)
