"""Laurent polynomials in the variables Y[i,k].

The second index is the integer exponent k of the spectral parameter q^k,
so everything here is exact integer data.  Monomials are immutable and
hashable; polynomials are sparse dicts monomial -> int coefficient.
"""

from __future__ import annotations

import re
from typing import Iterable, Iterator

from .rootsystem import CartanData


class Mono:
    """Monomial prod Y[i,k]^e, stored as a sorted tuple of ((i, k), e)."""

    __slots__ = ("pairs", "_hash")

    def __init__(self, pairs=()):
        self.pairs = tuple(sorted((vk, e) for vk, e in pairs if e != 0))
        self._hash = None

    @staticmethod
    def one() -> "Mono":
        return _ONE

    def __mul__(self, other: "Mono") -> "Mono":
        a, b = self.pairs, other.pairs
        if not a:
            return other
        if not b:
            return self
        # merge of two sorted pair tuples; skips cancelled exponents
        out = []
        ia = ib = 0
        na, nb = len(a), len(b)
        while ia < na and ib < nb:
            pa, pb = a[ia], b[ib]
            ka, kb = pa[0], pb[0]
            if ka < kb:
                out.append(pa)
                ia += 1
            elif kb < ka:
                out.append(pb)
                ib += 1
            else:
                e = pa[1] + pb[1]
                if e:
                    out.append((ka, e))
                ia += 1
                ib += 1
        if ia < na:
            out.extend(a[ia:])
        elif ib < nb:
            out.extend(b[ib:])
        m = Mono.__new__(Mono)
        m.pairs = tuple(out)
        m._hash = None
        return m

    def inv(self) -> "Mono":
        return Mono((vk, -e) for vk, e in self.pairs)

    def __pow__(self, n: int) -> "Mono":
        if n == 0:
            return _ONE
        return Mono((vk, e * n) for vk, e in self.pairs)

    def tau(self, s: int) -> "Mono":
        """Shift every spectral exponent: Y[i,k] -> Y[i,k+s]."""
        if s == 0:
            return self
        return Mono(((i, k + s), e) for (i, k), e in self.pairs)

    def weight(self, cartan: CartanData) -> tuple[int, ...]:
        """Total omega-weight: exponent sum per node, as a weight vector."""
        u = [0] * cartan.rank
        for (i, _k), e in self.pairs:
            u[i - 1] += e
        return tuple(u)

    def is_one(self) -> bool:
        return not self.pairs

    def degree(self) -> int:
        return sum(abs(e) for _vk, e in self.pairs)

    def __eq__(self, other):
        return isinstance(other, Mono) and self.pairs == other.pairs

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(self.pairs)
        return self._hash

    def __lt__(self, other: "Mono"):
        return self.pairs < other.pairs

    def __repr__(self):
        return format_mono(self)


_ONE = Mono()


def y_mono(i: int, k: int, e: int = 1) -> Mono:
    return Mono((((i, k), e),))


def a_mono(cartan: CartanData, i: int, k: int) -> Mono:
    """The root monomial A[i,k], a Laurent monomial in the Y's.

    Defined so that its omega-weight is the simple root alpha_i:
    A[i,k] = Y[i,k-d_i] Y[i,k+d_i] times, for each neighbour j,
    the inverse of Y[j,k] (single bond towards i), Y[j,k-1] Y[j,k+1]
    (double), or Y[j,k-2] Y[j,k] Y[j,k+2] (triple).
    """
    cartan._check_node(i)
    d = cartan.d[i - 1]
    pairs = {(i, k - d): 1}
    pairs[(i, k + d)] = pairs.get((i, k + d), 0) + 1
    for j0 in range(cartan.rank):
        c = cartan.C[j0][i - 1]
        j = j0 + 1
        if c == 0 or j == i:
            continue
        if c == -1:
            ks = (k,)
        elif c == -2:
            ks = (k - 1, k + 1)
        elif c == -3:
            ks = (k - 2, k, k + 2)
        else:
            raise ValueError(f"unsupported Cartan entry C[{j},{i}] = {c}")
        for kk in ks:
            pairs[(j, kk)] = pairs.get((j, kk), 0) - 1
    return Mono(pairs.items())


class Poly:
    """Sparse Laurent polynomial with integer coefficients."""

    __slots__ = ("terms",)

    def __init__(self, terms=None):
        if terms is None:
            terms = {}
        elif not isinstance(terms, dict):
            terms = dict(terms)
        self.terms = {m: c for m, c in terms.items() if c != 0}

    @staticmethod
    def const(c: int) -> "Poly":
        return Poly({_ONE: c}) if c else Poly()

    @staticmethod
    def from_mono(m: Mono, c: int = 1) -> "Poly":
        return Poly({m: c})

    def __add__(self, other: "Poly") -> "Poly":
        acc = dict(self.terms)
        for m, c in other.terms.items():
            n = acc.get(m, 0) + c
            if n:
                acc[m] = n
            else:
                del acc[m]
        out = Poly.__new__(Poly)
        out.terms = acc
        return out

    def __neg__(self) -> "Poly":
        out = Poly.__new__(Poly)
        out.terms = {m: -c for m, c in self.terms.items()}
        return out

    def __sub__(self, other: "Poly") -> "Poly":
        return self + (-other)

    def __mul__(self, other: "Poly") -> "Poly":
        acc: dict[Mono, int] = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                m = m1 * m2
                n = acc.get(m, 0) + c1 * c2
                if n:
                    acc[m] = n
                else:
                    acc.pop(m, None)
        out = Poly.__new__(Poly)
        out.terms = acc
        return out

    def scale(self, c: int) -> "Poly":
        if c == 0:
            return Poly()
        out = Poly.__new__(Poly)
        out.terms = {m: c * x for m, x in self.terms.items()}
        return out

    def mul_mono(self, m: Mono, c: int = 1) -> "Poly":
        out = Poly.__new__(Poly)
        out.terms = {m0 * m: c * c0 for m0, c0 in self.terms.items()}
        return out

    def tau(self, s: int) -> "Poly":
        out = Poly.__new__(Poly)
        out.terms = {m.tau(s): c for m, c in self.terms.items()}
        return out

    def is_zero(self) -> bool:
        return not self.terms

    def is_one(self) -> bool:
        return self.terms == {_ONE: 1}

    def coeff(self, m: Mono) -> int:
        return self.terms.get(m, 0)

    def sorted_terms(self) -> list[tuple[Mono, int]]:
        return sorted(self.terms.items(), key=lambda t: t[0].pairs)

    def monos(self) -> Iterator[Mono]:
        return iter(self.terms)

    def __eq__(self, other):
        return isinstance(other, Poly) and self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __repr__(self):
        return format_poly(self)


# -- text format ------------------------------------------------------------

def format_mono(m: Mono) -> str:
    if not m.pairs:
        return "1"
    bits = []
    for (i, k), e in m.pairs:
        s = f"Y[{i},{k}]"
        if e != 1:
            s += f"^{e}"
        bits.append(s)
    return "*".join(bits)


def format_poly(p: Poly) -> str:
    if not p.terms:
        return "0"
    out = []
    for m, c in p.sorted_terms():
        sign = "-" if c < 0 else "+"
        mag = abs(c)
        if m.is_one():
            body = str(mag)
        elif mag == 1:
            body = format_mono(m)
        else:
            body = f"{mag}*{format_mono(m)}"
        if not out:
            out.append(body if c > 0 else f"-{body}")
        else:
            out.append(f" {sign} {body}")
    return "".join(out)


_TOKEN = re.compile(
    r"\s*(?:(?P<name>[A-Za-z]\w*)\[(?P<args>[^\]]*)\]|(?P<int>\d+)|(?P<op>[-+*^()]))"
)


def tokenize(text: str):
    pos, out = 0, []
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m or m.end() == m.start():
            if text[pos:].strip():
                raise ValueError(f"bad token at: {text[pos:pos + 20]!r}")
            break
        if m.group("name"):
            args = tuple(int(a) for a in m.group("args").split(","))
            out.append(("sym", m.group("name"), args))
        elif m.group("int"):
            out.append(("int", int(m.group("int"))))
        else:
            out.append(("op", m.group("op")))
        pos = m.end()
    return out


class _Parser:
    def __init__(self, tokens, symbols):
        self.toks = tokens
        self.pos = 0
        self.symbols = symbols

    def peek(self):
        return self.toks[self.pos] if self.pos < len(self.toks) else None

    def take(self):
        t = self.peek()
        if t is None:
            raise ValueError("unexpected end of expression")
        self.pos += 1
        return t

    def expr(self) -> Poly:
        sign = 1
        t = self.peek()
        if t == ("op", "-"):
            self.take()
            sign = -1
        elif t == ("op", "+"):
            self.take()
        acc = self.term().scale(sign)
        while self.peek() in (("op", "+"), ("op", "-")):
            op = self.take()[1]
            nxt = self.term()
            acc = acc + (nxt if op == "+" else -nxt)
        return acc

    def term(self) -> Poly:
        acc = self.factor()
        while self.peek() == ("op", "*"):
            self.take()
            acc = acc * self.factor()
        return acc

    def factor(self) -> Poly:
        t = self.take()
        if t == ("op", "("):
            inner = self.expr()
            if self.take() != ("op", ")"):
                raise ValueError("missing )")
            base = inner
        elif t[0] == "int":
            base = Poly.const(t[1])
        elif t[0] == "sym":
            fn = self.symbols.get(t[1])
            if fn is None:
                raise ValueError(f"unknown symbol {t[1]!r}")
            base = fn(*t[2])
        else:
            raise ValueError(f"unexpected token {t!r}")
        if self.peek() == ("op", "^"):
            self.take()
            neg = False
            if self.peek() == ("op", "-"):
                self.take()
                neg = True
            et = self.take()
            if et[0] != "int":
                raise ValueError("exponent must be an integer")
            e = -et[1] if neg else et[1]
            base = _poly_pow(base, e)
        return base


def _poly_pow(p: Poly, e: int) -> Poly:
    if e >= 0:
        acc = Poly.const(1)
        for _ in range(e):
            acc = acc * p
        return acc
    # negative powers only for monomials
    if len(p.terms) != 1:
        raise ValueError("negative power of a non-monomial")
    ((m, c),) = p.terms.items()
    if c * c != 1:
        raise ValueError("negative power needs unit coefficient")
    return Poly({m.inv() ** (-e): c if e % 2 else 1})


def default_symbols(cartan: CartanData | None):
    def Y(i, k):
        return Poly.from_mono(y_mono(i, k))

    syms = {"Y": Y}
    if cartan is not None:
        syms["A"] = lambda i, k: Poly.from_mono(a_mono(cartan, i, k))
    return syms


def parse_expr(text: str, cartan: CartanData | None = None, symbols=None) -> Poly:
    """Parse `Y[1,0]*A[2,-1]^-1 + 3` style expressions into a Poly."""
    syms = default_symbols(cartan)
    if symbols:
        syms.update(symbols)
    parser = _Parser(tokenize(text), syms)
    out = parser.expr()
    if parser.peek() is not None:
        raise ValueError(f"trailing tokens at {parser.toks[parser.pos:]!r}")
    return out


# -- JSON form ----------------------------------------------------------------

def mono_to_json(m: Mono) -> dict:
    return {f"{i},{k}": e for (i, k), e in m.pairs}


def mono_from_json(d: dict) -> Mono:
    pairs = []
    for key, e in d.items():
        i, k = key.split(",")
        pairs.append(((int(i), int(k)), int(e)))
    return Mono(pairs)


def poly_to_json(p: Poly) -> list:
    return [
        {"mono": mono_to_json(m), "coeff": str(c)}
        for m, c in p.sorted_terms()
    ]


def poly_from_json(data: Iterable[dict]) -> Poly:
    acc: dict[Mono, int] = {}
    for row in data:
        m = mono_from_json(row["mono"])
        acc[m] = acc.get(m, 0) + int(row["coeff"])
    return Poly(acc)
