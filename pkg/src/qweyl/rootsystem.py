"""Finite Cartan data and Weyl groups.

Conventions used throughout the package:

* nodes are numbered 1..n,
* a *root vector* is an integer tuple of coordinates in the simple-root
  basis (alpha_i),
* a *weight vector* is an integer tuple of coordinates in the
  fundamental-weight basis (omega_i); the two are related by u = C @ c
  where C is the Cartan matrix (alpha_i = sum_j C_{ji} omega_j),
* a simple reflection acts on roots by s_i(alpha_k) = alpha_k - C_{ik} alpha_i,
* a Weyl group element is identified with its matrix action on root
  coordinates; equality is matrix equality.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Sequence

WEYL_ORDER_BOUND = 100_000

NAMED_TYPES = ("A1", "A2", "A3", "A4", "B2", "B3", "C3", "D4", "G2", "A1xA1")


def _named_matrix(name: str):
    name = name.strip()
    if name.upper() == "A1XA1":
        return [[2, 0], [0, 2]]
    if len(name) < 2 or name[0] not in "ABCDEFG":
        raise ValueError(f"unknown Cartan type {name!r}")
    family, rank = name[0], int(name[1:])
    if rank < 1:
        raise ValueError(f"bad rank in {name!r}")
    C = [[2 * (i == j) for j in range(rank)] for i in range(rank)]

    def link(i, j, a=-1, b=-1):
        C[i][j], C[j][i] = a, b

    for t in range(rank - 1):
        link(t, t + 1)
    if family == "A":
        pass
    elif family == "B":  # node n short: C_{n-1,n} = -1, C_{n,n-1} = -2
        if rank < 2:
            raise ValueError("B needs rank >= 2")
        link(rank - 2, rank - 1, -1, -2)
    elif family == "C":
        if rank < 2:
            raise ValueError("C needs rank >= 2")
        link(rank - 2, rank - 1, -2, -1)
    elif family == "D":
        if rank < 3:
            raise ValueError("D needs rank >= 3")
        link(rank - 2, rank - 1, 0, 0)
        link(rank - 3, rank - 1)
    elif family == "G":
        if rank != 2:
            raise ValueError("only G2 exists")
        link(0, 1, -1, -3)
    elif family in ("E", "F"):
        raise ValueError(f"type {name!r} not wired up")
    return C


def _symmetrizer(C):
    """Smallest positive integers d with d_i C_{ij} = d_j C_{ji}, or None."""
    n = len(C)
    d = [None] * n
    for start in range(n):
        if d[start] is not None:
            continue
        d[start] = Fraction(1)
        stack = [start]
        while stack:
            i = stack.pop()
            for j in range(n):
                if C[i][j] == 0:
                    if C[j][i] != 0:
                        return None
                    continue
                if i == j:
                    continue
                if C[j][i] == 0:
                    return None
                val = d[i] * Fraction(C[i][j], C[j][i])
                if d[j] is None:
                    d[j] = val
                    stack.append(j)
                elif d[j] != val:
                    return None
    # clear denominators, divide by overall gcd
    from math import gcd, lcm

    den = lcm(*(x.denominator for x in d))
    ints = [int(x * den) for x in d]
    g = gcd(*ints)
    ints = [x // g for x in ints]
    if any(x <= 0 for x in ints):
        return None
    return tuple(ints)


def _principal_minors_positive(C, d):
    # exact fraction-free Gaussian elimination on the symmetrized matrix
    n = len(C)
    M = [[Fraction(d[i] * C[i][j]) for j in range(n)] for i in range(n)]
    det = Fraction(1)
    for k in range(n):
        if M[k][k] == 0:
            return False
        det *= M[k][k]
        if det <= 0:
            return False
        for i in range(k + 1, n):
            f = M[i][k] / M[k][k]
            for j in range(k, n):
                M[i][j] -= f * M[k][j]
    return True


def _invert(C):
    n = len(C)
    M = [[Fraction(C[i][j]) for j in range(n)] + [Fraction(i == j) for j in range(n)] for i in range(n)]
    for col in range(n):
        piv = next(r for r in range(col, n) if M[r][col] != 0)
        M[col], M[piv] = M[piv], M[col]
        p = M[col][col]
        M[col] = [x / p for x in M[col]]
        for r in range(n):
            if r != col and M[r][col] != 0:
                f = M[r][col]
                M[r] = [x - f * y for x, y in zip(M[r], M[col])]
    return tuple(tuple(row[n:]) for row in M)


def _matmul(A, B):
    n, m, p = len(A), len(B), len(B[0])
    return tuple(
        tuple(sum(A[i][k] * B[k][j] for k in range(m)) for j in range(p))
        for i in range(n)
    )


def _matvec(A, v):
    return tuple(sum(row[k] * v[k] for k in range(len(v))) for row in A)


class CartanData:
    """A finite-type symmetrizable Cartan matrix plus derived data.

    >>> B2 = build_cartan("B2")
    >>> B2.d
    (2, 1)
    >>> sorted(B2.positive_roots)
    [(0, 1), (1, 0), (1, 1), (1, 2)]
    """

    def __init__(self, matrix: Sequence[Sequence[int]]):
        C = tuple(tuple(int(x) for x in row) for row in matrix)
        n = len(C)
        if any(len(row) != n for row in C):
            raise ValueError("Cartan matrix must be square")
        for i in range(n):
            if C[i][i] != 2:
                raise ValueError("diagonal entries must equal 2")
            for j in range(n):
                if i != j and C[i][j] > 0:
                    raise ValueError("off-diagonal entries must be <= 0")
        d = _symmetrizer(C)
        if d is None:
            raise ValueError("matrix is not symmetrizable")
        if not _principal_minors_positive(C, d):
            raise ValueError("matrix is not of finite type")
        self.C = C
        self.rank = n
        self.d = d
        self.Cinv = _invert(C)
        self._refl_cache: dict[int, tuple] = {}
        self.positive_roots = self._root_closure()
        self._pos_set = frozenset(self.positive_roots)
        self._enum: list[WeylElt] | None = None
        self._words: dict[tuple, tuple[int, ...]] | None = None

    # -- bases ------------------------------------------------------------

    def alpha(self, i: int):
        """Simple root alpha_i as a root vector (1-based)."""
        self._check_node(i)
        return tuple(int(k == i - 1) for k in range(self.rank))

    def weight_of_root(self, c) -> tuple[int, ...]:
        """u = C @ c : simple-root coordinates to weight coordinates."""
        return tuple(sum(self.C[j][i] * c[i] for i in range(self.rank)) for j in range(self.rank))

    def root_of_weight(self, u):
        """Inverse of :meth:`weight_of_root`; None if u is not in the root lattice."""
        out = []
        for row in self.Cinv:
            x = sum(f * ui for f, ui in zip(row, u))
            if x.denominator != 1:
                return None
            out.append(int(x))
        return tuple(out)

    def _check_node(self, i: int):
        if not 1 <= i <= self.rank:
            raise ValueError(f"node {i} out of range 1..{self.rank}")

    def _reflection_matrix(self, i: int):
        # s_i(alpha_k) = alpha_k - C_{ik} alpha_i, so S_i is the identity
        # with row i replaced by delta_{ik} - C_{ik}.
        try:
            return self._refl_cache[i]
        except KeyError:
            pass
        self._check_node(i)
        n = self.rank
        rows = [[int(r == c) for c in range(n)] for r in range(n)]
        rows[i - 1] = [int((i - 1) == c) - self.C[i - 1][c] for c in range(n)]
        S = tuple(tuple(row) for row in rows)
        self._refl_cache[i] = S
        return S

    def _root_closure(self):
        simples = [self.alpha(i) for i in range(1, self.rank + 1)]
        refls = [self._reflection_matrix(i) for i in range(1, self.rank + 1)]
        seen = set(simples)
        frontier = list(simples)
        while frontier:
            nxt = []
            for c in frontier:
                for S in refls:
                    img = _matvec(S, c)
                    if img not in seen:
                        seen.add(img)
                        nxt.append(img)
            frontier = nxt
            if len(seen) > 10 * WEYL_ORDER_BOUND:
                raise ValueError("root closure did not terminate")
        pos = sorted(c for c in seen if all(x >= 0 for x in c))
        return tuple(pos)

    def is_root(self, c) -> bool:
        c = tuple(c)
        return c in self._pos_set or tuple(-x for x in c) in self._pos_set

    # -- Weyl group -------------------------------------------------------

    def identity(self) -> "WeylElt":
        n = self.rank
        eye = tuple(tuple(int(r == c) for c in range(n)) for r in range(n))
        return WeylElt(self, eye, word=())

    def weyl_enumerate(self) -> list["WeylElt"]:
        """All Weyl group elements in shortlex order (bounded closure)."""
        if self._enum is None:
            e = self.identity()
            order = [e]
            words = {e.mat: ()}
            frontier = [e]
            while frontier:
                nxt = []
                for w in frontier:
                    for i in range(1, self.rank + 1):
                        v = w.times_s(i)
                        if v.mat not in words:
                            words[v.mat] = words[w.mat] + (i,)
                            v._word = words[v.mat]
                            order.append(v)
                            nxt.append(v)
                            if len(order) > WEYL_ORDER_BOUND:
                                raise ValueError("Weyl group order exceeds bound")
                frontier = nxt
            self._enum = order
            self._words = words
        return list(self._enum)

    def word_of(self, mat) -> tuple[int, ...]:
        self.weyl_enumerate()
        try:
            return self._words[mat]
        except KeyError:
            raise ValueError("matrix is not a Weyl group element") from None


class WeylElt:
    """Weyl group element as its matrix on root coordinates."""

    __slots__ = ("cartan", "mat", "_word", "_offmat", "_hash")

    def __init__(self, cartan: CartanData, mat, word=None):
        self.cartan = cartan
        self.mat = mat
        self._word = word
        self._offmat = None
        self._hash = None

    def times_s(self, i: int) -> "WeylElt":
        """Right multiplication: w -> w s_i."""
        S = self.cartan._reflection_matrix(i)
        word = None if self._word is None else self._word + (i,)
        return WeylElt(self.cartan, _matmul(self.mat, S), word=word)

    def compose(self, other: "WeylElt") -> "WeylElt":
        """(self. other)(c) = self(other(c))."""
        if self.cartan is not other.cartan and self.cartan.C != other.cartan.C:
            raise ValueError("mismatched Cartan data")
        return WeylElt(self.cartan, _matmul(self.mat, other.mat))

    def apply_root(self, c):
        return _matvec(self.mat, c)

    def is_positive(self, c) -> bool:
        """True iff w(c) is a positive root; c must be a root."""
        if not self.cartan.is_root(c):
            raise ValueError(f"{c} is not a root")
        img = self.apply_root(c)
        return all(x >= 0 for x in img)

    def word(self) -> tuple[int, ...]:
        """A shortlex-minimal reduced word (computed via enumeration)."""
        w = self.cartan.word_of(self.mat)
        return w

    def word_str(self) -> str:
        w = self.word()
        return "e" if not w else ",".join(str(i) for i in w)

    def is_identity(self) -> bool:
        n = self.cartan.rank
        return self.mat == tuple(tuple(int(r == c) for c in range(n)) for r in range(n))

    def root_offset(self, du):
        """Exact root coordinates of w(du) for a weight-difference du.

        Returns an integer tuple; raises ValueError if du is not in the
        root lattice.
        """
        if self._offmat is None:
            self._offmat = _matmul(
                tuple(tuple(Fraction(x) for x in row) for row in self.mat),
                self.cartan.Cinv,
            )
        out = []
        for row in self._offmat:
            x = sum(f * d for f, d in zip(row, du))
            if x.denominator != 1:
                raise ValueError("weight difference is not in the root lattice")
            out.append(int(x))
        return tuple(out)

    def __eq__(self, other):
        return (
            isinstance(other, WeylElt)
            and self.mat == other.mat
            and self.cartan.C == other.cartan.C
        )

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.cartan.C, self.mat))
        return self._hash

    def __repr__(self):
        if self._word is not None or self.cartan._words is not None:
            try:
                return f"W[{self.word_str()}]"
            except ValueError:
                pass
        return f"WeylElt({self.mat})"


# -- module-level operations (the names the rest of the package uses) ------

_named_cache: dict[str, CartanData] = {}


def build_cartan(spec) -> CartanData:
    """Build Cartan data from a named type ("B2", "A1xA1", ...) or a matrix."""
    if isinstance(spec, str):
        key = spec.strip().upper()
        if key not in _named_cache:
            _named_cache[key] = CartanData(_named_matrix(spec))
        return _named_cache[key]
    return CartanData(spec)


def simple_reflection(cartan: CartanData, i: int) -> WeylElt:
    return cartan.identity().times_s(i)


def weyl_from_word(cartan: CartanData, word: Iterable[int]) -> WeylElt:
    w = cartan.identity()
    for i in word:
        w = w.times_s(i)
    return w


def height(c) -> int:
    return sum(c)
