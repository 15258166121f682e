"""Reference implementations used only by the tests.

Nothing here imports the package's arithmetic: finite rings are rebuilt from
plain Python ints and tuples, and the MatQi reference uses sympy's exact
rationals with the rank-factorization formula for the pseudoinverse.
"""
from __future__ import annotations

import itertools

from sympy import QQ, QQ_I
from sympy.polys.matrices import DomainMatrix


class PlainRing:
    """ZMod(n) (``k is None``) or MatZp(p, k), elements as ints / nested tuples."""

    def __init__(self, modulus: int, k: int | None = None):
        self.m = modulus
        self.k = k
        if k is None:
            self.elements = list(range(modulus))
        else:
            # row-major entries, most significant first
            self.elements = [
                tuple(tuple(d[i * k:(i + 1) * k]) for i in range(k))
                for d in itertools.product(range(modulus), repeat=k * k)
            ]
        self.zero = self.elements[0]
        self.one = 1 % modulus if k is None else tuple(
            tuple(int(i == j) for j in range(k)) for i in range(k))

    def add(self, a, b):
        if self.k is None:
            return (a + b) % self.m
        return tuple(tuple((x + y) % self.m for x, y in zip(r, s)) for r, s in zip(a, b))

    def neg(self, a):
        if self.k is None:
            return (-a) % self.m
        return tuple(tuple((-x) % self.m for x in r) for r in a)

    def mul(self, a, b):
        if self.k is None:
            return (a * b) % self.m
        k = self.k
        return tuple(
            tuple(sum(a[i][t] * b[t][j] for t in range(k)) % self.m for j in range(k))
            for i in range(k)
        )

    def star(self, a):
        if self.k is None:
            return a
        return tuple(zip(*a))

    def prod(self, *xs):
        out = self.one
        for x in xs:
            out = self.mul(out, x)
        return out

    def power(self, a, e):
        return self.prod(*([a] * e))

    def mp_solutions(self, a):
        out = []
        for b in self.elements:
            ab, ba = self.mul(a, b), self.mul(b, a)
            if (self.mul(ab, a) == a and self.mul(ba, b) == b
                    and self.star(ab) == ab and self.star(ba) == ba):
                out.append(b)
        return out

    def right_annihilator(self, a):
        return {x for x in self.elements if self.mul(a, x) == self.zero}

    def right_ideal(self, c):
        return {self.mul(c, x) for x in self.elements}

    def sumset(self, s, t):
        return {self.add(x, y) for x in s for y in t}


def plain_ring(desc) -> PlainRing:
    j = desc.to_json()
    if j["kind"] == "ZMod":
        return PlainRing(j["n"])
    return PlainRing(j["p"], j["k"])


def to_plain(a):
    """Element -> plain value (int or tuple of tuples)."""
    p = a.payload
    return p if isinstance(p, int) else tuple(tuple(r) for r in p)


# MatQi reference (sympy's exact Gaussian-rational domain)


def to_domain(a) -> DomainMatrix:
    k = len(a.payload)
    rows = [[QQ_I(QQ(z.re.numerator, z.re.denominator), QQ(z.im.numerator, z.im.denominator))
             for z in row] for row in a.payload]
    return DomainMatrix(rows, (k, k), QQ_I)


def _conj_transpose(m: DomainMatrix) -> DomainMatrix:
    rows, cols = m.shape
    entries = m.to_list()
    return DomainMatrix([[QQ_I(entries[i][j].x, -entries[i][j].y) for i in range(rows)]
                         for j in range(cols)], (cols, rows), QQ_I)


def rank_factorization_pinv(m: DomainMatrix) -> DomainMatrix:
    """``G* (G G*)^-1 (F* F)^-1 F*`` for the full-rank factorization ``m = F G``
    with ``F`` the pivot columns of ``m`` and ``G`` the nonzero rows of its RREF."""
    rows, cols = m.shape
    rref, pivots = m.rref()
    r = len(pivots)
    if r == 0:
        return DomainMatrix.zeros((cols, rows), QQ_I)
    F = m.extract(list(range(rows)), list(pivots))
    G = rref.extract(list(range(r)), list(range(cols)))
    Gh, Fh = _conj_transpose(G), _conj_transpose(F)
    return Gh * (G * Gh).inv() * (Fh * F).inv() * Fh


def domain_equal(x: DomainMatrix, y: DomainMatrix) -> bool:
    return x.shape == y.shape and x.to_list() == y.to_list()
