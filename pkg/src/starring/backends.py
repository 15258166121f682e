"""Enumeration of finite carriers, one-sided equation solving, and the JSON codec.

Finite rings are handled through :class:`FiniteRing`, which stores every
element as a row of a numpy array (``(N,)`` residues or ``(N, k, k)``
matrices) in canonical order. Exhaustive scans are then whole-array
expressions, and the answer of a scan is always the smallest matching index.

Canonical order: ``ZMod(n)`` is ``0, 1, ..., n-1``; ``MatZp(p, k)`` reads the
``k*k`` entries in row-major order as the base-``p`` digits of the index, most
significant digit first (so index 1 of ``MatZp(2, 2)`` is ``[[0,0],[0,1]]``).
"""
from __future__ import annotations

import json
import os
import random
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from functools import cached_property, lru_cache
from typing import Iterator

import numpy as np

from . import linalg
from .errors import ParseError, ResourceError, UnsupportedError
from .ring import Element, Kind, RingDescriptor
from .scalars import GaussianRational

DEFAULT_CAP = 10_000


def enumeration_cap() -> int:
    """Largest ring that may be enumerated; ``STARRING_CAP`` overrides the default."""
    raw = os.environ.get("STARRING_CAP")
    if raw:
        try:
            return int(raw)
        except ValueError:
            raise ResourceError(f"STARRING_CAP must be an integer, got {raw!r}") from None
    return DEFAULT_CAP


def is_enumerable(r: RingDescriptor, cap: int | None = None) -> bool:
    cap = enumeration_cap() if cap is None else cap
    return r.is_finite and r.order <= cap


class FiniteRing:
    """Array view of a finite ring used for vectorized exhaustive scans."""

    def __init__(self, ring: RingDescriptor):
        if not ring.is_finite:
            raise UnsupportedError(f"{ring} is infinite and cannot be enumerated")
        self.ring = ring
        self.size = ring.order
        if ring.kind is Kind.ZMOD:
            self.modulus = ring.n
            self.data = np.arange(ring.n, dtype=np.int64)
            self._weights = None
        else:
            p, k = ring.p, ring.k
            self.modulus = p
            idx = np.arange(self.size, dtype=np.int64)
            digits = np.empty((self.size, k * k), dtype=np.int64)
            for j in range(k * k):
                digits[:, k * k - 1 - j] = (idx // p**j) % p
            self.data = digits.reshape(self.size, k, k)
            self._weights = np.array([p ** (k * k - 1 - j) for j in range(k * k)], dtype=np.int64)

    # index <-> array <-> Element

    def encode(self, arr: np.ndarray) -> np.ndarray | int:
        """Canonical index of each element in ``arr`` (leading axes are kept)."""
        if self._weights is None:
            return arr % self.modulus
        k = self.ring.k
        flat = arr.reshape(arr.shape[:-2] + (k * k,))
        return flat @ self._weights

    def array(self, a: Element) -> np.ndarray:
        if self.ring.kind is Kind.ZMOD:
            return np.int64(a.payload)
        return np.array(a.payload, dtype=np.int64)

    def index(self, a: Element) -> int:
        return int(self.encode(self.array(a)))

    def element(self, i: int) -> Element:
        i = int(i)
        if self.ring.kind is Kind.ZMOD:
            return Element(self.ring, i)
        return Element(self.ring, tuple(tuple(int(x) for x in row) for row in self.data[i]))

    def elements(self, indices) -> list[Element]:
        return [self.element(i) for i in indices]

    # vectorized arithmetic on stacked arrays (broadcasting over leading axes)

    def mul(self, x: np.ndarray, y: np.ndarray) -> np.ndarray:
        if self._weights is None:
            return (x * y) % self.modulus
        return np.matmul(x, y) % self.modulus

    def add(self, x: np.ndarray, y: np.ndarray) -> np.ndarray:
        return (x + y) % self.modulus

    def sub(self, x: np.ndarray, y: np.ndarray) -> np.ndarray:
        return (x - y) % self.modulus

    def star(self, x: np.ndarray) -> np.ndarray:
        if self._weights is None:
            return x
        return np.swapaxes(x, -1, -2)

    @cached_property
    def zero_index(self) -> int:
        return self.index(self.ring.zero)

    @cached_property
    def one_index(self) -> int:
        return self.index(self.ring.one)

    @cached_property
    def one_array(self) -> np.ndarray:
        return self.array(self.ring.one)

    # cached per-element masks

    @cached_property
    def left_inverse_table(self) -> np.ndarray:
        """``t[z]`` is the first ``y`` with ``y z = 1``, or -1."""
        return self._inverse_table(left=True)

    @cached_property
    def right_inverse_table(self) -> np.ndarray:
        """``t[z]`` is the first ``x`` with ``z x = 1``, or -1."""
        return self._inverse_table(left=False)

    def _inverse_table(self, left: bool) -> np.ndarray:
        out = np.full(self.size, -1, dtype=np.int64)
        one = self.one_index
        for z in range(self.size):
            zarr = self.data[z]
            prods = self.mul(self.data, zarr) if left else self.mul(zarr, self.data)
            hits = np.flatnonzero(self.encode(prods) == one)
            if hits.size:
                out[z] = hits[0]
        return out

    @cached_property
    def star_table(self) -> np.ndarray:
        return self.encode(self.star(self.data))

    @cached_property
    def square_table(self) -> np.ndarray:
        return self.encode(self.mul(self.data, self.data))

    @cached_property
    def idempotent_mask(self) -> np.ndarray:
        return self.square_table == np.arange(self.size)

    @cached_property
    def hermitian_mask(self) -> np.ndarray:
        return self.star_table == np.arange(self.size)

    @cached_property
    def projection_mask(self) -> np.ndarray:
        return self.idempotent_mask & self.hermitian_mask

    @cached_property
    def unit_mask(self) -> np.ndarray:
        return (self.left_inverse_table >= 0) & (self.right_inverse_table >= 0)

    # one-shot scans

    def right_products(self, c: Element) -> np.ndarray:
        """Indices of ``c x`` for every ``x`` in canonical order."""
        return self.encode(self.mul(self.array(c), self.data))

    def left_products(self, c: Element) -> np.ndarray:
        """Indices of ``x c`` for every ``x`` in canonical order."""
        return self.encode(self.mul(self.data, self.array(c)))

    def right_ideal(self, c: Element) -> np.ndarray:
        """Sorted indices of ``cR``."""
        return np.unique(self.right_products(c))

    def left_ideal(self, c: Element) -> np.ndarray:
        """Sorted indices of ``Rc``."""
        return np.unique(self.left_products(c))


@lru_cache(maxsize=64)
def _finite_ring(r: RingDescriptor) -> FiniteRing:
    return FiniteRing(r)


def finite_ring(r: RingDescriptor, cap: int | None = None) -> FiniteRing:
    """The (cached) array view of ``r``; raises when ``r`` is infinite or too big."""
    if not r.is_finite:
        raise UnsupportedError(f"{r} is infinite and cannot be enumerated")
    cap = enumeration_cap() if cap is None else cap
    if r.order > cap:
        raise ResourceError(f"{r} has {r.order} elements, above the enumeration cap {cap}")
    return _finite_ring(r)


class ElementStream:
    """Re-creatable, randomly addressable stream of all elements of a finite ring."""

    def __init__(self, ring: RingDescriptor, start: int = 0, stop: int | None = None,
                 cap: int | None = None):
        self.ring = ring
        self.cap = cap
        self._fr = finite_ring(ring, cap)
        self.start = start
        self.stop = self._fr.size if stop is None else min(stop, self._fr.size)

    def __len__(self) -> int:
        return max(0, self.stop - self.start)

    def __getitem__(self, i: int) -> Element:
        if not 0 <= i < len(self):
            raise IndexError(i)
        return self._fr.element(self.start + i)

    def __iter__(self) -> Iterator[Element]:
        for i in range(self.start, self.stop):
            yield self._fr.element(i)

    def partition(self, parts: int) -> list["ElementStream"]:
        """Split into at most ``parts`` contiguous index ranges."""
        n = len(self)
        parts = max(1, min(parts, n or 1))
        bounds = [self.start + (n * i) // parts for i in range(parts + 1)]
        return [ElementStream(self.ring, lo, hi, self.cap) for lo, hi in zip(bounds, bounds[1:])]


def enumerate_ring(r: RingDescriptor, cap: int | None = None) -> ElementStream:
    return ElementStream(r, cap=cap)


class Side(str, Enum):
    RIGHT_MUL = "RightMul"  # c x = t
    LEFT_MUL = "LeftMul"  # y c = t


@dataclass(frozen=True)
class LinearProblem:
    shape: Side
    c: Element
    t: Element

    def __post_init__(self):
        self.c._check(self.t)

    def holds(self, x: Element) -> bool:
        lhs = self.c * x if self.shape is Side.RIGHT_MUL else x * self.c
        return lhs == self.t

    @classmethod
    def right(cls, c: Element, t: Element) -> "LinearProblem":
        return cls(Side.RIGHT_MUL, c, t)

    @classmethod
    def left(cls, c: Element, t: Element) -> "LinearProblem":
        return cls(Side.LEFT_MUL, c, t)


def solve(problem: LinearProblem) -> Element | None:
    """First solution in canonical order (finite rings) or some exact solution.

    Rings within the enumeration cap are scanned exhaustively. Larger ``ZMod``
    rings use the gcd criterion, which still yields the smallest residue;
    matrix rings outside the cap are reduced to a linear system over the
    scalar field. Every returned solution is re-checked.
    """
    r = problem.c.ring
    if is_enumerable(r):
        fr = finite_ring(r)
        prods = fr.right_products(problem.c) if problem.shape is Side.RIGHT_MUL \
            else fr.left_products(problem.c)
        hits = np.flatnonzero(prods == fr.index(problem.t))
        x = fr.element(hits[0]) if hits.size else None
    elif r.kind is Kind.ZMOD:
        x = _solve_mod(problem.c.payload, problem.t.payload, r)
    else:
        c, t = problem.c.payload, problem.t.payload
        sol = linalg.solve_right(c, t, r.field) if problem.shape is Side.RIGHT_MUL \
            else linalg.solve_left(c, t, r.field)
        x = None if sol is None else Element(r, sol)
    if x is not None and not problem.holds(x):
        raise AssertionError(f"solver returned a non-solution for {problem}")
    return x


def _solve_mod(c: int, t: int, r: RingDescriptor) -> Element | None:
    from math import gcd

    n = r.n
    g = gcd(c, n)
    if t % g:
        return None
    m = n // g
    x = ((t // g) * pow(c // g, -1, m)) % m if m > 1 else 0
    return Element(r, x)


# JSON codec


def parse_ring(text: str) -> RingDescriptor:
    return RingDescriptor.from_json(text)


def parse_element(r: RingDescriptor, text) -> Element:
    """Parse an element from JSON text (or an already-decoded value).

    Accepted forms are the bare value (``7``, ``[[1,0],[0,1]]``) or an object
    ``{"value": ...}``. ``MatQi`` entries are ints or strings like ``"3/2-1/2i"``.
    """
    if isinstance(text, str):
        try:
            obj = json.loads(text)
        except json.JSONDecodeError as exc:
            raise ParseError(f"element is not valid JSON: {exc.msg}", f"char {exc.pos}") from None
    else:
        obj = text
    if isinstance(obj, dict):
        if set(obj) != {"value"}:
            raise ParseError("element object must have exactly one field 'value'")
        obj = obj["value"]
    if r.kind is Kind.ZMOD:
        if isinstance(obj, bool) or not isinstance(obj, int):
            raise ParseError(f"ZMod element must be an integer, got {obj!r}", "value")
        return r.element(obj)
    k = r.k
    if not isinstance(obj, list) or len(obj) != k:
        raise ParseError(f"{r} element must be a list of {k} rows", "value")
    rows = []
    for i, row in enumerate(obj):
        if not isinstance(row, list) or len(row) != k:
            raise ParseError(f"row must have {k} entries", f"row {i}")
        entries = []
        for j, x in enumerate(row):
            entries.append(_parse_entry(r, x, f"row {i}, column {j}"))
        rows.append(entries)
    return r.element(rows)


def _parse_entry(r: RingDescriptor, x, where: str):
    if r.kind is Kind.MATZP:
        if isinstance(x, bool) or not isinstance(x, int):
            raise ParseError(f"MatZp entries must be integers, got {x!r}", where)
        return x
    if isinstance(x, bool):
        raise ParseError(f"bad entry {x!r}", where)
    if isinstance(x, int):
        return GaussianRational(x)
    if isinstance(x, str):
        try:
            return GaussianRational.parse(x)
        except ValueError as exc:
            raise ParseError(str(exc), where) from None
    raise ParseError(f"MatQi entries must be strings or integers, got {x!r}", where)


def element_value(a: Element):
    """JSON-ready value of ``a`` (int, or nested lists of ints / strings)."""
    r = a.ring
    if r.kind is Kind.ZMOD:
        return a.payload
    if r.kind is Kind.MATZP:
        return [list(row) for row in a.payload]
    return [[str(x) for x in row] for row in a.payload]


def format_element(a: Element) -> str:
    return json.dumps(element_value(a), separators=(",", ":"))


def random_element(r: RingDescriptor, rng: random.Random, bound: int = 5) -> Element:
    """Seeded random element; MatQi entries have numerators and denominators in ``[-bound, bound]``."""
    if r.kind is Kind.ZMOD:
        return r.element(rng.randrange(r.n))
    if r.kind is Kind.MATZP:
        return r.element([[rng.randrange(r.p) for _ in range(r.k)] for _ in range(r.k)])

    def part() -> Fraction:
        den = 0
        while den == 0:
            den = rng.randint(-bound, bound)
        return Fraction(rng.randint(-bound, bound), den)

    return r.element([[GaussianRational(part(), part()) for _ in range(r.k)] for _ in range(r.k)])
