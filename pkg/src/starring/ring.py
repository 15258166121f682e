"""Unital rings with involution: descriptors, elements and exact arithmetic.

Three carriers are built in:

* ``ZMod(n)``: residues mod ``n`` with the identity involution (legal because the
  ring is commutative);
* ``MatZp(p, k)``: ``k x k`` matrices over Z_p with transpose;
* ``MatQi(k)``: ``k x k`` matrices over the Gaussian rationals with conjugate
  transpose.

Elements are immutable and hashable; payloads are always canonical so ``==``
is exact equality in the ring.
"""
from __future__ import annotations

import json
from dataclasses import dataclass
from enum import Enum
from functools import cached_property
from typing import Any

from . import linalg
from .errors import DescriptorError, RingMismatchError
from .scalars import GAUSSIAN, GaussianRational, PrimeField


class Kind(str, Enum):
    ZMOD = "ZMod"
    MATZP = "MatZp"
    MATQI = "MatQi"


class Involution(str, Enum):
    IDENTITY = "Identity"
    TRANSPOSE = "Transpose"
    CONJUGATE_TRANSPOSE = "ConjugateTranspose"


_INVOLUTION = {
    Kind.ZMOD: Involution.IDENTITY,
    Kind.MATZP: Involution.TRANSPOSE,
    Kind.MATQI: Involution.CONJUGATE_TRANSPOSE,
}


def is_prime(p: int) -> bool:
    if p < 2:
        return False
    i = 2
    while i * i <= p:
        if p % i == 0:
            return False
        i += 1
    return True


@dataclass(frozen=True)
class RingDescriptor:
    kind: Kind
    n: int | None = None
    p: int | None = None
    k: int | None = None

    def __post_init__(self):
        try:
            kind = Kind(self.kind)
        except ValueError:
            raise DescriptorError(f"unknown ring kind {self.kind!r}") from None
        object.__setattr__(self, "kind", kind)
        for name in ("n", "p", "k"):
            v = getattr(self, name)
            if v is not None and (isinstance(v, bool) or not isinstance(v, int)):
                raise DescriptorError(f"field {name!r} must be an integer, got {v!r}")
        if kind is Kind.ZMOD:
            if self.n is None or self.n < 2:
                raise DescriptorError("ZMod requires n >= 2")
            if self.p is not None or self.k is not None:
                raise DescriptorError("ZMod takes only n")
        elif kind is Kind.MATZP:
            if self.p is None or not is_prime(self.p):
                raise DescriptorError(f"MatZp requires a prime p, got {self.p!r}")
            if self.k is None or self.k < 1:
                raise DescriptorError("MatZp requires k >= 1")
            if self.n is not None:
                raise DescriptorError("MatZp takes only p and k")
        else:
            if self.k is None or self.k < 1:
                raise DescriptorError("MatQi requires k >= 1")
            if self.n is not None or self.p is not None:
                raise DescriptorError("MatQi takes only k")

    @classmethod
    def zmod(cls, n: int) -> "RingDescriptor":
        return cls(Kind.ZMOD, n=n)

    @classmethod
    def matzp(cls, p: int, k: int) -> "RingDescriptor":
        return cls(Kind.MATZP, p=p, k=k)

    @classmethod
    def matqi(cls, k: int) -> "RingDescriptor":
        return cls(Kind.MATQI, k=k)

    @classmethod
    def from_json(cls, obj: str | dict) -> "RingDescriptor":
        if isinstance(obj, str):
            try:
                obj = json.loads(obj)
            except json.JSONDecodeError as exc:
                raise DescriptorError(f"ring descriptor is not valid JSON: {exc}") from None
        if not isinstance(obj, dict) or "kind" not in obj:
            raise DescriptorError("ring descriptor must be an object with a 'kind' field")
        fields = dict(obj)
        kind = fields.pop("kind")
        involution = fields.pop("involution", None)
        unknown = set(fields) - {"n", "p", "k"}
        if unknown:
            raise DescriptorError(f"unknown descriptor field(s): {sorted(unknown)}")
        ring = cls(kind, **fields)
        if involution is not None and involution != ring.involution.value:
            raise DescriptorError(
                f"{ring.kind.value} only supports the {ring.involution.value} involution"
            )
        return ring

    def to_json(self) -> dict:
        out: dict[str, Any] = {"kind": self.kind.value}
        for name in ("n", "p", "k"):
            if getattr(self, name) is not None:
                out[name] = getattr(self, name)
        return out

    def __str__(self) -> str:
        if self.kind is Kind.ZMOD:
            return f"ZMod({self.n})"
        if self.kind is Kind.MATZP:
            return f"MatZp({self.p},{self.k})"
        return f"MatQi({self.k})"

    @property
    def involution(self) -> Involution:
        return _INVOLUTION[self.kind]

    @property
    def is_finite(self) -> bool:
        return self.kind is not Kind.MATQI

    @property
    def is_matrix(self) -> bool:
        return self.kind is not Kind.ZMOD

    @property
    def order(self) -> int | None:
        """Number of elements, or ``None`` for an infinite carrier."""
        if self.kind is Kind.ZMOD:
            return self.n
        if self.kind is Kind.MATZP:
            return self.p ** (self.k * self.k)
        return None

    @cached_property
    def field(self):
        if self.kind is Kind.MATZP:
            return PrimeField(self.p)
        if self.kind is Kind.MATQI:
            return GAUSSIAN
        return None

    def element(self, value) -> "Element":
        """Build an element from a raw value, canonicalizing it."""
        if self.kind is Kind.ZMOD:
            if isinstance(value, bool) or not isinstance(value, int):
                raise TypeError(f"ZMod element must be an int, got {value!r}")
            return Element(self, value % self.n)
        k = self.k
        rows = [list(r) for r in value]
        if len(rows) != k or any(len(r) != k for r in rows):
            raise ValueError(f"{self} element must be a {k}x{k} matrix")
        if self.kind is Kind.MATZP:
            payload = tuple(tuple(int(x) % self.p for x in r) for r in rows)
        else:
            payload = tuple(tuple(GaussianRational.coerce(x) for x in r) for r in rows)
        return Element(self, payload)

    @cached_property
    def zero(self) -> "Element":
        if self.kind is Kind.ZMOD:
            return Element(self, 0)
        return Element(self, linalg.zeros(self.k, self.k, self.field))

    @cached_property
    def one(self) -> "Element":
        if self.kind is Kind.ZMOD:
            return Element(self, 1 % self.n)
        return Element(self, linalg.identity(self.k, self.field))

    def scalar(self, c: int) -> "Element":
        """The element ``c * 1``."""
        if self.kind is Kind.ZMOD:
            return Element(self, c % self.n)
        f = self.field
        s = c % self.p if self.kind is Kind.MATZP else GaussianRational(c)
        return Element(
            self,
            tuple(tuple(s if i == j else f.zero for j in range(self.k)) for i in range(self.k)),
        )


@dataclass(frozen=True)
class Element:
    ring: RingDescriptor
    payload: Any

    def _check(self, other: "Element") -> None:
        if not isinstance(other, Element):
            raise TypeError(f"expected an Element, got {type(other).__name__}")
        if other.ring != self.ring:
            raise RingMismatchError(f"operands live in {self.ring} and {other.ring}")

    def __add__(self, other: "Element") -> "Element":
        self._check(other)
        r = self.ring
        if r.kind is Kind.ZMOD:
            return Element(r, (self.payload + other.payload) % r.n)
        f = r.field
        return Element(
            r,
            tuple(
                tuple(f.add(x, y) for x, y in zip(ra, rb))
                for ra, rb in zip(self.payload, other.payload)
            ),
        )

    def __neg__(self) -> "Element":
        r = self.ring
        if r.kind is Kind.ZMOD:
            return Element(r, (-self.payload) % r.n)
        f = r.field
        return Element(r, tuple(tuple(f.neg(x) for x in row) for row in self.payload))

    def __sub__(self, other: "Element") -> "Element":
        self._check(other)
        return self + (-other)

    def __mul__(self, other: "Element") -> "Element":
        self._check(other)
        r = self.ring
        if r.kind is Kind.ZMOD:
            return Element(r, (self.payload * other.payload) % r.n)
        return Element(r, linalg.matmul(self.payload, other.payload, r.field))

    def __pow__(self, e: int) -> "Element":
        return power(self, e)

    def star(self) -> "Element":
        r = self.ring
        if r.kind is Kind.ZMOD:
            return self
        if r.kind is Kind.MATZP:
            return Element(r, linalg.transpose(self.payload))
        return Element(r, linalg.conj_transpose(self.payload, r.field))

    @property
    def is_zero(self) -> bool:
        return self == self.ring.zero

    @property
    def is_one(self) -> bool:
        return self == self.ring.one

    def __repr__(self) -> str:
        if self.ring.kind is Kind.ZMOD:
            return f"<{self.ring} {self.payload}>"
        rows = ",".join("[" + ",".join(str(x) for x in row) + "]" for row in self.payload)
        return f"<{self.ring} [{rows}]>"


def add(a: Element, b: Element) -> Element:
    return a + b


def sub(a: Element, b: Element) -> Element:
    return a - b


def mul(a: Element, b: Element) -> Element:
    return a * b


def neg(a: Element) -> Element:
    return -a


def star(a: Element) -> Element:
    return a.star()


def power(a: Element, e: int) -> Element:
    """``a**e`` by repeated squaring; ``a**0`` is the ring's one."""
    if e < 0:
        raise ValueError("negative exponents are not defined in a ring")
    result = a.ring.one
    base = a
    while e:
        if e & 1:
            result = result * base
        e >>= 1
        if e:
            base = base * base
    return result


def product(*factors: Element) -> Element:
    out = factors[0]
    for f in factors[1:]:
        out = out * f
    return out
