"""Exact scalar fields used as matrix entries.

``GaussianRational`` is a number ``re + im*i`` with both parts held as
:class:`fractions.Fraction`, so it is always in lowest terms with a positive
denominator. ``PrimeField`` and ``GAUSSIAN`` bundle the field operations that
the exact linear algebra in :mod:`starring.linalg` needs.
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Union

Number = Union[int, Fraction, "GaussianRational"]

_RATIONAL = re.compile(r"^[+-]?\d+(?:/\d+)?$")


@dataclass(frozen=True, slots=True)
class GaussianRational:
    re: Fraction = Fraction(0)
    im: Fraction = Fraction(0)

    def __post_init__(self):
        # accept ints for convenience, store Fractions only
        object.__setattr__(self, "re", Fraction(self.re))
        object.__setattr__(self, "im", Fraction(self.im))

    @classmethod
    def coerce(cls, value: Number) -> "GaussianRational":
        if isinstance(value, GaussianRational):
            return value
        if isinstance(value, (int, Fraction)):
            return cls(Fraction(value))
        if isinstance(value, str):
            return cls.parse(value)
        raise TypeError(f"cannot convert {value!r} to a Gaussian rational")

    @classmethod
    def parse(cls, text: str) -> "GaussianRational":
        """Parse ``"a/b+c/di"``; either part may be omitted (``"3"``, ``"-i"``, ``"1/2i"``)."""
        t = text.replace(" ", "")
        if not t.endswith("i"):
            return cls(_rational(t, text))
        body = t[:-1]
        cut = max(body.rfind("+"), body.rfind("-"))
        real_txt, imag_txt = (body[:cut], body[cut:]) if cut > 0 else ("", body)
        if imag_txt in ("", "+", "-"):
            imag_txt += "1"
        real = _rational(real_txt, text) if real_txt else Fraction(0)
        imag = _rational(imag_txt, text)
        return cls(real, imag)

    def __str__(self) -> str:
        if self.im == 0:
            return str(self.re)
        sign = "-" if self.im < 0 else "+"
        return f"{self.re}{sign}{abs(self.im)}i"

    def __repr__(self) -> str:
        return f"GaussianRational({self})"

    def __bool__(self) -> bool:
        return bool(self.re) or bool(self.im)

    def __add__(self, other: Number) -> "GaussianRational":
        o = GaussianRational.coerce(other)
        return GaussianRational(self.re + o.re, self.im + o.im)

    __radd__ = __add__

    def __neg__(self) -> "GaussianRational":
        return GaussianRational(-self.re, -self.im)

    def __sub__(self, other: Number) -> "GaussianRational":
        return self + (-GaussianRational.coerce(other))

    def __rsub__(self, other: Number) -> "GaussianRational":
        return GaussianRational.coerce(other) - self

    def __mul__(self, other: Number) -> "GaussianRational":
        o = GaussianRational.coerce(other)
        return GaussianRational(
            self.re * o.re - self.im * o.im, self.re * o.im + self.im * o.re
        )

    __rmul__ = __mul__

    def conjugate(self) -> "GaussianRational":
        return GaussianRational(self.re, -self.im)

    def norm(self) -> Fraction:
        return self.re * self.re + self.im * self.im

    def inverse(self) -> "GaussianRational":
        d = self.norm()
        if d == 0:
            raise ZeroDivisionError("zero has no inverse")
        return GaussianRational(self.re / d, -self.im / d)

    def __truediv__(self, other: Number) -> "GaussianRational":
        return self * GaussianRational.coerce(other).inverse()

    def __eq__(self, other: object) -> bool:
        if isinstance(other, GaussianRational):
            return self.re == other.re and self.im == other.im
        if isinstance(other, (int, Fraction)):
            return self.im == 0 and self.re == other
        return NotImplemented

    def __hash__(self) -> int:
        return hash((self.re, self.im))


def _rational(part: str, whole: str) -> Fraction:
    if not _RATIONAL.match(part):
        raise ValueError(f"malformed Gaussian rational {whole!r}")
    try:
        return Fraction(part)
    except ZeroDivisionError:
        raise ValueError(f"zero denominator in {whole!r}") from None


class PrimeField:
    """Arithmetic in Z_p on plain ints kept in ``[0, p)``."""

    def __init__(self, p: int):
        self.p = p
        self.zero = 0
        self.one = 1

    def add(self, x: int, y: int) -> int:
        return (x + y) % self.p

    def sub(self, x: int, y: int) -> int:
        return (x - y) % self.p

    def mul(self, x: int, y: int) -> int:
        return (x * y) % self.p

    def neg(self, x: int) -> int:
        return (-x) % self.p

    def inv(self, x: int) -> int:
        if x % self.p == 0:
            raise ZeroDivisionError("zero has no inverse")
        return pow(x, -1, self.p)

    def conj(self, x: int) -> int:
        return x


class GaussianField:
    zero = GaussianRational()
    one = GaussianRational(Fraction(1))

    @staticmethod
    def add(x, y):
        return x + y

    @staticmethod
    def sub(x, y):
        return x - y

    @staticmethod
    def mul(x, y):
        return x * y

    @staticmethod
    def neg(x):
        return -x

    @staticmethod
    def inv(x):
        return x.inverse()

    @staticmethod
    def conj(x):
        return x.conjugate()


GAUSSIAN = GaussianField()
