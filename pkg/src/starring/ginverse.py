"""Inner, {1,3}, {1,4}, group and Moore-Penrose inverses in a *-ring.

Constructive routes go through one-sided linear equations:

* ``x`` is a {1,3}-inverse of ``a`` exactly when ``x* a* a = a``;
* ``y`` is a {1,4}-inverse of ``a`` exactly when ``a a* y* = a``;
* with both in hand, ``a^+ = y a x``.

On finite rings every answer can also be checked against a brute-force scan of
the four Penrose equations (``oracle=True``). Every inverse returned here is
re-verified against its defining equations first; a failure raises
:class:`~starring.errors.VerificationFailure` instead of returning a wrong value.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum

import numpy as np

from . import linalg
from .backends import LinearProblem, finite_ring, is_enumerable, solve
from .errors import PreconditionError, UnsupportedError, VerificationFailure
from .ring import Element, Kind


class InverseKind(str, Enum):
    INNER = "Inner"
    ONE_THREE = "OneThree"
    ONE_FOUR = "OneFour"
    GROUP = "Group"
    MOORE_PENROSE = "MoorePenrose"


@dataclass(frozen=True)
class PenroseCheck:
    eq1: bool  # aba = a
    eq2: bool  # bab = b
    eq3: bool  # (ab)* = ab
    eq4: bool  # (ba)* = ba

    @property
    def all(self) -> bool:
        return self.eq1 and self.eq2 and self.eq3 and self.eq4

    def __bool__(self) -> bool:
        return self.all


def penrose_check(a: Element, b: Element) -> PenroseCheck:
    ab = a * b
    ba = b * a
    return PenroseCheck(ab * a == a, ba * b == b, ab.star() == ab, ba.star() == ba)


def is_inner_inverse(a: Element, b: Element) -> bool:
    return a * b * a == a


def is_13_inverse(a: Element, x: Element) -> bool:
    ax = a * x
    return ax * a == a and ax.star() == ax


def is_14_inverse(a: Element, y: Element) -> bool:
    ya = y * a
    return a * ya == a and ya.star() == ya


def is_group_inverse(a: Element, b: Element) -> bool:
    ab = a * b
    return ab == b * a and ab * a == a and b * ab == b


@dataclass(frozen=True)
class InverseResult:
    kind: InverseKind
    value: Element | None
    certificate: tuple[tuple[str, Element], ...] = field(default=())

    @property
    def exists(self) -> bool:
        return self.value is not None

    def __post_init__(self):
        if self.value is None:
            return
        check = {
            InverseKind.INNER: is_inner_inverse,
            InverseKind.ONE_THREE: is_13_inverse,
            InverseKind.ONE_FOUR: is_14_inverse,
            InverseKind.GROUP: is_group_inverse,
            InverseKind.MOORE_PENROSE: lambda a, b: penrose_check(a, b).all,
        }[self.kind]
        target = dict(self.certificate).get("a")
        if target is not None and not check(target, self.value):
            raise VerificationFailure(f"{self.kind.value} inverse failed its equations")


# exhaustive oracles (finite rings only)


def _require_finite(a: Element, what: str):
    if not is_enumerable(a.ring):
        raise UnsupportedError(f"{what} needs an enumerable ring, got {a.ring}")
    return finite_ring(a.ring)


def penrose_solutions(a: Element) -> list[Element]:
    """Every ``b`` satisfying all four Penrose equations, by full scan."""
    fr = _require_finite(a, "penrose_solutions")
    A = fr.array(a)
    B = fr.data
    AB = fr.mul(A, B)
    BA = fr.mul(B, A)
    ok = fr.encode(fr.mul(AB, A)) == fr.index(a)
    ok &= fr.encode(fr.mul(BA, B)) == np.arange(fr.size)
    ok &= fr.encode(fr.star(AB)) == fr.encode(AB)
    ok &= fr.encode(fr.star(BA)) == fr.encode(BA)
    return fr.elements(np.flatnonzero(ok))


def penrose_search(a: Element) -> Element | None:
    sols = penrose_solutions(a)
    return sols[0] if sols else None


def inner_inverses(a: Element) -> list[Element]:
    """All of ``a{1}`` in canonical order (finite rings)."""
    fr = _require_finite(a, "inner_inverses")
    A = fr.array(a)
    ok = fr.encode(fr.mul(fr.mul(A, fr.data), A)) == fr.index(a)
    return fr.elements(np.flatnonzero(ok))


def group_solutions(a: Element) -> list[Element]:
    fr = _require_finite(a, "group_solutions")
    A = fr.array(a)
    B = fr.data
    AB = fr.encode(fr.mul(A, B))
    ok = AB == fr.encode(fr.mul(B, A))
    ok &= fr.encode(fr.mul(fr.mul(A, B), A)) == fr.index(a)
    ok &= fr.encode(fr.mul(fr.mul(B, A), B)) == np.arange(fr.size)
    return fr.elements(np.flatnonzero(ok))


# constructive routes


def inner_inverse(a: Element) -> Element | None:
    """Some inner inverse of ``a``: first in canonical order on finite rings."""
    r = a.ring
    if is_enumerable(r):
        sols = inner_inverses(a)
        return sols[0] if sols else None
    if r.kind is Kind.ZMOD:
        # a b a = a in Z_n: solve a^2 b = a
        return solve(LinearProblem.right(a * a, a))
    g = Element(r, linalg.inner_inverse(a.payload, r.field))
    if not is_inner_inverse(a, g):
        raise VerificationFailure("inner inverse failed aga = a")
    return g


def is_regular(a: Element) -> bool:
    return inner_inverse(a) is not None


def find_13(a: Element) -> Element | None:
    """A {1,3}-inverse ``x``: solve ``w (a* a) = a`` and return ``x = w*``."""
    w = solve(LinearProblem.left(a.star() * a, a))
    if w is None:
        return None
    x = w.star()
    if not is_13_inverse(a, x):
        raise VerificationFailure("x* a* a = a did not give a {1,3}-inverse")
    return x


def find_14(a: Element) -> Element | None:
    """A {1,4}-inverse ``y``: solve ``(a a*) z = a`` and return ``y = z*``."""
    z = solve(LinearProblem.right(a * a.star(), a))
    if z is None:
        return None
    y = z.star()
    if not is_14_inverse(a, y):
        raise VerificationFailure("a a* y* = a did not give a {1,4}-inverse")
    return y


def mp_from_13_14(a: Element, x: Element, y: Element) -> Element:
    """``y a x`` for a {1,3}-inverse ``x`` and a {1,4}-inverse ``y``."""
    if not is_13_inverse(a, x):
        raise PreconditionError("x is not a {1,3}-inverse of a")
    if not is_14_inverse(a, y):
        raise PreconditionError("y is not a {1,4}-inverse of a")
    b = y * a * x
    if not penrose_check(a, b).all:
        raise VerificationFailure("y a x failed the Penrose equations")
    return b


def moore_penrose(a: Element, oracle: bool = False) -> InverseResult:
    """Moore-Penrose inverse via {1,3} and {1,4} witnesses.

    With ``oracle=True`` on a finite ring the answer (including a "does not
    exist" verdict) is confirmed by the exhaustive Penrose scan.
    """
    x = find_13(a)
    y = find_14(a) if x is not None else None
    cert: list[tuple[str, Element]] = [("a", a)]
    if x is not None:
        cert.append(("{1,3}: x* a* a = a", x))
    if y is not None:
        cert.append(("{1,4}: a a* y* = a", y))
    value = mp_from_13_14(a, x, y) if x is not None and y is not None else None
    if value is not None:
        cert.append(("a^+ = y a x", value))
    if oracle and a.ring.is_finite:
        sols = penrose_solutions(a)
        if len(sols) > 1:
            raise VerificationFailure(f"{len(sols)} Moore-Penrose inverses found for {a}")
        truth = sols[0] if sols else None
        if truth != value:
            raise VerificationFailure(f"witness route and Penrose scan disagree on {a}")
        if truth is None:
            cert.append(("oracle: no b satisfies the Penrose equations", a))
        else:
            cert.append(("oracle: unique Penrose solution", truth))
    return InverseResult(InverseKind.MOORE_PENROSE, value, tuple(cert))


def mp(a: Element) -> Element | None:
    """Shorthand for ``moore_penrose(a).value``."""
    return moore_penrose(a).value


def one_three_inverse(a: Element) -> InverseResult:
    x = find_13(a)
    return InverseResult(InverseKind.ONE_THREE, x, (("a", a),) if x is None else
                         (("a", a), ("x* a* a = a", x)))


def one_four_inverse(a: Element) -> InverseResult:
    y = find_14(a)
    return InverseResult(InverseKind.ONE_FOUR, y, (("a", a),) if y is None else
                         (("a", a), ("a a* y* = a", y)))


def inner_result(a: Element) -> InverseResult:
    g = inner_inverse(a)
    return InverseResult(InverseKind.INNER, g, (("a", a),) if g is None else
                         (("a", a), ("a g a = a", g)))


def group_inverse(a: Element) -> InverseResult:
    """Group inverse: exhaustive on finite rings, else via ``a = a^2 x = y a^2``.

    For matrices the index-1 test ``rank(a) == rank(a^2)`` runs first; with
    ``a = a^2 x`` and ``a = y a^2`` the group inverse is ``y a x``.
    """
    r = a.ring
    cert: list[tuple[str, Element]] = [("a", a)]
    if is_enumerable(r):
        sols = group_solutions(a)
        if len(sols) > 1:
            raise VerificationFailure(f"{len(sols)} group inverses found for {a}")
        value = sols[0] if sols else None
        if value is not None:
            cert.append(("exhaustive scan: aba=a, bab=b, ab=ba", value))
        return InverseResult(InverseKind.GROUP, value, tuple(cert))
    a2 = a * a
    if r.is_matrix and linalg.rank(a.payload, r.field) != linalg.rank(a2.payload, r.field):
        return InverseResult(InverseKind.GROUP, None, tuple(cert))
    x = solve(LinearProblem.right(a2, a))
    y = solve(LinearProblem.left(a2, a))
    if x is None or y is None:
        return InverseResult(InverseKind.GROUP, None, tuple(cert))
    value = y * a * x
    cert += [("a = a^2 x", x), ("a = y a^2", y), ("a# = y a x", value)]
    return InverseResult(InverseKind.GROUP, value, tuple(cert))


def is_EP(a: Element) -> bool:
    d = moore_penrose(a).value
    if d is None:
        return False
    g = group_inverse(a).value
    return g is not None and g == d


def is_star_cancellable(a: Element) -> bool:
    """``a* a x = 0 => a x = 0`` and ``y a a* = 0 => y a = 0`` for all ``x, y``.

    Finite rings: full quantifier scan. Matrix rings otherwise: the rank
    criterion ``rank(a* a) = rank(a) = rank(a a*)``.
    """
    r = a.ring
    if is_enumerable(r):
        fr = finite_ring(r)
        A = fr.array(a)
        As = fr.star(A)
        X = fr.data
        zero = fr.zero_index
        kills = fr.encode(fr.mul(fr.mul(As, A), X)) == zero
        if np.any(kills & (fr.encode(fr.mul(A, X)) != zero)):
            return False
        kills = fr.encode(fr.mul(X, fr.mul(A, As))) == zero
        return not np.any(kills & (fr.encode(fr.mul(X, A)) != zero))
    if r.is_matrix:
        f = r.field
        ra = linalg.rank(a.payload, f)
        return (linalg.rank((a.star() * a).payload, f) == ra
                and linalg.rank((a * a.star()).payload, f) == ra)
    raise UnsupportedError(f"*-cancellability is not decidable on {r} without enumeration")


def find_left_star_regular(a: Element) -> Element | None:
    """``x`` with ``a = a a* a x``."""
    return solve(LinearProblem.right(a * a.star() * a, a))


def find_right_star_regular(a: Element) -> Element | None:
    """``y`` with ``a = y a a* a``."""
    return solve(LinearProblem.left(a * a.star() * a, a))


def mp_from_left_star_regular(a: Element, x: Element) -> Element:
    """``(ax)* a x a*`` for a witness ``a = a a* a x``."""
    if a * a.star() * a * x != a:
        raise PreconditionError("x does not satisfy a = a a* a x")
    ax = a * x
    b = ax.star() * ax * a.star()
    if not penrose_check(a, b).all:
        raise VerificationFailure("(ax)* a x a* failed the Penrose equations")
    return b


def mp_from_right_star_regular(a: Element, y: Element) -> Element:
    """``a* y a (ya)*`` for a witness ``a = y a a* a``."""
    if y * a * a.star() * a != a:
        raise PreconditionError("y does not satisfy a = y a a* a")
    ya = y * a
    b = a.star() * ya * ya.star()
    if not penrose_check(a, b).all:
        raise VerificationFailure("a* y a (ya)* failed the Penrose equations")
    return b
