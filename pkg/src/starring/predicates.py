"""Element predicates and ring-axiom validation."""
from __future__ import annotations

import random
from dataclasses import asdict, dataclass

import numpy as np

from .backends import (
    FiniteRing,
    LinearProblem,
    element_value,
    finite_ring,
    is_enumerable,
    random_element,
    solve,
)
from .ring import Element, RingDescriptor

DEFAULT_BUDGET = 10**6
SAMPLE_PAIRS = 1000
DEFAULT_SEED = 0


def is_idempotent(a: Element) -> bool:
    return a * a == a


def is_hermitian(a: Element) -> bool:
    return a.star() == a


def is_projection(a: Element) -> bool:
    return is_idempotent(a) and is_hermitian(a)


def is_normal(a: Element) -> bool:
    s = a.star()
    return a * s == s * a


def left_inverse(a: Element) -> Element | None:
    """Some ``y`` with ``y a = 1`` (the first one in canonical order on finite rings)."""
    return solve(LinearProblem.left(a, a.ring.one))


def right_inverse(a: Element) -> Element | None:
    """Some ``x`` with ``a x = 1``."""
    return solve(LinearProblem.right(a, a.ring.one))


def inverse(a: Element) -> Element | None:
    y = left_inverse(a)
    x = right_inverse(a)
    if y is None or x is None:
        return None
    # y = y(ax) = (ya)x = x
    return y


def is_unit(a: Element) -> bool:
    return inverse(a) is not None


@dataclass(frozen=True)
class ElementFlags:
    idempotent: bool
    projection: bool
    hermitian: bool
    normal: bool
    unit: bool
    left_invertible: bool
    right_invertible: bool


def classify(a: Element) -> ElementFlags:
    left = left_inverse(a) is not None
    right = right_inverse(a) is not None
    idem = is_idempotent(a)
    herm = is_hermitian(a)
    return ElementFlags(
        idempotent=idem,
        projection=idem and herm,
        hermitian=herm,
        normal=is_normal(a),
        unit=left and right,
        left_invertible=left,
        right_invertible=right,
    )


@dataclass(frozen=True)
class ValidationReport:
    ring: RingDescriptor
    passed: bool
    pairs_checked: int
    exhaustive: bool
    seed: int | None
    violation: dict | None = None

    def to_json(self) -> dict:
        out = asdict(self)
        out["ring"] = self.ring.to_json()
        return out


_PAIR_LAWS = (
    "star(a+b) = star(a)+star(b)",
    "star(ab) = star(b)star(a)",
    "a+b = b+a",
)


def _check_pair(a: Element, b: Element, c: Element) -> str | None:
    one, zero = a.ring.one, a.ring.zero
    if a.star().star() != a:
        return "star(star(a)) = a"
    if a * one != a or one * a != a:
        return "a*1 = 1*a = a"
    if a + zero != a or a + (-a) != zero:
        return "a+0 = a, a+(-a) = 0"
    if (a + b).star() != a.star() + b.star():
        return _PAIR_LAWS[0]
    if (a * b).star() != b.star() * a.star():
        return _PAIR_LAWS[1]
    if a + b != b + a:
        return _PAIR_LAWS[2]
    if (a * b) * c != a * (b * c):
        return "(ab)c = a(bc)"
    if a * (b + c) != a * b + a * c or (a + b) * c != a * c + b * c:
        return "distributivity"
    return None


def _exhaustive(fr: FiniteRing) -> tuple[int, int, str] | None:
    """First violating ``(a, b, law)`` over all pairs; the third operand of the
    associativity and distributivity laws runs over a fixed sample of elements."""
    data = fr.data
    idx = np.arange(fr.size)
    star = fr.star
    rng = np.random.default_rng(DEFAULT_SEED)
    sample = [fr.zero_index, fr.one_index, fr.size - 1]
    sample += [int(i) for i in rng.choice(fr.size, size=min(5, fr.size), replace=False)]
    for ia in range(fr.size):
        a = data[ia]
        checks = []
        if fr.encode(star(star(a))) != ia:
            return ia, 0, "star(star(a)) = a"
        if fr.encode(fr.mul(a, fr.one_array)) != ia or fr.encode(fr.mul(fr.one_array, a)) != ia:
            return ia, 0, "a*1 = 1*a = a"
        checks.append((fr.encode(star(fr.add(a, data))) == fr.encode(fr.add(star(a), star(data))),
                       _PAIR_LAWS[0]))
        checks.append((fr.encode(star(fr.mul(a, data))) == fr.encode(fr.mul(star(data), star(a))),
                       _PAIR_LAWS[1]))
        checks.append((fr.encode(fr.add(a, data)) == fr.encode(fr.add(data, a)), _PAIR_LAWS[2]))
        for ic in sample:
            c = data[ic]
            ab = fr.mul(a, data)
            checks.append((fr.encode(fr.mul(ab, c)) == fr.encode(fr.mul(a, fr.mul(data, c))),
                           "(ab)c = a(bc)"))
            left = fr.encode(fr.mul(a, fr.add(data, c))) == fr.encode(fr.add(ab, fr.mul(a, c)))
            right = fr.encode(fr.mul(fr.add(a, data), c)) == fr.encode(
                fr.add(fr.mul(a, c), fr.mul(data, c)))
            checks.append((left & right, "distributivity"))
        for ok, law in checks:
            bad = idx[~ok]
            if bad.size:
                return ia, int(bad[0]), law
    return None


def validate_ring(r: RingDescriptor, budget: int = DEFAULT_BUDGET,
                  seed: int = DEFAULT_SEED) -> ValidationReport:
    """Check the ring and involution axioms on ``r``.

    Exhaustive over all pairs when the ring is enumerable and ``|R|^2 <= budget``;
    otherwise ``min(budget, 1000)`` seeded random pairs are tested.
    """
    if budget < 1:
        raise ValueError("budget must be positive")
    if is_enumerable(r) and r.order ** 2 <= budget:
        fr = finite_ring(r)
        bad = _exhaustive(fr)
        violation = None
        if bad is not None:
            ia, ib, law = bad
            violation = {"law": law, "a": element_value(fr.element(ia)),
                         "b": element_value(fr.element(ib))}
        return ValidationReport(r, bad is None, r.order ** 2, True, None, violation)

    rng = random.Random(seed)
    pairs = min(budget, SAMPLE_PAIRS)
    for _ in range(pairs):
        a, b, c = (random_element(r, rng) for _ in range(3))
        law = _check_pair(a, b, c)
        if law is not None:
            violation = {"law": law, "a": element_value(a), "b": element_value(b)}
            return ValidationReport(r, False, pairs, False, seed, violation)
    return ValidationReport(r, True, pairs, False, seed)
