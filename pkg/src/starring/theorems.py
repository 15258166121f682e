"""Decision procedures for the Moore-Penrose existence criteria and their formulas.

Every ``*_condition`` function returns a :class:`Decision` ``(holds, witness)``.
Witnesses carry the solution elements named as in the criteria (``x1``,
``y1``, ``p``, ``q`` ...) plus the exponents used, and every stored element has
been checked against its defining equation before it is returned.

Abbreviations used throughout: ``P = (a a*)^n`` and ``Q = (a* a)^n``.

Existential criteria (the projection / Hermitian / idempotent searches) need an
enumerable ring and raise :class:`~starring.errors.UnsupportedError` on MatQi.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import NamedTuple

import numpy as np

from .backends import FiniteRing, LinearProblem, finite_ring, is_enumerable, solve
from .errors import PreconditionError, UnsupportedError, VerificationFailure
from .ginverse import (
    group_inverse,
    inner_inverse,
    is_star_cancellable,
    moore_penrose,
    mp_from_13_14,
    penrose_check,
)
from .predicates import is_unit, left_inverse, right_inverse
from .ring import Element, RingDescriptor, power


@dataclass(frozen=True, eq=False)
class Witness:
    condition_id: str
    elements: dict[str, Element] = field(default_factory=dict)
    exponents: dict[str, int] = field(default_factory=dict)

    def __getitem__(self, name: str) -> Element:
        return self.elements[name]


class Decision(NamedTuple):
    holds: bool
    witness: Witness | None = None


_NO = Decision(False, None)


def _aa(a: Element, n: int) -> Element:
    return power(a * a.star(), n)


def _a_a(a: Element, n: int) -> Element:
    return power(a.star() * a, n)


def _check_exponent(*values: int) -> None:
    for v in values:
        if v < 1:
            raise ValueError("exponents must be positive integers")


def _finite(a: Element, what: str) -> FiniteRing:
    if not is_enumerable(a.ring):
        raise UnsupportedError(f"{what} is an existential scan and needs an enumerable ring, "
                               f"got {a.ring}")
    return finite_ring(a.ring)


def _first(mask: np.ndarray) -> int | None:
    hits = np.flatnonzero(mask)
    return int(hits[0]) if hits.size else None


# thirteen equivalent conditions (criterion id T3.1)


def t31_condition(a: Element, k: int, n: int = 1, m: int = 1, oracle: bool = False) -> Decision:
    """Decide condition ``k`` (1..13) of the thirteen-way characterization."""
    _check_exponent(n, m)
    cid = f"T3.1({k})"
    exps = {"n": n, "m": m}

    def ok(**elements: Element) -> Decision:
        return Decision(True, Witness(cid, elements, exps))

    if k == 1:
        d = moore_penrose(a, oracle=oracle).value
        return ok(a_dagger=d) if d is not None else _NO
    if k == 2:
        x1 = solve(LinearProblem.left(_a_a(a, m), a))
        y1 = solve(LinearProblem.right(_aa(a, n), a)) if x1 is not None else None
        return ok(x1=x1, y1=y1) if y1 is not None else _NO
    if k == 3:
        x2 = solve(LinearProblem.right(a * _a_a(a, n), a))
        return ok(x2=x2) if x2 is not None else _NO
    if k == 4:
        y2 = solve(LinearProblem.left(_aa(a, n) * a, a))
        return ok(y2=y2) if y2 is not None else _NO
    if k == 5:
        P = _aa(a, n)
        d = moore_penrose(P, oracle=oracle).value
        return ok(power_dagger=d) if d is not None and P * d * a == a else _NO
    if k == 6:
        Q = _a_a(a, n)
        d = moore_penrose(Q, oracle=oracle).value
        return ok(power_dagger=d) if d is not None and a * d * Q == a else _NO
    if not 7 <= k <= 13:
        raise ValueError(f"condition index must be 1..13, got {k}")
    if not is_star_cancellable(a):
        return _NO
    if k == 7:
        g = inner_inverse(_aa(a, m))
        h = inner_inverse(_a_a(a, n)) if g is not None else None
        return ok(g=g, h=h) if h is not None else _NO
    if k in (8, 9):
        # (a*a)^n a* and a*(aa*)^n are the same element
        T = _a_a(a, n) * a.star() if k == 8 else a.star() * _aa(a, n)
        t = inner_inverse(T)
        return ok(t=t) if t is not None else _NO
    if k in (10, 11):
        base = _aa(a, n) if k == 10 else _a_a(a, n)
        g = group_inverse(base).value
        return ok(power_group=g) if g is not None else _NO
    base = _aa(a, n) if k == 12 else _a_a(a, n)
    d = moore_penrose(base, oracle=oracle).value
    return ok(power_dagger=d) if d is not None else _NO


def _formula_2(a: Element, x1: Element, y1: Element, n: int, m: int) -> Element:
    return y1.star() * power(a * a.star(), m + n - 2) * a * x1.star()


def _formula_3(a: Element, x2: Element, n: int) -> Element:
    return x2.star() * _a_a(a, 2 * n - 1) * x2 * a.star()


def _formula_4(a: Element, y2: Element, n: int) -> Element:
    return a.star() * y2 * _aa(a, 2 * n - 1) * y2.star()


def _verified(a: Element, b: Element, route: str) -> Element:
    if not penrose_check(a, b).all:
        raise VerificationFailure(f"{route} produced an element failing the Penrose equations")
    return b


def _need(ok: bool, what: str) -> None:
    if not ok:
        raise VerificationFailure(what)


def t31_formula(a: Element, w: Witness) -> Element:
    """Moore-Penrose inverse built from a witness of one of the thirteen conditions.

    Conditions 2, 3 and 4 have closed formulas. The other conditions are first
    turned into a witness for 3 or 4 (or into a {1,3}/{1,4} pair for 7-9):
    5, 12 and 10 give ``y2`` as the Moore-Penrose (group) inverse of ``P``;
    6, 13 and 11 give ``x2`` from ``Q`` the same way.
    """
    if not w.condition_id.startswith("T3.1("):
        raise PreconditionError(f"witness {w.condition_id} is not for this criterion")
    k = int(w.condition_id[5:-1])
    n = w.exponents.get("n", 1)
    m = w.exponents.get("m", 1)
    e = w.elements
    if k == 1:
        return _verified(a, e["a_dagger"], "T3.1(1)")
    if k == 2:
        _need(e["x1"] * _a_a(a, m) == a and _aa(a, n) * e["y1"] == a, "bad T3.1(2) witness")
        return _verified(a, _formula_2(a, e["x1"], e["y1"], n, m), "T3.1(2) formula")
    if k == 3:
        _need(a * _a_a(a, n) * e["x2"] == a, "bad T3.1(3) witness")
        return _verified(a, _formula_3(a, e["x2"], n), "T3.1(3) formula")
    if k == 4:
        _need(e["y2"] * _aa(a, n) * a == a, "bad T3.1(4) witness")
        return _verified(a, _formula_4(a, e["y2"], n), "T3.1(4) formula")
    if k in (5, 10, 12):
        y2 = e["power_dagger"] if k != 10 else e["power_group"]
        return t31_formula(a, Witness("T3.1(4)", {"y2": y2}, {"n": n}))
    if k in (6, 11, 13):
        x2 = e["power_dagger"] if k != 11 else e["power_group"]
        return t31_formula(a, Witness("T3.1(3)", {"x2": x2}, {"n": n}))
    if k in (8, 9):
        t = e["t"]
        g, h = t * a.star(), a.star() * t
        return _from_inner_pair(a, g, h, n, n)
    if k == 7:
        return _from_inner_pair(a, e["g"], e["h"], n, m)
    raise PreconditionError(f"unknown condition {w.condition_id}")


def _from_inner_pair(a: Element, g: Element, h: Element, n: int, m: int) -> Element:
    """``g`` inner for ``(aa*)^m``, ``h`` inner for ``(a*a)^n``: build {1,4} and {1,3} inverses."""
    P, Q = _aa(a, m), _a_a(a, n)
    _need(P * g * P == P and Q * h * Q == Q, "inner-inverse witnesses do not hold")
    y = (power(a * a.star(), m - 1) * g * a).star()
    x = (a * h * power(a.star() * a, n - 1)).star()
    return _verified(a, mp_from_13_14(a, x, y), "inner-inverse route")


# fixed points that are multiples of a power (T3.2 / T3.3)


def _ideal_masks(fr: FiniteRing, c: Element) -> tuple[np.ndarray, np.ndarray]:
    """Membership masks for ``Rc`` and ``cR``."""
    rc = np.zeros(fr.size, dtype=bool)
    rc[fr.left_ideal(c)] = True
    cr = np.zeros(fr.size, dtype=bool)
    cr[fr.right_ideal(c)] = True
    return rc, cr


def t32_condition(a: Element, k: int, n: int = 1) -> Decision:
    """``pa = a`` with ``p`` a projection / Hermitian / arbitrary multiple of ``P``."""
    _check_exponent(n)
    if k == 1:
        return t31_condition(a, 1)
    fr = _finite(a, "T3.2")
    P = _aa(a, n)
    fixes = fr.left_products(a) == fr.index(a)
    in_RP, in_PR = _ideal_masks(fr, P)
    masks = {
        2: ("p", fr.projection_mask & fixes & in_RP & in_PR),
        3: ("q", fr.hermitian_mask & fixes & in_RP),
        4: ("r", fr.hermitian_mask & fixes & in_PR),
        5: ("b", fixes & in_RP),
    }
    if k not in masks:
        raise ValueError(f"condition index must be 1..5, got {k}")
    name, mask = masks[k]
    i = _first(mask)
    if i is None:
        return _NO
    x = fr.element(i)
    elements = {name: x}
    if k in (2, 3, 5):
        elements["left_factor"] = solve(LinearProblem.left(P, x))
    if k in (2, 4):
        elements["right_factor"] = solve(LinearProblem.right(P, x))
    return Decision(True, Witness(f"T3.2({k})", elements, {"n": n}))


def t33_condition(a: Element, k: int, n: int = 1) -> Decision:
    """``aw = a`` with ``w`` a projection / Hermitian / arbitrary multiple of ``Q``."""
    _check_exponent(n)
    if k == 1:
        return t31_condition(a, 1)
    fr = _finite(a, "T3.3")
    Q = _a_a(a, n)
    fixes = fr.right_products(a) == fr.index(a)
    in_RQ, in_QR = _ideal_masks(fr, Q)
    masks = {
        2: ("w", fr.projection_mask & fixes & in_RQ & in_QR),
        3: ("u", fr.hermitian_mask & fixes & in_QR),
        4: ("v", fr.hermitian_mask & fixes & in_RQ),
        5: ("c", fixes & in_QR),
    }
    if k not in masks:
        raise ValueError(f"condition index must be 1..5, got {k}")
    name, mask = masks[k]
    i = _first(mask)
    if i is None:
        return _NO
    x = fr.element(i)
    elements = {name: x}
    if k in (2, 4):
        elements["left_factor"] = solve(LinearProblem.left(Q, x))
    if k in (2, 3, 5):
        elements["right_factor"] = solve(LinearProblem.right(Q, x))
    return Decision(True, Witness(f"T3.3({k})", elements, {"n": n}))


# perturbed powers that are (one-sided) invertible (T3.4 / T3.5)

_KIND_BY_K = {2: "projection", 3: "projection", 4: "idempotent", 5: "idempotent",
              6: "any", 7: "any"}


def _kind_mask(fr: FiniteRing, kind: str) -> np.ndarray:
    if kind == "projection":
        return fr.projection_mask
    if kind == "idempotent":
        return fr.idempotent_mask
    return np.ones(fr.size, dtype=bool)


def t34_condition(a: Element, k: int, n: int = 1) -> Decision:
    """Some ``c`` (projection / idempotent / arbitrary) with ``c a = 0`` and
    ``P + c`` invertible (even ``k``) or left invertible (odd ``k``)."""
    _check_exponent(n)
    if k == 1:
        return t31_condition(a, 1)
    if k not in _KIND_BY_K:
        raise ValueError(f"condition index must be 1..7, got {k}")
    fr = _finite(a, "T3.4")
    P = _aa(a, n)
    kills = fr.left_products(a) == fr.zero_index
    shifted = fr.encode(fr.add(fr.array(P), fr.data))
    two_sided = k % 2 == 0
    inv_ok = fr.unit_mask[shifted] if two_sided else fr.left_inverse_table[shifted] >= 0
    i = _first(_kind_mask(fr, _KIND_BY_K[k]) & kills & inv_ok)
    if i is None:
        return _NO
    c = fr.element(i)
    y = fr.element(fr.left_inverse_table[shifted[i]])
    name = {"projection": "q", "idempotent": "f", "any": "c"}[_KIND_BY_K[k]]
    return Decision(True, Witness(f"T3.4({k})", {name: c, "y": y}, {"n": n}))


def t35_condition(a: Element, k: int, n: int = 1) -> Decision:
    """Some ``b`` (projection / idempotent / arbitrary) with ``a b = 0`` and
    ``Q + b`` invertible (even ``k``) or right invertible (odd ``k``)."""
    _check_exponent(n)
    if k == 1:
        return t31_condition(a, 1)
    if k not in _KIND_BY_K:
        raise ValueError(f"condition index must be 1..7, got {k}")
    fr = _finite(a, "T3.5")
    Q = _a_a(a, n)
    kills = fr.right_products(a) == fr.zero_index
    shifted = fr.encode(fr.add(fr.array(Q), fr.data))
    two_sided = k % 2 == 0
    inv_ok = fr.unit_mask[shifted] if two_sided else fr.right_inverse_table[shifted] >= 0
    i = _first(_kind_mask(fr, _KIND_BY_K[k]) & kills & inv_ok)
    if i is None:
        return _NO
    b = fr.element(i)
    x = fr.element(fr.right_inverse_table[shifted[i]])
    name = {"projection": "p", "idempotent": "e", "any": "b"}[_KIND_BY_K[k]]
    return Decision(True, Witness(f"T3.5({k})", {name: b, "x": x}, {"n": n}))


def t34_formula(a: Element, w: Witness) -> Element:
    """``a* y (aa*)^(2n-1) y*`` from a left inverse ``y`` of ``P + c`` with ``c a = 0``."""
    n = w.exponents.get("n", 1)
    y = w["y"]
    # y (P + c) = 1 and c a = 0 give a = y P a
    _need(y * _aa(a, n) * a == a, "left inverse witness does not give a = y (aa*)^n a")
    return _verified(a, _formula_4(a, y, n), "T3.4 formula")


def t35_formula(a: Element, w: Witness) -> Element:
    """``x* (a*a)^(2n-1) x a*`` from a right inverse ``x`` of ``Q + b`` with ``a b = 0``."""
    n = w.exponents.get("n", 1)
    x = w["x"]
    _need(a * _a_a(a, n) * x == a, "right inverse witness does not give a = a (a*a)^n x")
    return _verified(a, _formula_3(a, x, n), "T3.5 formula")


# well-supported / co-supported


def is_well_supported(a: Element) -> Decision:
    """Projection ``p`` with ``a p = a`` and ``a* a + 1 - p`` invertible."""
    fr = _finite(a, "well-supportedness")
    fixes = fr.right_products(a) == fr.index(a)
    base = fr.array(a.star() * a + a.ring.one)
    shifted = fr.encode(fr.sub(base, fr.data))
    i = _first(fr.projection_mask & fixes & fr.unit_mask[shifted])
    if i is None:
        return _NO
    u = fr.element(fr.left_inverse_table[shifted[i]])
    return Decision(True, Witness("C3.6(2)", {"p": fr.element(i), "u": u}))


def is_co_supported(a: Element) -> Decision:
    """Projection ``q`` with ``q a = a`` and ``a a* + 1 - q`` invertible."""
    fr = _finite(a, "co-supportedness")
    fixes = fr.left_products(a) == fr.index(a)
    base = fr.array(a * a.star() + a.ring.one)
    shifted = fr.encode(fr.sub(base, fr.data))
    i = _first(fr.projection_mask & fixes & fr.unit_mask[shifted])
    if i is None:
        return _NO
    u = fr.element(fr.left_inverse_table[shifted[i]])
    return Decision(True, Witness("C3.6(3)", {"q": fr.element(i), "u": u}))


# Jacobson transfer; invertibility of the v / u elements (T3.8)


def jacobson_transfer(a: Element, b: Element, u: Element, side: str = "both") -> Element:
    """Given an inverse ``u`` of ``1 - ab``, return ``1 + b u a``, an inverse of ``1 - ba``.

    ``side="left"`` (resp. ``"right"``) only needs and only delivers a left
    (resp. right) inverse.
    """
    one = a.ring.one
    s = one - a * b
    t = one - b * a
    if side not in ("both", "left", "right"):
        raise ValueError(f"side must be 'both', 'left' or 'right', got {side!r}")
    if side in ("both", "left") and u * s != one:
        raise PreconditionError("u is not a left inverse of 1 - ab")
    if side in ("both", "right") and s * u != one:
        raise PreconditionError("u is not a right inverse of 1 - ab")
    v = one + b * u * a
    if side in ("both", "left"):
        _need(v * t == one, "transfer is not a left inverse of 1 - ba")
    if side in ("both", "right"):
        _need(t * v == one, "transfer is not a right inverse of 1 - ba")
    return v


T38_VARIANTS = ("v_invertible", "v_right_invertible", "u_invertible", "u_left_invertible")


def t38_condition(a: Element, a_inner: Element, n: int = 1,
                  variant: str = "v_invertible") -> bool:
    """Invertibility of ``v = (a*a)^n + 1 - a^- a`` or ``u = (aa*)^n + 1 - a a^-``."""
    _check_exponent(n)
    if a * a_inner * a != a:
        raise PreconditionError("a_inner is not an inner inverse of a")
    one = a.ring.one
    if variant.startswith("v_"):
        z = _a_a(a, n) + one - a_inner * a
    elif variant.startswith("u_"):
        z = _aa(a, n) + one - a * a_inner
    else:
        raise ValueError(f"unknown variant {variant!r}")
    if variant in ("v_invertible", "u_invertible"):
        return is_unit(z)
    if variant == "v_right_invertible":
        return right_inverse(z) is not None
    if variant == "u_left_invertible":
        return left_inverse(z) is not None
    raise ValueError(f"unknown variant {variant!r}")


# annihilators, images and decompositions of R (T3.9 / C3.10)


@dataclass(frozen=True)
class Subset:
    ring: RingDescriptor
    members: tuple[Element, ...]

    def __len__(self) -> int:
        return len(self.members)

    def __iter__(self):
        return iter(self.members)

    def __contains__(self, x: Element) -> bool:
        return x in self.members

    @classmethod
    def _from_indices(cls, fr: FiniteRing, idx) -> "Subset":
        return cls(fr.ring, tuple(fr.elements(np.unique(idx))))


def _annihilator_idx(fr: FiniteRing, a: Element, side: str) -> np.ndarray:
    if side == "right":
        return np.flatnonzero(fr.right_products(a) == fr.zero_index)
    if side == "left":
        return np.flatnonzero(fr.left_products(a) == fr.zero_index)
    raise ValueError(f"side must be 'left' or 'right', got {side!r}")


def _image_idx(fr: FiniteRing, c: Element, side: str) -> np.ndarray:
    if side == "right":
        return fr.right_ideal(c)
    if side == "left":
        return fr.left_ideal(c)
    raise ValueError(f"side must be 'left' or 'right', got {side!r}")


def annihilator(a: Element, side: str = "right") -> Subset:
    """``side="right"``: ``{x : a x = 0}``; ``side="left"``: ``{x : x a = 0}``."""
    fr = _finite(a, "annihilator")
    return Subset._from_indices(fr, _annihilator_idx(fr, a, side))


def image(c: Element, side: str = "right") -> Subset:
    """``side="right"``: ``cR``; ``side="left"``: ``Rc``."""
    fr = _finite(c, "image")
    return Subset._from_indices(fr, _image_idx(fr, c, side))


# variant -> (annihilated element, annihilator side, generator, image side, direct sum?)
T39_VARIANTS = {
    2: ("a", "right", "a*a", "right", True),
    3: ("a", "right", "a*a", "right", False),
    4: ("a*", "right", "aa*", "right", True),
    5: ("a*", "right", "aa*", "right", False),
    6: ("a", "left", "aa*", "left", True),
    7: ("a", "left", "aa*", "left", False),
    8: ("a*", "left", "a*a", "left", True),
    9: ("a*", "left", "a*a", "left", False),
}


def t39_decomposition(a: Element, n: int = 1, variant: int = 2) -> tuple[bool, dict]:
    """Check ``R = ann + image`` (and, for the direct variants, ``ann & image = {0}``).

    Variants are numbered 2..9: even numbers are direct sums, odd numbers plain
    sums; 2/3 use ``a°`` and ``(a*a)^n R``, 4/5 use ``(a*)°`` and
    ``(aa*)^n R``, 6/7 use ``°a`` and ``R (aa*)^n``, 8/9 use ``°(a*)`` and
    ``R (a*a)^n``.
    """
    _check_exponent(n)
    if variant not in T39_VARIANTS:
        raise ValueError(f"variant must be 2..9, got {variant}")
    fr = _finite(a, "T3.9")
    who, ann_side, gen, img_side, direct = T39_VARIANTS[variant]
    target = a if who == "a" else a.star()
    generator = _a_a(a, n) if gen == "a*a" else _aa(a, n)
    ann = _annihilator_idx(fr, target, ann_side)
    img = _image_idx(fr, generator, img_side)
    sums = np.unique(fr.encode(fr.add(fr.data[ann][:, None], fr.data[img][None, :])))
    inter = np.intersect1d(ann, img)
    sum_is_R = sums.size == fr.size
    trivial = inter.size == 1 and inter[0] == fr.zero_index
    holds = sum_is_R and (trivial or not direct)
    details = {
        "variant": variant,
        "direct": direct,
        "annihilator": f"{'' if ann_side == 'right' else 'left '}annihilator of {who}",
        "image": f"{'(' + gen + ')^n R' if img_side == 'right' else 'R (' + gen + ')^n'}",
        "annihilator_size": int(ann.size),
        "image_size": int(img.size),
        "sum_size": int(sums.size),
        "intersection_size": int(inter.size),
        "sum_is_R": bool(sum_is_R),
        "intersection_is_zero": bool(trivial),
    }
    return bool(holds), details


def c310_decomposition(a: Element, variant: int = 2) -> tuple[bool, dict]:
    """The ``n = 1`` case of :func:`t39_decomposition`."""
    return t39_decomposition(a, 1, variant)


def range_equal(a: Element) -> bool:
    """Whether ``aR = a*R``: set comparison on finite rings, column spaces for matrices."""
    r = a.ring
    if is_enumerable(r):
        fr = finite_ring(r)
        return np.array_equal(fr.right_ideal(a), fr.right_ideal(a.star()))
    if r.is_matrix:
        # aR = a*R iff each is a right multiple of the other
        s = a.star()
        return (solve(LinearProblem.right(a, s)) is not None
                and solve(LinearProblem.right(s, a)) is not None)
    raise UnsupportedError(f"range comparison is not available on {r}")


__all__ = [
    "Decision", "Subset", "T38_VARIANTS", "T39_VARIANTS", "Witness", "annihilator",
    "c310_decomposition", "image", "is_co_supported", "is_well_supported",
    "jacobson_transfer", "range_equal", "t31_condition", "t31_formula", "t32_condition",
    "t33_condition", "t34_condition", "t34_formula", "t35_condition", "t35_formula",
    "t38_condition", "t39_decomposition",
]
