"""Exact generalized inverses in rings with involution.

Three rings are built in: ``ZMod(n)`` with the identity involution,
``MatZp(p, k)`` with transpose and ``MatQi(k)`` (Gaussian rationals) with
conjugate transpose. Finite rings can be swept exhaustively to check the
Moore-Penrose existence criteria in :mod:`starring.theorems`.
"""
from .backends import (
    ElementStream,
    LinearProblem,
    Side,
    enumerate_ring,
    format_element,
    parse_element,
    parse_ring,
    solve,
)
from .errors import (
    DescriptorError,
    ParseError,
    PreconditionError,
    ResourceError,
    RingMismatchError,
    StarRingError,
    UnsupportedError,
    VerificationFailure,
)
from .ginverse import (
    InverseKind,
    InverseResult,
    PenroseCheck,
    find_13,
    find_14,
    group_inverse,
    inner_inverse,
    is_EP,
    is_regular,
    is_star_cancellable,
    moore_penrose,
    mp_from_13_14,
    mp_from_left_star_regular,
    mp_from_right_star_regular,
    penrose_check,
    penrose_search,
)
from .predicates import ElementFlags, ValidationReport, classify, validate_ring
from .ring import Element, Involution, Kind, RingDescriptor, add, mul, neg, power, star, sub
from .scalars import GaussianRational
from .sweep import THEOREM_IDS, VerificationReport, verify_theorem

__version__ = "0.1.0"
