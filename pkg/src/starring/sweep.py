"""Whole-ring verification sweeps.

For every element of a finite ring, each condition of the chosen theorem is
decided and compared with the ground truth "a has a Moore-Penrose inverse",
obtained from the exhaustive Penrose scan (which never uses any of the
formulas under test). Whenever a condition produces a formula for ``a^+`` the
output is compared with the oracle's unique solution as well.

Work is split into contiguous index ranges; results are merged in index order,
so reports do not depend on the number of workers.
"""
from __future__ import annotations

import json
import os
import time
from collections import Counter
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Callable, Iterable

from .backends import element_value, enumerate_ring, finite_ring
from .errors import StarRingError, UnsupportedError
from .ginverse import inner_inverses, penrose_solutions
from .ring import Element, RingDescriptor
from . import theorems as th

THEOREM_IDS = ("T3.1", "T3.2", "T3.3", "T3.4", "T3.5", "C3.6", "T3.8", "T3.9", "C3.10")


@dataclass
class VerificationReport:
    ring: RingDescriptor
    theorem_id: str
    params: dict
    elements_scanned: int
    agreement: dict[str, dict[str, int]]
    counterexamples: list[dict] = field(default_factory=list)
    formula_checks: int = 0
    elapsed_ms: float = 0.0

    @property
    def passed(self) -> bool:
        return not self.counterexamples

    def to_json(self) -> dict:
        return {
            "ring": self.ring.to_json(),
            "theorem_id": self.theorem_id,
            "params": self.params,
            "elements_scanned": self.elements_scanned,
            "agreement": self.agreement,
            "formula_checks": self.formula_checks,
            "counterexamples": self.counterexamples,
            "elapsed_ms": self.elapsed_ms,
        }

    def dumps(self, **kwargs) -> str:
        return json.dumps(self.to_json(), sort_keys=True, **kwargs)

    @classmethod
    def from_json(cls, obj: dict | str) -> "VerificationReport":
        if isinstance(obj, str):
            obj = json.loads(obj)
        return cls(
            ring=RingDescriptor.from_json(obj["ring"]),
            theorem_id=obj["theorem_id"],
            params=obj["params"],
            elements_scanned=obj["elements_scanned"],
            agreement=obj["agreement"],
            counterexamples=obj["counterexamples"],
            formula_checks=obj.get("formula_checks", 0),
            elapsed_ms=obj.get("elapsed_ms", 0.0),
        )


@dataclass
class _Partial:
    """Per-range results: agreement counters, formula count, counterexamples."""
    counts: Counter = field(default_factory=Counter)
    formula_checks: int = 0
    counterexamples: list = field(default_factory=list)

    def record(self, cid: str, value: bool, truth: bool, idx: int, a: Element, **params):
        self.counts[(cid, "evaluations")] += 1
        self.counts[(cid, "true")] += int(value)
        self.counts[(cid, "agree")] += int(value == truth)
        if value != truth:
            self.fail(idx, a, cid, f"condition={value} but a^+ exists={truth}", **params)

    def fail(self, idx: int, a: Element, cid: str, details: str, **params):
        self.counterexamples.append({
            "index": idx,
            "element": element_value(a),
            "condition": cid,
            "params": params,
            "details": details,
        })

    def formula(self, idx, a, cid, truth_value, fn: Callable[[], Element], **params):
        self.formula_checks += 1
        try:
            out = fn()
        except StarRingError as exc:
            self.fail(idx, a, cid + "/formula", f"formula route raised: {exc}", **params)
            return
        if out != truth_value:
            self.fail(idx, a, cid + "/formula",
                      f"formula gave {element_value(out)}, oracle a^+ is "
                      f"{element_value(truth_value)}", **params)


def _ground_truth(a: Element) -> Element | None:
    sols = penrose_solutions(a)
    if len(sols) > 1:
        raise AssertionError(f"{len(sols)} Moore-Penrose inverses for {a}")
    return sols[0] if sols else None


def _scan_t31(part, idx, a, truth, ns, ms, oracle):
    has = truth is not None
    for k in range(1, 14):
        uses_m = k in (2, 7)
        for n in ns:
            for m in (ms if uses_m else (ms[0],)):
                params = {"n": n, "m": m} if uses_m else {"n": n}
                d = th.t31_condition(a, k, n, m, oracle=oracle)
                part.record(f"T3.1({k})", d.holds, has, idx, a, **params)
                if d.holds and has:
                    part.formula(idx, a, f"T3.1({k})", truth,
                                 lambda: th.t31_formula(a, d.witness), **params)


def _scan_simple(fn, name, count, formula=None):
    def scan(part, idx, a, truth, ns, ms, oracle):
        has = truth is not None
        for k in range(2, count + 1):
            for n in ns:
                d = fn(a, k, n)
                part.record(f"{name}({k})", d.holds, has, idx, a, n=n)
                if formula is not None and d.holds and has:
                    part.formula(idx, a, f"{name}({k})", truth,
                                 lambda: formula(a, d.witness), n=n)
    return scan


def _scan_c36(part, idx, a, truth, ns, ms, oracle):
    has = truth is not None
    part.record("C3.6(2)", th.is_well_supported(a).holds, has, idx, a)
    part.record("C3.6(3)", th.is_co_supported(a).holds, has, idx, a)


def _scan_t38(part, idx, a, truth, ns, ms, oracle):
    has = truth is not None
    inner = inner_inverses(a)
    if not inner:
        part.counts[("T3.8", "skipped_non_regular")] += 1
        return
    labels = dict(zip(th.T38_VARIANTS, ("T3.8(2)", "T3.8(3)", "T3.8(4)", "T3.8(5)")))
    for n in ns:
        for g in inner:
            for variant in th.T38_VARIANTS:
                value = th.t38_condition(a, g, n, variant)
                part.record(labels[variant], value, has, idx, a, n=n,
                            a_inner=element_value(g))


def _scan_t39(fixed_n: int | None):
    def scan(part, idx, a, truth, ns, ms, oracle):
        has = truth is not None
        name = "C3.10" if fixed_n else "T3.9"
        for n in ((fixed_n,) if fixed_n else ns):
            for variant in th.T39_VARIANTS:
                holds, _ = th.t39_decomposition(a, n, variant)
                part.record(f"{name}({variant})", holds, has, idx, a, n=n)
    return scan


_SCANNERS = {
    "T3.1": _scan_t31,
    "T3.2": _scan_simple(th.t32_condition, "T3.2", 5),
    "T3.3": _scan_simple(th.t33_condition, "T3.3", 5),
    "T3.4": _scan_simple(th.t34_condition, "T3.4", 7, th.t34_formula),
    "T3.5": _scan_simple(th.t35_condition, "T3.5", 7, th.t35_formula),
    "C3.6": _scan_c36,
    "T3.8": _scan_t38,
    "T3.9": _scan_t39(None),
    "C3.10": _scan_t39(1),
}


def _run_range(ring: RingDescriptor, start: int, stop: int, theorem_id: str,
               ns: tuple[int, ...], ms: tuple[int, ...], oracle: bool) -> _Partial:
    fr = finite_ring(ring)
    scan = _SCANNERS[theorem_id]
    part = _Partial()
    for idx in range(start, stop):
        a = fr.element(idx)
        truth = _ground_truth(a)
        scan(part, idx, a, truth, ns, ms, oracle)
    return part


def _as_range(values: Iterable[int] | int, name: str) -> tuple[int, ...]:
    if isinstance(values, int):
        values = range(1, values + 1)
    out = tuple(sorted(set(int(v) for v in values)))
    if not out or out[0] < 1:
        raise ValueError(f"{name} must be a non-empty set of positive integers")
    return out


def _cid_key(cid: str) -> tuple:
    # "T3.1(10)" sorts after "T3.1(9)"
    head, _, rest = cid.partition("(")
    return (head, int(rest.rstrip(")")) if rest.rstrip(")").isdigit() else -1)


def default_workers() -> int:
    return os.cpu_count() or 1


def verify_theorem(r: RingDescriptor, theorem_id: str, n_range=(1, 2, 3), m_range=(1, 2, 3),
                   workers: int = 1, oracle: bool = False) -> VerificationReport:
    """Sweep every element of ``r`` through the conditions of ``theorem_id``.

    ``n_range`` / ``m_range`` are iterables of exponents (an int ``N`` means
    ``1..N``). ``oracle=True`` additionally makes every Moore-Penrose
    computation inside the conditions confirm itself by exhaustive scan.
    """
    if theorem_id not in _SCANNERS:
        raise ValueError(f"unknown theorem id {theorem_id!r}; choose from {', '.join(THEOREM_IDS)}")
    if not r.is_finite:
        raise UnsupportedError(f"sweeps need a finite ring, got {r}")
    ns = _as_range(n_range, "n_range")
    ms = _as_range(m_range, "m_range")
    stream = enumerate_ring(r)
    t0 = time.perf_counter()
    chunks = stream.partition(max(1, workers))
    jobs = [(r, c.start, c.stop, theorem_id, ns, ms, oracle) for c in chunks]
    if workers > 1 and len(jobs) > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            parts = list(pool.map(_run_range, *zip(*jobs)))
    else:
        parts = [_run_range(*job) for job in jobs]

    counts: Counter = Counter()
    formula_checks = 0
    counterexamples: list[dict] = []
    for part in parts:
        counts.update(part.counts)
        formula_checks += part.formula_checks
        counterexamples.extend(part.counterexamples)
    counterexamples.sort(key=lambda c: (c["index"], c["condition"],
                                        json.dumps(c["params"], sort_keys=True), c["details"]))
    agreement: dict[str, dict[str, int]] = {}
    for (cid, key), value in sorted(counts.items(), key=lambda kv: (_cid_key(kv[0][0]), kv[0][1])):
        agreement.setdefault(cid, {})[key] = value
    params = {"n_range": list(ns), "oracle": oracle}
    if theorem_id == "T3.1":
        params["m_range"] = list(ms)
    if theorem_id == "C3.10":
        params["n_range"] = [1]
    return VerificationReport(
        ring=r,
        theorem_id=theorem_id,
        params=params,
        elements_scanned=len(stream),
        agreement=agreement,
        counterexamples=counterexamples,
        formula_checks=formula_checks,
        elapsed_ms=round((time.perf_counter() - t0) * 1000, 3),
    )
