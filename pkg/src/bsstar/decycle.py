"""Decycling-number bounds, decycling-set constructions and certificate checks.

Every construction keeps all even vertices plus a small reserved set of odd
vertices, and removes the remaining odd vertices. The certificate records the
reserved set and the removal rule, so its size stays small even when ``n!``
is large.
"""

from __future__ import annotations

import enum
import json
import math
from dataclasses import dataclass, field
from typing import Any, Iterable

import numpy as np

from . import kernels
from .errors import DimensionError, ParityError, ParseError
from .graph import BubbleSortStarGraph
from .metrics import is_distance_k_independent, pairwise_distances
from .perm import (
    Parity,
    Permutation,
    o1_o2_sets,
    paired_permutation_set,
    parity,
    rotate,
)

EXACT_VALUES = {3: 2, 4: 10, 5: 51}


def _ceil_div(num: int, den: int) -> int:
    return (num + den - 1) // den


def lower_bound_general(v: int, e: int, max_deg: int) -> int:
    """Minimum decycling-set size forced by counts: ceil((e - v + 1) / (max_deg - 1)), at least 0."""
    if max_deg < 2:
        raise ValueError(f"max degree must be >= 2, got {max_deg}")
    if v < 1 or e < 0:
        raise ValueError(f"need v >= 1 and e >= 0, got v={v}, e={e}")
    excess = e - v + 1
    if excess <= 0:
        return 0
    return _ceil_div(excess, max_deg - 1)


def lower_bound(n: int) -> int:
    """ceil((n!(2n-5) + 2) / (4n-8)) in exact integer arithmetic."""
    if n < 3:
        raise DimensionError(f"n must be >= 3, got {n}")
    return _ceil_div(math.factorial(n) * (2 * n - 5) + 2, 4 * n - 8)


def upper_bound_trivial(n: int) -> int:
    """Size of the odd class, always a decycling set."""
    return math.factorial(n) // 2


def upper_bound(n: int) -> int:
    """Size of the constructed decycling set: exact for n <= 5, block construction above."""
    if n < 3:
        raise DimensionError(f"n must be >= 3, got {n}")
    if n in EXACT_VALUES:
        return EXACT_VALUES[n]
    half = math.factorial(n) // 2
    if n % 2 == 0:
        return half - math.factorial(n // 2)
    return half - 2 * math.factorial((n - 1) // 2) + 1


@dataclass(frozen=True)
class BoundsReport:
    n: int
    lower: int
    upper_constructive: int
    upper_trivial: int
    exact: int | None
    notes: dict[str, str] = field(default_factory=dict)

    def to_dict(self) -> dict[str, Any]:
        return {
            "n": self.n,
            "lower": self.lower,
            "upper_constructive": self.upper_constructive,
            "upper_trivial": self.upper_trivial,
            "exact": self.exact,
            "notes": dict(self.notes),
        }


def bounds_report(n: int) -> BoundsReport:
    lower = lower_bound(n)
    upper = upper_bound(n)
    notes = {
        "lower": "ceil((|E|-|V|+1)/(max_degree-1)) with |V|=n!, |E|=n!(2n-3)/2, max_degree=2n-3",
        "upper_trivial": "all odd vertices, n!/2",
    }
    if n in EXACT_VALUES:
        notes["upper_constructive"] = "explicit construction meeting the lower bound"
        exact = upper if upper == lower else None
    else:
        notes["upper_constructive"] = (
            "odd vertices minus the paired permutation set of an odd base; "
            "reported as <= (certificate size)"
        )
        exact = None
    return BoundsReport(n, lower, upper, upper_bound_trivial(n), exact, notes)


class Method(enum.Enum):
    SMALL_N3 = "small_n3"
    SMALL_N4 = "small_n4"
    SMALL_N5 = "small_n5"
    PAIRED_BLOCKS = "paired_blocks"
    EXACT = "exact"
    MANUAL = "manual"


class RemovalRule(enum.Enum):
    ALL_ODD_EXCEPT_RESERVED = "all_odd_except_reserved"
    EXPLICIT_LIST = "explicit_list"


@dataclass(frozen=True)
class DecyclingCertificate:
    n: int
    method: Method
    base: Permutation | None
    reserved: tuple[Permutation, ...]
    removal_rule: RemovalRule
    removed_count: int
    explicit_removed: tuple[Permutation, ...] | None = None

    def to_dict(self) -> dict[str, Any]:
        doc: dict[str, Any] = {
            "n": self.n,
            "method": self.method.value,
            "base": None if self.base is None else str(self.base),
            "reserved": [str(p) for p in self.reserved],
            "removal_rule": self.removal_rule.value,
            "removed_count": self.removed_count,
        }
        if self.explicit_removed is not None:
            doc["explicit_removed"] = [str(p) for p in self.explicit_removed]
        return doc

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2) + "\n"

    @classmethod
    def from_dict(cls, doc: dict[str, Any]) -> DecyclingCertificate:
        try:
            n = int(doc["n"])
            method = Method(doc["method"])
            base = None if doc.get("base") is None else Permutation.parse(doc["base"])
            reserved = tuple(Permutation.parse(s) for s in doc["reserved"])
            rule = RemovalRule(doc["removal_rule"])
            removed_count = int(doc["removed_count"])
            explicit = doc.get("explicit_removed")
            if explicit is not None:
                explicit = tuple(Permutation.parse(s) for s in explicit)
        except (KeyError, TypeError, ValueError) as exc:
            raise ParseError(f"malformed certificate: {exc}") from exc
        for p in reserved + (explicit or ()) + ((base,) if base else ()):
            if p.n != n:
                raise ParseError(f"label {p} does not have n={n} symbols")
        if rule is RemovalRule.EXPLICIT_LIST and explicit is None:
            raise ParseError("explicit_list certificates need an explicit_removed array")
        return cls(n, method, base, reserved, rule, removed_count, explicit)

    @classmethod
    def from_json(cls, text: str) -> DecyclingCertificate:
        try:
            doc = json.loads(text)
        except json.JSONDecodeError as exc:
            raise ParseError(f"certificate is not valid JSON: {exc}") from exc
        if not isinstance(doc, dict):
            raise ParseError("certificate must be a JSON object")
        return cls.from_dict(doc)

    def removed_mask(self, g: BubbleSortStarGraph) -> np.ndarray:
        if self.removal_rule is RemovalRule.EXPLICIT_LIST:
            mask = np.zeros(g.num_vertices, dtype=bool)
            mask[[g.index(p) for p in self.explicit_removed or ()]] = True
            return mask
        mask = g.odd_mask().copy()
        mask[[g.index(p) for p in self.reserved]] = False
        return mask


def default_base(n: int) -> Permutation:
    """Lexicographically smallest odd label: the identity with its last two symbols swapped."""
    return Permutation(tuple(range(1, n - 1)) + (n, n - 1))


def _require_odd(base: Permutation) -> None:
    if parity(base) is not Parity.ODD:
        raise ParityError(f"base {base} is even; the constructions need an odd vertex")


def _certificate(n: int, method: Method, base: Permutation, reserved: Iterable[Permutation]) -> DecyclingCertificate:
    reserved = tuple(sorted(reserved))
    return DecyclingCertificate(
        n=n,
        method=method,
        base=base,
        reserved=reserved,
        removal_rule=RemovalRule.ALL_ODD_EXCEPT_RESERVED,
        removed_count=upper_bound_trivial(n) - len(reserved),
    )


def reserved_for(method: Method, base: Permutation) -> frozenset[Permutation]:
    """The reserved odd set a construction method derives from ``base``."""
    if method is Method.SMALL_N3:
        return frozenset({base})
    if method is Method.SMALL_N4:
        return frozenset({base, rotate(base, 2)})
    if method is Method.SMALL_N5:
        o1, o2 = o1_o2_sets(base)
        both = o1 | o2
        # the ten vertices close a single cycle; dropping any one opens it
        return both - {max(both)}
    if method is Method.PAIRED_BLOCKS:
        return paired_permutation_set(base)
    raise ValueError(f"{method.value} certificates are not derived from a base")


_SMALL_METHODS = {3: Method.SMALL_N3, 4: Method.SMALL_N4, 5: Method.SMALL_N5}


def construct_small(n: int, base: Permutation | None = None) -> DecyclingCertificate:
    """Optimal decycling sets for n = 3, 4, 5 (sizes 2, 10, 51)."""
    if n not in _SMALL_METHODS:
        return construct_general(n, base)
    base = base or default_base(n)
    if base.n != n:
        raise DimensionError(f"base {base} does not have n={n} symbols")
    _require_odd(base)
    method = _SMALL_METHODS[n]
    return _certificate(n, method, base, reserved_for(method, base))


def construct_general(n: int, base: Permutation | None = None) -> DecyclingCertificate:
    """Block construction for n >= 6: reserve the paired permutation set of ``base``."""
    if n < 6:
        raise DimensionError(f"the block construction is for n >= 6, got n={n}")
    base = base or default_base(n)
    if base.n != n:
        raise DimensionError(f"base {base} does not have n={n} symbols")
    _require_odd(base)
    return _certificate(n, Method.PAIRED_BLOCKS, base, reserved_for(Method.PAIRED_BLOCKS, base))


def construct(n: int, base: Permutation | None = None) -> DecyclingCertificate:
    return construct_small(n, base) if n <= 5 else construct_general(n, base)


def two_core(g: BubbleSortStarGraph, alive: np.ndarray) -> np.ndarray:
    """Mask of the 2-core of the induced subgraph: strip degree <= 1 vertices until none remain."""
    table = g.table
    if table is None:
        table = kernels.neighbor_table(g.n, g.gen_i, g.gen_j)
    core = np.array(alive, dtype=bool, copy=True)
    while True:
        deg = core[table].sum(axis=1)
        low = core & (deg <= 1)
        if not low.any():
            return core
        core[low] = False


def _shortest_cycle_through(g: BubbleSortStarGraph, core: np.ndarray, s: int) -> list[int] | None:
    parent = {s: -1}
    branch = {s: s}
    order = [s]
    for x in order:
        for y in g.neighbors(x):
            if not core[y] or y == parent[x]:
                continue
            if y not in parent:
                parent[y] = x
                branch[y] = y if x == s else branch[x]
                order.append(y)
            elif branch[y] != branch[x] or y == s:
                left, right = [x], [y]
                while left[-1] != s:
                    left.append(parent[left[-1]])
                while right[-1] != s:
                    right.append(parent[right[-1]])
                return left[::-1] + right[:-1]
    return None


def _walk_cycle(g: BubbleSortStarGraph, core: np.ndarray, start: int) -> list[int]:
    seen: dict[int, int] = {}
    path: list[int] = []
    prev, cur = -1, start
    while cur not in seen:
        seen[cur] = len(path)
        path.append(cur)
        prev, cur = cur, next(w for w in g.neighbors(cur) if core[w] and w != prev)
    return path[seen[cur]:]


def find_cycle(g: BubbleSortStarGraph, alive: np.ndarray) -> list[int] | None:
    """One simple cycle in the induced subgraph, or None if it is a forest.

    Prefers a shortest cycle through the lowest vertex of the 2-core; if that
    vertex only bridges cycles, a non-backtracking walk inside the core finds one.
    """
    core = two_core(g, alive)
    if not core.any():
        return None
    start = int(np.flatnonzero(core)[0])
    return _shortest_cycle_through(g, core, start) or _walk_cycle(g, core, start)


@dataclass(frozen=True)
class AcyclicResult:
    acyclic: bool
    cycle: list[int] | None = None

    def __bool__(self) -> bool:
        return self.acyclic


def verify_acyclic(g: BubbleSortStarGraph, removed: Iterable[int] | np.ndarray) -> AcyclicResult:
    """Whether deleting ``removed`` (ids or a boolean mask) leaves a forest."""
    if isinstance(removed, np.ndarray) and removed.dtype == bool:
        alive = ~removed
    else:
        alive = np.ones(g.num_vertices, dtype=bool)
        ids = np.fromiter((int(v) for v in removed), dtype=np.int64)
        alive[ids] = False
    if g.induced_is_forest(alive):
        return AcyclicResult(True)
    return AcyclicResult(False, find_cycle(g, alive))


@dataclass(frozen=True)
class CheckResult:
    name: str
    passed: bool
    detail: str = ""


@dataclass
class VerificationReport:
    n: int
    method: Method
    removed_count: int
    lower: int
    upper: int
    checks: list[CheckResult] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return all(c.passed for c in self.checks)

    @property
    def failures(self) -> list[CheckResult]:
        return [c for c in self.checks if not c.passed]

    @property
    def optimal(self) -> bool:
        """A valid decycling set whose size meets the counting lower bound."""
        return self.ok and self.removed_count == self.lower

    def add(self, name: str, passed: bool, detail: str = "") -> None:
        self.checks.append(CheckResult(name, bool(passed), detail))

    def summary(self) -> str:
        if not self.ok:
            return f"FAIL: {len(self.failures)} check(s) failed"
        if self.optimal:
            return f"PASS: size {self.removed_count} meets lower bound => optimal, D({self.n}) = {self.removed_count}"
        return f"PASS: {self.lower} <= D({self.n}) <= {self.removed_count}"

    def lines(self) -> list[str]:
        out = [f"{'PASS' if c.passed else 'FAIL'}  {c.name}" + (f"  ({c.detail})" if c.detail else "")
               for c in self.checks]
        out.append(self.summary())
        return out

    def to_dict(self) -> dict[str, Any]:
        return {
            "n": self.n,
            "method": self.method.value,
            "removed_count": self.removed_count,
            "lower": self.lower,
            "upper": self.upper,
            "ok": self.ok,
            "optimal": self.optimal,
            "checks": [{"name": c.name, "passed": c.passed, "detail": c.detail} for c in self.checks],
        }


def _check_n5_families(g: BubbleSortStarGraph, base: Permutation, report: VerificationReport) -> None:
    o1, o2 = o1_o2_sets(base)
    ids1 = [g.index(p) for p in sorted(o1)]
    ids2 = [g.index(p) for p in sorted(o2)]
    for name, ids in (("rotation_family_distance4", ids1), ("companion_family_distance4", ids2)):
        res = is_distance_k_independent(g, ids, 4)
        report.add(name, res.independent, "" if res else f"witness {res.witness}")
    cross = pairwise_distances(g, ids1 + ids2)[:5, 5:]
    profile_ok = all(sorted(row) == [2, 2, 4, 4, 4] for row in cross) and all(
        sorted(col) == [2, 2, 4, 4, 4] for col in cross.T
    )
    report.add("family_cross_distances", profile_ok, "each member: two at distance 2, three at distance 4")


def verify_certificate(
    g: BubbleSortStarGraph, cert: DecyclingCertificate, deep: bool = True
) -> VerificationReport:
    """Run every check on ``cert``; ``deep`` adds the distance-structure checks."""
    if cert.n != g.n:
        raise DimensionError(f"certificate is for n={cert.n}, graph has n={g.n}")
    report = VerificationReport(cert.n, cert.method, cert.removed_count, lower_bound(g.n), upper_bound(g.n))

    distinct = len(set(cert.reserved)) == len(cert.reserved)
    report.add("reserved_distinct", distinct, f"{len(cert.reserved)} reserved")
    evens = [str(p) for p in cert.reserved if parity(p) is not Parity.ODD]
    report.add("reserved_odd", not evens, f"even: {', '.join(evens)}" if evens else "")
    if cert.explicit_removed is not None:
        report.add(
            "explicit_removed_distinct",
            len(set(cert.explicit_removed)) == len(cert.explicit_removed),
        )

    removed = cert.removed_mask(g)
    size = int(removed.sum())
    report.add("removed_count", size == cert.removed_count, f"materialized {size}, declared {cert.removed_count}")

    acyclic = verify_acyclic(g, removed)
    detail = "" if acyclic else f"cycle {[str(g.vertex(v)) for v in acyclic.cycle or []]}"
    report.add("acyclic", acyclic.acyclic, detail)

    if cert.method not in (Method.EXACT, Method.MANUAL):
        if cert.base is None:
            report.add("construction", False, "certificate has no base vertex")
        else:
            expected = reserved_for(cert.method, cert.base)
            report.add("construction", set(cert.reserved) == expected and distinct,
                       f"reserved set matches {cert.method.value} from base {cert.base}")

    if deep and cert.base is not None:
        if cert.method is Method.SMALL_N5:
            _check_n5_families(g, cert.base, report)
        elif cert.method in (Method.SMALL_N3, Method.SMALL_N4, Method.PAIRED_BLOCKS):
            res = is_distance_k_independent(g, [g.index(p) for p in cert.reserved], 4)
            detail = f"{len(cert.reserved)} reserved pairwise >= 4"
            if not res:
                v, w, d = res.witness
                detail = f"{g.vertex(v)} and {g.vertex(w)} at distance {d}"
            report.add("distance4_independent", res.independent, detail)

    report.add("lower_bound", cert.removed_count >= report.lower,
               f"{report.lower} <= {cert.removed_count}")
    return report
