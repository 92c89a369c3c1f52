"""Multinet structures on line arrangements.

A candidate structure is a partition of the lines into k >= 3 classes, a
positive multiplicity on every line and a base locus of multiple points.
The checker grades candidates on the ladder

    none < weak < multinet < reduced < net < trivial-net

by the four axioms: (i) equal weighted class sizes, (ii) cross-class
intersections lie in the base locus, (iii) the local weight n_p at a base
point is class-independent, (iv) each class stays connected through points
outside the base locus.  Reduced additionally means multiplicity one
everywhere, net means n_p = 1, and a net of weight one is trivial.

The exhaustive search fixes the base locus to exactly the cross-class
intersection points: axiom (ii) forces at least these, and any larger
choice only adds constraints in (iii) and (iv), so the minimal locus is the
canonical and the most permissive one.
"""

from __future__ import annotations

import os
from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations, product
from math import comb, factorial
from typing import Iterable, Optional, Union

from .arrangement import Arrangement, IntersectionLattice
from .errors import BudgetExceededError, InputError

PointKey = frozenset[int]

DEFAULT_SEARCH_CAP = 10**6
_CAP_ENV = "LINARR_PARTITION_CAP"

LEVELS = ("none", "weak", "multinet", "reduced", "net", "trivial-net")


@dataclass(frozen=True)
class MultinetCandidate:
    """A partition into k >= 3 classes with multiplicities and base locus.

    Points are identified by their incident line sets, which pins them down
    uniquely inside one arrangement.
    """

    classes: tuple[frozenset[int], ...]
    m: tuple[int, ...]
    base_locus: frozenset[PointKey]

    @property
    def k(self) -> int:
        return len(self.classes)


@dataclass(frozen=True)
class MultinetVerdict:
    level: str
    d: Optional[int]
    violations: tuple[tuple[str, str], ...]

    @property
    def is_weak(self) -> bool:
        return self.level != "none"


def _as_lattice(arr: Union[Arrangement, IntersectionLattice]) -> IntersectionLattice:
    if isinstance(arr, Arrangement):
        return arr.lattice()
    return arr


@lru_cache(maxsize=64)
def _pair_to_point(lat: IntersectionLattice) -> dict[tuple[int, int], PointKey]:
    table = {}
    for inc in lat.points:
        for pair in combinations(sorted(inc), 2):
            table[pair] = inc
    return table


def _validate_candidate(lat: IntersectionLattice, cand: MultinetCandidate) -> None:
    if cand.k < 3:
        raise InputError("a multinet candidate needs k >= 3 classes")
    flat = sorted(i for cls in cand.classes for i in cls)
    if flat != list(range(lat.n)):
        raise InputError("classes must partition the line set")
    if len(cand.m) != lat.n or any(v < 1 for v in cand.m):
        raise InputError("multiplicity function must be positive on every line")
    point_set = set(lat.points)
    for key in cand.base_locus:
        if key not in point_set:
            raise InputError(f"base locus point {sorted(key)} is not a multiple point")


def support(
    arr: Union[Arrangement, IntersectionLattice],
    cand: MultinetCandidate,
    point: Union[PointKey, Iterable[int]],
) -> frozenset[int]:
    """Class indices whose lines pass through the given multiple point."""
    lat = _as_lattice(arr)
    _validate_candidate(lat, cand)
    key = frozenset(point)
    if key not in set(lat.points) or len(key) < 2:
        raise InputError(f"{sorted(key)} is not a multiple point of the arrangement")
    return frozenset(a for a, cls in enumerate(cand.classes) if cls & key)


def check_multinet(
    arr: Union[Arrangement, IntersectionLattice], cand: MultinetCandidate
) -> MultinetVerdict:
    """Grade a candidate against the multinet axioms.

    Only the first witness per violated axiom is reported.
    """
    lat = _as_lattice(arr)
    _validate_candidate(lat, cand)
    pair_point = _pair_to_point(lat)
    violations: list[tuple[str, str]] = []

    class_of = {}
    for a, cls in enumerate(cand.classes):
        for i in cls:
            class_of[i] = a

    sums = [sum(cand.m[i] for i in cls) for cls in cand.classes]
    d: Optional[int] = sums[0] if len(set(sums)) == 1 else None
    if d is None:
        violations.append(("i", f"class weights {sums} are not all equal"))

    ok_ii = True
    for inc in lat.points:
        if len({class_of[i] for i in inc}) >= 2 and inc not in cand.base_locus:
            first_cross = next(
                (i, j)
                for i, j in combinations(sorted(inc), 2)
                if class_of[i] != class_of[j]
            )
            violations.append(("ii", f"lines {first_cross} meet outside the base locus"))
            ok_ii = False
            break

    ok_iii = True
    for key in sorted(cand.base_locus, key=sorted):
        local = [sum(cand.m[i] for i in cls & key) for cls in cand.classes]
        if len(set(local)) != 1:
            violations.append(("iii", f"point {sorted(key)} has class weights {local}"))
            ok_iii = False
            break

    ok_iv = True
    for a, cls in enumerate(cand.classes):
        members = sorted(cls)
        if len(members) <= 1:
            continue
        reached = {members[0]}
        frontier = [members[0]]
        while frontier:
            i = frontier.pop()
            for j in members:
                if j not in reached:
                    key = pair_point[(min(i, j), max(i, j))]
                    if key not in cand.base_locus:
                        reached.add(j)
                        frontier.append(j)
        if len(reached) != len(members):
            violations.append(
                ("iv", f"class {a} splits into components {sorted(reached)} vs rest")
            )
            ok_iv = False
            break

    if not (d is not None and ok_ii and ok_iii):
        return MultinetVerdict("none", None, tuple(violations))
    if not ok_iv:
        return MultinetVerdict("weak", d, tuple(violations))
    n_p_one = all(
        sum(cand.m[i] for i in cand.classes[0] & key) == 1 for key in cand.base_locus
    )
    if n_p_one and cand.base_locus:
        level = "trivial-net" if d == 1 else "net"
    elif all(v == 1 for v in cand.m):
        level = "reduced"
    else:
        level = "multinet"
    return MultinetVerdict(level, d, tuple(violations))


def _partitions_into_k_blocks(n: int, k: int):
    """Set partitions of range(n) into exactly k blocks, via restricted
    growth strings in lexicographic order."""
    if n < k or k < 1:
        return
    rgs = [0] * n

    def rec(i: int, maxv: int):
        if i == n:
            if maxv == k - 1:
                blocks: list[list[int]] = [[] for _ in range(k)]
                for idx, b in enumerate(rgs):
                    blocks[b].append(idx)
                yield tuple(frozenset(b) for b in blocks)
            return
        for v in range(min(maxv + 1, k - 1) + 1):
            new_max = max(maxv, v)
            # enough positions must remain to introduce the missing values
            if (k - 1 - new_max) <= (n - 1 - i):
                rgs[i] = v
                yield from rec(i + 1, new_max)

    yield from rec(1, 0)


def stirling2(n: int, k: int) -> int:
    """Number of set partitions of an n-set into exactly k blocks."""
    return sum((-1) ** j * comb(k, j) * (k - j) ** n for j in range(k + 1)) // factorial(k)


def search_multinets(
    arr: Union[Arrangement, IntersectionLattice],
    k: int,
    m_max: int,
    cap: Optional[int] = None,
) -> list[tuple[MultinetCandidate, MultinetVerdict]]:
    """All candidates of level >= weak with k classes and multiplicities up
    to m_max, base locus fixed minimal, in deterministic order.

    Raises BudgetExceededError when the candidate count (partitions times
    multiplicity assignments) would exceed the cap (default 10^6, or the
    LINARR_PARTITION_CAP environment variable).
    """
    if k < 3:
        raise InputError("multinet search requires k >= 3")
    if m_max < 1:
        raise InputError("multinet search requires m_max >= 1")
    lat = _as_lattice(arr)
    n = lat.n
    if cap is None:
        cap = int(os.environ.get(_CAP_ENV, DEFAULT_SEARCH_CAP))
    if n < k:
        return []
    total = stirling2(n, k) * (m_max**n)
    if total > cap:
        raise BudgetExceededError(
            f"{total} candidates exceed the cap of {cap}; set {_CAP_ENV} to override"
        )
    results = []
    for classes in _partitions_into_k_blocks(n, k):
        locus = minimal_base_locus(lat, classes)
        for m in product(range(1, m_max + 1), repeat=n):
            cand = MultinetCandidate(classes, m, locus)
            verdict = check_multinet(lat, cand)
            if verdict.is_weak:
                results.append((cand, verdict))
    return results


def minimal_base_locus(
    arr: Union[Arrangement, IntersectionLattice], classes: tuple[frozenset[int], ...]
) -> frozenset[PointKey]:
    """The cross-class intersection points forced into the base locus by
    axiom (ii)."""
    lat = _as_lattice(arr)
    class_of = {}
    for a, cls in enumerate(classes):
        for i in cls:
            class_of[i] = a
    return frozenset(inc for inc in lat.points if len({class_of[i] for i in inc}) >= 2)
