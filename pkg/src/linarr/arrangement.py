"""Projective line arrangements over Q and their intersection combinatorics.

A line is the covector (a, b, c) of a*x0 + b*x1 + c*x2 = 0, normalised so
that the first nonzero coefficient is 1.  All arithmetic is exact rational:
incidence questions are decided by evaluation, never numerically.

The module also detects the two-point cover structure (every line of the
arrangement passes through one of two points P1, P2 with mult(P1) +
mult(P2) = n) and normalises such arrangements to the bi-pencil coordinate
form

    f = prod_i (x0 - lambda_i * x1) * prod_j (x0 - mu_j * x2)

with P1 = (0:0:1) and P2 = (0:1:0).
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from itertools import combinations
from typing import Iterable, Optional, Sequence, Union

from .errors import InputError, NotBiPencilError

Coeffs = tuple[Fraction, Fraction, Fraction]
Point = tuple[Fraction, Fraction, Fraction]

_RATIONAL_RE = re.compile(r"^-?\d+(/[1-9]\d*)?$")


def parse_rational(value: Union[int, str]) -> Fraction:
    """Parse a decimal-integer or 'p/q' string; floats are rejected."""
    if isinstance(value, bool):
        raise InputError(f"malformed rational: {value!r}")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str) and _RATIONAL_RE.match(value.strip()):
        return Fraction(value.strip())
    raise InputError(f"malformed rational: {value!r}")


def format_rational(x: Fraction) -> str:
    return str(x)


def normalize_projective(v: Iterable[Fraction]) -> tuple[Fraction, ...]:
    """Scale so the first nonzero coordinate equals 1."""
    t = tuple(Fraction(x) for x in v)
    for x in t:
        if x != 0:
            return tuple(y / x for y in t)
    raise InputError("zero vector has no projective class")


def cross(u: Sequence[Fraction], v: Sequence[Fraction]) -> tuple[Fraction, Fraction, Fraction]:
    return (
        u[1] * v[2] - u[2] * v[1],
        u[2] * v[0] - u[0] * v[2],
        u[0] * v[1] - u[1] * v[0],
    )


@dataclass(frozen=True, order=True)
class Line:
    """A projective line, stored by its normalised coefficient triple."""

    coeffs: Coeffs

    @staticmethod
    def of(a, b, c) -> "Line":
        coeffs = normalize_projective((Fraction(a), Fraction(b), Fraction(c)))
        return Line(coeffs)  # type: ignore[arg-type]

    def evaluate(self, point: Sequence[Fraction]) -> Fraction:
        a, b, c = self.coeffs
        return a * point[0] + b * point[1] + c * point[2]

    def contains(self, point: Sequence[Fraction]) -> bool:
        return self.evaluate(point) == 0

    def __repr__(self) -> str:
        return f"Line({self.coeffs[0]}, {self.coeffs[1]}, {self.coeffs[2]})"


@dataclass(frozen=True)
class FlatPoint:
    """A multiple point of the arrangement with its maximal incident set."""

    point: Point
    incident: frozenset[int]

    @property
    def multiplicity(self) -> int:
        return len(self.incident)

    def sort_key(self):
        return self.point


@dataclass(frozen=True)
class IntersectionLattice:
    """Rank-two incidence data: the number of lines and the multiple points.

    Each multiple point is recorded as the frozenset of incident line
    indices; every pair of lines lies in exactly one point.  This is all the
    combinatorial invariants (multinets, modular resonance) ever consume, so
    arrangements known only combinatorially can enter through this type.
    """

    n: int
    points: tuple[frozenset[int], ...]

    @staticmethod
    def from_multiple_points(n: int, points: Iterable[Iterable[int]]) -> "IntersectionLattice":
        """Build from the points of multiplicity >= 2, completing the pairs
        not covered by any listed point as plain double points."""
        seen_pairs: dict[tuple[int, int], frozenset[int]] = {}
        pts: list[frozenset[int]] = []
        for raw in points:
            inc = frozenset(int(i) for i in raw)
            if not all(0 <= i < n for i in inc):
                raise InputError(f"point {sorted(inc)} references an unknown line")
            if len(inc) < 2:
                raise InputError(f"point {sorted(inc)} has multiplicity < 2")
            for pair in combinations(sorted(inc), 2):
                if pair in seen_pairs:
                    raise InputError(f"line pair {pair} lies in two distinct points")
                seen_pairs[pair] = inc
            pts.append(inc)
        for pair in combinations(range(n), 2):
            if pair not in seen_pairs:
                pts.append(frozenset(pair))
        pts.sort(key=lambda s: sorted(s))
        return IntersectionLattice(n, tuple(pts))

    def __post_init__(self):
        if self.n < 1:
            raise InputError("a lattice needs at least one line")
        covered: set[tuple[int, int]] = set()
        for inc in self.points:
            for pair in combinations(sorted(inc), 2):
                if pair in covered:
                    raise InputError(f"line pair {pair} lies in two distinct points")
                covered.add(pair)
        expected = self.n * (self.n - 1) // 2
        if len(covered) != expected:
            raise InputError("lattice does not cover every pair of lines")

    def point_through(self, i: int, j: int) -> frozenset[int]:
        """The unique multiple point containing both lines."""
        for inc in self.points:
            if i in inc and j in inc:
                return inc
        raise InputError(f"no point through lines {i} and {j}")

    def multiplicities(self) -> dict[int, int]:
        out: dict[int, int] = {}
        for inc in self.points:
            out[len(inc)] = out.get(len(inc), 0) + 1
        return out


class Arrangement:
    """A reduced union of n >= 1 distinct projective lines."""

    def __init__(self, lines: Iterable[Line]):
        lines = tuple(lines)
        if not lines:
            raise InputError("an arrangement needs at least one line")
        seen = set()
        for ln in lines:
            if ln.coeffs in seen:
                raise InputError(f"duplicate line {ln!r} (arrangement must be reduced)")
            seen.add(ln.coeffs)
        self.lines = lines

    @property
    def n(self) -> int:
        return len(self.lines)

    def __eq__(self, other) -> bool:
        return isinstance(other, Arrangement) and self.lines == other.lines

    def __repr__(self) -> str:
        return f"Arrangement({list(self.lines)!r})"

    @cached_property
    def _points(self) -> tuple[FlatPoint, ...]:
        by_point: dict[Point, set[int]] = {}
        for i, j in combinations(range(self.n), 2):
            pt = normalize_projective(cross(self.lines[i].coeffs, self.lines[j].coeffs))
            by_point.setdefault(pt, set()).update((i, j))
        flats = [FlatPoint(pt, frozenset(inc)) for pt, inc in by_point.items()]
        flats.sort(key=FlatPoint.sort_key)
        return tuple(flats)

    def intersection_points(self) -> tuple[FlatPoint, ...]:
        """All points lying on >= 2 lines, with maximal incident sets, in
        lexicographic order of normalised coordinates."""
        return self._points

    def lattice(self) -> IntersectionLattice:
        pts = tuple(sorted((fp.incident for fp in self._points), key=sorted))
        return IntersectionLattice(self.n, pts)

    def is_bipencil(self) -> Optional[tuple[FlatPoint, FlatPoint, int, int]]:
        """The two covering points (P1, P2, p, q) with p >= q and p + q = n,
        or None.

        Only lattice points (multiplicity >= 2) are candidates, so covers
        with a free pencil of size one are not detected here; such
        arrangements can still be given directly in bi-pencil form.  Ties
        are broken lexicographically on normalised coordinates.
        """
        candidates = []
        for P, Q in combinations(self._points, 2):
            if len(P.incident) + len(Q.incident) != self.n:
                continue
            if not P.incident.isdisjoint(Q.incident):
                continue
            if len(P.incident) < len(Q.incident) or (
                len(P.incident) == len(Q.incident) and Q.point < P.point
            ):
                P, Q = Q, P
            candidates.append((P, Q, len(P.incident), len(Q.incident)))
        if not candidates:
            return None
        candidates.sort(key=lambda t: (-t[2], t[0].point, t[1].point))
        return candidates[0]

    def pencil_form(self) -> "PencilForm":
        """Normalise a two-point covered arrangement to bi-pencil coordinates.

        Returns the parameters (lambda_i, mu_j) together with the coordinate
        change M (acting on points as x -> M x) that realises P1 -> (0:0:1)
        and P2 -> (0:1:0).  If the arrangement is already in standard
        position the change is the identity and the parameters are read off
        directly; otherwise the lexicographically smallest double point away
        from P1, P2 is sent to (1:1:1) and the two auxiliary coordinate
        lines are chosen deterministically outside the arrangement.
        """
        cover = self.is_bipencil()
        if cover is None:
            raise NotBiPencilError("no pair of points covers the arrangement with p + q = n")
        P1, P2, p, q = cover

        e3: Point = (Fraction(0), Fraction(0), Fraction(1))
        e2: Point = (Fraction(0), Fraction(1), Fraction(0))
        if P1.point == e3 and P2.point == e2:
            direct = self._read_standard_parameters(P1, P2)
            if direct is not None:
                return direct

        M = self._normalising_matrix(P1, P2)
        Minv = _inv3(M)
        lambdas: list[Fraction] = []
        mus: list[Fraction] = []
        for idx, ln in enumerate(self.lines):
            img = normalize_projective(_row_times_matrix(ln.coeffs, Minv))
            a, b, c = img
            if idx in P1.incident:
                if a == 0:
                    raise NotBiPencilError("normalisation sent an arrangement line to x1 = 0")
                lambdas.append(-b / a)
            else:
                if a == 0:
                    raise NotBiPencilError("normalisation sent an arrangement line to x2 = 0")
                mus.append(-c / a)
        return PencilForm(BiPencil(tuple(sorted(lambdas)), tuple(sorted(mus))), M)

    def _read_standard_parameters(self, P1: FlatPoint, P2: FlatPoint) -> Optional["PencilForm"]:
        lambdas: list[Fraction] = []
        mus: list[Fraction] = []
        for idx, ln in enumerate(self.lines):
            a, b, c = ln.coeffs
            if idx in P1.incident:
                if a == 0:
                    return None  # the line x1 = 0; needs a genuine change
                lambdas.append(-b / a)
            else:
                if a == 0:
                    return None
                mus.append(-c / a)
        ident = tuple(
            tuple(Fraction(1) if i == j else Fraction(0) for j in range(3)) for i in range(3)
        )
        return PencilForm(BiPencil(tuple(sorted(lambdas)), tuple(sorted(mus))), ident)

    def _normalising_matrix(self, P1: FlatPoint, P2: FlatPoint) -> tuple[Coeffs, ...]:
        row1 = normalize_projective(cross(P1.point, P2.point))  # the line P1 P2
        arr_coeffs = {ln.coeffs for ln in self.lines}
        row2 = self._auxiliary_line(P1.point, row1, arr_coeffs)
        row3 = self._auxiliary_line(P2.point, row1, arr_coeffs)
        ref = min(fp.point for fp in self._points if fp.point not in (P1.point, P2.point))
        rows = []
        for row in (row1, row2, row3):
            d = sum(r * x for r, x in zip(row, ref))
            if d == 0:
                raise NotBiPencilError("reference double point lies on an auxiliary line")
            rows.append(tuple(r / d for r in row))
        return tuple(rows)

    @staticmethod
    def _auxiliary_line(point: Point, avoid: Coeffs, arr_coeffs: set) -> Coeffs:
        """First covector through `point` in a canonical pencil enumeration
        that is neither `avoid` nor an arrangement line."""
        k = next(i for i, x in enumerate(point) if x != 0)
        basis = []
        for j in range(3):
            if j == k:
                continue
            cov = [Fraction(0)] * 3
            cov[j] = Fraction(1)
            cov[k] = -point[j] / point[k]
            basis.append(tuple(cov))
        b1, b2 = basis
        t = 0
        while True:
            cand = normalize_projective(tuple(x + t * y for x, y in zip(b1, b2)))
            if cand != avoid and cand not in arr_coeffs:
                return cand  # type: ignore[return-value]
            t += 1


@dataclass(frozen=True)
class BiPencil:
    """Parameters of the factored form prod(x0 - lambda_i x1) prod(x0 - mu_j x2).

    At most one of all the parameters may be zero (reducedness: a second
    zero would repeat the line x0 = 0).
    """

    lambdas: tuple[Fraction, ...]
    mus: tuple[Fraction, ...]

    def __post_init__(self):
        if len(self.lambdas) < len(self.mus):
            raise InputError("bi-pencil requires p >= q")
        if not self.mus:
            raise InputError("bi-pencil requires q >= 1")
        if len(set(self.lambdas)) != len(self.lambdas) or len(set(self.mus)) != len(self.mus):
            raise InputError("bi-pencil parameters must be pairwise distinct")
        zeros = list(self.lambdas).count(0) + list(self.mus).count(0)
        if zeros > 1:
            raise InputError("at most one bi-pencil parameter may be zero")

    @property
    def p(self) -> int:
        return len(self.lambdas)

    @property
    def q(self) -> int:
        return len(self.mus)

    @property
    def n(self) -> int:
        return self.p + self.q

    def to_arrangement(self) -> Arrangement:
        lines = [Line.of(1, -lam, 0) for lam in self.lambdas]
        lines += [Line.of(1, 0, -mu) for mu in self.mus]
        return Arrangement(lines)


@dataclass(frozen=True)
class PencilForm:
    """Result of pencil normalisation: parameters plus the coordinate change."""

    bipencil: BiPencil
    change: tuple[Coeffs, ...]  # 3x3 matrix, points map as x -> change . x


def _row_times_matrix(row: Sequence[Fraction], m: Sequence[Sequence[Fraction]]) -> tuple:
    return tuple(sum(row[i] * m[i][j] for i in range(3)) for j in range(3))


def matrix_times_point(m: Sequence[Sequence[Fraction]], pt: Sequence[Fraction]) -> tuple:
    return tuple(sum(m[i][j] * pt[j] for j in range(3)) for i in range(3))


def _inv3(m: Sequence[Sequence[Fraction]]) -> tuple[Coeffs, ...]:
    a, b, c = m[0]
    d, e, f = m[1]
    g, h, i = m[2]
    det = a * (e * i - f * h) - b * (d * i - f * g) + c * (d * h - e * g)
    if det == 0:
        raise InputError("matrix is singular")
    adj = (
        (e * i - f * h, c * h - b * i, b * f - c * e),
        (f * g - d * i, a * i - c * g, c * d - a * f),
        (d * h - e * g, b * g - a * h, a * e - b * d),
    )
    return tuple(tuple(x / det for x in row) for row in adj)


def apply_projective_change(arr: Arrangement, m: Sequence[Sequence[Fraction]]) -> Arrangement:
    """Image arrangement under the point map x -> m x (lines map by m^-1)."""
    minv = _inv3(m)
    return Arrangement(Line.of(*_row_times_matrix(ln.coeffs, minv)) for ln in arr.lines)


# ---------------------------------------------------------------------------
# external file format


def parse_arrangement(text: str) -> Arrangement:
    """Parse the JSON arrangement format (``lines`` or ``bipencil`` forms)."""
    obj = _load_json(text)
    if "lines" in obj:
        return Arrangement(_parse_lines(obj["lines"]))
    if "bipencil" in obj:
        return _parse_bipencil(obj["bipencil"]).to_arrangement()
    raise InputError("arrangement file needs a 'lines' or 'bipencil' key")


def parse_input(text: str) -> Union[Arrangement, BiPencil, IntersectionLattice]:
    """Parse any supported input: arrangements, explicit bi-pencil data, or a
    purely combinatorial intersection lattice.

    The ``lattice`` form exists because some lattices (e.g. the Hesse
    configuration) are not realisable by lines with rational coefficients,
    while everything the combinatorial invariants need is the incidence
    data.
    """
    obj = _load_json(text)
    if "lines" in obj:
        return Arrangement(_parse_lines(obj["lines"]))
    if "bipencil" in obj:
        return _parse_bipencil(obj["bipencil"])
    if "lattice" in obj:
        lat = obj["lattice"]
        if not isinstance(lat, dict) or "n" not in lat or "points" not in lat:
            raise InputError("'lattice' needs 'n' and 'points'")
        return IntersectionLattice.from_multiple_points(int(lat["n"]), lat["points"])
    raise InputError("input file needs a 'lines', 'bipencil' or 'lattice' key")


def _load_json(text: str):
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError(f"invalid JSON: {exc}") from exc
    if not isinstance(obj, dict):
        raise InputError("top-level JSON value must be an object")
    return obj


def _parse_lines(raw) -> list[Line]:
    if not isinstance(raw, list) or not raw:
        raise InputError("'lines' must be a non-empty list")
    lines = []
    for entry in raw:
        if not isinstance(entry, list) or len(entry) != 3:
            raise InputError(f"line entry {entry!r} must have three coefficients")
        a, b, c = (parse_rational(x) for x in entry)
        if a == b == c == 0:
            raise InputError("zero line")
        lines.append(Line.of(a, b, c))
    return lines


def _parse_bipencil(raw) -> BiPencil:
    if not isinstance(raw, dict) or "lambdas" not in raw or "mus" not in raw:
        raise InputError("'bipencil' needs 'lambdas' and 'mus'")
    lambdas = tuple(sorted(parse_rational(x) for x in raw["lambdas"]))
    mus = tuple(sorted(parse_rational(x) for x in raw["mus"]))
    if len(lambdas) < len(mus):
        lambdas, mus = mus, lambdas
    return BiPencil(lambdas, mus)


def serialize_arrangement(arr: Arrangement) -> str:
    """Emit normalised representatives; parse(serialize(A)) == A."""
    payload = {"lines": [[format_rational(x) for x in ln.coeffs] for ln in arr.lines]}
    return json.dumps(payload, sort_keys=True)
