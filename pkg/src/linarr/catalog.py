"""Built-in arrangements and lattices used in tests and documentation."""

from __future__ import annotations

import random
from fractions import Fraction
from itertools import combinations, product

from .arrangement import Arrangement, BiPencil, IntersectionLattice, Line


def coordinate_triangle() -> Arrangement:
    return Arrangement([Line.of(1, 0, 0), Line.of(0, 1, 0), Line.of(0, 0, 1)])


def braid_a3() -> Arrangement:
    """The braid arrangement: the six lines through pairs of the four points
    e1, e2, e3, (1:1:1); four triple points and three double points."""
    return Arrangement(
        [
            Line.of(1, 0, 0),
            Line.of(0, 1, 0),
            Line.of(0, 0, 1),
            Line.of(0, 1, -1),
            Line.of(1, 0, -1),
            Line.of(1, -1, 0),
        ]
    )


def bipencil(lambdas, mus) -> BiPencil:
    lams = tuple(sorted(Fraction(x) for x in lambdas))
    ms = tuple(sorted(Fraction(x) for x in mus))
    if len(lams) < len(ms):
        lams, ms = ms, lams
    return BiPencil(lams, ms)


def random_bipencil(p: int, q: int, rng: random.Random, span: int = 20) -> BiPencil:
    """Distinct nonzero rational parameters drawn from a seeded generator."""
    vals: set[Fraction] = set()
    while len(vals) < p + q:
        num = rng.randint(-span, span)
        den = rng.randint(1, 6)
        x = Fraction(num, den)
        if x != 0:
            vals.add(x)
    ordered = sorted(vals)
    rng.shuffle(ordered)
    return bipencil(ordered[:p], ordered[p : p + q])


def generic_lines(n: int, rng: random.Random, span: int = 30) -> Arrangement:
    """n random rational lines with only double points (redrawn until
    generic)."""
    while True:
        coeffs = set()
        while len(coeffs) < n:
            cand = (rng.randint(-span, span), rng.randint(-span, span), rng.randint(-span, span))
            if cand != (0, 0, 0):
                coeffs.add(Line.of(*cand).coeffs)
        arr = Arrangement(Line(c) for c in sorted(coeffs))
        if all(p.multiplicity == 2 for p in arr.intersection_points()):
            return arr


def hesse_lattice() -> IntersectionLattice:
    """The intersection lattice of the Hesse arrangement: twelve lines with
    nine points of multiplicity four (and twelve double points).

    The arrangement consists of the twelve lines through the nine inflection
    points of a smooth cubic.  Those nine points realise the affine plane
    over GF(3), so the incidence structure is: arrangement lines <-> the
    twelve affine lines, quadruple points <-> the nine affine points.  No
    model with rational line coefficients exists (the nine quadruple points
    would violate the Sylvester-Gallai theorem), which is why this enters
    as a lattice.
    """
    affine_points = list(product(range(3), repeat=2))
    lines: list[frozenset[int]] = []
    seen = set()
    for a, b in product(range(3), repeat=2):
        for kind in ("slope", "vertical"):
            if kind == "slope":
                pts = frozenset(affine_points.index((x, (a * x + b) % 3)) for x in range(3))
            else:
                if a != 0:
                    continue
                pts = frozenset(affine_points.index((b, y)) for y in range(3))
            if pts not in seen:
                seen.add(pts)
                lines.append(pts)
    assert len(lines) == 12
    quadruple_points = []
    for pt_index in range(9):
        incident = frozenset(i for i, ln in enumerate(lines) if pt_index in ln)
        assert len(incident) == 4
        quadruple_points.append(incident)
    return IntersectionLattice.from_multiple_points(12, quadruple_points)


def near_pencil(n: int) -> Arrangement:
    """n - 1 concurrent lines plus one extra line (a near-pencil)."""
    if n < 3:
        raise ValueError("near-pencil needs n >= 3")
    lines = [Line.of(1, -k, 0) for k in range(n - 1)]  # all through (0:0:1)
    lines.append(Line.of(0, 0, 1))
    return Arrangement(lines)


def pencil(n: int) -> Arrangement:
    """n concurrent lines through (0:0:1)."""
    if n < 1:
        raise ValueError("pencil needs n >= 1")
    return Arrangement([Line.of(1, -k, 0) for k in range(n)])
