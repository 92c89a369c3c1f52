import json
import random
from fractions import Fraction
from itertools import combinations
from math import comb

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from linarr.arrangement import (
    Arrangement,
    BiPencil,
    IntersectionLattice,
    Line,
    apply_projective_change,
    matrix_times_point,
    normalize_projective,
    parse_arrangement,
    parse_input,
    parse_rational,
    serialize_arrangement,
)
from linarr.errors import InputError, NotBiPencilError

TRIANGLE = '{"lines":[["1","0","0"],["0","1","0"],["0","0","1"]]}'
BIPENCIL22 = '{"bipencil":{"lambdas":["1","-1"],"mus":["2","3"]}}'


def braid_a3() -> Arrangement:
    # complete quadrilateral on the four points e1, e2, e3, (1:1:1)
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


def pairwise_intersections_oracle(arr):
    """Independent oracle: group pairwise cross products with raw Fractions."""
    pts = {}
    for i, j in combinations(range(arr.n), 2):
        (a1, b1, c1) = arr.lines[i].coeffs
        (a2, b2, c2) = arr.lines[j].coeffs
        x = (b1 * c2 - c1 * b2, c1 * a2 - a1 * c2, a1 * b2 - b1 * a2)
        x = normalize_projective(x)
        pts.setdefault(x, set()).update({i, j})
    return {pt: frozenset(inc) for pt, inc in pts.items()}


def test_parse_triangle():
    arr = parse_arrangement(TRIANGLE)
    assert arr.n == 3
    assert arr.lines[0] == Line.of(1, 0, 0)


def test_parse_bipencil_form():
    arr = parse_arrangement(BIPENCIL22)
    expected = {
        Line.of(1, -1, 0).coeffs,
        Line.of(1, 1, 0).coeffs,
        Line.of(1, 0, -2).coeffs,
        Line.of(1, 0, -3).coeffs,
    }
    assert {ln.coeffs for ln in arr.lines} == expected


def test_parse_rejects_duplicates_and_zero_lines():
    with pytest.raises(InputError):
        parse_arrangement('{"lines":[["1","0","0"],["1","0","0"]]}')
    with pytest.raises(InputError):
        parse_arrangement('{"lines":[["0","0","0"]]}')
    with pytest.raises(InputError):
        parse_arrangement('{"lines":[["1.5","0","0"]]}')


def test_parse_rational():
    assert parse_rational("3") == 3
    assert parse_rational("-2/7") == Fraction(-2, 7)
    assert parse_rational(4) == 4
    for bad in ("1.5", "1/0", "", "x", True, None):
        with pytest.raises(InputError):
            parse_rational(bad)


def test_triangle_lattice():
    arr = parse_arrangement(TRIANGLE)
    pts = arr.intersection_points()
    assert len(pts) == 3
    assert all(p.multiplicity == 2 for p in pts)


def test_bipencil22_lattice():
    arr = parse_arrangement(BIPENCIL22)
    pts = arr.intersection_points()
    zero, one = Fraction(0), Fraction(1)
    by_point = {p.point: p for p in pts}
    assert by_point[(zero, zero, one)].multiplicity == 2
    assert by_point[(zero, one, zero)].multiplicity == 2
    assert len(pts) == 6
    assert sorted(p.multiplicity for p in pts) == [2] * 6
    assert pairwise_intersections_oracle(arr) == {p.point: p.incident for p in pts}


def test_braid_arrangement_lattice():
    arr = braid_a3()
    mults = sorted(p.multiplicity for p in arr.intersection_points())
    assert mults == [2, 2, 2, 3, 3, 3, 3]
    assert pairwise_intersections_oracle(arr) == {
        p.point: p.incident for p in arr.intersection_points()
    }


def test_pair_count_invariant_and_permutation_independence():
    rng = random.Random(3)
    for _ in range(10):
        lines = set()
        while len(lines) < 5:
            cand = (rng.randint(-4, 4), rng.randint(-4, 4), rng.randint(-4, 4))
            if cand != (0, 0, 0):
                lines.add(Line.of(*cand).coeffs)
        arr = Arrangement(Line(c) for c in sorted(lines))
        pts = arr.intersection_points()
        assert sum(comb(p.multiplicity, 2) for p in pts) == comb(arr.n, 2)
        shuffled = list(arr.lines)
        rng.shuffle(shuffled)
        perm = {ln.coeffs: i for i, ln in enumerate(shuffled)}
        relabel = {
            frozenset(perm[arr.lines[i].coeffs] for i in p.incident): p.point for p in pts
        }
        arr2 = Arrangement(shuffled)
        assert {p.incident: p.point for p in arr2.intersection_points()} == relabel


def test_is_bipencil_on_standard_input():
    arr = parse_arrangement(BIPENCIL22)
    cover = arr.is_bipencil()
    assert cover is not None
    P1, P2, p, q = cover
    assert (p, q) == (2, 2)
    assert P1.point == (0, 0, 1)
    assert P2.point == (0, 1, 0)


def test_is_bipencil_rejects_triangle_and_generic_five_lines():
    assert parse_arrangement(TRIANGLE).is_bipencil() is None
    rng = random.Random(17)
    while True:
        lines = set()
        while len(lines) < 5:
            cand = (rng.randint(-6, 6), rng.randint(-6, 6), rng.randint(-6, 6))
            if cand != (0, 0, 0):
                lines.add(Line.of(*cand).coeffs)
        arr = Arrangement(Line(c) for c in sorted(lines))
        if all(p.multiplicity == 2 for p in arr.intersection_points()):
            break
    assert arr.is_bipencil() is None


def test_is_bipencil_exhaustive_pair_oracle():
    # oracle: try all pairs of flat points directly
    arrs = [
        parse_arrangement(BIPENCIL22),
        braid_a3(),
        parse_arrangement(TRIANGLE),
        BiPencil((Fraction(1), Fraction(2), Fraction(3)), (Fraction(-1), Fraction(-2))).to_arrangement(),
    ]
    for arr in arrs:
        pts = arr.intersection_points()
        expect = [
            (P, Q)
            for P, Q in combinations(pts, 2)
            if P.incident.isdisjoint(Q.incident)
            and len(P.incident | Q.incident) == arr.n
        ]
        got = arr.is_bipencil()
        assert (got is not None) == bool(expect)


def test_pencil_form_identity_on_standard_position():
    arr = parse_arrangement(BIPENCIL22)
    form = arr.pencil_form()
    assert form.bipencil.lambdas == (Fraction(-1), Fraction(1))
    assert form.bipencil.mus == (Fraction(2), Fraction(3))
    ident = tuple(
        tuple(Fraction(1 if i == j else 0) for j in range(3)) for i in range(3)
    )
    assert form.change == ident


def test_pencil_form_recovers_after_random_change():
    rng = random.Random(41)
    base = parse_arrangement(BIPENCIL22)
    for _ in range(6):
        while True:
            m = tuple(
                tuple(Fraction(rng.randint(-5, 5)) for _ in range(3)) for _ in range(3)
            )
            try:
                moved = apply_projective_change(base, m)
                break
            except InputError:
                continue
        form = moved.pencil_form()
        # the returned change must put the moved arrangement into the exact
        # standard position described by the returned parameters
        standard = apply_projective_change(moved, form.change)
        assert {ln.coeffs for ln in standard.lines} == {
            ln.coeffs for ln in form.bipencil.to_arrangement().lines
        }
        cover = moved.is_bipencil()
        std_p1 = matrix_times_point(form.change, cover[0].point)
        assert normalize_projective(std_p1) == (0, 0, 1)
        std_p2 = matrix_times_point(form.change, cover[1].point)
        assert normalize_projective(std_p2) == (0, 1, 0)


def test_pencil_form_not_bipencil():
    with pytest.raises(NotBiPencilError):
        parse_arrangement(TRIANGLE).pencil_form()


def test_bipencil_validation():
    with pytest.raises(InputError):
        BiPencil((Fraction(0), Fraction(1)), (Fraction(0),))  # two zeros
    with pytest.raises(InputError):
        BiPencil((Fraction(1), Fraction(1)), (Fraction(2),))  # repeated lambda
    with pytest.raises(InputError):
        BiPencil((Fraction(1),), ())  # q = 0
    bp = BiPencil((Fraction(0), Fraction(2)), (Fraction(1),))
    assert bp.n == 3


def test_serialize_roundtrip():
    for text in (TRIANGLE, BIPENCIL22):
        arr = parse_arrangement(text)
        again = parse_arrangement(serialize_arrangement(arr))
        assert again == arr


@settings(max_examples=60, deadline=None)
@given(
    st.lists(
        st.tuples(
            st.integers(-6, 6), st.integers(-6, 6), st.integers(-6, 6)
        ).filter(lambda t: t != (0, 0, 0)),
        min_size=1,
        max_size=6,
    )
)
def test_pair_count_invariant_hypothesis(coeff_list):
    seen = []
    for t in coeff_list:
        ln = Line.of(*t)
        if ln.coeffs not in {l.coeffs for l in seen}:
            seen.append(ln)
    arr = Arrangement(seen)
    pts = arr.intersection_points()
    assert sum(comb(p.multiplicity, 2) for p in pts) == comb(arr.n, 2)


def test_lattice_from_multiple_points_completion():
    lat = IntersectionLattice.from_multiple_points(4, [[0, 1, 2]])
    assert lat.n == 4
    assert lat.multiplicities() == {3: 1, 2: 3}
    with pytest.raises(InputError):
        IntersectionLattice.from_multiple_points(4, [[0, 1, 2], [0, 1, 3]])
    with pytest.raises(InputError):
        IntersectionLattice.from_multiple_points(3, [[0]])


def test_parse_input_forms():
    assert isinstance(parse_input(TRIANGLE), Arrangement)
    bp = parse_input(BIPENCIL22)
    assert isinstance(bp, BiPencil)
    lat = parse_input(json.dumps({"lattice": {"n": 3, "points": [[0, 1, 2]]}}))
    assert isinstance(lat, IntersectionLattice)
    assert lat.multiplicities() == {3: 1}
    with pytest.raises(InputError):
        parse_input("{}")


def test_arrangement_lattice_matches_points():
    arr = braid_a3()
    lat = arr.lattice()
    assert lat.n == 6
    assert lat.multiplicities() == {3: 4, 2: 3}
