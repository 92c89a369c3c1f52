import random
from fractions import Fraction
from itertools import combinations

import pytest

from linarr import catalog
from linarr.arrangement import apply_projective_change
from linarr.errors import InputError
from linarr.linalg import rank_mod_p
from linarr.resonance import aomoto_betti, aomoto_complex


def betti_bruteforce(lat, p):
    """Independent oracle: present degree two as the full wedge square of
    GF(p)^n modulo the local three-term relations, and measure the kernel of
    sigma-multiplication into that quotient."""
    n = lat.n
    pairs = list(combinations(range(n), 2))
    idx = {pair: i for i, pair in enumerate(pairs)}
    rel_rows = []
    for inc in lat.points:
        for i, j, k in combinations(sorted(inc), 3):
            v = [0] * len(pairs)
            v[idx[(j, k)]] += 1
            v[idx[(i, k)]] -= 1
            v[idx[(i, j)]] += 1
            rel_rows.append(v)
    sigma_rows = []
    for t in range(n):
        v = [0] * len(pairs)
        for s in range(n):
            if s < t:
                v[idx[(s, t)]] += 1
            elif s > t:
                v[idx[(t, s)]] -= 1
        sigma_rows.append(v)
    # rank of the induced map A^1 -> wedge^2 / relations
    r_rel = rank_mod_p(rel_rows, p) if rel_rows else 0
    r_all = rank_mod_p(rel_rows + sigma_rows, p)
    kernel_dim = n - (r_all - r_rel)
    return kernel_dim - 1


ANCHORS = [
    (catalog.hesse_lattice(), 2, 2),
    (catalog.hesse_lattice(), 3, 0),
    (catalog.braid_a3(), 3, 1),
    (catalog.braid_a3(), 2, 0),
    (catalog.coordinate_triangle(), 2, 0),
    (catalog.coordinate_triangle(), 3, 0),
    (catalog.pencil(3), 3, 1),
    (catalog.bipencil([1, -1], [2, 3]).to_arrangement(), 2, 0),
    (catalog.bipencil([1, -1], [2, 3]).to_arrangement(), 3, 0),
    (catalog.bipencil([1, 2, 3], [-1, -2]).to_arrangement(), 2, 0),
    (catalog.bipencil([1, 2, 3], [-1, -2]).to_arrangement(), 3, 0),
]


@pytest.mark.parametrize("arr,p,expected", ANCHORS)
def test_calibration_anchors(arr, p, expected):
    assert aomoto_betti(arr, p) == expected


@pytest.mark.parametrize("arr,p,expected", ANCHORS)
def test_bruteforce_oracle_agrees(arr, p, expected):
    lat = arr if not hasattr(arr, "lattice") else arr.lattice()
    assert betti_bruteforce(lat, p) == expected


def test_dimensions_of_complex():
    slice2 = aomoto_complex(catalog.hesse_lattice(), 2)
    assert slice2.dim1 == 12
    assert slice2.dim2 == 9 * 3 + 12 * 1
    assert all(all(0 <= x < 2 for x in row) for row in slice2.matrix)
    a3 = aomoto_complex(catalog.braid_a3(), 3)
    assert a3.dim1 == 6
    assert a3.dim2 == 4 * 2 + 3 * 1


def test_sigma_lies_in_kernel():
    # column sums of the matrix vanish: sigma ^ sigma = 0
    for arr, p in ((catalog.braid_a3(), 3), (catalog.hesse_lattice(), 2)):
        sl = aomoto_complex(arr, p)
        for row in sl.matrix:
            assert sum(row) % p == 0


def test_generic_arrangements_have_zero_betti():
    rng = random.Random(9)
    for p in (2, 3, 5):
        for n in (2, 4, 6):
            arr = catalog.generic_lines(n, rng)
            assert aomoto_betti(arr, p) == 0
            assert betti_bruteforce(arr.lattice(), p) == 0


def test_projective_invariance():
    rng = random.Random(31)
    arrs = [catalog.braid_a3(), catalog.bipencil([1, -1], [2, 3]).to_arrangement()]
    for arr in arrs:
        for p in (2, 3):
            base = aomoto_betti(arr, p)
            for _ in range(3):
                while True:
                    m = tuple(
                        tuple(Fraction(rng.randint(-4, 4)) for _ in range(3))
                        for _ in range(3)
                    )
                    try:
                        moved = apply_projective_change(arr, m)
                        break
                    except InputError:
                        continue
                assert aomoto_betti(moved, p) == base


def test_line_permutation_invariance():
    from linarr.arrangement import Arrangement

    rng = random.Random(13)
    arr = catalog.braid_a3()
    for p in (2, 3):
        base = aomoto_betti(arr, p)
        for _ in range(4):
            lines = list(arr.lines)
            rng.shuffle(lines)
            assert aomoto_betti(Arrangement(lines), p) == base


def test_triple_point_betti3_matches_three_net_existence():
    # arrangements with only double and triple points: beta_3 != 0 iff a
    # 3-net exists (checked by exhaustive search in the multinet module)
    from linarr.multinet import search_multinets

    cases = [catalog.braid_a3(), catalog.coordinate_triangle(), catalog.pencil(3)]
    rng = random.Random(77)
    cases.append(catalog.generic_lines(5, rng))
    for arr in cases:
        lat = arr.lattice()
        assert all(len(pt) <= 3 for pt in lat.points)
        nets = [
            (c, v)
            for c, v in search_multinets(arr, 3, 1)
            if v.level in ("net", "trivial-net")
        ]
        assert (aomoto_betti(arr, 3) != 0) == bool(nets)


def test_not_prime_rejected():
    with pytest.raises(InputError):
        aomoto_betti(catalog.coordinate_triangle(), 4)
