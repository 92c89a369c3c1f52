import random
from fractions import Fraction

import numpy as np
import pytest

from linarr import linalg
from linarr.errors import InputError


def rank_plain_fractions(rows):
    """Independent oracle: textbook Gaussian elimination over Q."""
    m = [[Fraction(x) for x in row] for row in rows]
    if not m:
        return 0
    nrows, ncols = len(m), len(m[0])
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, nrows) if m[i][c] != 0), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        for i in range(r + 1, nrows):
            if m[i][c] != 0:
                f = m[i][c] / m[r][c]
                for j in range(c, ncols):
                    m[i][j] -= f * m[r][j]
        r += 1
        if r == nrows:
            break
    return r


def test_rank_exact_matches_plain_elimination_on_random_matrices():
    rng = random.Random(7)
    for _ in range(60):
        nr = rng.randint(1, 7)
        nc = rng.randint(1, 7)
        rows = [
            [Fraction(rng.randint(-5, 5), rng.randint(1, 4)) for _ in range(nc)]
            for _ in range(nr)
        ]
        assert linalg.rank_exact(rows) == rank_plain_fractions(rows)


def test_rank_exact_low_rank_structured():
    rows = [[1, 2, 3], [2, 4, 6], [1, 0, 1]]
    assert linalg.rank_exact(rows) == 2
    assert linalg.rank_exact([[0, 0], [0, 0]]) == 0
    assert linalg.rank_exact([]) == 0


def test_rank_mod_p_agrees_with_exact_for_good_primes():
    rng = random.Random(11)
    for _ in range(40):
        nr = rng.randint(1, 8)
        nc = rng.randint(1, 8)
        rows = [[rng.randint(-9, 9) for _ in range(nc)] for _ in range(nr)]
        r = linalg.rank_exact(rows)
        p = linalg.random_prime(30, rng)
        assert linalg.rank_mod_p(rows, p) == r


def test_rank_mod_p_small_fields():
    # rank drops mod 2: [[2]] is the zero matrix over GF(2)
    assert linalg.rank_mod_p([[2]], 2) == 0
    assert linalg.rank_mod_p([[2]], 3) == 1
    assert linalg.rank_mod_p([[1, 1], [1, 0], [0, 1]], 2) == 2


def test_kernel_backends_agree(monkeypatch):
    rng = random.Random(23)
    mats = []
    for _ in range(25):
        nr = rng.randint(1, 12)
        nc = rng.randint(1, 12)
        mats.append(np.array([[rng.randint(0, 6) for _ in range(nc)] for _ in range(nr)]))
    for p in (2, 3, 1073741789):  # 1073741789 is a 30-bit prime
        for a in mats:
            monkeypatch.setenv("LINARR_PURE_NUMPY", "1")
            r_np = linalg.rank_mod_p(a.copy(), p)
            monkeypatch.delenv("LINARR_PURE_NUMPY")
            r_nb = linalg.rank_mod_p(a.copy(), p)
            assert r_np == r_nb


def test_rank_exact_checked_roundtrip():
    rows = [[Fraction(1, 3), Fraction(2, 3)], [Fraction(1), Fraction(2)], [0, 1]]
    assert linalg.rank_exact_checked(rows) == 2


def test_is_prime_and_random_prime():
    known = {2, 3, 5, 7, 11, 13, 1073741789}
    for m in known:
        assert linalg.is_prime(m)
    for m in (0, 1, 4, 9, 1073741789 * 3):
        assert not linalg.is_prime(m)
    rng = random.Random(5)
    for _ in range(10):
        p = linalg.random_prime(30, rng)
        assert p.bit_length() == 30
        assert linalg.is_prime(p)


def test_bad_modulus_rejected():
    with pytest.raises(InputError):
        linalg.rank_mod_p([[1]], 1)
    with pytest.raises(InputError):
        linalg.rank_mod_p([[1]], 2**33)
