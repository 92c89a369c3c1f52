"""Exact linear algebra kernels.

Rank over the rationals is computed by fraction-free (Bareiss) elimination
on Python integers, so results stay exact for arbitrarily large entries.
Rank over a prime field GF(p) is a dense elimination on int64 arrays; it is
the one numeric hot loop in the package and ships in two interchangeable
versions: a numba-compiled kernel (the default) and a vectorised numpy
fallback.  Setting the environment variable ``LINARR_PURE_NUMPY=1`` forces
the fallback; ``benchmarks/bench_modp.py`` compares the two.

Primes up to 31 bits are safe moduli: all intermediate products fit in
int64.
"""

from __future__ import annotations

import os
import random
from fractions import Fraction
from math import gcd, lcm
from typing import Sequence

import numpy as np

from .errors import ConsistencyError, InputError

try:
    from numba import njit

    _HAVE_NUMBA = True
except ImportError:  # pragma: no cover - numba is a declared dependency
    _HAVE_NUMBA = False

MAX_MODULUS_BITS = 31


def numba_enabled() -> bool:
    """True when the JIT kernel is importable and not disabled by env flag."""
    return _HAVE_NUMBA and os.environ.get("LINARR_PURE_NUMPY", "") != "1"


if _HAVE_NUMBA:

    @njit(cache=True)
    def _rank_mod_p_numba(a, p):  # pragma: no cover - exercised via rank_mod_p
        nrows, ncols = a.shape
        r = 0
        for c in range(ncols):
            if r == nrows:
                break
            piv = -1
            for i in range(r, nrows):
                if a[i, c] != 0:
                    piv = i
                    break
            if piv < 0:
                continue
            if piv != r:
                for j in range(c, ncols):
                    t = a[r, j]
                    a[r, j] = a[piv, j]
                    a[piv, j] = t
            # modular inverse by Fermat: p is prime
            inv = 1
            base = a[r, c] % p
            e = p - 2
            while e > 0:
                if e & 1:
                    inv = (inv * base) % p
                base = (base * base) % p
                e >>= 1
            for j in range(c, ncols):
                a[r, j] = (a[r, j] * inv) % p
            for i in range(r + 1, nrows):
                f = a[i, c]
                if f != 0:
                    for j in range(c, ncols):
                        a[i, j] = (a[i, j] - f * a[r, j]) % p
            r += 1
        return r


def _rank_mod_p_numpy(a: np.ndarray, p: int) -> int:
    nrows, ncols = a.shape
    r = 0
    for c in range(ncols):
        if r == nrows:
            break
        col = a[r:, c]
        nz = np.nonzero(col)[0]
        if nz.size == 0:
            continue
        piv = r + int(nz[0])
        if piv != r:
            a[[r, piv]] = a[[piv, r]]
        inv = pow(int(a[r, c]), p - 2, p)
        a[r, c:] = (a[r, c:] * inv) % p
        below = a[r + 1 :, c]
        hit = np.nonzero(below)[0]
        if hit.size:
            rows = r + 1 + hit
            a[rows, c:] = (a[rows, c:] - np.outer(below[hit], a[r, c:])) % p
        r += 1
    return r


def rank_mod_p(rows: Sequence[Sequence[int]] | np.ndarray, p: int) -> int:
    """Rank of an integer matrix over GF(p), p an odd-or-2 prime below 2^31.

    Entries may be arbitrary Python integers; they are reduced mod p before
    entering the int64 kernel.
    """
    if p < 2 or p.bit_length() > MAX_MODULUS_BITS:
        raise InputError(f"modulus {p} out of supported range")
    if isinstance(rows, np.ndarray):
        if rows.size == 0:
            return 0
        a = np.ascontiguousarray(rows % p, dtype=np.int64)
    else:
        reduced = [[int(x) % p for x in row] for row in rows]
        if not reduced or not reduced[0]:
            return 0
        a = np.array(reduced, dtype=np.int64)
    if numba_enabled():
        return int(_rank_mod_p_numba(a, p))
    return _rank_mod_p_numpy(a, p)


def _integer_rows(rows: Sequence[Sequence[Fraction | int]]) -> list[list[int]]:
    """Scale each row by the lcm of its denominators and strip common factors."""
    out = []
    for row in rows:
        fr = [Fraction(x) for x in row]
        den = 1
        for x in fr:
            den = lcm(den, x.denominator)
        ints = [int(x * den) for x in fr]
        g = 0
        for x in ints:
            g = gcd(g, x)
        if g > 1:
            ints = [x // g for x in ints]
        out.append(ints)
    return out


def rank_exact(rows: Sequence[Sequence[Fraction | int]]) -> int:
    """Rank over Q by fraction-free Gaussian elimination (Bareiss).

    Deterministic: pivots are the first nonzero entry in each column.
    """
    m = _integer_rows(rows)
    nrows = len(m)
    if nrows == 0:
        return 0
    ncols = len(m[0])
    r = 0
    prev = 1
    for c in range(ncols):
        if r == nrows:
            break
        piv = next((i for i in range(r, nrows) if m[i][c]), None)
        if piv is None:
            continue
        if piv != r:
            m[r], m[piv] = m[piv], m[r]
        pc = m[r][c]
        row_r = m[r]
        for i in range(r + 1, nrows):
            row_i = m[i]
            mic = row_i[c]
            for j in range(c, ncols):
                row_i[j] = (row_i[j] * pc - mic * row_r[j]) // prev
        prev = pc
        r += 1
    return r


_CHECK_SEED = 0x1F2E3D4C


def rank_exact_checked(rows: Sequence[Sequence[Fraction | int]]) -> int:
    """Exact rank with a modular cross-check.

    The rank over Q is the source of truth; it is re-derived modulo a couple
    of 30-bit primes, which catches elimination bugs cheaply.  A prime may
    legitimately lose rank, so only a repeated mismatch raises.
    """
    r = rank_exact(rows)
    ints = _integer_rows(rows)
    if not ints or not ints[0]:
        return r
    rng = random.Random(_CHECK_SEED)
    for _ in range(3):
        p = random_prime(30, rng)
        if rank_mod_p(ints, p) == r:
            return r
    raise ConsistencyError("rank over Q disagrees with rank mod three random primes")


def is_prime(m: int) -> bool:
    """Deterministic Miller-Rabin, valid for all m < 3.3e24."""
    if m < 2:
        return False
    for q in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        if m % q == 0:
            return m == q
    d = m - 1
    s = 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        x = pow(a, d, m)
        if x in (1, m - 1):
            continue
        for _ in range(s - 1):
            x = x * x % m
            if x == m - 1:
                break
        else:
            return False
    return True


def random_prime(bits: int, rng: random.Random) -> int:
    """A uniformly-drawn prime with the given bit length."""
    if not 2 <= bits <= MAX_MODULUS_BITS:
        raise InputError(f"bit length {bits} out of range")
    while True:
        cand = rng.getrandbits(bits) | (1 << (bits - 1)) | 1
        if is_prime(cand):
            return cand
