"""Modular Aomoto-Betti numbers from the intersection lattice.

The degree-one piece of the arrangement's Orlik-Solomon algebra over GF(p)
has one generator e_l per line; the degree-two piece splits over the
multiple points, the local piece at a point P with incident lines
l_0 < l_1 < ... contributing the basis e_{l_0} ^ e_{l_j} (j >= 1) after
rewriting e_{l_i} ^ e_{l_j} = e_{l_0} ^ e_{l_j} - e_{l_0} ^ e_{l_i}.  The
differential is multiplication by the diagonal element sigma = sum_l e_l,
and

    beta_p = dim ker(sigma ^ . : degree 1 -> degree 2) - 1,

the subtracted 1 accounting for sigma itself (sigma ^ sigma = 0).  The two
calibration anchors for this normalisation: the Hesse lattice has beta_2 =
2, and every two-point covered arrangement has beta_2 = beta_3 = 0.

Everything here depends only on the lattice, so inputs may be arrangements
or bare lattices.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Union

from .arrangement import Arrangement, IntersectionLattice
from .errors import InputError
from .linalg import is_prime, rank_mod_p


@dataclass(frozen=True)
class AomotoComplexSlice:
    """The degree one-to-two slice of the mod-p Aomoto complex.

    The matrix has dim2 rows and dim1 = n columns with entries in
    {0, ..., p-1}; column l is sigma ^ e_l in the point-local basis.
    """

    p: int
    dim1: int
    dim2: int
    matrix: tuple[tuple[int, ...], ...]

    @property
    def rank(self) -> int:
        return rank_mod_p(self.matrix, self.p)

    @property
    def betti(self) -> int:
        return self.dim1 - self.rank - 1


def _as_lattice(arr: Union[Arrangement, IntersectionLattice]) -> IntersectionLattice:
    return arr.lattice() if isinstance(arr, Arrangement) else arr


def aomoto_complex(arr: Union[Arrangement, IntersectionLattice], p: int) -> AomotoComplexSlice:
    """Assemble the sigma-multiplication matrix over GF(p)."""
    if not is_prime(p):
        raise InputError(f"{p} is not prime")
    lat = _as_lattice(arr)
    n = lat.n
    rows: list[list[int]] = []
    for inc in lat.points:
        lines = sorted(inc)
        m = len(lines)
        # local rows j = 1..m-1 hold the coefficient of e_{l_0} ^ e_{l_j}
        local = [[0] * n for _ in range(m - 1)]
        for t, line_t in enumerate(lines):
            if t == 0:
                # sigma ^ e_{l_0} collects e_{l_s} ^ e_{l_0} = -e_{l_0} ^ e_{l_s}
                for s in range(1, m):
                    local[s - 1][line_t] = (local[s - 1][line_t] - 1) % p
            else:
                local[t - 1][line_t] = (local[t - 1][line_t] + m - 1) % p
                for s in range(1, m):
                    if s != t:
                        local[s - 1][line_t] = (local[s - 1][line_t] - 1) % p
        rows.extend(local)
    dim2 = sum(len(inc) - 1 for inc in lat.points)
    assert len(rows) == dim2
    return AomotoComplexSlice(p, n, dim2, tuple(tuple(r) for r in rows))


def aomoto_betti(arr: Union[Arrangement, IntersectionLattice], p: int) -> int:
    """beta_p of the arrangement; depends only on the intersection lattice."""
    return aomoto_complex(arr, p).betti
