"""Steenbrink spectra and monodromy eigenvalue tables.

For a weighted-homogeneous polynomial f of degree d and weights w_i with an
isolated singularity, each weighted degree j with a nonzero Milnor algebra
piece contributes the spectrum number

    alpha = (j + w) / d - 1,    nu(alpha) = dim M(f)_j,

with w the sum of the weights.  The table of monodromy eigenvalues stores
exact exponents in Q/Z: alpha contributes the eigenvalue exp(-2 pi i
alpha), i.e. the exponent (-alpha) mod 1.  No complex numbers are ever
instantiated; every eigenvalue in scope is a root of unity.

Tables carry reduced cohomology.  The join rule: a degree-n table and a
degree-k table combine into degree n + k + 1, exponents adding in Q/Z and
multiplicities multiplying.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping, Optional, Sequence

from .errors import InputError, NonIsolatedSingularityError
from .gradedalg import Poly, ideal_graded_dim, jacobian_generators

Exponent = Fraction


@dataclass(frozen=True, order=True)
class SpectrumEntry:
    alpha: Fraction
    nu: int


class MonodromyTable:
    """Per-cohomological-degree eigenvalue multiplicities.

    Eigenvalues are stored as exact exponents in [0, 1); the eigenvalue is
    exp(2 pi i * exponent).  Multiplicities are positive.
    """

    __slots__ = ("entries",)

    def __init__(self, entries: Mapping[int, Mapping[Fraction, int]] | None = None):
        table: dict[int, dict[Fraction, int]] = {}
        for degree, eigs in (entries or {}).items():
            degree = int(degree)
            if degree < 0:
                raise InputError("cohomological degree must be nonnegative")
            row: dict[Fraction, int] = {}
            for exp, mult in eigs.items():
                mult = int(mult)
                if mult == 0:
                    continue
                if mult < 0:
                    raise InputError("multiplicities must be positive")
                exp = Fraction(exp) % 1
                row[exp] = row.get(exp, 0) + mult
            if row:
                table[degree] = row
        self.entries = table

    def degrees(self) -> list[int]:
        return sorted(self.entries)

    def multiplicity(self, degree: int, exponent) -> int:
        return self.entries.get(degree, {}).get(Fraction(exponent) % 1, 0)

    def total_dimension(self, degree: Optional[int] = None) -> int:
        if degree is not None:
            return sum(self.entries.get(degree, {}).values())
        return sum(sum(row.values()) for row in self.entries.values())

    def is_empty(self) -> bool:
        return not self.entries

    def __eq__(self, other) -> bool:
        return isinstance(other, MonodromyTable) and self.entries == other.entries

    def __repr__(self) -> str:
        parts = []
        for degree in self.degrees():
            row = ", ".join(
                f"{exp}:{mult}" for exp, mult in sorted(self.entries[degree].items())
            )
            parts.append(f"H^{degree}{{{row}}}")
        return "MonodromyTable(" + "; ".join(parts) + ")"

    def to_json(self) -> dict:
        return {
            "entries": {
                str(degree): {
                    f"{exp.numerator}/{exp.denominator}": mult
                    for exp, mult in sorted(self.entries[degree].items())
                }
                for degree in self.degrees()
            }
        }

    @staticmethod
    def from_json(obj: dict) -> "MonodromyTable":
        if not isinstance(obj, dict) or "entries" not in obj:
            raise InputError("monodromy table JSON needs an 'entries' key")
        entries: dict[int, dict[Fraction, int]] = {}
        for degree, row in obj["entries"].items():
            entries[int(degree)] = {Fraction(exp): int(mult) for exp, mult in row.items()}
        return MonodromyTable(entries)


def steenbrink_spectrum(
    f: Poly, d: int, weights: Sequence[int]
) -> list[SpectrumEntry]:
    """Spectrum entries sorted by alpha.

    The caller asserts the singularity is isolated; as a guard, the Milnor
    algebra must vanish just above its expected socle degree
    sum_i (d - 2 w_i), which forces vanishing everywhere above.
    """
    nvars = len(f.variables)
    weights = tuple(int(w) for w in weights)
    if len(weights) != nvars or any(w < 1 for w in weights):
        raise InputError("need one positive weight per variable")
    wd = f.weighted_degree(weights)
    if wd is None or wd != d or f.is_zero():
        raise InputError(f"polynomial is not weighted-homogeneous of degree {d}")
    gens = jacobian_generators(f)
    socle = sum(d - 2 * w for w in weights)
    for j in range(socle + 1, socle + max(weights) + 1):
        dim, rank = ideal_graded_dim(gens, j, weights)
        if dim != rank:
            raise NonIsolatedSingularityError(
                f"Milnor algebra does not vanish in weighted degree {j}"
            )
    w = sum(weights)
    entries = []
    for j in range(0, max(socle, 0) + 1):
        dim, rank = ideal_graded_dim(gens, j, weights)
        nu = dim - rank
        if nu > 0:
            alpha = Fraction(j + w, d) - 1
            if not (-1 < alpha < nvars):
                raise InputError(f"spectrum number {alpha} out of range (-1, {nvars})")
            entries.append(SpectrumEntry(alpha, nu))
    return entries


def spectrum_to_table(entries: Sequence[SpectrumEntry], cohom_degree: int) -> MonodromyTable:
    """Collect spectrum entries into the eigenvalue table of one monodromy
    operator: alpha contributes exponent (-alpha) mod 1."""
    row: dict[Fraction, int] = {}
    for entry in entries:
        exp = (-entry.alpha) % 1
        row[exp] = row.get(exp, 0) + entry.nu
    if not row:
        return MonodromyTable({})
    return MonodromyTable({cohom_degree: row})


def thom_sebastiani_join(tf: MonodromyTable, tg: MonodromyTable) -> MonodromyTable:
    """Join of two reduced-cohomology tables: degrees n and k combine into
    n + k + 1, exponents add in Q/Z, multiplicities multiply."""
    out: dict[int, dict[Fraction, int]] = {}
    for deg_f, row_f in tf.entries.items():
        for deg_g, row_g in tg.entries.items():
            target = out.setdefault(deg_f + deg_g + 1, {})
            for exp_f, mult_f in row_f.items():
                for exp_g, mult_g in row_g.items():
                    exp = (exp_f + exp_g) % 1
                    target[exp] = target.get(exp, 0) + mult_f * mult_g
    return MonodromyTable(out)


def power_spectrum_table(n: int, variables: int = 1) -> MonodromyTable:
    """Reduced-cohomology monodromy table of a single power v^n: the degree
    zero table with exponents a/n, a = 1..n-1, each of multiplicity one."""
    if n < 2:
        raise InputError("need exponent n >= 2")
    if variables != 1:
        raise InputError("only the one-variable power is supported here")
    return MonodromyTable({0: {Fraction(a, n): 1 for a in range(1, n)}})
