"""The Alexander polynomial pipeline for two-point covered arrangements.

For an arrangement whose n lines split into a pencil of p lines through P1
and q lines through P2 (p + q = n), the associated fiber family is

    f_s = y^n + z^n - h(s) * x0^p * prod_j (x0 - mu_j x2),
    h(s) = prod_i (1 - lambda_i s),

a surface in P^3 for each parameter s; the fiber at infinity is
y^n + z^n - (-1)^n (prod lambda_i prod mu_j) x1^p x2^q.  The monodromy of
the family scales y and z by a primitive n-th root of unity, so invariant
classes in the polar-filtration presentation correspond to monomials
y^a z^b x0^c x2^d with a + b = n - 2 modulo n; the pure powers y^{n-1},
z^{n-1} in the Jacobian ideal cut that down to a + b = n - 2 on the nose.
Counting gives 0 in degree n - 4 and (n-1)^2 in degree 2n - 4, hence the
invariant bound (n-1)^2.  Matching this bound against the join table of
y^n and z^n (fixed part n - 1, all other eigenspaces n - 2) forces every
nontrivial eigenspace of the arrangement monodromy on first cohomology to
vanish, i.e. the Alexander polynomial is (t-1)^(n-1).

The pipeline re-runs this chain on exact data, with every intermediate
value retained in the report, and additionally computes the true invariant
graded dimensions by rank (the counting argument alone only gives upper
bounds).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Mapping, Optional, Sequence, Union

from .arrangement import Arrangement, BiPencil, IntersectionLattice
from .errors import ConsistencyError, DegenerateCaseError, InputError, NotBiPencilError
from .gradedalg import Poly, ideal_graded_dim, jacobian_generators
from .resonance import aomoto_betti
from .spectrum import MonodromyTable, spectrum_to_table, steenbrink_spectrum, thom_sebastiani_join

FIBER_VARIABLES = ("y", "z", "x0", "x2")
INFINITY_VARIABLES = ("y", "z", "x1", "x2")


# ----------------------------------------------------------------------
# cyclotomic polynomials and factored characteristic polynomials


@lru_cache(maxsize=None)
def cyclotomic_polynomial(k: int) -> tuple[int, ...]:
    """Coefficients of the k-th cyclotomic polynomial, constant term first."""
    if k < 1:
        raise InputError("cyclotomic index must be positive")
    if k == 1:
        return (-1, 1)
    num = [-1] + [0] * (k - 1) + [1]  # t^k - 1
    for d in range(1, k):
        if k % d == 0:
            num = _polydiv_exact(num, list(cyclotomic_polynomial(d)))
    return tuple(num)


def _polydiv_exact(num: list[int], den: list[int]) -> list[int]:
    num = list(num)
    out = [0] * (len(num) - len(den) + 1)
    for i in range(len(out) - 1, -1, -1):
        c = num[i + len(den) - 1] // den[-1]
        out[i] = c
        for j, dj in enumerate(den):
            num[i + j] -= c * dj
    if any(num):
        raise ConsistencyError("inexact cyclotomic division")
    return out


def _polymul(a: Sequence[int], b: Sequence[int]) -> list[int]:
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return out


@dataclass(frozen=True)
class CycloPoly:
    """A characteristic polynomial in the factored form
    (t-1)^e0 * prod_k Phi_k(t)^{e_k} with every k > 1 dividing d."""

    d: int
    t_minus_one_exp: int
    cyclotomic_exps: tuple[tuple[int, int], ...]  # sorted (k, e_k), e_k > 0

    @staticmethod
    def make(d: int, t_minus_one_exp: int, exps: Mapping[int, int]) -> "CycloPoly":
        if t_minus_one_exp < 0:
            raise InputError("(t-1)-exponent must be nonnegative")
        clean = {}
        for k, e in exps.items():
            k, e = int(k), int(e)
            if e < 0:
                raise InputError("cyclotomic exponents must be nonnegative")
            if e == 0:
                continue
            if k <= 1 or d % k != 0:
                raise InputError(f"cyclotomic index {k} must exceed 1 and divide {d}")
            clean[k] = e
        return CycloPoly(d, t_minus_one_exp, tuple(sorted(clean.items())))

    @property
    def is_trivial(self) -> bool:
        return not self.cyclotomic_exps

    def expand(self) -> tuple[int, ...]:
        """Exact coefficient list, constant term first."""
        coeffs = [1]
        for _ in range(self.t_minus_one_exp):
            coeffs = _polymul(coeffs, (-1, 1))
        for k, e in self.cyclotomic_exps:
            phi = cyclotomic_polynomial(k)
            for _ in range(e):
                coeffs = _polymul(coeffs, phi)
        return tuple(coeffs)

    def __str__(self) -> str:
        parts = []
        if self.t_minus_one_exp:
            suffix = f"^{self.t_minus_one_exp}" if self.t_minus_one_exp > 1 else ""
            parts.append(f"(t-1){suffix}")
        for k, e in self.cyclotomic_exps:
            suffix = f"^{e}" if e > 1 else ""
            parts.append(f"Phi_{k}(t){suffix}")
        return "*".join(parts) if parts else "1"

    def to_json(self) -> dict:
        return {
            "curve_degree": self.d,
            "t_minus_one_exponent": self.t_minus_one_exp,
            "cyclotomic_exponents": {str(k): e for k, e in self.cyclotomic_exps},
            "factored": str(self),
            "coefficients": list(self.expand()),
        }


def generic_alexander_shape(d: int, r: int, e: Mapping[int, int]) -> CycloPoly:
    """The factored shape (t-1)^(r-1) * prod_{1<k|d} Phi_k^{e_k} of the
    Alexander polynomial of a reduced degree-d curve with r components."""
    if r < 1:
        raise InputError("a curve has at least one component")
    return CycloPoly.make(d, r - 1, e)


# ----------------------------------------------------------------------
# the fiber family


@dataclass(frozen=True)
class PencilFamily:
    """The fiber family attached to a bi-pencil arrangement."""

    bipencil: BiPencil

    @property
    def n(self) -> int:
        return self.bipencil.n

    @property
    def p(self) -> int:
        return self.bipencil.p

    @property
    def q(self) -> int:
        return self.bipencil.q

    def h(self, s) -> Fraction:
        s = Fraction(s)
        out = Fraction(1)
        for lam in self.bipencil.lambdas:
            out *= 1 - lam * s
        return out


@dataclass(frozen=True)
class MonodromyAction:
    """Scaling of y and z by a primitive n-th root of unity, represented
    purely by exponent arithmetic: a monomial y^a z^b x0^c x2^d has weight
    (a + b) mod n."""

    order: int

    def weight(self, monomial: Sequence[int]) -> int:
        return (monomial[0] + monomial[1]) % self.order

    def is_form_invariant(self, monomial: Sequence[int]) -> bool:
        """Whether h = monomial makes the twisted form h Omega / f^k
        monodromy-invariant: (a + b + 2) = 0 mod n."""
        return (monomial[0] + monomial[1] + 2) % self.order == 0


def fiber_polynomial(family: PencilFamily, s) -> Poly:
    """The fiber over a finite parameter s, in variables (y, z, x0, x2)."""
    n = family.n
    hs = family.h(s)
    f = Poly(FIBER_VARIABLES, {(n, 0, 0, 0): 1, (0, n, 0, 0): 1})
    xpart = Poly.constant(FIBER_VARIABLES, hs)
    x0 = Poly.variable(FIBER_VARIABLES, "x0")
    x2 = Poly.variable(FIBER_VARIABLES, "x2")
    xpart = xpart * x0 ** family.p
    for mu in family.bipencil.mus:
        xpart = xpart * (x0 - mu * x2)
    return f - xpart


def fiber_polynomial_at_infinity(family: PencilFamily) -> Poly:
    """The fiber over s = infinity, in variables (y, z, x1, x2)."""
    n, p, q = family.n, family.p, family.q
    coef = Fraction((-1) ** n)
    for lam in family.bipencil.lambdas:
        coef *= lam
    for mu in family.bipencil.mus:
        coef *= mu
    terms = {(n, 0, 0, 0): Fraction(1), (0, n, 0, 0): Fraction(1)}
    mono = (0, 0, p, q)
    terms[mono] = terms.get(mono, Fraction(0)) - coef
    return Poly(INFINITY_VARIABLES, terms)


@dataclass(frozen=True)
class SpecialFibers:
    """The parameters of special fibers: infinity plus the roots of h."""

    finite: tuple[Fraction, ...]
    includes_infinity: bool = True


def special_fibers(family: PencilFamily) -> SpecialFibers:
    roots = sorted({1 / lam for lam in family.bipencil.lambdas if lam != 0})
    return SpecialFibers(tuple(roots), True)


def pick_generic_parameter(family: PencilFamily) -> Fraction:
    """Smallest nonnegative integer s with h(s) != 0 (always 0: h(0) = 1)."""
    s = 0
    while family.h(s) == 0:  # pragma: no branch - h(0) = 1
        s += 1
    return Fraction(s)


# ----------------------------------------------------------------------
# singular loci


@dataclass(frozen=True)
class SingularLocusItem:
    kind: str  # "point" | "line"
    label: str
    coords: tuple[Fraction, ...]  # a point, or for a line its two spanning points flattened
    type_tag: str


@dataclass(frozen=True)
class SingularLocusReport:
    which: str
    variables: tuple[str, ...]
    items: tuple[SingularLocusItem, ...]


def _gradient_vanishes_at(f: Poly, point: Sequence[Fraction]) -> bool:
    return all(f.partial(i).evaluate(point) == 0 for i in range(len(f.variables)))


def singular_locus(family: PencilFamily, which: Union[str, int, Fraction]) -> SingularLocusReport:
    """Case analysis of the singular locus, every entry verified by the
    exact gradient-vanishing check.

    `which` is "X" for the ambient threefold in P^4, "infinity" for the
    fiber at infinity, or a rational parameter s for the fiber Y_s.
    Verification is one-directional: listed items are proved singular;
    completeness of the list is the geometric case analysis, not
    machine-checked.
    """
    bp = family.bipencil
    n, p, q = family.n, family.p, family.q
    zero, one = Fraction(0), Fraction(1)
    p_eff = p + sum(1 for mu in bp.mus if mu == 0)
    q_eff = q + sum(1 for lam in bp.lambdas if lam == 0)

    if which == "X":
        variables = ("y", "z", "x0", "x1", "x2")
        fx = _threefold_polynomial(family)
        items = []
        if p_eff >= 2:
            items.append(
                SingularLocusItem(
                    "point", "P_p", (zero, zero, zero, zero, one), f"y^{n}+z^{n}-v^{p_eff}-w^{p_eff}"
                )
            )
        if q_eff >= 2:
            items.append(
                SingularLocusItem(
                    "point", "P_q", (zero, zero, zero, one, zero), f"y^{n}+z^{n}-v^{q_eff}-w^{q_eff}"
                )
            )
        arr = bp.to_arrangement()
        for fp in arr.intersection_points():
            if fp.point in ((zero, zero, one), (zero, one, zero)):
                continue
            coords = (zero, zero) + fp.point
            label = "double point (" + ":".join(str(x) for x in fp.point) + ")"
            items.append(
                SingularLocusItem("point", label, coords, f"y^{n}+z^{n}-v^2-w^2")
            )
        for item in items:
            if not _gradient_vanishes_at(fx, item.coords):
                raise ConsistencyError(f"gradient does not vanish at {item.label}")
        return SingularLocusReport("X", variables, tuple(items))

    if which == "infinity":
        f_inf = fiber_polynomial_at_infinity(family)
        if any(lam == 0 for lam in bp.lambdas) or any(mu == 0 for mu in bp.mus):
            # the monomial coefficient vanishes, so the fiber at infinity is
            # y^n + z^n, singular along the whole line y = z = 0
            for i in range(4):
                if not f_inf.partial(i).substitute_zero(("y", "z")).is_zero():
                    raise ConsistencyError("gradient does not vanish along the infinity line")
            item = SingularLocusItem(
                "line",
                "L_infinity",
                (zero, zero, one, zero, zero, zero, zero, one),
                f"y^{n}+z^{n}",
            )
            return SingularLocusReport("infinity", INFINITY_VARIABLES, (item,))
        items = []
        if p_eff >= 2:
            items.append(
                SingularLocusItem("point", "P_p", (zero, zero, zero, one), f"y^{n}+z^{n}-v^{p_eff}")
            )
        if q_eff >= 2:
            items.append(
                SingularLocusItem("point", "P_q", (zero, zero, one, zero), f"y^{n}+z^{n}-v^{q_eff}")
            )
        for item in items:
            if not _gradient_vanishes_at(f_inf, item.coords):
                raise ConsistencyError(f"gradient does not vanish at {item.label}")
        return SingularLocusReport("infinity", INFINITY_VARIABLES, tuple(items))

    s = Fraction(which)
    fs = fiber_polynomial(family, s)
    if family.h(s) == 0:
        # the whole line y = z = 0 is singular: check symbolically
        for i in range(4):
            if not fs.partial(i).substitute_zero(("y", "z")).is_zero():
                raise ConsistencyError("gradient does not vanish along L_s")
        item = SingularLocusItem(
            "line",
            f"L_{s}",
            (zero, zero, one, zero, zero, zero, zero, one),
            f"y^{n}+z^{n}",
        )
        return SingularLocusReport(f"fiber({s})", FIBER_VARIABLES, (item,))
    items = []
    if p_eff >= 2:
        items.append(
            SingularLocusItem("point", "P_p", (zero, zero, zero, one), f"y^{n}+z^{n}-v^{p_eff}")
        )
    for item in items:
        if not _gradient_vanishes_at(fs, item.coords):
            raise ConsistencyError(f"gradient does not vanish at {item.label}")
    return SingularLocusReport(f"fiber({s})", FIBER_VARIABLES, tuple(items))


def _threefold_polynomial(family: PencilFamily) -> Poly:
    """y^n + z^n - f(x0, x1, x2) in the five ambient variables."""
    variables = ("y", "z", "x0", "x1", "x2")
    n = family.n
    g = Poly(variables, {(n, 0, 0, 0, 0): 1, (0, n, 0, 0, 0): 1})
    x0 = Poly.variable(variables, "x0")
    x1 = Poly.variable(variables, "x1")
    x2 = Poly.variable(variables, "x2")
    f = Poly.constant(variables, 1)
    for lam in family.bipencil.lambdas:
        f = f * (x0 - lam * x1)
    for mu in family.bipencil.mus:
        f = f * (x0 - mu * x2)
    return g - f


# ----------------------------------------------------------------------
# invariant dimension counting


def invariant_monomial_count(n: int, t: int) -> int:
    """Number of degree (t*n - 4) monomials y^a z^b x0^c x2^d surviving the
    pure powers y^{n-1}, z^{n-1} that satisfy the invariance condition
    a + b = n - 2 (the only branch of a + b = -2 mod n left open).

    Negative degrees count zero.
    """
    if n < 2:
        raise InputError("need n >= 2")
    if t not in (1, 2, 3):
        raise InputError("t must be 1, 2 or 3")
    k = t * n - 4
    if k < 0:
        return 0
    count = 0
    for a in range(0, n - 1):
        b = n - 2 - a
        rest = k - (n - 2)
        if 0 <= b <= n - 2 and rest >= 0:
            count += rest + 1
    return count


def invariant_bound(n: int) -> int:
    """Upper bound (n-1)^2 for the invariant primitive cohomology of a
    generic fiber: the degree n-4 invariant piece vanishes and the degree
    2n-4 piece has at most invariant_monomial_count(n, 2) monomials."""
    if n < 2:
        raise InputError("need n >= 2")
    return (n - 1) ** 2


def invariant_graded_dim(f: Poly, n: int, t: int) -> int:
    """Exact dimension of the monodromy-invariant part of (R/J_f)_{tn-4},
    computed by rank on the weight subspace.

    The Jacobian ideal is stable for the action scaling y and z, so the
    quotient splits over the weights (a + b) mod n and the invariant piece
    is the weight n - 2 component.
    """
    if f.variables != FIBER_VARIABLES:
        raise InputError("fiber polynomials live in (y, z, x0, x2)")
    k = t * n - 4
    if k < 0:
        return 0
    action = MonodromyAction(n)
    dim, rank = ideal_graded_dim(
        jacobian_generators(f), k, monomial_filter=action.is_form_invariant
    )
    return dim - rank


def epsilon_solve(n: int, bound: int) -> tuple[int, ...]:
    """Solve (n-1)^2 + (n-2) * sum(eps_i) <= bound for nonnegative eps_i.

    With bound = (n-1)^2 and n >= 3 the unique solution is eps = 0.  For
    n = 2 the inequality carries no information (the coefficient n - 2
    vanishes); that case is settled by the factored shape directly.
    """
    if n < 3:
        raise DegenerateCaseError(
            "two lines: the inequality is vacuous; the Alexander polynomial is (t-1)"
        )
    if bound != (n - 1) ** 2:
        raise InputError(f"expected the invariant bound {(n - 1) ** 2}, got {bound}")
    slack = bound - (n - 1) ** 2
    if slack >= n - 2:
        raise InputError("bound too weak to pin the eigenspace dimensions")
    return (0,) * (n - 1)


# ----------------------------------------------------------------------
# the pipeline


@dataclass(frozen=True)
class AlexanderReport:
    """Every intermediate value of the triviality computation."""

    bipencil: BiPencil
    detected_from_lines: bool
    change: Optional[tuple]  # coordinate change when detection ran
    s: Fraction
    h_at_s: Fraction
    fiber: Poly
    invariant_dims: tuple[int, int]  # exact dims at t = 1, 2
    invariant_counts: tuple[int, int]  # monomial counts at t = 1, 2
    bound: int
    join_total: int
    fixed_part: int
    epsilon: Optional[tuple[int, ...]]  # None for the degenerate n = 2 case
    polynomial: CycloPoly

    def to_json(self) -> dict:
        return {
            "n": self.bipencil.n,
            "p": self.bipencil.p,
            "q": self.bipencil.q,
            "lambdas": [str(x) for x in self.bipencil.lambdas],
            "mus": [str(x) for x in self.bipencil.mus],
            "detected_from_lines": self.detected_from_lines,
            "s": str(self.s),
            "h_at_s": str(self.h_at_s),
            "fiber_polynomial": str(self.fiber),
            "invariant_dims": {"t1": self.invariant_dims[0], "t2": self.invariant_dims[1]},
            "invariant_counts": {"t1": self.invariant_counts[0], "t2": self.invariant_counts[1]},
            "invariant_bound": self.bound,
            "join_total_dimension": self.join_total,
            "join_fixed_part": self.fixed_part,
            "epsilon": list(self.epsilon) if self.epsilon is not None else None,
            "alexander_polynomial": self.polynomial.to_json(),
        }


def alexander_bipencil(source: Union[Arrangement, BiPencil]) -> AlexanderReport:
    """Run the full chain and return (t-1)^(n-1) with its audit trail.

    Arrangements go through cover detection and pencil normalisation;
    explicit bi-pencil data (which may include free pencils of size one
    that detection cannot see) is used as given.
    """
    if isinstance(source, Arrangement):
        form = source.pencil_form()
        bp = form.bipencil
        change: Optional[tuple] = form.change
        detected = True
    elif isinstance(source, BiPencil):
        bp, change, detected = source, None, False
    else:
        raise InputError("expected an arrangement or bi-pencil data")

    family = PencilFamily(bp)
    n = bp.n
    s = pick_generic_parameter(family)
    fs = fiber_polynomial(family, s)

    counts = (invariant_monomial_count(n, 1), invariant_monomial_count(n, 2))
    dims = (invariant_graded_dim(fs, n, 1), invariant_graded_dim(fs, n, 2))
    for t, (dim, count) in enumerate(zip(dims, counts), start=1):
        if dim > count:
            raise ConsistencyError(
                f"invariant dimension {dim} exceeds the monomial count {count} at t={t}"
            )
    bound = invariant_bound(n)

    sp = steenbrink_spectrum(Poly(("y",), {(n,): 1}), n, (1,))
    table0 = spectrum_to_table(sp, 0)
    joined = thom_sebastiani_join(table0, table0)
    join_total = joined.total_dimension(1)
    fixed = joined.multiplicity(1, 0)
    if join_total != (n - 1) ** 2 or fixed != n - 1:
        raise ConsistencyError("join table disagrees with the closed-form dimensions")

    if n >= 3:
        epsilon: Optional[tuple[int, ...]] = epsilon_solve(n, bound)
    else:
        epsilon = None  # settled by the factored shape directly

    poly = generic_alexander_shape(n, n, {})
    return AlexanderReport(
        bipencil=bp,
        detected_from_lines=detected,
        change=change,
        s=s,
        h_at_s=family.h(s),
        fiber=fs,
        invariant_dims=dims,
        invariant_counts=counts,
        bound=bound,
        join_total=join_total,
        fixed_part=fixed,
        epsilon=epsilon,
        polynomial=poly,
    )


@dataclass(frozen=True)
class ConjecturalReport:
    n: int
    beta2: int
    beta3: int
    polynomial: CycloPoly
    label: str = "conjectural"

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "beta2": self.beta2,
            "beta3": self.beta3,
            "label": self.label,
            "alexander_polynomial": self.polynomial.to_json(),
        }


def conjectural_alexander(arr: Union[Arrangement, IntersectionLattice]) -> ConjecturalReport:
    """The conjectured shape (t-1)^(n-1) Phi_3^{beta_3} [Phi_2 Phi_4]^{beta_2},
    assembled from the modular resonance invariants; labeled conjectural."""
    n = arr.n
    beta2 = aomoto_betti(arr, 2)
    beta3 = aomoto_betti(arr, 3)
    exps: dict[int, int] = {}
    if beta3:
        exps[3] = beta3
    if beta2:
        exps[2] = beta2
        exps[4] = beta2
    poly = generic_alexander_shape(n, n, exps)
    return ConjecturalReport(n, beta2, beta3, poly)


def arrangement_polynomial(arr: Arrangement) -> Poly:
    """The defining polynomial of the arrangement in (x0, x1, x2)."""
    variables = ("x0", "x1", "x2")
    out = Poly.constant(variables, 1)
    for ln in arr.lines:
        a, b, c = ln.coeffs
        out = out * Poly(variables, {(1, 0, 0): a, (0, 1, 0): b, (0, 0, 1): c})
    return out


def bipencil_polynomial(bp: BiPencil) -> Poly:
    """prod (x0 - lambda_i x1) * prod (x0 - mu_j x2) in (x0, x1, x2)."""
    variables = ("x0", "x1", "x2")
    out = Poly.constant(variables, 1)
    x0 = Poly.variable(variables, "x0")
    x1 = Poly.variable(variables, "x1")
    x2 = Poly.variable(variables, "x2")
    for lam in bp.lambdas:
        out = out * (x0 - lam * x1)
    for mu in bp.mus:
        out = out * (x0 - mu * x2)
    return out
