"""Sparse multivariate polynomials over Q and graded Jacobian quotients.

Monomials are exponent tuples against a declared variable list; terms map
monomials to nonzero rationals.  The graded piece of R/J_f in degree k is
computed as dim R_k minus the rank of the multiplication matrix whose rows
are m * df/dv_i over all monomials m of the complementary degree, with the
rank taken by fraction-free elimination over Q (a 30-bit modular pass
cross-checks every rank but is never the source of truth).

Monomial order everywhere: graded lexicographic in the declared variable
order, descending within a degree, so bases and matrices are deterministic.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from math import comb
from typing import Iterable, Optional, Sequence

from .errors import InputError
from .linalg import rank_exact_checked

Monomial = tuple[int, ...]


class Poly:
    """A polynomial with rational coefficients in named variables."""

    __slots__ = ("variables", "terms")

    def __init__(self, variables: Sequence[str], terms: Optional[dict] = None):
        self.variables = tuple(variables)
        clean: dict[Monomial, Fraction] = {}
        if terms:
            for mon, coef in terms.items():
                coef = Fraction(coef)
                if coef == 0:
                    continue
                mon = tuple(int(e) for e in mon)
                if len(mon) != len(self.variables) or any(e < 0 for e in mon):
                    raise InputError(f"bad exponent vector {mon}")
                clean[mon] = clean.get(mon, Fraction(0)) + coef
                if clean[mon] == 0:
                    del clean[mon]
        self.terms = clean

    # -- constructors -------------------------------------------------

    @staticmethod
    def zero(variables: Sequence[str]) -> "Poly":
        return Poly(variables)

    @staticmethod
    def constant(variables: Sequence[str], c) -> "Poly":
        return Poly(variables, {(0,) * len(tuple(variables)): Fraction(c)})

    @staticmethod
    def variable(variables: Sequence[str], name: str) -> "Poly":
        variables = tuple(variables)
        if name not in variables:
            raise InputError(f"unknown variable {name!r}")
        mon = tuple(1 if v == name else 0 for v in variables)
        return Poly(variables, {mon: Fraction(1)})

    # -- ring structure -----------------------------------------------

    def _check_same(self, other: "Poly") -> None:
        if self.variables != other.variables:
            raise InputError("polynomials live in different rings")

    def __add__(self, other: "Poly") -> "Poly":
        self._check_same(other)
        out = dict(self.terms)
        for mon, c in other.terms.items():
            out[mon] = out.get(mon, Fraction(0)) + c
        return Poly(self.variables, out)

    def __neg__(self) -> "Poly":
        return Poly(self.variables, {m: -c for m, c in self.terms.items()})

    def __sub__(self, other: "Poly") -> "Poly":
        return self + (-other)

    def __mul__(self, other) -> "Poly":
        if isinstance(other, (int, Fraction)):
            return Poly(self.variables, {m: c * other for m, c in self.terms.items()})
        self._check_same(other)
        out: dict[Monomial, Fraction] = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                mon = tuple(a + b for a, b in zip(m1, m2))
                out[mon] = out.get(mon, Fraction(0)) + c1 * c2
        return Poly(self.variables, out)

    __rmul__ = __mul__

    def __pow__(self, e: int) -> "Poly":
        if e < 0:
            raise InputError("negative exponent")
        result = Poly.constant(self.variables, 1)
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, Poly)
            and self.variables == other.variables
            and self.terms == other.terms
        )

    def __hash__(self):
        return hash((self.variables, frozenset(self.terms.items())))

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self) -> bool:
        return bool(self.terms)

    # -- structure queries ---------------------------------------------

    def degree(self) -> int:
        """Total degree; -1 for the zero polynomial."""
        return max((sum(m) for m in self.terms), default=-1)

    def is_homogeneous(self) -> bool:
        degrees = {sum(m) for m in self.terms}
        return len(degrees) <= 1

    def weighted_degree(self, weights: Sequence[int]) -> Optional[int]:
        """The common weighted degree, or None if terms disagree."""
        degs = {sum(e * w for e, w in zip(m, weights)) for m in self.terms}
        if len(degs) > 1:
            return None
        return degs.pop() if degs else 0

    def partial(self, var: int | str) -> "Poly":
        i = var if isinstance(var, int) else self.variables.index(var)
        out: dict[Monomial, Fraction] = {}
        for mon, c in self.terms.items():
            if mon[i] > 0:
                dm = list(mon)
                dm[i] -= 1
                out[tuple(dm)] = out.get(tuple(dm), Fraction(0)) + c * mon[i]
        return Poly(self.variables, out)

    def evaluate(self, point: Sequence[Fraction]) -> Fraction:
        total = Fraction(0)
        for mon, c in self.terms.items():
            val = c
            for e, x in zip(mon, point):
                val *= Fraction(x) ** e
            total += val
        return total

    def substitute_zero(self, names: Iterable[str]) -> "Poly":
        """Set the named variables to zero (result stays in the same ring)."""
        idxs = {self.variables.index(nm) for nm in names}
        out = {m: c for m, c in self.terms.items() if all(m[i] == 0 for i in idxs)}
        return Poly(self.variables, out)

    def linear_substitute(self, matrix: Sequence[Sequence[Fraction]]) -> "Poly":
        """Substitute v_i -> sum_j matrix[i][j] v_j."""
        nv = len(self.variables)
        images = []
        for i in range(nv):
            row = matrix[i]
            img = Poly(self.variables, {})
            for j in range(nv):
                if row[j]:
                    mon = tuple(1 if t == j else 0 for t in range(nv))
                    img = img + Poly(self.variables, {mon: Fraction(row[j])})
            images.append(img)
        result = Poly.zero(self.variables)
        for mon, c in self.terms.items():
            term = Poly.constant(self.variables, c)
            for i, e in enumerate(mon):
                if e:
                    term = term * images[i] ** e
            result = result + term
        return result

    def proportional_to(self, other: "Poly") -> bool:
        """True when self = c * other for a nonzero rational c."""
        self._check_same(other)
        if self.is_zero() or other.is_zero():
            return self.is_zero() and other.is_zero()
        if set(self.terms) != set(other.terms):
            return False
        mon = next(iter(self.terms))
        ratio = self.terms[mon] / other.terms[mon]
        return all(c == ratio * other.terms[m] for m, c in self.terms.items())

    # -- printing -------------------------------------------------------

    def sorted_terms(self) -> list[tuple[Monomial, Fraction]]:
        return sorted(self.terms.items(), key=lambda kv: (sum(kv[0]), kv[0]), reverse=True)

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        chunks = []
        for mon, coef in self.sorted_terms():
            factors = []
            for name, e in zip(self.variables, mon):
                if e == 1:
                    factors.append(name)
                elif e > 1:
                    factors.append(f"{name}^{e}")
            mag = abs(coef)
            if not factors:
                body = str(mag)
            elif mag == 1:
                body = "*".join(factors)
            else:
                body = "*".join([str(mag)] + factors)
            chunks.append(("-" if coef < 0 else "+", body))
        sign, body = chunks[0]
        out = ("-" if sign == "-" else "") + body
        for sign, body in chunks[1:]:
            out += f" {sign} {body}"
        return out

    def __repr__(self) -> str:
        return f"Poly({str(self)!r}, vars={self.variables})"


# ----------------------------------------------------------------------
# parser: signed sums of products of rationals, variables, powers and
# parenthesised subexpressions


_TOKEN_RE = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z_0-9]*)|([-+*/^()]))")


def _tokenize(text: str) -> list[tuple[str, str]]:
    tokens = []
    pos = 0
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        if m is None:
            raise InputError(f"unexpected character {text[pos]!r} at position {pos}")
        num, name, op = m.groups()
        if num is not None:
            tokens.append(("num", num))
        elif name is not None:
            tokens.append(("name", name))
        elif op is not None:
            tokens.append(("op", op))
        pos = m.end()
    return tokens


class _Parser:
    def __init__(self, tokens: list[tuple[str, str]], variables: tuple[str, ...]):
        self.tokens = tokens
        self.pos = 0
        self.variables = variables

    def peek(self):
        return self.tokens[self.pos] if self.pos < len(self.tokens) else (None, None)

    def take(self):
        tok = self.peek()
        self.pos += 1
        return tok

    def expect_op(self, op: str):
        kind, val = self.take()
        if kind != "op" or val != op:
            raise InputError(f"expected {op!r}")

    def parse_expr(self) -> Poly:
        sign = 1
        kind, val = self.peek()
        if kind == "op" and val in "+-":
            self.take()
            sign = -1 if val == "-" else 1
        result = self.parse_term() * sign
        while True:
            kind, val = self.peek()
            if kind == "op" and val in "+-":
                self.take()
                term = self.parse_term()
                result = result + (term if val == "+" else -term)
            else:
                return result

    def parse_term(self) -> Poly:
        result = self.parse_factor()
        while True:
            kind, val = self.peek()
            if kind == "op" and val == "*":
                self.take()
                result = result * self.parse_factor()
            elif kind == "op" and val == "/":
                self.take()
                divisor = self.parse_factor()
                if set(divisor.terms) != {(0,) * len(self.variables)}:
                    raise InputError("division is only allowed by nonzero constants")
                result = result * (1 / divisor.terms[(0,) * len(self.variables)])
            elif kind in ("num", "name") or (kind == "op" and val == "("):
                # implicit product, e.g. "2y" or ")(": keep explicit; reject
                raise InputError("missing operator between factors")
            else:
                return result

    def parse_factor(self) -> Poly:
        base = self.parse_atom()
        kind, val = self.peek()
        if kind == "op" and val == "^":
            self.take()
            ekind, eval_ = self.take()
            if ekind != "num":
                raise InputError("malformed exponent")
            return base ** int(eval_)
        return base

    def parse_atom(self) -> Poly:
        kind, val = self.take()
        if kind == "num":
            return Poly.constant(self.variables, int(val))
        if kind == "name":
            if val not in self.variables:
                raise InputError(f"unknown variable {val!r}")
            return Poly.variable(self.variables, val)
        if kind == "op" and val == "(":
            inner = self.parse_expr()
            self.expect_op(")")
            return inner
        if kind == "op" and val == "-":
            return -self.parse_atom()
        raise InputError(f"unexpected token {val!r}")


def parse_poly(text: str, variables: Sequence[str]) -> Poly:
    """Parse an expression over the declared variables.

    Grammar: signed sums of products of integer/rational literals,
    variables, nonnegative integer powers and parenthesised subexpressions.
    The empty string is rejected; inhomogeneous input is accepted.
    """
    variables = tuple(variables)
    if len(set(variables)) != len(variables) or not variables:
        raise InputError("variable list must be nonempty and duplicate-free")
    tokens = _tokenize(text)
    if not tokens:
        raise InputError("empty polynomial")
    parser = _Parser(tokens, variables)
    poly = parser.parse_expr()
    if parser.pos != len(tokens):
        raise InputError(f"trailing input near token {parser.pos}")
    return poly


# ----------------------------------------------------------------------
# graded pieces of Jacobian quotients


@dataclass(frozen=True)
class GradedQuotientReport:
    """Exact dimension data for one graded piece of R/J_f."""

    f: Poly
    k: int
    dim_rk: int
    rank: int
    dim_quotient: int

    def to_json(self) -> dict:
        return {
            "poly": str(self.f),
            "vars": list(self.f.variables),
            "degree": self.k,
            "dim_ambient": self.dim_rk,
            "rank": self.rank,
            "dim_quotient": self.dim_quotient,
        }


def jacobian_generators(f: Poly) -> list[Poly]:
    """Partial derivatives in declared variable order."""
    if f.degree() <= 0:
        raise InputError("constant polynomial has no Jacobian ideal")
    return [f.partial(i) for i in range(len(f.variables))]


def monomials_of_weighted_degree(
    nvars: int, k: int, weights: Optional[Sequence[int]] = None
) -> list[Monomial]:
    """All exponent tuples of the given (weighted) degree, graded-lex
    descending."""
    if weights is None:
        weights = [1] * nvars
    out: list[Monomial] = []

    def rec(i: int, remaining: int, prefix: tuple[int, ...]):
        if i == nvars - 1:
            if remaining % weights[i] == 0:
                out.append(prefix + (remaining // weights[i],))
            return
        for e in range(remaining // weights[i], -1, -1):
            rec(i + 1, remaining - e * weights[i], prefix + (e,))

    if k >= 0:
        rec(0, k, ())
    return out


def ideal_graded_dim(
    generators: Sequence[Poly],
    k: int,
    weights: Optional[Sequence[int]] = None,
    monomial_filter=None,
) -> tuple[int, int]:
    """(ambient dimension, rank) of the degree-k piece of the ideal spanned
    by weighted-homogeneous generators inside R_k.

    `monomial_filter` restricts both the ambient basis and the generator
    multiples to a subspace spanned by monomials; generators whose multiples
    leave the subspace are only used when every one of their monomials
    passes the filter, which holds for character subspaces of group actions
    fixing each generator's character.
    """
    if not generators:
        raise InputError("need at least one generator")
    nvars = len(generators[0].variables)
    if weights is None:
        weights = [1] * nvars
    basis = monomials_of_weighted_degree(nvars, k, weights)
    if monomial_filter is not None:
        basis = [m for m in basis if monomial_filter(m)]
    index = {m: i for i, m in enumerate(basis)}
    rows = []
    for g in generators:
        if g.is_zero():
            continue
        wd = g.weighted_degree(weights)
        if wd is None:
            raise InputError("generators must be weighted-homogeneous")
        rem = k - wd
        if rem < 0:
            continue
        for mult in monomials_of_weighted_degree(nvars, rem, weights):
            row = [Fraction(0)] * len(basis)
            keep = True
            for mon, c in g.terms.items():
                prod = tuple(a + b for a, b in zip(mon, mult))
                if prod in index:
                    row[index[prod]] = c
                elif monomial_filter is not None:
                    keep = False
                    break
                else:  # pragma: no cover - a product always has degree k
                    raise AssertionError("product fell outside the graded piece")
            if keep and any(row):
                rows.append(row)
    rank = rank_exact_checked(rows) if rows else 0
    return len(basis), rank


def graded_quotient_dim(f: Poly, k: int) -> GradedQuotientReport:
    """Dimension of (R / J_f)_k for homogeneous f of degree >= 2.

    Degrees below d - 1 (and negative k) see no Jacobian relations, so the
    rank is zero there and the quotient is all of R_k.
    """
    if not f.is_homogeneous():
        raise InputError("polynomial must be homogeneous")
    d = f.degree()
    if d < 2:
        raise InputError("degree must be at least 2")
    nvars = len(f.variables)
    if k < 0:
        return GradedQuotientReport(f, k, 0, 0, 0)
    dim_rk = comb(k + nvars - 1, nvars - 1)
    if k - (d - 1) < 0:
        return GradedQuotientReport(f, k, dim_rk, 0, dim_rk)
    dim, rank = ideal_graded_dim(jacobian_generators(f), k)
    assert dim == dim_rk
    return GradedQuotientReport(f, k, dim_rk, rank, dim_rk - rank)


def milnor_dims(f: Poly, weights: Optional[Sequence[int]] = None, top: Optional[int] = None) -> list[int]:
    """Dimensions of the graded pieces of the Milnor algebra R/J_f up to the
    given top degree (inclusive)."""
    gens = jacobian_generators(f)
    nvars = len(f.variables)
    if weights is None:
        weights = [1] * nvars
    if top is None:
        d = f.weighted_degree(weights)
        if d is None:
            raise InputError("polynomial must be weighted-homogeneous")
        top = sum(d - 2 * w for w in weights)
    dims = []
    for j in range(top + 1):
        dim, rank = ideal_graded_dim(gens, j, weights)
        dims.append(dim - rank)
    return dims
