import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from linarr.errors import InputError
from linarr.gradedalg import (
    GradedQuotientReport,
    Poly,
    graded_quotient_dim,
    ideal_graded_dim,
    jacobian_generators,
    milnor_dims,
    monomials_of_weighted_degree,
    parse_poly,
)
from linarr.linalg import rank_exact, rank_mod_p, random_prime


def poly_y3z3():
    return parse_poly("y^3+z^3", ["y", "z"])


def test_parse_simple_sum():
    p = poly_y3z3()
    assert p.terms == {(3, 0): 1, (0, 3): 1}


def test_parse_quartic_with_parentheses():
    p = parse_poly("y^4+z^4-6*x0^2*(x0-2*x2)*(x0-3*x2)", ["y", "z", "x0", "x2"])
    assert p.is_homogeneous() and p.degree() == 4
    # expansion: -6*x0^2*(x0^2 - 5 x0 x2 + 6 x2^2)
    assert p.terms[(0, 0, 4, 0)] == -6
    assert p.terms[(0, 0, 3, 1)] == 30
    assert p.terms[(0, 0, 2, 2)] == -36
    assert p.terms[(4, 0, 0, 0)] == 1
    assert p.terms[(0, 4, 0, 0)] == 1


def test_parse_inhomogeneous_accepted():
    p = parse_poly("y^2+y", ["y", "z"])
    assert not p.is_homogeneous()
    assert p.degree() == 2


def test_parse_rational_coefficients_and_signs():
    p = parse_poly("-1/2*y + 3*z - z/3", ["y", "z"])
    assert p.terms == {(1, 0): Fraction(-1, 2), (0, 1): Fraction(8, 3)}


def test_parse_errors():
    with pytest.raises(InputError):
        parse_poly("y+w", ["y", "z"])  # unknown variable
    with pytest.raises(InputError):
        parse_poly("y^z", ["y", "z"])  # malformed exponent
    with pytest.raises(InputError):
        parse_poly("", ["y", "z"])  # empty polynomial
    with pytest.raises(InputError):
        parse_poly("y/(z)", ["y", "z"])  # non-constant divisor
    with pytest.raises(InputError):
        parse_poly("2 y", ["y"])  # missing operator
    with pytest.raises(InputError):
        parse_poly("y^-2", ["y"])


def test_print_parse_roundtrip_simple():
    for text, vars_ in [
        ("y^3+z^3", ["y", "z"]),
        ("-1/2*y*z + x0^2 - 7", ["y", "z", "x0"]),
        ("y^4+z^4-6*x0^2*(x0-2*x2)*(x0-3*x2)", ["y", "z", "x0", "x2"]),
    ]:
        p = parse_poly(text, vars_)
        assert parse_poly(str(p), vars_) == p


@settings(max_examples=80, deadline=None)
@given(
    st.dictionaries(
        st.tuples(st.integers(0, 4), st.integers(0, 4), st.integers(0, 4)),
        st.fractions(min_value=-9, max_value=9).filter(lambda f: f != 0),
        min_size=1,
        max_size=6,
    )
)
def test_print_parse_roundtrip_hypothesis(terms):
    p = Poly(("a", "b", "c"), terms)
    if p.is_zero():
        return
    assert parse_poly(str(p), ("a", "b", "c")) == p


def diff_oracle(p: Poly, i: int) -> Poly:
    """Independent term-by-term differentiation."""
    out = Poly.zero(p.variables)
    for mon, c in p.terms.items():
        if mon[i]:
            lowered = tuple(e - 1 if j == i else e for j, e in enumerate(mon))
            out = out + Poly(p.variables, {lowered: c * mon[i]})
    return out


def test_jacobian_generators():
    for n in (3, 5):
        f = parse_poly(f"y^{n}+z^{n}", ["y", "z"])
        gy, gz = jacobian_generators(f)
        assert gy == Poly(("y", "z"), {(n - 1, 0): n})
        assert gz == Poly(("y", "z"), {(0, n - 1): n})
    f = parse_poly("x0*x2", ["x0", "x2"])
    assert [str(g) for g in jacobian_generators(f)] == ["x2", "x0"]
    fs = parse_poly("y^4+z^4-(x0-2*x2)*(x0-3*x2)*x0^2", ["y", "z", "x0", "x2"])
    gens = jacobian_generators(fs)
    assert all(g.degree() == 3 for g in gens)
    for i, g in enumerate(gens):
        assert g == diff_oracle(fs, i)
    with pytest.raises(InputError):
        jacobian_generators(Poly.constant(("y",), 5))


def test_graded_quotient_single_variable_powers():
    for n in (2, 3, 6):
        f = parse_poly(f"y^{n}", ["y"])
        for j in range(0, n - 1):
            assert graded_quotient_dim(f, j).dim_quotient == 1
        for j in range(n - 1, n + 2):
            assert graded_quotient_dim(f, j).dim_quotient == 0


def test_graded_quotient_fermat_cubic():
    f = poly_y3z3()
    dims = [graded_quotient_dim(f, k).dim_quotient for k in range(4)]
    assert dims == [1, 2, 1, 0]
    assert sum(dims) == 4  # (3-1)^2


def test_graded_quotient_nondegenerate_quadric():
    f = parse_poly("x0^2+x2^2", ["x0", "x2"])
    assert graded_quotient_dim(f, 0).dim_quotient == 1
    for k in (1, 2, 3):
        assert graded_quotient_dim(f, k).dim_quotient == 0


def test_graded_quotient_report_invariants():
    f = poly_y3z3()
    rep = graded_quotient_dim(f, 2)
    assert isinstance(rep, GradedQuotientReport)
    assert rep.dim_quotient == rep.dim_rk - rep.rank
    assert rep.dim_rk == 3  # C(2 + 1, 1)
    assert graded_quotient_dim(f, -2).dim_rk == 0


def test_graded_quotient_requires_homogeneous():
    with pytest.raises(InputError):
        graded_quotient_dim(parse_poly("y^2+y", ["y", "z"]), 1)
    with pytest.raises(InputError):
        graded_quotient_dim(parse_poly("y+z", ["y", "z"]), 1)


def poincare_product(exponents):
    """Oracle: coefficients of prod_i (1 + t + ... + t^(a_i - 2))."""
    coeffs = [1]
    for a in exponents:
        block = [1] * (a - 1)
        out = [0] * (len(coeffs) + len(block) - 1)
        for i, c in enumerate(coeffs):
            for j, b in enumerate(block):
                out[i + j] += c * b
        coeffs = out
    return coeffs


def test_brieskorn_poincare_series_small():
    for a, b in [(2, 2), (3, 3), (3, 5), (4, 7)]:
        f = parse_poly(f"y^{a}+z^{b}", ["y", "z"])
        gens = jacobian_generators(f)
        expected = poincare_product([a, b])
        top = (a - 2) + (b - 2)
        dims = []
        for k in range(top + 3):
            dim, rank = ideal_graded_dim(gens, k)
            dims.append(dim - rank)
        assert dims[: top + 1] == expected
        assert dims[top + 1 :] == [0, 0]


def test_milnor_dims_weighted():
    # y^2 + z^3 with weights (3, 2): Milnor algebra 1, z with weighted
    # degrees 0 and 2
    f = parse_poly("y^2+z^3", ["y", "z"])
    assert milnor_dims(f, weights=(3, 2)) == [1, 0, 1]


def test_rank_matches_random_prime():
    rng = random.Random(19)
    f = parse_poly("y^4+z^4-(x0-2*x2)*(x0-3*x2)*x0^2", ["y", "z", "x0", "x2"])
    gens = jacobian_generators(f)
    k = 4
    basis = monomials_of_weighted_degree(4, k)
    index = {m: i for i, m in enumerate(basis)}
    rows = []
    for g in gens:
        for mult in monomials_of_weighted_degree(4, k - 3):
            row = [0] * len(basis)
            for mon, c in g.terms.items():
                prod = tuple(x + y for x, y in zip(mon, mult))
                row[index[prod]] = c
            rows.append(row)
    r = rank_exact(rows)
    for _ in range(3):
        p = random_prime(30, rng)
        assert rank_mod_p(rows, p) == r


def test_dim_invariant_under_linear_change():
    rng = random.Random(8)
    f = poly_y3z3()
    base = [graded_quotient_dim(f, k).dim_quotient for k in range(4)]
    for _ in range(5):
        while True:
            m = [[Fraction(rng.randint(-3, 3)) for _ in range(2)] for _ in range(2)]
            if m[0][0] * m[1][1] - m[0][1] * m[1][0] != 0:
                break
        g = f.linear_substitute(m)
        assert [graded_quotient_dim(g, k).dim_quotient for k in range(4)] == base


def test_monomial_order_deterministic():
    mons = monomials_of_weighted_degree(3, 2)
    assert mons == [(2, 0, 0), (1, 1, 0), (1, 0, 1), (0, 2, 0), (0, 1, 1), (0, 0, 2)]
