import itertools
import math
from fractions import Fraction

import pytest
import sympy

from brieskorn.curves import (BivariatePolynomial, CablePresentation,
                              CharacteristicPairs, PuiseuxBranch,
                              alexander_iterated, alexander_torus_knot,
                              branch_alexander, cable_presentation,
                              characteristic_pairs, conductor,
                              intersection_multiplicity, newton_pairs,
                              semigroup_generators)
from brieskorn.errors import (PreconditionError, SameBranchError,
                              TruncationError)
from brieskorn.pham import characteristic_polynomial
from brieskorn.polynomial import IntegerPolynomial

F = Fraction


def branch(*terms, m=None):
    return PuiseuxBranch(tuple((F(e), F(c)) for e, c in terms), m)


# --- oracle: semigroup of the branch --------------------------------------

def semigroup_from_exponents(cp):
    """Generators from characteristic exponents via running gcds."""
    n = math.prod(p for p, _ in cp.pairs)
    betas = [n]
    running = 1
    for p, q in cp.pairs:
        running *= p
        betas.append(q * n // running)
    gcds = [betas[0]]
    for b in betas[1:]:
        gcds.append(math.gcd(gcds[-1], b))
    gens = [betas[0], betas[1]]
    for k in range(1, len(betas) - 1):
        gens.append(gcds[k - 1] // gcds[k] * gens[k] + betas[k + 1] - betas[k])
    return gens


def semigroup_alexander(gens):
    """(1 - t) * sum_{s in S} t^s, truncated at the conductor by brute force."""
    limit = 2 * math.prod(gens) + 2
    member = [False] * limit
    member[0] = True
    for s in range(1, limit):
        member[s] = any(s >= g and member[s - g] for g in gens)
    c = max(s for s in range(limit) if not member[s]) + 1
    series = [1 if member[s] else 0 for s in range(c)]
    poly = IntegerPolynomial(series) * IntegerPolynomial([1, -1])
    return poly + IntegerPolynomial.monomial(c), c


def valid_pair_lists(max_prod=8, max_s=40):
    out = []
    for p1 in range(2, max_prod + 1):
        for q1 in range(p1 + 1, max_s + 1):
            if math.gcd(p1, q1) == 1:
                out.append(((p1, q1),))
                for p2 in range(2, max_prod // p1 + 1):
                    for q2 in range(p2 * q1 + 1, p2 * q1 + 4 * max_s):
                        if math.gcd(p2, q2) == 1:
                            out.append(((p1, q1), (p2, q2)))
    kept = []
    for pairs in out:
        cable = cable_presentation(CharacteristicPairs(pairs))
        if all(s <= max_s for _, s in cable.stages):
            kept.append(pairs)
    return kept


# --- characteristic pairs -------------------------------------------------

def test_pairs_examples():
    assert characteristic_pairs(branch((F(3, 2), 1))).pairs == ((2, 3),)
    assert characteristic_pairs(branch((1, 1))).pairs == ()
    assert characteristic_pairs(branch((F(3, 2), 1), (F(7, 4), 1))).pairs == \
        ((2, 3), (2, 7))


def test_pairs_ignore_non_characteristic_terms():
    b = branch((2, 5), (F(5, 2), 1), (F(11, 4), 2), (3, -1), (F(13, 4), 7))
    assert characteristic_pairs(b).pairs == ((2, 5), (2, 11))


def test_truncation_error_when_declared_denominator_not_reached():
    b = branch((F(3, 2), 1), m=4)
    with pytest.raises(TruncationError):
        characteristic_pairs(b)


@pytest.mark.parametrize("terms", [[(F(1, 2), 1)], [(2, 0)], [(2, 1), (2, 3)],
                                   [(3, 1), (2, 1)]])
def test_branch_validation(terms):
    with pytest.raises(PreconditionError):
        branch(*terms)


def test_quadruple_format():
    b = PuiseuxBranch.from_quadruples([(3, 2, 1, 1), (7, 4, -1, 3)])
    assert b.terms == ((F(3, 2), F(1)), (F(7, 4), F(-1, 3)))


# --- cable presentation ---------------------------------------------------

def test_cable_examples():
    assert cable_presentation(CharacteristicPairs(((2, 3),))).stages == ((2, 3),)
    assert cable_presentation(CharacteristicPairs(())).is_unknot
    # Newton pair (2, 7 - 2*3) = (2, 1) gives s2 = 1 + 2*2*3
    cp = CharacteristicPairs(((2, 3), (2, 7)))
    assert newton_pairs(cp) == [(2, 3), (2, 1)]
    assert cable_presentation(cp).stages == ((2, 3), (2, 13))


def test_cable_degree_matches_milnor_number_of_branch():
    # semigroup <4, 6, 13>: conductor 16
    cp = CharacteristicPairs(((2, 3), (2, 7)))
    assert semigroup_generators(cp) == [4, 6, 13]
    assert conductor(cp) == 16
    assert alexander_iterated(cable_presentation(cp)).degree == 16


@pytest.mark.parametrize("pairs", valid_pair_lists(max_prod=8, max_s=40)[::3]
                         + [((2, 3), (2, 7), (2, 15)), ((2, 5), (3, 31)),
                            ((3, 4), (2, 9), (2, 19))])
def test_alexander_equals_semigroup_poincare_series(pairs):
    cp = CharacteristicPairs(pairs)
    gens = semigroup_from_exponents(cp)
    assert gens == semigroup_generators(cp)
    expected, c = semigroup_alexander(gens)
    delta = alexander_iterated(cable_presentation(cp))
    assert delta == expected
    assert delta.degree == c == conductor(cp)


# --- Alexander polynomials ------------------------------------------------

def test_torus_examples():
    assert alexander_torus_knot(2, 3) == IntegerPolynomial([1, -1, 1])
    assert alexander_torus_knot(1, 7) == IntegerPolynomial([1])
    assert alexander_torus_knot(2, 5) == IntegerPolynomial([1, -1, 1, -1, 1])
    with pytest.raises(PreconditionError):
        alexander_torus_knot(4, 6)


def test_torus_agrees_with_pham_characteristic_polynomial():
    for p in range(2, 13):
        for q in range(p + 1, 13):
            if math.gcd(p, q) == 1:
                delta = alexander_torus_knot(p, q)
                assert delta == characteristic_polynomial((p, q))
                assert delta.degree == (p - 1) * (q - 1)


def test_iterated_examples():
    assert alexander_iterated(CablePresentation(((2, 3),))) == IntegerPolynomial([1, -1, 1])
    assert alexander_iterated(CablePresentation(())) == IntegerPolynomial([1])
    trefoil = IntegerPolynomial([1, -1, 1])
    cabled = alexander_iterated(CablePresentation(((2, 3), (2, 13))))
    assert cabled == trefoil.substitute_power(2) * alexander_torus_knot(2, 13)


def test_branch_alexander_from_series():
    b = branch((F(3, 2), 1), (F(7, 4), 1))
    assert branch_alexander(b).degree == 16


def test_polynomials_are_palindromic_knot_polynomials_and_distinct():
    seen = {}
    for pairs in valid_pair_lists(max_prod=8, max_s=40):
        delta = alexander_iterated(cable_presentation(CharacteristicPairs(pairs)))
        assert delta.is_palindromic()
        assert abs(delta(1)) == 1
        key = delta.coefficients
        assert key not in seen, (pairs, seen.get(key))
        seen[key] = pairs
    assert len(seen) > 100


# --- intersection numbers -------------------------------------------------

CUSP = PuiseuxBranch.parametric(2, [(3, 1)])


def test_intersection_examples():
    assert intersection_multiplicity(CUSP, BivariatePolynomial.parse("y")) == 3
    assert intersection_multiplicity(CUSP, BivariatePolynomial.parse("x")) == 2
    with pytest.raises(SameBranchError):
        intersection_multiplicity(CUSP, BivariatePolynomial.parse("y^2 - x^3"))


def test_intersection_needs_curve_through_origin():
    with pytest.raises(PreconditionError):
        intersection_multiplicity(CUSP, BivariatePolynomial.parse("y - 1"))


def test_series_bound_doubles_and_caps():
    f = BivariatePolynomial.parse("y^2 - x^3 - x^40")
    assert intersection_multiplicity(CUSP, f, bound=4) == 80
    with pytest.raises(TruncationError):
        intersection_multiplicity(CUSP, f, bound=4, cap=32)


def implicit_equation(b):
    t, x, y = sympy.symbols("t x y")
    m = b.m
    yt = sum(int(c) * t ** k for k, c in b.y_in_t().items())
    res = sympy.resultant(x - t ** m, y - yt, t)
    poly = sympy.Poly(sympy.expand(res), x, y)
    return BivariatePolynomial(tuple((int(c), i, j) for (i, j), c in poly.terms()))


def sympy_order(b, f):
    t = sympy.Symbol("t")
    yt = sum(int(c) * t ** k for k, c in b.y_in_t().items())
    expr = sympy.expand(sum(c * t ** (b.m * i) * yt ** j for c, i, j in f.terms))
    return min(m[0] for m in sympy.Poly(expr, t).monoms())


CORPUS = [
    PuiseuxBranch.parametric(2, [(3, 1)]),
    PuiseuxBranch.parametric(2, [(5, 1)]),
    PuiseuxBranch.parametric(2, [(3, -1), (4, 1)]),
    PuiseuxBranch.parametric(3, [(4, 1)]),
    PuiseuxBranch.parametric(3, [(5, 2)]),
    PuiseuxBranch.parametric(4, [(6, 1), (7, 1)]),
    PuiseuxBranch.parametric(1, [(2, 1)]),
    PuiseuxBranch.parametric(1, [(1, 1)]),
    PuiseuxBranch.parametric(1, []),
]


@pytest.mark.parametrize("i,j", [(i, j) for i, j in itertools.combinations(range(len(CORPUS)), 2)])
def test_linking_is_symmetric_and_matches_resultant_oracle(i, j):
    b1, b2 = CORPUS[i], CORPUS[j]
    forward = intersection_multiplicity(b1, b2)
    assert forward == intersection_multiplicity(b2, b1)
    f2 = implicit_equation(b2)
    assert intersection_multiplicity(b1, f2) == forward
    assert sympy_order(b1, f2) == forward


def test_identical_branches_raise():
    with pytest.raises(SameBranchError):
        intersection_multiplicity(CUSP, PuiseuxBranch.parametric(2, [(3, -1)]))


def test_polynomial_parser():
    f = BivariatePolynomial.parse("2*x*y + 3x^2 - y - x y^2")
    assert sorted(f.terms) == sorted(((2, 1, 1), (3, 2, 0), (-1, 0, 1), (-1, 1, 2)))
    assert BivariatePolynomial.parse(str(f)) == f
    for bad in ["", "y^", "2z", "x++y"]:
        with pytest.raises(PreconditionError):
            BivariatePolynomial.parse(bad)
