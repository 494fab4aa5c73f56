import cmath
import itertools
import math
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from brieskorn import pham
from brieskorn.errors import BudgetExceededError, PreconditionError
from brieskorn.pham import (Exponents, GeometryKind, SphereKind,
                            casson_invariant, characteristic_polynomial,
                            connectivity_statement, geometry_type,
                            is_homology_3_sphere, is_homotopy_sphere,
                            milnor_number, monodromy_spectrum,
                            picard_lefschetz_self_intersection, signature,
                            signature_counts, sphere_class, sum_distribution)

exponent_tuples = st.lists(st.integers(2, 7), min_size=2, max_size=5).map(tuple)


# --- independent oracles ---------------------------------------------------

def basis_tuples(a):
    return itertools.product(*(range(1, x) for x in a))


def brute_spectrum(a):
    counts = {}
    for ks in basis_tuples(a):
        r = sum(Fraction(k, x) for k, x in zip(ks, a)) % 1
        counts[r] = counts.get(r, 0) + 1
    return dict(sorted(counts.items()))


def brute_signature(a):
    pos = neg = 0
    for ks in basis_tuples(a):
        s = sum(Fraction(k, x) for k, x in zip(ks, a)) % 2
        if 0 < s < 1:
            pos += 1
        elif 1 < s < 2:
            neg += 1
    return pos - neg


def numeric_charpoly(a):
    roots = [cmath.exp(2j * cmath.pi * float(sum(Fraction(k, x) for k, x in zip(ks, a))))
             for ks in basis_tuples(a)]
    coeffs = np.poly(roots)[::-1]
    assert np.allclose(coeffs.imag, 0, atol=1e-6)
    return [int(round(c)) for c in coeffs.real]


# --- milnor number -------------------------------------------------------

@pytest.mark.parametrize("a,expected", [((2, 2, 2), 1), ((7, 2, 2, 2), 6),
                                        ((5, 3, 2), 8)])
def test_milnor_number_examples(a, expected):
    assert milnor_number(a) == expected


def test_milnor_number_counts_basis():
    assert milnor_number((5, 3, 2)) == sum(1 for _ in basis_tuples((5, 3, 2)))


@pytest.mark.parametrize("bad", [(2,), (), (2, 1), (3, 0, 2), (2.0, 3), (True, 3)])
def test_exponents_validation(bad):
    with pytest.raises(PreconditionError):
        Exponents(bad)


# --- spectrum ----------------------------------------------------------------

@pytest.mark.parametrize("a,expected", [
    ((2, 2, 2), {Fraction(1, 2): 1}),
    ((3, 2), {Fraction(1, 6): 1, Fraction(5, 6): 1}),
    ((2, 2), {Fraction(0): 1}),
])
def test_spectrum_examples(a, expected):
    assert monodromy_spectrum(a).as_dict() == expected


@settings(max_examples=80, deadline=None)
@given(exponent_tuples)
def test_spectrum_matches_brute_force(a):
    spectrum = monodromy_spectrum(a)
    assert spectrum.as_dict() == brute_spectrum(a)
    assert spectrum.total == milnor_number(a)
    L = Exponents(a).lcm
    for r, m in spectrum.entries:
        assert 0 <= r < 1 and L % r.denominator == 0
        assert spectrum.multiplicity((1 - r) % 1) == m


# --- characteristic polynomial ---------------------------------------------

@pytest.mark.parametrize("a,coeffs", [((3, 2), [1, -1, 1]), ((2, 2, 2), [1, 1]),
                                      ((2, 2), [-1, 1])])
def test_charpoly_examples(a, coeffs):
    assert list(characteristic_polynomial(a).coefficients) == coeffs


@settings(max_examples=60, deadline=None)
@given(st.lists(st.integers(2, 6), min_size=2, max_size=4).map(tuple)
       .filter(lambda a: milnor_number(a) <= 60))
def test_charpoly_matches_numeric_root_product(a):
    poly = characteristic_polynomial(a)
    assert list(poly.coefficients) == numeric_charpoly(a)
    assert poly.is_monic() and poly.degree == milnor_number(a)


def test_cyclotomic_multiplicities_reject_non_integral_spectrum():
    bad = pham.MonodromySpectrum(((Fraction(1, 3), 1),))
    with pytest.raises(pham.InvariantViolation):
        pham.cyclotomic_multiplicities(bad)


# --- distributions and determinism ---------------------------------------

@settings(max_examples=40, deadline=None)
@given(exponent_tuples)
def test_direct_and_convolution_agree(a):
    assert sum_distribution(a, method="direct") == \
        sum_distribution(a, method="convolution")


def test_worker_partitioning_is_invisible():
    a = (7, 5, 3, 2)
    base = sum_distribution(a, method="direct", workers=1)
    for w in (2, 3, 8):
        pham._distribution_cached.cache_clear()
        assert sum_distribution(a, method="direct", workers=w) == base


def test_budget_is_enforced():
    with pytest.raises(BudgetExceededError):
        monodromy_spectrum((6, 6, 6), budget=100)
    assert monodromy_spectrum((6, 6, 6), budget=125).total == 125


def test_budget_from_environment(monkeypatch):
    monkeypatch.setenv("BRIESKORN_BUDGET", "10")
    with pytest.raises(BudgetExceededError):
        signature((7, 5, 3, 2, 2))


def test_unknown_method():
    with pytest.raises(PreconditionError):
        sum_distribution((2, 3), method="fft")


# --- connectivity and Picard-Lefschetz ------------------------------------

@pytest.mark.parametrize("a,expected", [((2, 2, 2), 0), ((3, 2, 2, 2), 1),
                                        ((2,) * 6, 3)])
def test_connectivity(a, expected):
    assert connectivity_statement(a) == expected


@pytest.mark.parametrize("n,expected", [(4, 2), (2, -2), (3, 0), (1, 0), (8, 2), (6, -2)])
def test_picard_lefschetz(n, expected):
    assert picard_lefschetz_self_intersection(n) == expected


def test_picard_lefschetz_precondition():
    with pytest.raises(PreconditionError):
        picard_lefschetz_self_intersection(0)


# --- homotopy spheres ----------------------------------------------------

@pytest.mark.parametrize("a,expected", [((3, 2, 2, 2, 2, 2), True),
                                        ((3, 2, 2, 2), True),
                                        ((6, 3, 2, 2), False),
                                        ((2, 2, 2, 2), False),
                                        ((5, 3, 7, 11), True)])
def test_homotopy_sphere_examples(a, expected):
    assert is_homotopy_sphere(a) is expected


def test_homotopy_sphere_needs_n_at_least_3():
    with pytest.raises(PreconditionError):
        is_homotopy_sphere((2, 3, 5))


@pytest.mark.parametrize("n_plus_1", [4, 5])
def test_criterion_agrees_with_alexander_at_one(n_plus_1):
    for a in itertools.combinations_with_replacement(range(2, 7), n_plus_1):
        assert is_homotopy_sphere(a) == (abs(pham.characteristic_value(a, 1)) == 1), a


# --- signature ------------------------------------------------------------

@pytest.mark.parametrize("a,expected", [((2, 2, 2), -1), ((2, 2, 2, 2, 2), 1),
                                        ((5, 3, 2), -8)])
def test_signature_examples(a, expected):
    assert signature(a) == expected


@settings(max_examples=60, deadline=None)
@given(st.lists(st.integers(2, 7), min_size=3, max_size=5)
       .filter(lambda a: len(a) % 2 == 1).map(tuple))
def test_signature_matches_brute_force(a):
    assert signature(a) == brute_signature(a)
    c = signature_counts(a)
    assert c.positive + c.negative + c.zero == milnor_number(a)


@pytest.mark.parametrize("n", [2, 4, 6, 8])
def test_rank_one_anchor(n):
    assert signature((2,) * (n + 1)) == picard_lefschetz_self_intersection(n) // 2


def test_signature_needs_even_n():
    with pytest.raises(PreconditionError):
        signature((3, 2, 2, 2))


# --- sphere classes -------------------------------------------------------

def test_milnor_generator():
    sc = sphere_class((5, 3, 2, 2, 2))
    assert sc.kind is SphereKind.BP_CLASS
    assert (sc.k, sc.k_mod_28, sc.signature) == (1, 1, 8)


def test_kervaire_and_standard():
    assert sphere_class((3, 2, 2, 2, 2, 2)).kind is SphereKind.KERVAIRE_SPHERE
    assert sphere_class((7, 2, 2, 2)).kind is SphereKind.STANDARD_SPHERE


def test_not_a_homotopy_sphere_short_circuits():
    assert sphere_class((6, 3, 2, 2)).kind is SphereKind.NOT_HOMOTOPY_SPHERE


def test_bp_class_outside_dimension_seven_is_not_reduced():
    sc = sphere_class((5, 3, 2, 2, 2, 2, 2))
    assert sc.kind is SphereKind.BP_CLASS
    assert sc.k_mod_28 is None
    assert sc.k * 8 == sc.signature


@pytest.mark.parametrize("n", [3, 5, 7])
def test_mod8_rule_for_d_family(n):
    for d in range(3, 100, 2):
        expected = (SphereKind.STANDARD_SPHERE if d % 8 in (1, 7)
                    else SphereKind.KERVAIRE_SPHERE)
        assert sphere_class((d,) + (2,) * n).kind is expected, d


# --- three-manifolds ------------------------------------------------------

@pytest.mark.parametrize("a,expected", [((2, 3, 5), True), ((2, 3, 13), True),
                                        ((2, 2, 3), False)])
def test_homology_sphere(a, expected):
    assert is_homology_3_sphere(a) is expected


def test_homology_sphere_matches_alexander_at_one():
    for a in itertools.product(range(2, 10), repeat=3):
        assert is_homology_3_sphere(a) == (abs(pham.characteristic_value(a, 1)) == 1)


@pytest.mark.parametrize("a,kind,s", [((3, 3, 3), GeometryKind.NILPOTENT, Fraction(1)),
                                      ((5, 3, 2), GeometryKind.SPHERICAL, Fraction(31, 30)),
                                      ((7, 3, 2), GeometryKind.SL2_TILDE, Fraction(41, 42))])
def test_geometry(a, kind, s):
    g = geometry_type(a)
    assert g.kind is kind and g.reciprocal_sum == s


def test_triple_only_operations():
    for f in (geometry_type, is_homology_3_sphere):
        with pytest.raises(PreconditionError):
            f((2, 3, 5, 7))


def test_casson():
    assert casson_invariant((2, 3, 5)) == -1
    values = [casson_invariant((2, 3, 6 * k - 1)) for k in range(1, 6)]
    assert len(set(values)) == 5
    with pytest.raises(PreconditionError):
        casson_invariant((2, 2, 3))


def test_casson_divisibility():
    for a in itertools.combinations_with_replacement(range(2, 13), 3):
        if all(math.gcd(x, y) == 1 for x, y in itertools.combinations(a, 2)):
            assert signature(a) % 8 == 0, a


def test_operations_are_deterministic():
    a = (7, 5, 3, 2)
    assert monodromy_spectrum(a) == monodromy_spectrum(list(a))
    assert characteristic_polynomial(a) == characteristic_polynomial(Exponents(a))
