"""
Invariants of Brieskorn-Pham links.

The link K(a_0, ..., a_n) is the intersection of
``x_0^{a_0} + ... + x_n^{a_n} = 0`` with a small sphere in C^{n+1}. Its
Milnor fiber has a basis of vanishing cycles indexed by tuples
``0 < k_j < a_j`` and the monodromy acts on the basis element ``k`` by
``exp(2 pi i sum_j k_j / a_j)``. Everything here is derived from the
distribution of the sums ``sum_j k_j / a_j`` modulo 2, which we count
exactly with integers over the common denominator ``2 * lcm(a)``.

Two counting routes are provided. The direct route walks the tuples and
can be split across worker processes; the convolution route folds in one
exponent at a time and costs ``O(lcm * sum(a))`` regardless of the Milnor
number. They must agree exactly.
"""
from __future__ import annotations

import enum
import itertools
import math
import os
from collections import Counter
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache, reduce
from typing import Sequence, Union

from .errors import BudgetExceededError, InvariantViolation, PreconditionError
from .polynomial import (IntegerPolynomial, cyclotomic, cyclotomic_product,
                         divisors, euler_phi, mobius)

DEFAULT_BUDGET = 10 ** 7
BP8_ORDER = 28

METHODS = ("auto", "direct", "convolution")


@dataclass(frozen=True)
class Exponents:
    """Exponent tuple ``(a_0, ..., a_n)`` of a Brieskorn-Pham polynomial."""
    a: tuple[int, ...]

    def __post_init__(self):
        a = tuple(self.a)
        if len(a) < 2:
            raise PreconditionError(
                f"need at least two exponents, got {len(a)}")
        for x in a:
            if isinstance(x, bool) or not isinstance(x, int):
                raise PreconditionError(f"exponent {x!r} is not an integer")
            if x < 2:
                raise PreconditionError(f"exponent {x} must be >= 2")
        object.__setattr__(self, "a", a)

    @classmethod
    def of(cls, a: ExponentsLike) -> Exponents:
        if isinstance(a, Exponents):
            return a
        return cls(tuple(a))

    @property
    def n(self) -> int:
        """Complex dimension of the hypersurface; K has real dimension 2n - 1."""
        return len(self.a) - 1

    @property
    def lcm(self) -> int:
        return reduce(math.lcm, self.a)

    @property
    def milnor_number(self) -> int:
        return math.prod(x - 1 for x in self.a)

    def __iter__(self):
        return iter(self.a)

    def __len__(self):
        return len(self.a)

    def __str__(self):
        return "(" + ",".join(map(str, self.a)) + ")"


ExponentsLike = Union[Exponents, Sequence[int]]


@dataclass(frozen=True)
class MonodromySpectrum:
    """
    Monodromy eigenvalues ``exp(2 pi i c/d)`` as rotation numbers ``c/d``
    in ``[0, 1)`` with multiplicities, sorted by rotation number.
    """
    entries: tuple[tuple[Fraction, int], ...]

    @property
    def total(self) -> int:
        return sum(m for _, m in self.entries)

    def as_dict(self) -> dict[Fraction, int]:
        return dict(self.entries)

    def multiplicity(self, rotation) -> int:
        return self.as_dict().get(Fraction(rotation), 0)

    def order_counts(self) -> dict[int, int]:
        """Number of eigenvalues of each exact multiplicative order."""
        counts: Counter = Counter()
        for r, m in self.entries:
            counts[r.denominator] += m
        return dict(sorted(counts.items()))

    def __len__(self):
        return len(self.entries)


class SphereKind(enum.Enum):
    NOT_HOMOTOPY_SPHERE = "not-homotopy-sphere"
    STANDARD_SPHERE = "standard"
    KERVAIRE_SPHERE = "kervaire"
    BP_CLASS = "bp-class"


@dataclass(frozen=True)
class SphereClass:
    """
    Verdict of :func:`sphere_class`.

    ``k`` is signature/8 (even n only); ``k_mod_28`` is set when n = 4.
    ``detail`` names the invariant that decided the verdict.
    """
    kind: SphereKind
    detail: str
    k: int | None = None
    k_mod_28: int | None = None
    signature: int | None = None
    alexander_at_minus_one: int | None = None


class GeometryKind(enum.Enum):
    SPHERICAL = "spherical"
    NILPOTENT = "nilpotent"
    SL2_TILDE = "sl2-tilde"


@dataclass(frozen=True)
class GeometryType:
    kind: GeometryKind
    reciprocal_sum: Fraction


@dataclass(frozen=True)
class SignatureCounts:
    positive: int
    negative: int
    zero: int

    @property
    def signature(self) -> int:
        return self.positive - self.negative


def resolve_budget(budget: int | None) -> int:
    if budget is not None:
        return budget
    env = os.environ.get("BRIESKORN_BUDGET")
    return int(env) if env else DEFAULT_BUDGET


def check_budget(a: Exponents, budget: int | None) -> None:
    limit = resolve_budget(budget)
    if a.milnor_number > limit:
        raise BudgetExceededError(a.milnor_number, limit)


def milnor_number(a: ExponentsLike) -> int:
    """Rank of the middle homology of the Milnor fiber, ``prod(a_i - 1)``."""
    return Exponents.of(a).milnor_number


# --- sum distributions ----------------------------------------------------

def _direct_chunk(args):
    steps, modulus, first_values, rest = args
    counts = Counter()
    ranges = [first_values] + [range(1, a) for a in rest]
    for ks in itertools.product(*ranges):
        counts[sum(k * s for k, s in zip(ks, steps)) % modulus] += 1
    return counts


def _direct_distribution(a: tuple[int, ...], workers: int) -> tuple[int, ...]:
    L = reduce(math.lcm, a)
    modulus = 2 * L
    steps = [L // x for x in a]
    first = list(range(1, a[0]))
    workers = max(1, min(workers, len(first)))
    # fixed strided partition of the first coordinate; merging is addition
    chunks = [first[i::workers] for i in range(workers)]
    jobs = [(steps, modulus, chunk, a[1:]) for chunk in chunks]
    if workers == 1:
        parts = [_direct_chunk(jobs[0])]
    else:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            parts = list(pool.map(_direct_chunk, jobs))
    total = Counter()
    for part in parts:
        total.update(part)
    return tuple(total.get(r, 0) for r in range(modulus))


def _convolution_distribution(a: tuple[int, ...]) -> tuple[int, ...]:
    L = reduce(math.lcm, a)
    modulus = 2 * L
    dist = [0] * modulus
    dist[0] = 1
    for x in a:
        step = L // x
        out = [0] * modulus
        for r, c in enumerate(dist):
            if c:
                for k in range(1, x):
                    out[(r + k * step) % modulus] += c
        dist = out
    return tuple(dist)


def _pick_method(a: Exponents) -> str:
    direct_cost = a.milnor_number * len(a)
    conv_cost = 2 * a.lcm * sum(x - 1 for x in a)
    return "convolution" if conv_cost < direct_cost else "direct"


@lru_cache(maxsize=4096)
def _distribution_cached(a: tuple[int, ...], method: str,
                         workers: int) -> tuple[int, ...]:
    if method == "direct":
        return _direct_distribution(a, workers)
    return _convolution_distribution(a)


def sum_distribution(a: ExponentsLike, *, method: str = "auto",
                     workers: int = 1,
                     budget: int | None = None) -> tuple[int, ...]:
    """
    Count tuples ``0 < k_j < a_j`` by ``r = L * sum_j k_j/a_j mod 2L``.

    Entry ``r`` of the returned tuple (length ``2L``, ``L = lcm(a)``) is the
    number of tuples whose sum is congruent to ``r / L`` modulo 2.

    ``method`` is ``"direct"``, ``"convolution"`` or ``"auto"``. ``workers``
    only affects the direct route. The result does not depend on either.
    """
    a = Exponents.of(a)
    if method not in METHODS:
        raise PreconditionError(f"unknown method {method!r}")
    if workers < 1:
        raise PreconditionError("workers must be >= 1")
    check_budget(a, budget)
    if method == "auto":
        method = _pick_method(a)
    dist = _distribution_cached(a.a, method, workers)
    if sum(dist) != a.milnor_number:
        raise InvariantViolation(
            f"distribution for {a} has {sum(dist)} tuples, "
            f"expected {a.milnor_number}")
    return dist


# --- monodromy ------------------------------------------------------------

def monodromy_spectrum(a: ExponentsLike, **kw) -> MonodromySpectrum:
    """
    Exact eigenvalue multiset of the monodromy on the middle homology.

    >>> monodromy_spectrum((3, 2)).entries
    ((Fraction(1, 6), 1), (Fraction(5, 6), 1))
    """
    a = Exponents.of(a)
    dist = sum_distribution(a, **kw)
    L = a.lcm
    folded: Counter = Counter()
    for r, c in enumerate(dist):
        if c:
            folded[Fraction(r % L, L)] += c
    return MonodromySpectrum(tuple(sorted(folded.items())))


def cyclotomic_multiplicities(spectrum: MonodromySpectrum) -> dict[int, int]:
    """
    Multiplicity ``m_d`` of each ``Phi_d`` in the characteristic polynomial.

    Let ``C(e)`` be the number of eigenvalues with ``lambda^e = 1``. Mobius
    inversion over the divisor lattice recovers the count ``N_d`` of
    eigenvalues of exact order ``d``, and ``m_d = N_d / phi(d)``. A
    non-integral or negative quotient, or primitive roots of one order with
    unequal multiplicities, means the spectrum is not that of an integer
    matrix.
    """
    entries = spectrum.as_dict()
    if not entries:
        return {}
    L = reduce(math.lcm, (r.denominator for r in entries))

    def fixed_by(e):
        return sum(m for r, m in entries.items() if (r * e).denominator == 1)

    C = {e: fixed_by(e) for e in divisors(L)}
    result = {}
    for d in divisors(L):
        N = sum(mobius(d // e) * C[e] for e in divisors(d))
        m, rem = divmod(N, euler_phi(d))
        if rem or m < 0:
            raise InvariantViolation(
                f"order-{d} eigenvalue count {N} is not a multiple of phi({d})")
        if m:
            for c in range(d):
                if math.gcd(c, d) == 1 and entries.get(Fraction(c, d), 0) != m:
                    raise InvariantViolation(
                        f"primitive {d}-th roots have unequal multiplicities")
            result[d] = m
    return result


def characteristic_polynomial(a: ExponentsLike, **kw) -> IntegerPolynomial:
    """
    Characteristic polynomial of the monodromy, ``prod_d Phi_d(t)^{m_d}``.

    For a fibered link this is also its Alexander polynomial.

    >>> characteristic_polynomial((3, 2))
    IntegerPolynomial('t^2 - t + 1')
    """
    a = Exponents.of(a)
    spectrum = monodromy_spectrum(a, **kw)
    poly = cyclotomic_product(cyclotomic_multiplicities(spectrum))
    if poly.degree != a.milnor_number or not poly.is_monic():
        raise InvariantViolation(
            f"characteristic polynomial of {a} has degree {poly.degree}")
    return poly


def connectivity_statement(a: ExponentsLike) -> int:
    """The link is (n-2)-connected."""
    return Exponents.of(a).n - 2


# --- homotopy spheres -----------------------------------------------------

def gcd_graph_components(a: ExponentsLike) -> list[list[int]]:
    """Connected components of the graph joining i, j when gcd(a_i, a_j) > 1."""
    a = Exponents.of(a).a
    parent = list(range(len(a)))

    def find(i):
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    for i, j in itertools.combinations(range(len(a)), 2):
        if math.gcd(a[i], a[j]) > 1:
            parent[find(i)] = find(j)
    comps: dict[int, list[int]] = {}
    for i in range(len(a)):
        comps.setdefault(find(i), []).append(i)
    return sorted(comps.values())


def is_homotopy_sphere(a: ExponentsLike) -> bool:
    """
    Graph criterion for K(a) to be a homotopy (2n-1)-sphere, n >= 3.

    True when the gcd graph has at least two isolated vertices, or one
    isolated vertex together with another component of odd size whose
    exponents pairwise have gcd exactly 2.
    """
    a = Exponents.of(a)
    if a.n < 3:
        raise PreconditionError(
            f"homotopy-sphere criterion needs n >= 3, got n = {a.n}")
    comps = gcd_graph_components(a)
    isolated = sum(1 for c in comps if len(c) == 1)
    if isolated >= 2:
        return True
    if isolated == 0:
        return False
    for comp in comps:
        if len(comp) > 1 and len(comp) % 2 == 1 and all(
                math.gcd(a.a[i], a.a[j]) == 2
                for i, j in itertools.combinations(comp, 2)):
            return True
    return False


def picard_lefschetz_self_intersection(n: int) -> int:
    """Self-intersection of the vanishing cycle of ``sum x_i^2`` in C^{n+1}."""
    if n < 1:
        raise PreconditionError(f"n must be >= 1, got {n}")
    return {0: 2, 1: 0, 2: -2, 3: 0}[n % 4]


# --- signature ------------------------------------------------------------

def signature_counts(a: ExponentsLike, **kw) -> SignatureCounts:
    """
    Split the tuples by where ``sum_j k_j/a_j mod 2`` falls: in (0, 1),
    in (1, 2), or on an integer.
    """
    a = Exponents.of(a)
    if a.n % 2:
        raise PreconditionError(
            f"signature is defined for even n, got n = {a.n}")
    dist = sum_distribution(a, **kw)
    L = a.lcm
    pos = sum(dist[1:L])
    neg = sum(dist[L + 1:])
    zero = dist[0] + dist[L]
    if pos + neg + zero != a.milnor_number:
        raise InvariantViolation("signature counts do not partition the basis")
    return SignatureCounts(pos, neg, zero)


def signature(a: ExponentsLike, **kw) -> int:
    """
    Signature of the intersection form on the Milnor fiber (n even).

    Orientation is fixed so that the E8 singularity (5,3,2) has signature -8.

    >>> signature((5, 3, 2))
    -8
    """
    return signature_counts(a, **kw).signature


def characteristic_value(a: ExponentsLike, t: int, **kw) -> int:
    """``Delta(t)`` from the cyclotomic factorization, without expanding."""
    mults = cyclotomic_multiplicities(monodromy_spectrum(a, **kw))
    return math.prod(cyclotomic(d)(t) ** m for d, m in mults.items())


def alexander_at_minus_one(a: ExponentsLike, **kw) -> int:
    return characteristic_value(a, -1, **kw)


def sphere_class(a: ExponentsLike, **kw) -> SphereClass:
    """
    Place a homotopy-sphere link in bP_{2n}.

    Even n: the class is signature/8 times the Milnor generator, reduced
    mod 28 when n = 4. Odd n: the Arf invariant is read off the Alexander
    polynomial, standard if ``Delta(-1) = +-1 mod 8`` and Kervaire if
    ``+-3 mod 8``.
    """
    a = Exponents.of(a)
    if a.n < 3:
        raise PreconditionError(
            f"sphere classification needs n >= 3, got n = {a.n}")
    if not is_homotopy_sphere(a):
        return SphereClass(SphereKind.NOT_HOMOTOPY_SPHERE,
                           "gcd-graph criterion fails")
    if a.n % 2 == 0:
        sigma = signature(a, **kw)
        k, rem = divmod(sigma, 8)
        if rem:
            raise InvariantViolation(
                f"signature {sigma} of homotopy sphere {a} is not divisible by 8")
        return SphereClass(
            SphereKind.BP_CLASS, f"signature = {sigma}", k=k,
            k_mod_28=k % BP8_ORDER if a.n == 4 else None, signature=sigma)
    delta = alexander_at_minus_one(a, **kw)
    residue = delta % 8
    if residue in (1, 7):
        kind = SphereKind.STANDARD_SPHERE
    elif residue in (3, 5):
        kind = SphereKind.KERVAIRE_SPHERE
    else:
        raise InvariantViolation(
            f"Delta(-1) = {delta} is even for homotopy sphere {a}")
    return SphereClass(kind, f"Delta(-1) = {delta} = {residue} mod 8",
                       alexander_at_minus_one=delta)


# --- three-manifolds --------------------------------------------------------

def _require_triple(a: Exponents, what: str) -> None:
    if len(a) != 3:
        raise PreconditionError(f"{what} needs exactly three exponents")


def is_homology_3_sphere(a: ExponentsLike) -> bool:
    a = Exponents.of(a)
    _require_triple(a, "homology 3-sphere test")
    return all(math.gcd(x, y) == 1 for x, y in itertools.combinations(a.a, 2))


def geometry_type(a: ExponentsLike) -> GeometryType:
    """Spherical, nilpotent (Heisenberg) or universal-cover-of-SL(2,R) type."""
    a = Exponents.of(a)
    _require_triple(a, "geometry type")
    s = sum(Fraction(1, x) for x in a.a)
    if s > 1:
        kind = GeometryKind.SPHERICAL
    elif s == 1:
        kind = GeometryKind.NILPOTENT
    else:
        kind = GeometryKind.SL2_TILDE
    return GeometryType(kind, s)


def casson_invariant(a: ExponentsLike, **kw) -> int:
    """Casson invariant of a Brieskorn homology sphere, signature / 8."""
    a = Exponents.of(a)
    if not is_homology_3_sphere(a):
        raise PreconditionError(f"K{a} is not a homology 3-sphere")
    sigma = signature(a, **kw)
    lam, rem = divmod(sigma, 8)
    if rem:
        raise InvariantViolation(
            f"signature {sigma} of homology sphere K{a} is not divisible by 8")
    return lam

