"""
Knots of plane-curve branches.

A branch is given by a truncated Puiseux series ``y = sum c_i x^{e_i}``
with rational exponents. Its link in S^3 is an iterated torus knot
determined by the characteristic pairs, the places where a new
denominator enters the exponents. From the pairs we build the cabling
sequence and the Alexander polynomial; separately, intersection numbers
of two branches (equal to the linking numbers of their knots) are computed
exactly from the series.
"""
from __future__ import annotations

import math
import re
from dataclasses import dataclass, field
from fractions import Fraction
from functools import reduce
from typing import Iterable, Union

from .errors import (InvariantViolation, PreconditionError, SameBranchError,
                     TruncationError)
from .polynomial import IntegerPolynomial

DEFAULT_SERIES_BOUND = 256
SERIES_BOUND_CAP = 1 << 14


@dataclass(frozen=True)
class PuiseuxBranch:
    """
    ``y = sum c x^e`` over a finite list of ``(e, c)`` terms.

    ``multiplicity`` optionally declares the denominator ``m`` of the full
    series (the branch is then ``x = t^m``). If declared, the given terms
    must already use every prime factor of it, otherwise the truncation is
    too short to determine the knot.
    """
    terms: tuple[tuple[Fraction, Fraction], ...]
    multiplicity: int | None = None

    def __post_init__(self):
        terms = tuple((Fraction(e), Fraction(c)) for e, c in self.terms)
        prev = None
        for e, c in terms:
            if c == 0:
                raise PreconditionError(f"zero coefficient at exponent {e}")
            if e < 1:
                raise PreconditionError(
                    f"exponent {e} < 1: branch is tangent to the y-axis, "
                    "swap the coordinates")
            if prev is not None and e <= prev:
                raise PreconditionError("exponents must strictly increase")
            prev = e
        object.__setattr__(self, "terms", terms)
        if self.multiplicity is not None:
            m = self.multiplicity
            if m < 1:
                raise PreconditionError("multiplicity must be positive")
            for e, _ in terms:
                if m % e.denominator:
                    raise PreconditionError(
                        f"exponent {e} is not a multiple of 1/{m}")

    @classmethod
    def from_quadruples(cls, quads: Iterable[tuple[int, int, int, int]],
                        multiplicity: int | None = None) -> PuiseuxBranch:
        """Terms as ``(exp_num, exp_den, coeff_num, coeff_den)``."""
        return cls(tuple((Fraction(en, ed), Fraction(cn, cd))
                         for en, ed, cn, cd in quads), multiplicity)

    @classmethod
    def parametric(cls, m: int, y_terms: Iterable[tuple[int, int]]
                   ) -> PuiseuxBranch:
        """The branch ``x = t^m``, ``y = sum c t^k`` from ``(k, c)`` pairs."""
        terms = sorted((Fraction(k, m), Fraction(c)) for k, c in y_terms if c)
        return cls(tuple(terms), multiplicity=m)

    @property
    def m(self) -> int:
        if self.multiplicity is not None:
            return self.multiplicity
        return reduce(math.lcm, (e.denominator for e, _ in self.terms), 1)

    def y_in_t(self) -> dict[int, Fraction]:
        """Coefficients of ``y(t)`` when ``x = t^m``."""
        m = self.m
        return {int(e * m): c for e, c in self.terms}

    def certify(self) -> None:
        """Raise unless the terms already reach the declared denominator."""
        reached = reduce(math.lcm, (e.denominator for e, _ in self.terms), 1)
        if reached != self.m:
            raise TruncationError(
                f"terms only reach denominator {reached}, branch declares "
                f"{self.m}; more terms are needed")


@dataclass(frozen=True)
class CharacteristicPairs:
    """Puiseux characteristic pairs ``(p_k, q_k)``.

    The k-th characteristic exponent is ``q_k / (p_1 ... p_k)``.
    """
    pairs: tuple[tuple[int, int], ...] = ()

    def __post_init__(self):
        pairs = tuple((int(p), int(q)) for p, q in self.pairs)
        for p, q in pairs:
            if p < 2 or math.gcd(p, q) != 1:
                raise PreconditionError(f"invalid characteristic pair {(p, q)}")
        for (p0, q0), (p1, q1) in zip(pairs, pairs[1:]):
            if q1 <= p1 * q0:
                raise PreconditionError(
                    "characteristic exponents must increase")
        object.__setattr__(self, "pairs", pairs)

    def __len__(self):
        return len(self.pairs)

    def __iter__(self):
        return iter(self.pairs)


@dataclass(frozen=True)
class CablePresentation:
    """Stage 1 is the torus knot T(p_1, s_1); stage k cables stage k-1."""
    stages: tuple[tuple[int, int], ...] = field(default=())

    @property
    def is_unknot(self) -> bool:
        return not self.stages


def characteristic_pairs(b: PuiseuxBranch) -> CharacteristicPairs:
    """
    Record each exponent that enlarges the running common denominator.

    >>> b = PuiseuxBranch(((Fraction(3, 2), 1), (Fraction(7, 4), 1)))
    >>> characteristic_pairs(b).pairs
    ((2, 3), (2, 7))
    """
    b.certify()
    denom = 1
    pairs = []
    for e, _ in b.terms:
        new = math.lcm(denom, e.denominator)
        if new != denom:
            pairs.append((new // denom, int(e * new)))
            denom = new
    return CharacteristicPairs(tuple(pairs))


def newton_pairs(cp: CharacteristicPairs) -> list[tuple[int, int]]:
    """
    Newton pairs: first pair unchanged, later ``q`` replaced by the
    increment ``q_k - p_k q_{k-1}`` over the previous exponent.
    """
    out = []
    prev_q = None
    for p, q in cp.pairs:
        out.append((p, q if prev_q is None else q - p * prev_q))
        prev_q = q
    return out


def semigroup_generators(cp: CharacteristicPairs) -> list[int]:
    """Minimal generators of the value semigroup of the branch."""
    if not cp.pairs:
        return [1]
    n = math.prod(p for p, _ in cp.pairs)
    gens = [n]
    running = 1
    beta_prev = None
    for k, (p, q) in enumerate(cp.pairs):
        running *= p
        beta = q * (n // running)
        if k == 0:
            gens.append(beta)
        else:
            gens.append(cp.pairs[k - 1][0] * gens[-1] + beta - beta_prev)
        beta_prev = beta
    return gens


def conductor(cp: CharacteristicPairs) -> int:
    """Conductor of the semigroup; equals the Milnor number of the branch."""
    if not cp.pairs:
        return 0
    gens = semigroup_generators(cp)
    return sum((p - 1) * g for (p, _), g in zip(cp.pairs, gens[1:])) - gens[0] + 1


def cable_presentation(cp: CharacteristicPairs) -> CablePresentation:
    """
    Cabling parameters ``s_1 = q'_1``, ``s_k = q'_k + p_k p_{k-1} s_{k-1}``
    on the Newton pairs ``(p_k, q'_k)``.

    The genus count ``deg Delta`` must match the semigroup conductor; a
    mismatch is reported rather than hidden.
    """
    stages = []
    prev_p = prev_s = None
    for p, q in newton_pairs(cp):
        s = q if prev_s is None else q + p * prev_p * prev_s
        stages.append((p, s))
        prev_p, prev_s = p, s
    degree = 0
    for p, s in stages:
        degree = p * degree + (p - 1) * (s - 1)
    if degree != conductor(cp):
        raise InvariantViolation(
            f"cable {stages} has Alexander degree {degree} but pairs "
            f"{cp.pairs} have Milnor number {conductor(cp)}")
    return CablePresentation(tuple(stages))


def alexander_torus_knot(p: int, q: int) -> IntegerPolynomial:
    """
    ``(t^{pq} - 1)(t - 1) / ((t^p - 1)(t^q - 1))`` by exact division.

    >>> alexander_torus_knot(2, 5)
    IntegerPolynomial('t^4 - t^3 + t^2 - t + 1')
    """
    if p < 1 or q < 1:
        raise PreconditionError("torus knot parameters must be positive")
    if math.gcd(p, q) != 1:
        raise PreconditionError(f"T({p},{q}) is not a knot: gcd = {math.gcd(p, q)}")
    num = IntegerPolynomial.binomial(p * q).times_binomial(1)
    return num.div_binomial(p).div_binomial(q)


def alexander_iterated(c: CablePresentation) -> IntegerPolynomial:
    """Alexander polynomial of an iterated torus knot by the cabling formula."""
    delta = IntegerPolynomial([1])
    for p, s in c.stages:
        delta = delta.substitute_power(p) * alexander_torus_knot(p, s)
    return delta


def branch_alexander(b: PuiseuxBranch) -> IntegerPolynomial:
    return alexander_iterated(cable_presentation(characteristic_pairs(b)))


# --- intersection numbers -------------------------------------------------

@dataclass(frozen=True)
class BivariatePolynomial:
    """``f(x, y)`` as a sorted tuple of ``(coeff, i, j)`` meaning ``c x^i y^j``."""
    terms: tuple[tuple[int, int, int], ...]

    def __post_init__(self):
        acc: dict[tuple[int, int], int] = {}
        for c, i, j in self.terms:
            if i < 0 or j < 0:
                raise PreconditionError("negative exponent in polynomial")
            acc[(i, j)] = acc.get((i, j), 0) + int(c)
        terms = tuple(sorted((c, i, j) for (i, j), c in acc.items() if c))
        object.__setattr__(self, "terms", terms)

    @classmethod
    def parse(cls, text: str) -> BivariatePolynomial:
        """
        Parse expressions such as ``"y^2 - x^3"`` or ``"2*x*y + 3x^2 - y"``.

        >>> BivariatePolynomial.parse("y^2 - x^3").terms
        ((-1, 3, 0), (1, 0, 2))
        """
        s = text.replace(" ", "").replace("**", "^")
        if not s:
            raise PreconditionError("empty polynomial")
        if s[0] not in "+-":
            s = "+" + s
        pieces = re.findall(r"[+-][^+-]*", s)
        if "".join(pieces) != s:
            raise PreconditionError(f"cannot parse polynomial {text!r}")
        terms = []
        for piece in pieces:
            sign = -1 if piece[0] == "-" else 1
            body = piece[1:]
            m = re.fullmatch(r"(\d*)\*?((?:[xy](?:\^\d+)?\*?)*)", body)
            if not m or (not m.group(1) and not m.group(2)):
                raise PreconditionError(f"cannot parse term {piece!r} in {text!r}")
            coeff = int(m.group(1)) if m.group(1) else 1
            i = j = 0
            for var, exp in re.findall(r"([xy])(?:\^(\d+))?", m.group(2)):
                k = int(exp) if exp else 1
                if var == "x":
                    i += k
                else:
                    j += k
            terms.append((sign * coeff, i, j))
        return cls(tuple(terms))

    def __str__(self):
        parts = []
        for c, i, j in sorted(self.terms, key=lambda t: (-(t[1] + t[2]), -t[1])):
            mono = "*".join(
                [f"x^{i}" if i > 1 else "x"] * (i > 0)
                + [f"y^{j}" if j > 1 else "y"] * (j > 0))
            mag = abs(c)
            body = mono if mag == 1 and mono else (
                f"{mag}*{mono}" if mono else str(mag))
            parts.append(("-" if c < 0 else "+") + body)
        out = "".join(parts) or "0"
        return out[1:] if out.startswith("+") else out


def _truncated_mul(a: list, b: list, bound: int) -> list:
    out = [Fraction(0)] * bound
    for i, ca in enumerate(a):
        if ca:
            for j in range(min(len(b), bound - i)):
                if b[j]:
                    out[i + j] += ca * b[j]
    return out


def _order_by_substitution(b: PuiseuxBranch, f: BivariatePolynomial,
                           bound: int, cap: int) -> int:
    m = b.m
    ycoef = b.y_in_t()
    ydeg = max(ycoef, default=0)
    max_j = max((j for _, _, j in f.terms), default=0)
    exact_degree = max(m * i + ydeg * j for _, i, j in f.terms)
    while True:
        y = [Fraction(0)] * bound
        for k, c in ycoef.items():
            if k < bound:
                y[k] = c
        powers = [[Fraction(1)] + [Fraction(0)] * (bound - 1)]
        for _ in range(max_j):
            powers.append(_truncated_mul(powers[-1], y, bound))
        total = [Fraction(0)] * bound
        for c, i, j in f.terms:
            shift = m * i
            for k in range(bound - shift):
                if powers[j][k]:
                    total[k + shift] += c * powers[j][k]
        for k, v in enumerate(total):
            if v:
                return k
        if bound > exact_degree:
            raise SameBranchError(
                f"{f} vanishes identically on the branch")
        if bound >= cap:
            raise TruncationError(
                f"order exceeds the series bound {bound}")
        bound = min(2 * bound, cap)


def _puiseux_order(y1: dict, y2: dict, k: int) -> Fraction:
    """``ord_x(y1 - y2^{(k)})`` where ``y2^{(k)}`` is the k-th conjugate."""
    for e in sorted(set(y1) | set(y2)):
        c1 = y1.get(e, 0)
        c2 = y2.get(e, 0)
        twist = (k * e) % 1
        if twist == 0:
            same = c1 == c2
        elif twist == Fraction(1, 2):
            same = c1 == -c2
        else:
            same = c1 == 0 and c2 == 0
        if not same:
            return e
    raise SameBranchError("the two branches have identical series")


def _order_between_branches(b1: PuiseuxBranch, b2: PuiseuxBranch) -> int:
    y1 = dict(b1.terms)
    y2 = dict(b2.terms)
    total = sum(_puiseux_order(y1, y2, k) for k in range(b2.m))
    value = b1.m * total
    if value.denominator != 1:
        raise InvariantViolation(f"non-integral intersection number {value}")
    return int(value)


BranchOrCurve = Union[PuiseuxBranch, BivariatePolynomial]


def intersection_multiplicity(b1: BranchOrCurve, b2: BranchOrCurve, *,
                              bound: int = DEFAULT_SERIES_BOUND,
                              cap: int = SERIES_BOUND_CAP) -> int:
    """
    Intersection number at the origin of a branch with a curve or branch.

    With an implicit ``f2`` this is ``ord_t f2(x1(t), y1(t))``, evaluated in
    truncated power series whose length starts at ``bound`` and doubles up
    to ``cap``. Between two branches it is
    ``m1 * sum_k ord_x(y1 - y2^{(k)})`` over the conjugates of the second.

    >>> trefoil = PuiseuxBranch.parametric(2, [(3, 1)])
    >>> intersection_multiplicity(trefoil, BivariatePolynomial.parse("y"))
    3
    """
    if isinstance(b1, BivariatePolynomial):
        b1, b2 = b2, b1
    if isinstance(b1, BivariatePolynomial):
        raise PreconditionError("at least one argument must be a branch")
    b1.certify()
    if isinstance(b2, PuiseuxBranch):
        b2.certify()
        return _order_between_branches(b1, b2)
    if not b2.terms:
        raise SameBranchError("the zero polynomial contains every branch")
    if any(i == 0 and j == 0 for _, i, j in b2.terms):
        raise PreconditionError(f"{b2} does not pass through the origin")
    return _order_by_substitution(b1, b2, bound, cap)
