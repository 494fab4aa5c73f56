"""
Command-line front end.

    brieskorn link 3 2 2 2 2 2
    brieskorn --json table bp8 1 28
    brieskorn curve --terms 3/2:1 7/4:1 --meet "y^2 - x^3"
    brieskorn plumb E8

Exit codes: 0 success, 1 internal invariant violation, 2 bad input,
3 enumeration budget exceeded.
"""
from __future__ import annotations

import argparse
import json
import os
import sys
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path
from typing import Any

from . import curves, pham, plumbing
from .errors import BudgetExceededError, InvariantViolation

EXIT_OK = 0
EXIT_INTERNAL = 1
EXIT_INPUT = 2
EXIT_BUDGET = 3

DEFAULT_MAX_DEGREE = 5000


@dataclass
class Report:
    """
    Result of one command. Every value is JSON-native: integers stay
    integers, rationals are ``"num/den"`` strings and polynomials are
    coefficient lists (constant term first) next to a rendered string.
    """
    command: str
    request: dict[str, Any]
    results: dict[str, Any] = field(default_factory=dict)
    notes: dict[str, str] = field(default_factory=dict)
    status: str = "ok"

    def add(self, key: str, value: Any, note: str | None = None) -> None:
        self.results[key] = value
        if note:
            self.notes[key] = note

    def to_dict(self) -> dict[str, Any]:
        return {"command": self.command, "request": self.request,
                "results": self.results, "notes": self.notes,
                "status": self.status}

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2) + "\n"

    @classmethod
    def from_json(cls, text: str) -> Report:
        d = json.loads(text)
        return cls(d["command"], d["request"], d["results"], d["notes"],
                   d["status"])

    def to_plain(self) -> str:
        lines = []
        for key, value in self.results.items():
            if key == "rows":
                for row in value:
                    lines.append(" ".join(f"{k}={_plain(v)}" for k, v in row.items()))
            else:
                lines.append(f"{key}: {_plain(value)}")
        return "\n".join(lines) + "\n"


def _plain(value: Any) -> str:
    if isinstance(value, bool):
        return "true" if value else "false"
    if value is None:
        return "-"
    if isinstance(value, (list, dict)):
        return json.dumps(value, separators=(",", ":"))
    return str(value)


def rational(x: Fraction) -> str:
    x = Fraction(x)
    return f"{x.numerator}/{x.denominator}"


# --- link ----------------------------------------------------------------

def _factored(mults: dict[int, int]) -> str:
    return " ".join(f"Phi_{d}" + (f"^{m}" if m > 1 else "")
                    for d, m in sorted(mults.items())) or "1"


def link_report(exponents, *, budget=None, workers=1, method="auto",
                max_degree=DEFAULT_MAX_DEGREE) -> Report:
    a = pham.Exponents.of(exponents)
    kw = {"budget": budget, "workers": workers, "method": method}
    rep = Report("link", {"exponents": list(a.a)})
    rep.add("exponents", list(a.a))
    rep.add("n", a.n, "complex dimension; the link has real dimension 2n-1")
    rep.add("milnor_number", a.milnor_number, "product of (a_i - 1)")
    rep.add("lcm", a.lcm)
    rep.add("connectivity", pham.connectivity_statement(a),
            "the link is (n-2)-connected")
    spectrum = pham.monodromy_spectrum(a, **kw)
    rep.add("spectrum", [[rational(r), m] for r, m in spectrum.entries],
            "rotation numbers c/d of eigenvalues exp(2 pi i c/d) with multiplicity")
    mults = pham.cyclotomic_multiplicities(spectrum)
    rep.add("cyclotomic_factors", [[d, m] for d, m in sorted(mults.items())],
            "Mobius inversion of eigenvalue-order counts")
    rep.add("characteristic_polynomial_factored", _factored(mults))
    if a.milnor_number <= max_degree:
        poly = pham.characteristic_polynomial(a, **kw)
        rep.add("characteristic_polynomial", str(poly))
        rep.add("characteristic_polynomial_coefficients", list(poly.coefficients),
                "constant term first")
    else:
        rep.add("characteristic_polynomial", None,
                f"degree {a.milnor_number} exceeds --max-degree {max_degree}; "
                "see the factored form")
    rep.add("alexander_at_1", pham.characteristic_value(a, 1, **kw))
    rep.add("alexander_at_minus_1", pham.characteristic_value(a, -1, **kw))
    if a.n >= 3:
        rep.add("homotopy_sphere", pham.is_homotopy_sphere(a),
                "gcd-graph criterion")
        sc = pham.sphere_class(a, **kw)
        rep.add("sphere_class", sc.kind.value, sc.detail)
        if sc.k is not None:
            rep.add("bp_multiple", sc.k, "signature / 8 times the Milnor generator")
        if sc.k_mod_28 is not None:
            rep.add("bp8_class", sc.k_mod_28, "reduced mod |bP_8| = 28")
    if a.n % 2 == 0:
        counts = pham.signature_counts(a, **kw)
        rep.add("signature", counts.signature,
                "#(sum k_j/a_j mod 2 in (0,1)) - #(in (1,2))")
        rep.add("signature_counts",
                {"positive": counts.positive, "negative": counts.negative,
                 "zero": counts.zero})
    if len(a) == 3:
        homology = pham.is_homology_3_sphere(a)
        rep.add("homology_sphere", homology, "exponents pairwise coprime")
        geom = pham.geometry_type(a)
        rep.add("geometry", geom.kind.value)
        rep.add("reciprocal_sum", rational(geom.reciprocal_sum))
        if homology:
            rep.add("casson", pham.casson_invariant(a, **kw), "signature / 8")
    return rep


# --- table ----------------------------------------------------------------

def table_report(family: str, start: int, end: int, *, n: int | None = None,
                 budget=None, workers=1, method="auto") -> Report:
    kw = {"budget": budget, "workers": workers, "method": method}
    if end < start:
        raise ValueError(f"empty range {start}..{end}")
    rows = []
    if family == "bp8":
        if start < 1:
            raise ValueError("bp8 needs k >= 1")
        for k in range(start, end + 1):
            a = (6 * k - 1, 3, 2, 2, 2)
            sc = pham.sphere_class(a, **kw)
            rows.append({"k": k, "exponents": list(a), "signature": sc.signature,
                         "multiple": sc.k, "class_mod_28": sc.k_mod_28})
        note = "x0^(6k-1) + x1^3 + x2^2 + x3^2 + x4^2; class = signature/8 mod 28"
        request = {"family": family, "start": start, "end": end}
    elif family == "kervaire":
        n = 3 if n is None else n
        if n < 3 or n % 2 == 0:
            raise ValueError(f"kervaire family needs odd n >= 3, got {n}")
        for d in range(max(start, 2), end + 1):
            if d % 2 == 0:
                continue
            a = (d,) + (2,) * n
            sc = pham.sphere_class(a, **kw)
            rule = "standard" if d % 8 in (1, 7) else "kervaire"
            rows.append({"d": d, "alexander_at_minus_1": sc.alexander_at_minus_one,
                         "residue_mod_8": sc.alexander_at_minus_one % 8,
                         "class": sc.kind.value, "d_mod_8_rule": rule})
        note = "x0^d + x1^2 + ... + xn^2, odd d; class from Delta(-1) mod 8"
        request = {"family": family, "start": start, "end": end, "n": n}
    else:
        raise ValueError(f"unknown family {family!r} (expected bp8 or kervaire)")
    rep = Report("table", request)
    rep.add("rows", rows, note)
    return rep


# --- curve ----------------------------------------------------------------

def parse_terms(tokens) -> curves.PuiseuxBranch:
    """Terms written ``exponent:coefficient`` with rationals like ``3/2:1``."""
    terms = []
    for tok in tokens:
        for piece in tok.replace(",", " ").split():
            if ":" not in piece:
                raise ValueError(f"term {piece!r} is not exponent:coefficient")
            e, c = piece.split(":", 1)
            terms.append((Fraction(e), Fraction(c)))
    return curves.PuiseuxBranch(tuple(sorted(terms)))


def parse_branch_file(text: str, multiplicity=None) -> curves.PuiseuxBranch:
    """One term per line: ``exp_num exp_den coeff_num coeff_den``."""
    quads = []
    for lineno, line in enumerate(text.splitlines(), 1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        fields = line.replace(",", " ").split()
        if len(fields) != 4:
            raise ValueError(f"line {lineno}: expected four integers")
        quads.append(tuple(int(f) for f in fields))
    return curves.PuiseuxBranch.from_quadruples(sorted(
        quads, key=lambda q: Fraction(q[0], q[1])), multiplicity)


def _with_multiplicity(b: curves.PuiseuxBranch, m) -> curves.PuiseuxBranch:
    return b if m is None else curves.PuiseuxBranch(b.terms, m)


def curve_report(branch: curves.PuiseuxBranch, *, meet=None,
                 meet_branch=None) -> Report:
    rep = Report("curve", {"terms": [[rational(e), rational(c)]
                                     for e, c in branch.terms],
                           "multiplicity": branch.multiplicity})
    cp = curves.characteristic_pairs(branch)
    rep.add("characteristic_pairs", [list(p) for p in cp.pairs],
            "exponents where the common denominator grows")
    rep.add("newton_pairs", [list(p) for p in curves.newton_pairs(cp)])
    cable = curves.cable_presentation(cp)
    rep.add("unknot", cable.is_unknot)
    rep.add("cable_stages", [list(s) for s in cable.stages],
            "stage 1 is T(p1,s1); each later stage is a (p,s) cable")
    rep.add("semigroup_generators", curves.semigroup_generators(cp))
    rep.add("milnor_number", curves.conductor(cp), "semigroup conductor")
    delta = curves.alexander_iterated(cable)
    rep.add("alexander_polynomial", str(delta))
    rep.add("alexander_coefficients", list(delta.coefficients),
            "cabling formula Delta(t^p) * Delta_T(p,s)(t)")
    if meet is not None:
        f = curves.BivariatePolynomial.parse(meet)
        rep.request["meet"] = meet
        rep.add("intersection_multiplicity",
                curves.intersection_multiplicity(branch, f),
                f"ord_t of {f} along the branch; the linking number of the knots")
    if meet_branch is not None:
        rep.request["meet_terms"] = [[rational(e), rational(c)]
                                     for e, c in meet_branch.terms]
        rep.add("linking_number",
                curves.intersection_multiplicity(branch, meet_branch),
                "intersection number of the two branches")
    return rep


# --- plumb ----------------------------------------------------------------

def load_graph(spec: str) -> plumbing.PlumbingGraph:
    path = Path(spec)
    if path.is_file():
        return plumbing.parse_graph(path.read_text())
    return plumbing.named_graph(spec)


def plumb_report(graph: plumbing.PlumbingGraph, name: str = "") -> Report:
    rep = Report("plumb", {"graph": name or plumbing.format_graph(graph)})
    m = plumbing.intersection_matrix(graph)
    rep.add("vertices", graph.size)
    rep.add("matrix", [list(r) for r in m])
    rep.add("determinant", plumbing.determinant(m), "Bareiss elimination")
    snf = plumbing.boundary_homology(graph)
    rep.add("invariant_factors", list(snf.invariant_factors))
    rep.add("h1", list(snf.cokernel),
            "cyclic orders of coker M; 0 is an infinite cyclic summand")
    rep.add("homology_sphere", plumbing.is_homology_sphere(graph), "|det M| = 1")
    rep.add("negative_definite", plumbing.is_negative_definite(m))
    rep.add("signature", plumbing.matrix_signature(m))
    betti = plumbing.boundary_betti_numbers(graph)
    rep.add("betti", [betti.b0, betti.b1, betti.b2, betti.b3])
    rep.add("euler_characteristic", plumbing.euler_characteristic_boundary(graph),
            "closed odd-dimensional boundary; must vanish")
    return rep


# --- argument handling ----------------------------------------------------

def _env_int(name: str, default):
    value = os.environ.get(name)
    return int(value) if value else default


def _common_options(defaults: bool) -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(add_help=False)
    d = (lambda v: v) if defaults else (lambda v: argparse.SUPPRESS)
    fmt = p.add_mutually_exclusive_group()
    fmt.add_argument("--json", dest="output", action="store_const",
                     const="json", default=d("plain"),
                     help="emit one JSON document")
    fmt.add_argument("--plain", dest="output", action="store_const",
                     const="plain", default=d("plain"),
                     help="line-oriented text (default)")
    p.add_argument("--budget", type=int, default=d(None),
                   help="max tuples to enumerate (env BRIESKORN_BUDGET)")
    p.add_argument("--workers", type=int, default=d(None),
                   help="processes for direct enumeration (env BRIESKORN_WORKERS)")
    return p


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="brieskorn", parents=[_common_options(True)],
        description="Invariants of links of isolated hypersurface singularities.")
    sub = parser.add_subparsers(dest="command", required=True)
    common = _common_options(False)

    p = sub.add_parser("link", parents=[common],
                       help="Brieskorn-Pham link K(a0,...,an)")
    p.add_argument("exponents", nargs="*", type=int)
    p.add_argument("--method", choices=pham.METHODS, default="auto")
    p.add_argument("--max-degree", type=int, default=DEFAULT_MAX_DEGREE,
                   help="largest characteristic polynomial to expand")

    p = sub.add_parser("table", parents=[common], help="bP8 and Kervaire family tables")
    p.add_argument("family", help="bp8 or kervaire")
    p.add_argument("start", type=int, nargs="?")
    p.add_argument("end", type=int, nargs="?")
    p.add_argument("--n", type=int, default=None,
                   help="dimension n for the kervaire family (odd, default 3)")
    p.add_argument("--method", choices=pham.METHODS, default="auto")

    p = sub.add_parser("curve", parents=[common], help="plane-curve branch knot")
    src = p.add_mutually_exclusive_group(required=True)
    src.add_argument("--terms", nargs="+", help="exponent:coefficient terms, e.g. 3/2:1")
    src.add_argument("--file", help="branch file of exp_num exp_den coeff_num coeff_den lines")
    p.add_argument("--multiplicity", type=int, default=None,
                   help="declared denominator m of the full series (x = t^m)")
    p.add_argument("--meet", help="implicit curve f(x,y), e.g. 'y^2 - x^3'")
    p.add_argument("--meet-terms", nargs="+", help="second branch as exponent:coefficient terms")

    p = sub.add_parser("plumb", parents=[common], help="plumbing graph boundary")
    p.add_argument("graph", help="E8, A<k>, or a graph file")
    return parser


_TABLE_DEFAULTS = {"bp8": (1, 28), "kervaire": (3, 17)}


def run(args) -> Report:
    workers = args.workers if args.workers is not None else \
        _env_int("BRIESKORN_WORKERS", 1)
    budget = args.budget if args.budget is not None else \
        _env_int("BRIESKORN_BUDGET", None)
    if args.command == "link":
        return link_report(args.exponents, budget=budget, workers=workers,
                           method=args.method, max_degree=args.max_degree)
    if args.command == "table":
        lo, hi = _TABLE_DEFAULTS.get(args.family, (1, 1))
        start = lo if args.start is None else args.start
        end = (hi if args.start is None else start) if args.end is None else args.end
        return table_report(args.family, start, end, n=args.n, budget=budget,
                            workers=workers, method=args.method)
    if args.command == "curve":
        if args.file:
            branch = parse_branch_file(Path(args.file).read_text(), args.multiplicity)
        else:
            branch = _with_multiplicity(parse_terms(args.terms), args.multiplicity)
        second = parse_terms(args.meet_terms) if args.meet_terms else None
        return curve_report(branch, meet=args.meet, meet_branch=second)
    return plumb_report(load_graph(args.graph), args.graph)


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        report = run(args)
    except BudgetExceededError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except InvariantViolation as exc:
        print(f"internal error: {exc}", file=sys.stderr)
        return EXIT_INTERNAL
    except (ValueError, OSError, ZeroDivisionError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    out = report.to_json() if args.output == "json" else report.to_plain()
    sys.stdout.write(out)
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
