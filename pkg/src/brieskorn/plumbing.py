"""
Plumbing graphs and the homology of their boundaries.

Each vertex is a disk bundle over a closed surface (genus, Euler number);
each edge plumbs two bundles together. For a tree of spheres the boundary
3-manifold has ``H_1 = coker M`` where ``M`` is the intersection matrix,
so homology comes from a Smith normal form over the integers.
"""
from __future__ import annotations

import math
import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .errors import GraphFormatError, InvariantViolation, PreconditionError

Matrix = tuple[tuple[int, ...], ...]


@dataclass(frozen=True)
class Vertex:
    genus: int
    euler: int


@dataclass(frozen=True)
class PlumbingGraph:
    vertices: tuple[Vertex, ...]
    edges: tuple[tuple[int, int, int], ...]

    def __post_init__(self):
        n = len(self.vertices)
        if n == 0:
            raise GraphFormatError("graph has no vertices")
        for v in self.vertices:
            if v.genus < 0:
                raise GraphFormatError(f"negative genus {v.genus}")
        merged: dict[tuple[int, int], int] = {}
        for i, j, w in self.edges:
            if not (0 <= i < n and 0 <= j < n):
                raise GraphFormatError(f"edge ({i}, {j}) references a missing vertex")
            if i == j:
                raise GraphFormatError(f"self-loop at vertex {i}")
            if w == 0:
                raise GraphFormatError(f"edge ({i}, {j}) has weight 0")
            key = (min(i, j), max(i, j))
            merged[key] = merged.get(key, 0) + w
        edges = tuple((i, j, w) for (i, j), w in sorted(merged.items()) if w)
        object.__setattr__(self, "vertices", tuple(self.vertices))
        object.__setattr__(self, "edges", edges)

    @property
    def size(self) -> int:
        return len(self.vertices)

    def is_tree(self) -> bool:
        n = self.size
        if len(self.edges) != n - 1:
            return False
        parent = list(range(n))

        def find(i):
            while parent[i] != i:
                parent[i] = parent[parent[i]]
                i = parent[i]
            return i

        for i, j, _ in self.edges:
            ri, rj = find(i), find(j)
            if ri == rj:
                return False
            parent[ri] = rj
        return True


def chain_graph(eulers: Sequence[int]) -> PlumbingGraph:
    verts = tuple(Vertex(0, e) for e in eulers)
    return PlumbingGraph(verts, tuple((i, i + 1, 1) for i in range(len(verts) - 1)))


def a_graph(k: int) -> PlumbingGraph:
    """The A_k chain: k spheres of self-intersection -2."""
    if k < 1:
        raise GraphFormatError("A_k needs k >= 1")
    return chain_graph([-2] * k)


def e8_graph() -> PlumbingGraph:
    """E8: a chain of seven -2 spheres with an eighth attached to the fifth."""
    g = chain_graph([-2] * 7)
    return PlumbingGraph(g.vertices + (Vertex(0, -2),), g.edges + ((4, 7, 1),))


def named_graph(name: str) -> PlumbingGraph:
    if name.upper() == "E8":
        return e8_graph()
    m = re.fullmatch(r"[Aa](\d+)", name)
    if m:
        return a_graph(int(m.group(1)))
    raise GraphFormatError(f"unknown named graph {name!r}")


_VERTEX_RE = re.compile(r"v\s+(\S+)\s+genus=(-?\d+)\s+e=(-?\d+)")
_EDGE_RE = re.compile(r"e\s+(\S+)\s+(\S+)(?:\s+w=(-?\d+))?")


def parse_graph(text: str) -> PlumbingGraph:
    """
    Read the text format::

        v <id> genus=<g> e=<euler>
        e <i> <j> [w=<weight>]

    Blank lines and ``#`` comments are ignored. Vertex ids are arbitrary
    tokens; they are numbered in order of appearance.
    """
    ids: dict[str, int] = {}
    vertices = []
    raw_edges = []
    for lineno, line in enumerate(text.splitlines(), 1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        if m := _VERTEX_RE.fullmatch(line):
            vid = m.group(1)
            if vid in ids:
                raise GraphFormatError(f"line {lineno}: duplicate vertex {vid}")
            ids[vid] = len(vertices)
            vertices.append(Vertex(int(m.group(2)), int(m.group(3))))
        elif m := _EDGE_RE.fullmatch(line):
            w = int(m.group(3)) if m.group(3) is not None else 1
            raw_edges.append((lineno, m.group(1), m.group(2), w))
        else:
            raise GraphFormatError(f"line {lineno}: cannot parse {line!r}")
    edges = []
    for lineno, a, b, w in raw_edges:
        if a not in ids or b not in ids:
            raise GraphFormatError(f"line {lineno}: unknown vertex in edge")
        edges.append((ids[a], ids[b], w))
    return PlumbingGraph(tuple(vertices), tuple(edges))


def format_graph(g: PlumbingGraph) -> str:
    lines = [f"v {i} genus={v.genus} e={v.euler}" for i, v in enumerate(g.vertices)]
    lines += [f"e {i} {j}" + ("" if w == 1 else f" w={w}") for i, j, w in g.edges]
    return "\n".join(lines) + "\n"


def intersection_matrix(g: PlumbingGraph) -> Matrix:
    n = g.size
    m = [[0] * n for _ in range(n)]
    for i, v in enumerate(g.vertices):
        m[i][i] = v.euler
    for i, j, w in g.edges:
        m[i][j] = m[j][i] = w
    return tuple(tuple(row) for row in m)


# --- exact integer linear algebra ----------------------------------------

def determinant(m: Sequence[Sequence[int]]) -> int:
    """Bareiss fraction-free elimination; exact for integer matrices."""
    a = [list(row) for row in m]
    n = len(a)
    if n == 0:
        return 1
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            for r in range(k + 1, n):
                if a[r][k]:
                    a[k], a[r] = a[r], a[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
        prev = a[k][k]
    return sign * a[n - 1][n - 1]


def rank(m: Sequence[Sequence[int]]) -> int:
    a = [[Fraction(x) for x in row] for row in m]
    rows = len(a)
    cols = len(a[0]) if rows else 0
    r = 0
    for c in range(cols):
        pivot = next((i for i in range(r, rows) if a[i][c]), None)
        if pivot is None:
            continue
        a[r], a[pivot] = a[pivot], a[r]
        for i in range(rows):
            if i != r and a[i][c]:
                f = a[i][c] / a[r][c]
                a[i] = [x - f * y for x, y in zip(a[i], a[r])]
        r += 1
    return r


@dataclass(frozen=True)
class SmithForm:
    """
    Invariant factors ``d_1 | d_2 | ...`` (zeros last) of a square matrix.

    ``cokernel`` lists the cyclic summands of the cokernel with trivial
    factors dropped; 0 stands for an infinite cyclic summand.
    """
    invariant_factors: tuple[int, ...]

    @property
    def rank(self) -> int:
        return sum(1 for d in self.invariant_factors if d)

    @property
    def free_rank(self) -> int:
        return sum(1 for d in self.invariant_factors if d == 0)

    @property
    def cokernel(self) -> tuple[int, ...]:
        return tuple(d for d in self.invariant_factors if d != 1)

    @property
    def torsion_order(self) -> int:
        return math.prod(d for d in self.invariant_factors if d)

    @property
    def is_trivial(self) -> bool:
        return all(d == 1 for d in self.invariant_factors)


def smith_normal_form(m: Sequence[Sequence[int]]) -> SmithForm:
    """
    Diagonalize by unimodular row and column operations.

    The pivot at each step is the entry of smallest absolute value in the
    remaining block; rows and columns are reduced against it by division
    with remainder until the pivot divides its row, column and the rest of
    the block. Python ints keep coefficient growth exact.
    """
    a = [list(row) for row in m]
    rows = len(a)
    cols = len(a[0]) if rows else 0
    diag = []
    for t in range(min(rows, cols)):
        while True:
            entries = [(abs(a[i][j]), i, j) for i in range(t, rows)
                       for j in range(t, cols) if a[i][j]]
            if not entries:
                break
            _, pi, pj = min(entries)
            a[t], a[pi] = a[pi], a[t]
            for row in a:
                row[t], row[pj] = row[pj], row[t]
            p = a[t][t]
            clean = True
            for i in range(t + 1, rows):
                q = a[i][t] // p
                if q:
                    a[i] = [x - q * y for x, y in zip(a[i], a[t])]
                if a[i][t]:
                    clean = False
            for j in range(t + 1, cols):
                q = a[t][j] // p
                if q:
                    for row in a:
                        row[j] -= q * row[t]
                if a[t][j]:
                    clean = False
            if not clean:
                continue
            bad = next(((i, j) for i in range(t + 1, rows)
                        for j in range(t + 1, cols) if a[i][j] % p), None)
            if bad is None:
                break
            # fold the offending row into the pivot row and retry
            a[t] = [x + y for x, y in zip(a[t], a[bad[0]])]
        if not any(a[i][j] for i in range(t, rows) for j in range(t, cols)):
            diag.extend([0] * (min(rows, cols) - t))
            break
        diag.append(abs(a[t][t]))
    nonzero = [d for d in diag if d]
    zeros = [d for d in diag if d == 0]
    for x, y in zip(nonzero, nonzero[1:]):
        if y % x:
            raise InvariantViolation(f"divisibility chain broken: {diag}")
    return SmithForm(tuple(nonzero + zeros))


def is_negative_definite(m: Sequence[Sequence[int]]) -> bool:
    """Sylvester: the k-th leading minor must have sign (-1)^k."""
    n = len(m)
    for k in range(1, n + 1):
        minor = determinant([row[:k] for row in m[:k]])
        if minor == 0 or (minor > 0) != (k % 2 == 0):
            return False
    return True


def matrix_signature(m: Sequence[Sequence[int]]) -> int:
    """
    Signature of a symmetric integer matrix by exact congruence
    diagonalization over the rationals.
    """
    a = [[Fraction(x) for x in row] for row in m]
    n = len(a)
    for i in range(n):
        for j in range(n):
            if a[i][j] != a[j][i]:
                raise PreconditionError("matrix is not symmetric")
    pos = neg = 0
    k = 0
    while k < n:
        if a[k][k] == 0:
            r = next((i for i in range(k + 1, n) if a[i][i]), None)
            if r is not None:
                a[k], a[r] = a[r], a[k]
                for row in a:
                    row[k], row[r] = row[r], row[k]
            else:
                r = next((i for i in range(k + 1, n) if a[k][i]), None)
                if r is None:
                    k += 1
                    continue
                # e_k + e_r has square 2 a[k][r] != 0
                a[k] = [x + y for x, y in zip(a[k], a[r])]
                for row in a:
                    row[k] += row[r]
        p = a[k][k]
        if p > 0:
            pos += 1
        else:
            neg += 1
        for i in range(k + 1, n):
            if a[i][k]:
                f = a[i][k] / p
                a[i] = [x - f * y for x, y in zip(a[i], a[k])]
                for row in a:
                    row[i] -= f * row[k]
        k += 1
    return pos - neg


# --- boundary homology ----------------------------------------------------

def _require_supported(g: PlumbingGraph) -> None:
    if any(v.genus for v in g.vertices):
        raise GraphFormatError("homology is only supported for genus-0 vertices")
    if not g.is_tree():
        raise GraphFormatError("homology is only supported for trees")


def boundary_homology(g: PlumbingGraph) -> SmithForm:
    """Smith form of the intersection matrix; its cokernel is ``H_1`` of the boundary."""
    _require_supported(g)
    return smith_normal_form(intersection_matrix(g))


def is_homology_sphere(g: PlumbingGraph) -> bool:
    _require_supported(g)
    return abs(determinant(intersection_matrix(g))) == 1


@dataclass(frozen=True)
class BettiNumbers:
    b0: int
    b1: int
    b2: int
    b3: int

    @property
    def euler_characteristic(self) -> int:
        return self.b0 - self.b1 + self.b2 - self.b3


def boundary_betti_numbers(g: PlumbingGraph) -> BettiNumbers:
    """
    Rational Betti numbers of the boundary.

    ``b1`` is the free rank of ``coker M``; ``b2`` is the nullity of ``M``
    (``H_2`` of the boundary is the kernel of ``M`` for a tree of spheres);
    the boundary is closed, connected and orientable, so ``b0 = b3 = 1``.
    """
    snf = boundary_homology(g)
    m = intersection_matrix(g)
    return BettiNumbers(1, snf.free_rank, g.size - rank(m), 1)


def euler_characteristic_boundary(g: PlumbingGraph) -> int:
    chi = boundary_betti_numbers(g).euler_characteristic
    if chi != 0:
        raise InvariantViolation(
            f"boundary of a plumbing has Euler characteristic {chi}")
    return chi
