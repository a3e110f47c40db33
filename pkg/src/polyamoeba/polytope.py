"""Newton polytopes of Laurent polynomials: hulls, facets, lattice points.

All geometry is carried out in exact integer/rational arithmetic.  Supported
dimensions are 1, 2 and 3; the input support must be full-dimensional.  For
polygons the vertex cycle is counterclockwise; facet normals are primitive
integer vectors oriented outward, each paired with its support value
(the maximum of the normal over the polytope).
"""

from __future__ import annotations

import itertools
import re
from dataclasses import dataclass
from fractions import Fraction
from math import gcd

from .laurent import LaurentPolynomial


@dataclass(frozen=True)
class Facet:
    """A supporting inequality <normal, s> <= support_value with primitive
    outer normal."""

    normal: tuple[int, ...]
    support_value: int


class DegenerateSupportError(ValueError):
    """The support does not span the ambient space."""


def _affine_rank(points) -> int:
    points = [tuple(p) for p in points]
    if len(points) <= 1:
        return 0
    base = points[0]
    rows = [[Fraction(a - b) for a, b in zip(p, base)] for p in points[1:]]
    rank = 0
    ncols = len(base)
    for col in range(ncols):
        pivot = next((r for r in range(rank, len(rows)) if rows[r][col] != 0), None)
        if pivot is None:
            continue
        rows[rank], rows[pivot] = rows[pivot], rows[rank]
        for r in range(len(rows)):
            if r != rank and rows[r][col] != 0:
                f = rows[r][col] / rows[rank][col]
                rows[r] = [a - f * b for a, b in zip(rows[r], rows[rank])]
        rank += 1
        if rank == ncols:
            break
    return rank


def _primitive(vec) -> tuple[int, ...]:
    g = 0
    for v in vec:
        g = gcd(g, abs(v))
    if g == 0:
        raise ValueError("zero vector has no primitive form")
    return tuple(v // g for v in vec)


def _cross2(o, a, b) -> int:
    return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])


def _hull_2d(points) -> list[tuple[int, int]]:
    """Monotone chain; returns vertices in counterclockwise order."""
    pts = sorted(set(points))
    if len(pts) <= 2:
        return pts
    lower: list[tuple[int, int]] = []
    for p in pts:
        while len(lower) >= 2 and _cross2(lower[-2], lower[-1], p) <= 0:
            lower.pop()
        lower.append(p)
    upper: list[tuple[int, int]] = []
    for p in reversed(pts):
        while len(upper) >= 2 and _cross2(upper[-2], upper[-1], p) <= 0:
            upper.pop()
        upper.append(p)
    return lower[:-1] + upper[:-1]


def _facets_3d(points) -> list[Facet]:
    """Brute-force facet enumeration over point triples with exact side tests."""
    pts = sorted(set(points))
    facets: dict[tuple[int, ...], int] = {}
    for a, b, c in itertools.combinations(pts, 3):
        u = tuple(b[i] - a[i] for i in range(3))
        v = tuple(c[i] - a[i] for i in range(3))
        n = (
            u[1] * v[2] - u[2] * v[1],
            u[2] * v[0] - u[0] * v[2],
            u[0] * v[1] - u[1] * v[0],
        )
        if n == (0, 0, 0):
            continue
        base = sum(ni * ai for ni, ai in zip(n, a))
        side_pos = side_neg = False
        for p in pts:
            d = sum(ni * pi for ni, pi in zip(n, p)) - base
            if d > 0:
                side_pos = True
            elif d < 0:
                side_neg = True
            if side_pos and side_neg:
                break
        if side_pos and side_neg:
            continue
        if side_pos:
            n = tuple(-ni for ni in n)
        n = _primitive(n)
        facets[n] = sum(ni * ai for ni, ai in zip(n, a))
    return [Facet(n, m) for n, m in sorted(facets.items())]


def _matrix_rank_int(rows) -> int:
    if not rows:
        return 0
    mat = [[Fraction(v) for v in row] for row in rows]
    ncols = len(mat[0])
    rank = 0
    for col in range(ncols):
        pivot = next((r for r in range(rank, len(mat)) if mat[r][col] != 0), None)
        if pivot is None:
            continue
        mat[rank], mat[pivot] = mat[pivot], mat[rank]
        for r in range(len(mat)):
            if r != rank and mat[r][col] != 0:
                f = mat[r][col] / mat[rank][col]
                mat[r] = [a - f * b for a, b in zip(mat[r], mat[rank])]
        rank += 1
    return rank


class NewtonPolytope:
    """Convex hull of an integer point set with exact facet data.

    Attributes
    ----------
    dim : ambient dimension (1, 2 or 3)
    vertices : tuple of integer vertex tuples (counterclockwise for dim 2)
    facets : tuple of Facet (primitive outer normal, support value)
    lattice_points : all integer points of the hull, lexicographically sorted
    """

    __slots__ = ("dim", "vertices", "facets", "lattice_points")

    def __init__(self, points):
        points = [tuple(int(c) for c in p) for p in points]
        if not points:
            raise ValueError("empty point set")
        dim = len(points[0])
        if any(len(p) != dim for p in points):
            raise ValueError("points of mixed dimension")
        if dim not in (1, 2, 3):
            raise ValueError("supported dimensions are 1, 2 and 3")
        if _affine_rank(points) != dim:
            raise DegenerateSupportError(
                f"support spans an affine subspace of dimension "
                f"{_affine_rank(points)} < {dim}"
            )

        if dim == 1:
            lo = min(p[0] for p in points)
            hi = max(p[0] for p in points)
            vertices = [(lo,), (hi,)]
            facets = [Facet((-1,), -lo), Facet((1,), hi)]
        elif dim == 2:
            vertices = _hull_2d(points)
            facets = []
            for i, v in enumerate(vertices):
                w = vertices[(i + 1) % len(vertices)]
                d = (w[0] - v[0], w[1] - v[1])
                normal = _primitive((d[1], -d[0]))
                facets.append(Facet(normal, normal[0] * v[0] + normal[1] * v[1]))
        else:
            facets = _facets_3d(points)
            vertices = []
            for p in sorted(set(points)):
                active = [
                    f.normal
                    for f in facets
                    if sum(n * c for n, c in zip(f.normal, p)) == f.support_value
                ]
                if _matrix_rank_int(active) == 3:
                    vertices.append(p)

        object.__setattr__(self, "dim", dim)
        object.__setattr__(self, "vertices", tuple(vertices))
        object.__setattr__(self, "facets", tuple(facets))
        object.__setattr__(
            self, "lattice_points", tuple(self._enumerate_lattice(points))
        )
        self._validate(points)

    def __setattr__(self, name, value):
        raise AttributeError("NewtonPolytope is immutable")

    def _enumerate_lattice(self, points):
        lo = [min(p[i] for p in points) for i in range(self.dim)]
        hi = [max(p[i] for p in points) for i in range(self.dim)]
        ranges = [range(a, b + 1) for a, b in zip(lo, hi)]
        out = []
        for candidate in itertools.product(*ranges):
            if all(
                sum(n * c for n, c in zip(f.normal, candidate)) <= f.support_value
                for f in self.facets
            ):
                out.append(candidate)
        return sorted(out)

    def _validate(self, points):
        for f in self.facets:
            g = 0
            for v in f.normal:
                g = gcd(g, abs(v))
            if g != 1:
                raise AssertionError(f"non-primitive facet normal {f.normal}")
            touching = sum(
                1
                for v in self.vertices
                if sum(n * c for n, c in zip(f.normal, v)) == f.support_value
            )
            if touching < self.dim:
                raise AssertionError(
                    f"facet {f} is supported by {touching} < {self.dim} vertices"
                )
        lattice = set(self.lattice_points)
        for p in points:
            if tuple(p) not in lattice:
                raise AssertionError(f"input point {p} outside the facet system")

    def contains(self, point) -> bool:
        """Exact membership test for rational points."""
        point = [Fraction(c) for c in point]
        return all(
            sum(n * c for n, c in zip(f.normal, point)) <= f.support_value
            for f in self.facets
        )

    def __repr__(self):
        return (
            f"NewtonPolytope(dim={self.dim}, vertices={len(self.vertices)}, "
            f"facets={len(self.facets)}, lattice_points={len(self.lattice_points)})"
        )


def newton_polytope(poly: LaurentPolynomial) -> NewtonPolytope:
    """Newton polytope of a polynomial (convex hull of its support)."""
    if poly.is_zero:
        raise ValueError("the zero polynomial has no Newton polytope")
    return NewtonPolytope(poly.support)


def polytope_from_text(text: str) -> NewtonPolytope:
    """Build a polytope from text like ``"(0,0),(1,0),(2,1),(0,2)"``."""
    tuples = re.findall(r"\(([^()]*)\)", text)
    if not tuples:
        raise ValueError(f"no coordinate tuples found in {text!r}")
    points = []
    for body in tuples:
        try:
            points.append(tuple(int(part.strip()) for part in body.split(",")))
        except ValueError as exc:
            raise ValueError(f"bad coordinate tuple ({body})") from exc
    return NewtonPolytope(points)
