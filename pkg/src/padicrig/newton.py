"""Newton polygons of monic polynomials with p-adic cyclotomic coefficients.

For f(X) = sum a_i X^i of degree d the plotted points are (d - i, ord(a_i));
the polygon is their lower convex hull, read left to right with strictly
increasing slopes.  A trailing infinite-slope segment records the zero roots.
Slope arithmetic is exact (Fractions); no floating point.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import NotMonic
from .padic import PadicCyclo, PadicNum, Valuation


@dataclass(frozen=True)
class Segment:
    slope: Valuation
    length: int


@dataclass(frozen=True)
class NewtonPolygon:
    """Lower convex hull of the coefficient-valuation points.

    ``points`` lists (x, ord) as plotted, x = degree - index; ``vertices``
    is the finite hull; an infinite-slope segment, when present, is last.
    ``flagged_zero_indices`` lists coefficient indices that vanished at
    working precision and so contributed points at +inf (a true tiny
    coefficient there could alter the hull).
    """

    degree: int
    points: tuple[tuple[int, Valuation], ...]
    vertices: tuple[tuple[int, Fraction], ...]
    segments: tuple[Segment, ...]
    flagged_zero_indices: tuple[int, ...]

    def vertex_indices(self) -> tuple[int, ...]:
        """x-coordinates of the hull vertices (infinite part excluded)."""
        return tuple(x for x, _ in self.vertices)

    def render(self) -> str:
        verts = " ".join(f"({x},{y})" for x, y in self.vertices)
        segs = " ".join(
            f"{s.slope!r}x{s.length}" for s in self.segments
        )
        return f"vertices: {verts}\nsegments: {segs}"


def _ord_of(c) -> Valuation:
    if isinstance(c, (PadicCyclo, PadicNum)):
        return c.ord()
    if isinstance(c, int):
        if c == 0:
            return Valuation.infinite()
        raise TypeError("plain integers need a prime; wrap them in PadicNum")
    raise TypeError(f"unsupported coefficient type {type(c)!r}")


def polygon(coeffs) -> NewtonPolygon:
    """Newton polygon of a monic polynomial given by its coefficient list
    (constant term first, leading coefficient last and a p-adic unit)."""
    coeffs = list(coeffs)
    if len(coeffs) < 2:
        raise ValueError("need a polynomial of degree at least 1")
    d = len(coeffs) - 1
    ords = [_ord_of(c) for c in coeffs]
    if ords[d] != 0:
        raise NotMonic(f"leading coefficient has ord {ords[d]!r}, need a unit")

    points = tuple((d - i, ords[i]) for i in range(d, -1, -1))
    flagged = tuple(
        i
        for i, c in enumerate(coeffs)
        if ords[i].is_infinite and ords[i].at_precision is not None
    )

    # multiplicity of the zero root: trailing infinite valuations
    z = 0
    while ords[z].is_infinite:
        z += 1
    finite = [
        (d - i, ords[i].fraction) for i in range(d, z - 1, -1) if not ords[i].is_infinite
    ]

    # monotone-chain lower hull over the finite points (x increasing)
    hull: list[tuple[int, Fraction]] = []
    for pt in finite:
        while len(hull) >= 2:
            (x1, y1), (x2, y2) = hull[-2], hull[-1]
            if (y2 - y1) * (pt[0] - x1) >= (pt[1] - y1) * (x2 - x1):
                hull.pop()
            else:
                break
        hull.append(pt)

    segments: list[Segment] = []
    for (x1, y1), (x2, y2) in zip(hull, hull[1:]):
        segments.append(Segment(Valuation(Fraction(y2 - y1, x2 - x1)), x2 - x1))
    if z:
        segments.append(Segment(Valuation.infinite(), z))
    assert sum(s.length for s in segments) == d
    return NewtonPolygon(
        degree=d,
        points=points,
        vertices=tuple(hull),
        segments=tuple(segments),
        flagged_zero_indices=flagged,
    )


def root_valuations(np_: NewtonPolygon) -> list[Valuation]:
    """Each segment of slope m and length l contributes l roots of
    valuation m; the result is the full multiset, one entry per root."""
    out: list[Valuation] = []
    for seg in np_.segments:
        out.extend([seg.slope] * seg.length)
    return out
