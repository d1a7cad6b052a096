"""Boundary components as anticanonical-cycle surfaces.

Each boundary component of a pair is a smooth toric surface blown up at
interior points of its boundary cycle.  This module holds the component
lattice (toric classes plus exceptional classes), restriction of classes
to the boundary cycle, markings of the 1-strata, and the per-component
period character computed from section ratios on each boundary edge.

Coordinate conventions, fixed once for the whole package:

* every 1-stratum has a single *reference chart*, the identification
  attached to the head of its directed edge; all stored coordinates
  (blowup points, markings, cycle divisors) are reference coordinates;
* the tail component sees the inverse coordinate;
* the distinguished marker point has coordinate -1 in either chart.
"""

from __future__ import annotations

from dataclasses import dataclass

from logcy3.exactnum import (
    ExactArithmeticError,
    GaussianRational,
    MINUS_ONE,
    ONE,
    product,
)
from logcy3.toric import Fan2


class BoundaryError(ValueError):
    """Raised on structurally invalid boundary data."""


@dataclass(frozen=True)
class ExceptionalClass:
    """An exceptional curve class on a component, created by one blowup step.

    ``neighbor`` names the other endpoint of the boundary edge carrying the
    blowup point; ``coordinate`` is the point in the reference chart of that
    edge; ``step`` is the index of the originating program step.
    """

    neighbor: int
    coordinate: GaussianRational
    step: int


@dataclass(frozen=True)
class CycleDivisor:
    """A formal Z-combination of interior points of the boundary cycle.

    ``edges`` maps each neighbor vertex to a tuple of (reference coordinate,
    multiplicity) entries.  Used to represent restrictions of component
    classes to the cycle.
    """

    edges: tuple  # of (neighbor, ((coordinate, multiplicity), ...))

    @staticmethod
    def build(per_edge: dict) -> "CycleDivisor":
        items = []
        for w in sorted(per_edge):
            entries = [(q, m) for q, m in per_edge[w] if m != 0]
            items.append((w, tuple(entries)))
        return CycleDivisor(tuple(items))

    def on_edge(self, w: int):
        for neighbor, entries in self.edges:
            if neighbor == w:
                return entries
        return ()

    def degree(self, w: int) -> int:
        return sum(m for _, m in self.on_edge(w))


@dataclass(frozen=True)
class Marking:
    """A choice of interior point on each 1-stratum, in reference coordinates."""

    points: tuple  # of (frozenset edge key, coordinate)

    @staticmethod
    def build(values: dict) -> "Marking":
        items = []
        for key in sorted(values, key=lambda k: tuple(sorted(k))):
            coord = values[key]
            if coord.is_zero():
                raise BoundaryError("marking point on a 0-stratum")
            items.append((frozenset(key), coord))
        return Marking(tuple(items))

    @staticmethod
    def markers(edge_keys) -> "Marking":
        """The distinguished marking: the point -1 on every edge."""
        return Marking.build({frozenset(e): MINUS_ONE for e in edge_keys})

    def point(self, v: int, w: int) -> GaussianRational:
        key = frozenset((v, w))
        for k, coord in self.points:
            if k == key:
                return coord
        raise BoundaryError(f"marking has no point on edge {tuple(sorted(key))}")


@dataclass(frozen=True)
class LooijengaComponent:
    """A boundary component: toric surface plus boundary-interior blowups.

    The Picard basis is the toric basis of ``base`` followed by the
    exceptional classes in ``excs`` order.  ``head_sides[i]`` records
    whether this component is the head of the directed edge toward
    ``base.labels[i]`` (so sees reference coordinates directly).
    """

    base: Fan2
    excs: tuple
    head_sides: tuple

    @property
    def vertex(self) -> int:
        return self.base.vertex

    @property
    def neighbors(self):
        return self.base.labels

    @property
    def rank(self) -> int:
        return self.base.rank + len(self.excs)

    def with_exceptional(self, exc: ExceptionalClass) -> "LooijengaComponent":
        if exc.neighbor not in self.base.labels:
            raise BoundaryError(
                f"vertex {exc.neighbor} is not adjacent to component {self.vertex}"
            )
        return LooijengaComponent(self.base, self.excs + (exc,), self.head_sides)

    # -- charts --------------------------------------------------------------

    def is_head(self, w: int) -> bool:
        return self.head_sides[self.base.ray_of_neighbor(w)]

    def side_coordinate(self, w: int, reference: GaussianRational) -> GaussianRational:
        """Convert a reference coordinate on edge to this component's chart."""
        return reference if self.is_head(w) else reference.inverse()

    # -- lattice -------------------------------------------------------------

    def split(self, vec):
        if len(vec) != self.rank:
            raise BoundaryError("class length does not match component rank")
        return tuple(vec[: self.base.rank]), tuple(vec[self.base.rank:])

    def intersection(self, a, b) -> int:
        """The intersection form: toric block plus orthogonal (-1)-classes."""
        at, ae = self.split(a)
        bt, be = self.split(b)
        toric = self.base.intersection(at, bt) if self.base.rank else 0
        return toric - sum(x * y for x, y in zip(ae, be))

    def degree_on_edge(self, vec, w: int) -> int:
        """Intersection of a class with the (strict-transform) edge divisor."""
        vt, ve = self.split(vec)
        ray = self.base.ray_of_neighbor(w)
        return self.base.degree_on_ray(vt, ray) + sum(
            c for c, exc in zip(ve, self.excs) if exc.neighbor == w
        )

    def anticanonical(self):
        """The boundary cycle class (the anticanonical class of the component)."""
        return tuple(self.base.anticanonical()) + (-1,) * len(self.excs)

    def zero(self):
        return (0,) * self.rank

    def basis_vectors(self):
        for i in range(self.rank):
            vec = [0] * self.rank
            vec[i] = 1
            yield tuple(vec)

    def exceptional_vector(self, index: int):
        vec = [0] * self.rank
        vec[self.base.rank + index] = 1
        return tuple(vec)


# ---------------------------------------------------------------------------
# Restriction to the cycle and section ratios
# ---------------------------------------------------------------------------


def restrict_to_cycle(c: LooijengaComponent, vec) -> CycleDivisor:
    """Restrict a component class to its boundary cycle.

    A toric class of degree d on an edge restricts to d times the marker
    point; an exceptional class restricts to its blowup point with
    multiplicity 1.
    """
    vt, ve = c.split(vec)
    per_edge: dict = {w: [] for w in c.neighbors}
    for w in c.neighbors:
        ray = c.base.ray_of_neighbor(w)
        d = c.base.degree_on_ray(vt, ray) if c.base.rank else 0
        if d:
            per_edge[w].append((MINUS_ONE, d))
    for coeff, exc in zip(ve, c.excs):
        if coeff:
            per_edge[exc.neighbor].append((exc.coordinate, coeff))
    return CycleDivisor.build(per_edge)


def section_ratio(points, marking_point: GaussianRational) -> GaussianRational:
    """Boundary value ratio of the rational section cut out by a divisor.

    For a divisor ``sum a_i [q_i]`` of total degree d on a 1-stratum with
    chart coordinate z, the section ``f(z) = prod (z - q_i)**a_i / (z - p)**d``
    has ``f(inf) = 1`` and ``f(0) = prod q_i**a_i / p**d`` up to cancelling
    signs, so the ratio ``f(0)/f(inf)`` is ``prod q_i**a_i / p**d``.

    ``points`` is a list of (coordinate, multiplicity) pairs in a single
    chart; 0-stratum points (coordinate 0) are rejected.
    """
    if marking_point.is_zero():
        raise BoundaryError("marking point on a 0-stratum")
    degree = 0
    value = ONE
    for q, mult in points:
        if q.is_zero():
            raise BoundaryError("divisor supported on a 0-stratum")
        degree += mult
        if mult:
            value = value * (q ** mult)
    return value * (marking_point ** (-degree))


def component_marked_period(
    c: LooijengaComponent, marking: Marking, vec
) -> GaussianRational:
    """The period character of the component at a class, for a given marking.

    The value is the product over boundary edges of the section ratios of
    the restricted class, computed in this component's chart on each edge.
    """
    divisor = restrict_to_cycle(c, vec)
    factors = []
    for w in c.neighbors:
        points = [
            (c.side_coordinate(w, q), m) for q, m in divisor.on_edge(w)
        ]
        p = c.side_coordinate(w, marking.point(c.vertex, w))
        factors.append(section_ratio(points, p))
    return product(factors)


def adjunction_check(c: LooijengaComponent, vec):
    """Gate for smooth rational curve classes: C^2 + K.C = -2, C.D_e >= 0.

    Returns ``None`` if ok, else a diagnostic string.
    """
    self_int = c.intersection(vec, vec)
    k_dot = -c.intersection(vec, c.anticanonical())
    if self_int + k_dot != -2:
        return (
            f"adjunction failed: C^2 + K.C = {self_int} + {k_dot} = "
            f"{self_int + k_dot}, expected -2"
        )
    for w in c.neighbors:
        d = c.degree_on_edge(vec, w)
        if d < 0:
            return f"negative boundary degree {d} on edge toward {w}"
    return None
